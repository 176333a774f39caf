#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace sclplan::util {

// Fixed-size bitset sized at runtime. States in the search layer are sets of
// ground atoms indexed densely, so word-parallel subset/apply operations
// matter more than anything else here.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    size_t size() const { return nbits_; }

    bool test(size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1ULL;
    }

    void set(size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }

    // True if every bit of `other` is also set here.
    bool contains_all(const DynBitset& other) const {
        for (size_t w = 0; w < words_.size(); ++w)
            if ((other.words_[w] & ~words_[w]) != 0) return false;
        return true;
    }

    // True if no bit of `other` is set here.
    bool disjoint(const DynBitset& other) const {
        for (size_t w = 0; w < words_.size(); ++w)
            if ((other.words_[w] & words_[w]) != 0) return false;
        return true;
    }

    void or_with(const DynBitset& other) {
        for (size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    }

    void and_not_with(const DynBitset& other) {
        for (size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    }

    size_t count() const {
        size_t n = 0;
        for (uint64_t w : words_) n += static_cast<size_t>(__builtin_popcountll(w));
        return n;
    }

    bool operator==(const DynBitset& other) const { return words_ == other.words_; }

    size_t hash() const {
        // FNV-style fold over words.
        uint64_t h = 0xcbf29ce484222325ULL;
        for (uint64_t w : words_) {
            h ^= w;
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }

    template <typename F>
    void for_each_set(F&& f) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
                f(wi * 64 + bit);
                w &= w - 1;
            }
        }
    }

private:
    size_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

struct DynBitsetHash {
    size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace sclplan::util
