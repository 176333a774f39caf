#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sclplan/pddl/ast.hpp"

namespace sclplan::pddl {

struct GroundAction {
    std::string schema;
    std::vector<std::string> args;  // bound objects in parameter order
    std::vector<int> pre_pos;       // sorted atom indices that must hold
    std::vector<int> pre_neg;       // sorted atom indices that must not hold
    std::vector<int> add;           // sorted
    std::vector<int> del;           // sorted, disjoint from add

    // "schema arg1 arg2", the display form used in plans and transcripts.
    std::string display() const {
        std::string out = schema;
        for (const auto& a : args) {
            out += ' ';
            out += a;
        }
        return out;
    }

    bool operator==(const GroundAction&) const = default;
};

struct StripsTask {
    std::vector<Atom> atoms;         // index -> atom, sorted universe
    std::map<Atom, int> atom_index;  // inverse of `atoms`
    std::vector<GroundAction> actions;
    std::vector<int> init;                     // sorted indices
    std::vector<std::pair<int, bool>> goal;    // (atom index, required polarity)
    // Set when a positive goal atom is not in the reachable universe; the
    // task is then unsolvable without any search.
    bool goal_impossible = false;

    int num_atoms() const { return static_cast<int>(atoms.size()); }

    int index_of(const Atom& a) const {
        auto it = atom_index.find(a);
        return it == atom_index.end() ? -1 : it->second;
    }
};

struct GroundOptions {
    // Delete-relaxation reachability pruning. Off keeps every type-consistent
    // instantiation; used to check that pruning never changes solvability.
    bool prune = true;
};

StripsTask ground(const Domain& domain, const Problem& problem,
                  GroundOptions opts = {});

}  // namespace sclplan::pddl
