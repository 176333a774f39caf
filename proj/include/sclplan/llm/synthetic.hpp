#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclplan/llm/client.hpp"
#include "sclplan/sim/simulator.hpp"

namespace sclplan::llm {

// Competence levels for the offline stand-in model. Strong always proposes
// the right next command; medium and weak inject characteristic mistakes
// (skipping ahead past preconditions, wrong objects, malformed replies,
// declaring victory early). Stochastic uses medium's rates and exists so
// callers can vary the seed per repeat.
enum class Grade { Weak, Medium, Strong, Stochastic };

Grade grade_from_name(const std::string& name);
std::string grade_name(Grade g);

// Deterministic fake chat model that answers goal and next-action prompts
// by peeking at the simulator's ground truth. Responses depend only on
// (grade, seed, fingerprint, current truth state), never on call order, so
// recordings replay exactly. One instance serves one episode at a time:
// point it at the episode's simulator before use.
class SyntheticClient : public CompletionClient {
public:
    SyntheticClient(Grade grade, uint64_t seed);

    void set_context(const sim::Simulator* sim) { sim_ = sim; }

    Completion complete(const std::vector<ChatTurn>& turns,
                        const std::string& fingerprint) override;

private:
    Grade grade_;
    uint64_t seed_;
    const sim::Simulator* sim_ = nullptr;
};

// The competence behind the synthetic model: the command sequence a fully
// informed agent would run next, recomputed from the current ground truth.
// Covers the first unsatisfied goal literal only (callers re-ask as the
// world changes); empty means the task's success condition already holds.
std::vector<std::string> oracle_chain(const sim::Simulator& sim);

}  // namespace sclplan::llm
