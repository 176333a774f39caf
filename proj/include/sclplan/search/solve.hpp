#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "sclplan/pddl/ground.hpp"
#include "sclplan/util/bitset.hpp"

namespace sclplan::search {

struct Plan {
    std::vector<int> actions;  // indices into StripsTask::actions
    int cost() const { return static_cast<int>(actions.size()); }
};

enum class OutcomeKind { Solved, Unsolvable, Budget };
enum class BudgetReason { NodeLimit, TimeLimit };

struct SolveOutcome {
    OutcomeKind kind = OutcomeKind::Unsolvable;
    Plan plan;                  // meaningful only when Solved
    BudgetReason budget_reason = BudgetReason::NodeLimit;
    uint64_t nodes = 0;         // states generated

    bool solved() const { return kind == OutcomeKind::Solved; }
};

struct SearchConfig {
    int max_novelty_width = 2;  // 1 or 2
    uint64_t node_budget = 100000;
    std::chrono::milliseconds time_budget{2000};
};

// Best-first search ordered by (novelty, goal count), FIFO within a bucket.
// Novelty of a state is the size of the smallest atom tuple not yet seen in
// any state with an equal-or-better goal count; states with no new tuple up
// to the width cap go to the worst bucket but are never dropped, so
// Unsolvable still means the reachable space was exhausted.
SolveOutcome solve(const pddl::StripsTask& task, const SearchConfig& config = {});

// Plain breadth-first search; plans are shortest. The budget counts states
// generated and overflowing it yields a Budget outcome.
SolveOutcome solve_oracle(const pddl::StripsTask& task,
                          uint64_t state_budget = 1000000);

// Number of unsatisfied goal literals; 0 iff the goal holds (always >0 for a
// goal_impossible task).
int goal_count(const pddl::StripsTask& task, const util::DynBitset& state);

}  // namespace sclplan::search
