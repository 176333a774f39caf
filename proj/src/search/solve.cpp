#include "sclplan/search/solve.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace sclplan::search {

using util::DynBitset;
using util::DynBitsetHash;

int goal_count(const pddl::StripsTask& task, const DynBitset& state) {
    int n = task.goal_impossible ? 1 : 0;
    for (const auto& [idx, pos] : task.goal)
        if (state.test(static_cast<size_t>(idx)) != pos) ++n;
    return n;
}

namespace {

struct Node {
    DynBitset state;
    int parent;
    int action;
};

DynBitset initial_state(const pddl::StripsTask& task) {
    DynBitset s(static_cast<size_t>(task.num_atoms()));
    for (int i : task.init) s.set(static_cast<size_t>(i));
    return s;
}

bool applicable(const pddl::GroundAction& a, const DynBitset& s) {
    for (int idx : a.pre_pos)
        if (!s.test(static_cast<size_t>(idx))) return false;
    for (int idx : a.pre_neg)
        if (s.test(static_cast<size_t>(idx))) return false;
    return true;
}

DynBitset apply(const pddl::GroundAction& a, const DynBitset& s) {
    DynBitset out = s;
    for (int idx : a.del) out.reset(static_cast<size_t>(idx));
    for (int idx : a.add) out.set(static_cast<size_t>(idx));
    return out;
}

Plan extract_plan(const std::vector<Node>& nodes, int leaf) {
    Plan plan;
    for (int i = leaf; nodes[static_cast<size_t>(i)].parent >= 0;
         i = nodes[static_cast<size_t>(i)].parent)
        plan.actions.push_back(nodes[static_cast<size_t>(i)].action);
    std::reverse(plan.actions.begin(), plan.actions.end());
    return plan;
}

// Per-tuple minimum goal count seen so far. A tuple is novel for a state at
// goal count g when its recorded minimum is worse than g.
class NoveltyTable {
public:
    NoveltyTable(size_t natoms, int width)
        : natoms_(natoms), width_(width), best1_(natoms, INT_MAX) {}

    // Returns the novelty bucket (1, 2, or width+1) and records the state's
    // tuples at goal count g.
    int evaluate(const DynBitset& state, int g) {
        std::vector<size_t> atoms;
        state.for_each_set([&](size_t i) { atoms.push_back(i); });

        int novelty = width_ + 1;
        for (size_t a : atoms)
            if (best1_[a] > g) {
                novelty = 1;
                break;
            }
        if (novelty > 1 && width_ >= 2) {
            for (size_t i = 0; i < atoms.size() && novelty > 2; ++i)
                for (size_t j = i + 1; j < atoms.size(); ++j) {
                    auto it = best2_.find(pack(atoms[i], atoms[j]));
                    if (it == best2_.end() || it->second > g) {
                        novelty = 2;
                        break;
                    }
                }
        }

        for (size_t a : atoms)
            if (best1_[a] > g) best1_[a] = g;
        if (width_ >= 2) {
            for (size_t i = 0; i < atoms.size(); ++i)
                for (size_t j = i + 1; j < atoms.size(); ++j) {
                    uint64_t key = pack(atoms[i], atoms[j]);
                    auto [it, inserted] = best2_.try_emplace(key, g);
                    if (!inserted && it->second > g) it->second = g;
                }
        }
        return novelty;
    }

private:
    uint64_t pack(size_t a, size_t b) const {
        return static_cast<uint64_t>(a) * natoms_ + b;
    }

    size_t natoms_;
    int width_;
    std::vector<int> best1_;
    std::unordered_map<uint64_t, int> best2_;
};

}  // namespace

SolveOutcome solve(const pddl::StripsTask& task, const SearchConfig& config) {
    SolveOutcome out;
    if (task.goal_impossible) {
        out.kind = OutcomeKind::Unsolvable;
        return out;
    }

    DynBitset init = initial_state(task);
    if (goal_count(task, init) == 0) {
        out.kind = OutcomeKind::Solved;
        out.nodes = 1;
        return out;
    }

    auto deadline = std::chrono::steady_clock::now() + config.time_budget;

    std::vector<Node> nodes;
    nodes.push_back({init, -1, -1});
    std::unordered_set<DynBitset, DynBitsetHash> seen;
    seen.insert(init);

    NoveltyTable table(static_cast<size_t>(task.num_atoms()),
                       config.max_novelty_width);
    // Buckets keyed by (novelty, goal count); FIFO within a bucket.
    std::map<std::pair<int, int>, std::deque<int>> open;
    {
        int g0 = goal_count(task, init);
        open[{table.evaluate(init, g0), g0}].push_back(0);
    }

    uint64_t expansions = 0;
    while (!open.empty()) {
        auto bucket = open.begin();
        int cur = bucket->second.front();
        bucket->second.pop_front();
        if (bucket->second.empty()) open.erase(bucket);

        if ((++expansions & 0x1ff) == 0 &&
            std::chrono::steady_clock::now() > deadline) {
            out.kind = OutcomeKind::Budget;
            out.budget_reason = BudgetReason::TimeLimit;
            out.nodes = seen.size();
            return out;
        }

        // Copy, since nodes may reallocate while expanding.
        DynBitset state = nodes[static_cast<size_t>(cur)].state;
        for (int ai = 0; ai < static_cast<int>(task.actions.size()); ++ai) {
            const auto& act = task.actions[static_cast<size_t>(ai)];
            if (!applicable(act, state)) continue;
            DynBitset next = apply(act, state);
            if (!seen.insert(next).second) continue;

            nodes.push_back({next, cur, ai});
            int id = static_cast<int>(nodes.size()) - 1;
            int g = goal_count(task, next);
            if (g == 0) {
                out.kind = OutcomeKind::Solved;
                out.plan = extract_plan(nodes, id);
                out.nodes = seen.size();
                return out;
            }
            if (seen.size() > config.node_budget) {
                out.kind = OutcomeKind::Budget;
                out.budget_reason = BudgetReason::NodeLimit;
                out.nodes = seen.size();
                return out;
            }
            open[{table.evaluate(next, g), g}].push_back(id);
        }
    }

    out.kind = OutcomeKind::Unsolvable;
    out.nodes = seen.size();
    return out;
}

SolveOutcome solve_oracle(const pddl::StripsTask& task, uint64_t state_budget) {
    SolveOutcome out;
    if (task.goal_impossible) {
        out.kind = OutcomeKind::Unsolvable;
        return out;
    }

    DynBitset init = initial_state(task);
    if (goal_count(task, init) == 0) {
        out.kind = OutcomeKind::Solved;
        out.nodes = 1;
        return out;
    }

    std::vector<Node> nodes;
    nodes.push_back({init, -1, -1});
    std::unordered_set<DynBitset, DynBitsetHash> seen;
    seen.insert(init);

    // Queue holds node ids; breadth-first order gives shortest plans.
    std::deque<int> queue;
    queue.push_back(0);

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        DynBitset state = nodes[static_cast<size_t>(cur)].state;
        for (int ai = 0; ai < static_cast<int>(task.actions.size()); ++ai) {
            const auto& act = task.actions[static_cast<size_t>(ai)];
            if (!applicable(act, state)) continue;
            DynBitset next = apply(act, state);
            if (!seen.insert(next).second) continue;

            nodes.push_back({next, cur, ai});
            int id = static_cast<int>(nodes.size()) - 1;
            if (goal_count(task, next) == 0) {
                out.kind = OutcomeKind::Solved;
                out.plan = extract_plan(nodes, id);
                out.nodes = seen.size();
                return out;
            }
            if (seen.size() > state_budget) {
                out.kind = OutcomeKind::Budget;
                out.budget_reason = BudgetReason::NodeLimit;
                out.nodes = seen.size();
                return out;
            }
            queue.push_back(id);
        }
    }

    out.kind = OutcomeKind::Unsolvable;
    out.nodes = seen.size();
    return out;
}

}  // namespace sclplan::search
