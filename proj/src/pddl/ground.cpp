#include "sclplan/pddl/ground.hpp"

#include <algorithm>
#include <set>

#include "sclplan/pddl/errors.hpp"
#include "sclplan/pddl/serialize.hpp"

namespace sclplan::pddl {

namespace {

// A schema instantiated with objects, still at the Atom level. Indexing into
// the final universe happens after reachability settles.
struct CandidateAction {
    const ActionSchema* schema;
    std::vector<std::string> args;
    std::vector<Atom> pre_pos;
    std::vector<Atom> pre_neg;
    std::vector<Atom> add;
    std::vector<Atom> del;
};

Atom instantiate(const Literal& lit, const ActionSchema& schema,
                 const std::vector<std::string>& binding) {
    Atom a;
    a.predicate = lit.predicate;
    a.args.reserve(lit.args.size());
    for (const auto& var : lit.args) {
        size_t pi = 0;
        for (; pi < schema.params.size(); ++pi)
            if (schema.params[pi].name == var) break;
        if (pi == schema.params.size())
            throw GroundingError("unbound variable '?" + var + "' in action '" +
                                 schema.name + "'");
        a.args.push_back(binding[pi]);
    }
    return a;
}

}  // namespace

StripsTask ground(const Domain& domain, const Problem& problem,
                  GroundOptions opts) {
    // Objects per parameter type, in declaration order.
    std::map<std::string, std::vector<std::string>> by_type;
    auto objects_of = [&](const std::string& type) -> const std::vector<std::string>& {
        auto it = by_type.find(type);
        if (it != by_type.end()) return it->second;
        std::vector<std::string> names;
        for (const auto& o : problem.objects)
            if (domain.is_subtype(o.type, type)) names.push_back(o.name);
        return by_type.emplace(type, std::move(names)).first->second;
    };

    // Every type-consistent instantiation, with equality literals resolved
    // statically and dropped.
    std::vector<CandidateAction> candidates;
    for (const auto& schema : domain.actions) {
        std::vector<std::string> binding(schema.params.size());
        auto emit = [&]() {
            CandidateAction c;
            c.schema = &schema;
            c.args = binding;
            for (const auto& lit : schema.precondition) {
                if (lit.predicate == "=") {
                    Atom a = instantiate(lit, schema, binding);
                    bool equal = a.args[0] == a.args[1];
                    if (equal == lit.negated) return;  // statically false
                    continue;
                }
                Atom a = instantiate(lit, schema, binding);
                (lit.negated ? c.pre_neg : c.pre_pos).push_back(std::move(a));
            }
            for (const auto& lit : schema.add_effects)
                c.add.push_back(instantiate(lit, schema, binding));
            for (const auto& lit : schema.del_effects)
                c.del.push_back(instantiate(lit, schema, binding));
            candidates.push_back(std::move(c));
        };
        // Depth-first over parameter positions.
        auto rec = [&](auto&& self, size_t pos) -> void {
            if (pos == schema.params.size()) {
                emit();
                return;
            }
            for (const auto& obj : objects_of(schema.params[pos].type)) {
                binding[pos] = obj;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }

    // Reachable atom set under delete relaxation: negative preconditions and
    // delete effects are ignored, so anything reachable in the real task is
    // reachable here.
    std::set<Atom> reachable(problem.init.begin(), problem.init.end());
    std::vector<bool> keep(candidates.size(), true);
    if (opts.prune) {
        std::vector<bool> fired(candidates.size(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < candidates.size(); ++i) {
                if (fired[i]) continue;
                bool ok = true;
                for (const auto& a : candidates[i].pre_pos)
                    if (!reachable.count(a)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                fired[i] = true;
                changed = true;
                for (const auto& a : candidates[i].add)
                    reachable.insert(a);
            }
        }
        keep = fired;
    } else {
        for (const auto& c : candidates) {
            for (const auto& a : c.pre_pos) reachable.insert(a);
            for (const auto& a : c.pre_neg) reachable.insert(a);
            for (const auto& a : c.add) reachable.insert(a);
            for (const auto& a : c.del) reachable.insert(a);
        }
        for (const auto& gl : problem.goal) reachable.insert(gl.atom);
    }

    StripsTask task;
    task.atoms.assign(reachable.begin(), reachable.end());  // sorted via set
    for (int i = 0; i < static_cast<int>(task.atoms.size()); ++i)
        task.atom_index[task.atoms[i]] = i;

    auto index_sorted = [&](const std::vector<Atom>& atoms, bool drop_missing,
                            std::vector<int>& out) {
        for (const auto& a : atoms) {
            auto it = task.atom_index.find(a);
            if (it == task.atom_index.end()) {
                if (drop_missing) continue;
                throw GroundingError("atom " + to_string(a) +
                                     " missing from universe");
            }
            out.push_back(it->second);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    };

    for (size_t i = 0; i < candidates.size(); ++i) {
        if (!keep[i]) continue;
        const auto& c = candidates[i];
        GroundAction ga;
        ga.schema = c.schema->name;
        ga.args = c.args;
        // Unreachable atoms can never hold: a negative precondition on one is
        // vacuously true and a delete of one is a no-op, so both drop.
        index_sorted(c.pre_pos, false, ga.pre_pos);
        index_sorted(c.pre_neg, true, ga.pre_neg);
        index_sorted(c.add, false, ga.add);
        index_sorted(c.del, true, ga.del);
        // Distinct schema literals can collide onto one atom after binding;
        // apply order is delete-then-add, so dropping the delete preserves
        // the result while keeping the sets disjoint.
        std::vector<int> del_only;
        std::set_difference(ga.del.begin(), ga.del.end(), ga.add.begin(),
                            ga.add.end(), std::back_inserter(del_only));
        ga.del = std::move(del_only);
        task.actions.push_back(std::move(ga));
    }

    index_sorted(problem.init, false, task.init);

    for (const auto& gl : problem.goal) {
        auto it = task.atom_index.find(gl.atom);
        if (it == task.atom_index.end()) {
            if (gl.negated) continue;  // can never hold, so already satisfied
            task.goal_impossible = true;
            continue;
        }
        task.goal.emplace_back(it->second, !gl.negated);
    }
    return task;
}

}  // namespace sclplan::pddl
