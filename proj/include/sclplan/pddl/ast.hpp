#pragma once

#include <map>
#include <string>
#include <vector>

namespace sclplan::pddl {

// All identifiers are lowercased at parse time; comparisons are plain ==.

struct Param {
    std::string name;  // includes the leading '?' stripped, e.g. "r"
    std::string type;

    bool operator==(const Param&) const = default;
};

// A parameterized literal inside a schema. Args are either variable names
// (leading '?') or constant object names.
struct Literal {
    std::string predicate;
    std::vector<std::string> args;
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

struct PredicateSchema {
    std::string name;
    std::vector<Param> params;

    size_t arity() const { return params.size(); }
    bool operator==(const PredicateSchema&) const = default;
};

struct ActionSchema {
    std::string name;
    std::string description;  // optional :description string, may be empty
    std::vector<Param> params;
    std::vector<Literal> precondition;  // conjunction
    std::vector<Literal> add_effects;
    std::vector<Literal> del_effects;

    bool operator==(const ActionSchema&) const = default;
};

struct Domain {
    std::string name;
    // child type -> parent type; roots map to "object".
    std::map<std::string, std::string> types;
    std::vector<PredicateSchema> predicates;
    std::vector<ActionSchema> actions;

    const PredicateSchema* find_predicate(const std::string& name) const {
        for (const auto& p : predicates)
            if (p.name == name) return &p;
        return nullptr;
    }

    const ActionSchema* find_action(const std::string& name) const {
        for (const auto& a : actions)
            if (a.name == name) return &a;
        return nullptr;
    }

    bool type_declared(const std::string& t) const {
        return t == "object" || types.count(t) > 0;
    }

    // True if `sub` equals `super` or is a (transitive) descendant of it.
    bool is_subtype(const std::string& sub, const std::string& super) const {
        if (super == "object") return true;
        std::string cur = sub;
        while (true) {
            if (cur == super) return true;
            auto it = types.find(cur);
            if (it == types.end()) return false;
            if (it->second == cur) return false;
            cur = it->second;
        }
    }

    bool operator==(const Domain&) const = default;
};

struct TypedObject {
    std::string name;
    std::string type;

    bool operator==(const TypedObject&) const = default;
    auto operator<=>(const TypedObject&) const = default;
};

// A ground atom: predicate applied to object names.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

// A ground literal, used in goals.
struct GroundLiteral {
    Atom atom;
    bool negated = false;

    bool operator==(const GroundLiteral&) const = default;
    auto operator<=>(const GroundLiteral&) const = default;
};

using Goal = std::vector<GroundLiteral>;  // conjunction

struct Problem {
    std::string name;
    std::string domain_name;
    std::vector<TypedObject> objects;
    std::vector<Atom> init;  // no duplicates
    Goal goal;

    const TypedObject* find_object(const std::string& name) const {
        for (const auto& o : objects)
            if (o.name == name) return &o;
        return nullptr;
    }

    bool operator==(const Problem&) const = default;
};

}  // namespace sclplan::pddl
