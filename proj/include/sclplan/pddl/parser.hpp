#pragma once

#include <string_view>
#include <vector>

#include "sclplan/pddl/ast.hpp"
#include "sclplan/pddl/errors.hpp"

namespace sclplan::pddl {

// Accepted requirement flags: :strips :typing :negative-preconditions
// :equality. Anything else is a SemanticError. Identifiers are
// case-insensitive and normalized to lower case.

Domain parse_domain(std::string_view text);

Problem parse_problem(std::string_view text, const Domain& domain);

struct GoalParseOptions {
    // When false, goal arguments are not resolved against the object list.
    // Used for goals over scenes that may name not-yet-discovered entities;
    // resolution happens later when the problem is built.
    bool check_objects = true;
};

// Extracts a goal condition from untrusted free-form text. The extraction
// rule: take the first balanced s-expression whose head is `and`; failing
// that, the first one whose head is a declared predicate or `not`.
Goal parse_goal(std::string_view text, const Domain& domain,
                const std::vector<TypedObject>& objects,
                GoalParseOptions opts = {});

}  // namespace sclplan::pddl
