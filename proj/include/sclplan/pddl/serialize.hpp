#pragma once

#include <string>

#include "sclplan/pddl/ast.hpp"

namespace sclplan::pddl {

// Canonical emission: one literal per line, two spaces per nesting level.
// parse(serialize(x)) is structurally equal to x; golden tests rely on the
// exact byte layout.

std::string to_string(const Atom& atom);
std::string to_string(const GroundLiteral& lit);

std::string serialize_goal(const Goal& goal);
std::string serialize_problem(const Problem& problem);
std::string serialize_domain(const Domain& domain);

}  // namespace sclplan::pddl
