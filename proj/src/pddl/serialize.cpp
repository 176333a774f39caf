#include "sclplan/pddl/serialize.hpp"

namespace sclplan::pddl {

namespace {

void append_atom(std::string& out, const Atom& atom) {
    out += '(';
    out += atom.predicate;
    for (const auto& a : atom.args) {
        out += ' ';
        out += a;
    }
    out += ')';
}

void append_literal(std::string& out, const GroundLiteral& lit) {
    if (lit.negated) {
        out += "(not ";
        append_atom(out, lit.atom);
        out += ')';
    } else {
        append_atom(out, lit.atom);
    }
}

void append_schema_literal(std::string& out, const Literal& lit, bool negated) {
    if (negated) out += "(not ";
    out += '(';
    out += lit.predicate;
    for (const auto& a : lit.args) {
        out += " ?";
        out += a;
    }
    out += ')';
    if (negated) out += ')';
}

void append_params(std::string& out, const std::vector<Param>& params) {
    out += '(';
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) out += ' ';
        out += '?';
        out += params[i].name;
        out += " - ";
        out += params[i].type;
    }
    out += ')';
}

// Goal literals, one per line at the given indent, or "(and )" when empty.
void append_goal(std::string& out, const Goal& goal, int indent) {
    if (goal.empty()) {
        out += "(and )";
        return;
    }
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    std::string closing(static_cast<size_t>(indent - 1) * 2, ' ');
    out += "(and\n";
    for (const auto& lit : goal) {
        out += pad;
        append_literal(out, lit);
        out += '\n';
    }
    out += closing;
    out += ')';
}

}  // namespace

std::string to_string(const Atom& atom) {
    std::string out;
    append_atom(out, atom);
    return out;
}

std::string to_string(const GroundLiteral& lit) {
    std::string out;
    append_literal(out, lit);
    return out;
}

std::string serialize_goal(const Goal& goal) {
    std::string out;
    append_goal(out, goal, 1);
    return out;
}

std::string serialize_problem(const Problem& problem) {
    std::string out;
    out += "(define (problem " + problem.name + ")\n";
    out += "  (:domain " + problem.domain_name + ")\n";
    out += "  (:objects\n";
    for (const auto& o : problem.objects)
        out += "    " + o.name + " - " + o.type + "\n";
    out += "  )\n";
    out += "  (:init\n";
    for (const auto& atom : problem.init) {
        out += "    ";
        append_atom(out, atom);
        out += '\n';
    }
    out += "  )\n";
    out += "  (:goal ";
    append_goal(out, problem.goal, 2);
    out += ")\n";
    out += ")\n";
    return out;
}

std::string serialize_domain(const Domain& domain) {
    std::string out;
    out += "(define (domain " + domain.name + ")\n";
    out += "  (:requirements :strips :typing :negative-preconditions :equality)\n";
    if (!domain.types.empty()) {
        out += "  (:types\n";
        for (const auto& [child, parent] : domain.types)
            out += "    " + child + " - " + parent + "\n";
        out += "  )\n";
    }
    out += "  (:predicates\n";
    for (const auto& ps : domain.predicates) {
        out += "    (" + ps.name;
        for (const auto& prm : ps.params)
            out += " ?" + prm.name + " - " + prm.type;
        out += ")\n";
    }
    out += "  )\n";
    for (const auto& a : domain.actions) {
        out += "  (:action " + a.name + "\n";
        if (!a.description.empty())
            out += "    :description \"" + a.description + "\"\n";
        out += "    :parameters ";
        append_params(out, a.params);
        out += '\n';
        out += "    :precondition (and\n";
        for (const auto& lit : a.precondition) {
            out += "      ";
            append_schema_literal(out, lit, lit.negated);
            out += '\n';
        }
        out += "    )\n";
        out += "    :effect (and\n";
        for (const auto& lit : a.add_effects) {
            out += "      ";
            append_schema_literal(out, lit, false);
            out += '\n';
        }
        for (const auto& lit : a.del_effects) {
            out += "      ";
            append_schema_literal(out, lit, true);
            out += '\n';
        }
        out += "    )\n";
        out += "  )\n";
    }
    out += ")\n";
    return out;
}

}  // namespace sclplan::pddl
