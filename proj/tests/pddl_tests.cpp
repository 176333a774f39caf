#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixture_util.hpp"
#include "sclplan/pddl/ground.hpp"
#include "sclplan/pddl/parser.hpp"
#include "sclplan/pddl/serialize.hpp"
#include "sclplan/pddl/validate.hpp"

using namespace sclplan::pddl;

namespace {

const char* kMiniDomain = R"(
(define (domain mini)
  (:requirements :strips)
  (:predicates (lit))
  (:action ignite
    :parameters ()
    :precondition (and (not (lit)))
    :effect (and (lit))
  )
)
)";

Domain mini() { return parse_domain(kMiniDomain); }

}  // namespace

TEST_CASE("domain with one nullary predicate and one param-free action") {
    Domain d = mini();
    CHECK(d.name == "mini");
    CHECK(d.predicates.size() == 1);
    CHECK(d.actions.size() == 1);
    CHECK(d.actions[0].name == "ignite");
    CHECK(d.actions[0].params.empty());
    CHECK(d.actions[0].precondition.size() == 1);
    CHECK(d.actions[0].precondition[0].negated);
    CHECK(d.actions[0].add_effects.size() == 1);
    CHECK(d.actions[0].del_effects.empty());
}

TEST_CASE("bundled household domain has the nine expected actions") {
    Domain d = testutil::load_domain("alfworld");
    REQUIRE(d.actions.size() == 9);
    std::set<std::string> names;
    for (const auto& a : d.actions) names.insert(a.name);
    std::set<std::string> expected = {"go-to", "open",   "clean",
                                      "take",  "close",  "heat",
                                      "put",   "toggle", "cool"};
    CHECK(names == expected);
    for (const auto& a : d.actions) CHECK(!a.description.empty());
}

TEST_CASE("truncated input gives a parse error at end of input") {
    std::string text = kMiniDomain;
    text = text.substr(0, text.rfind(')'));
    CHECK_THROWS_AS(parse_domain(text), ParseError);
    try {
        parse_domain(text);
    } catch (const ParseError& e) {
        // The mini domain source has a trailing newline we cut off with the
        // paren, so the error lands past the last remaining line.
        CHECK(e.line() >= 8);
    }
}

TEST_CASE("identifier casing is normalized") {
    Domain d = parse_domain(R"(
(define (domain CaseTest)
  (:requirements :STRIPS :Typing)
  (:types Recep - Object)
  (:predicates (At-Agent ?R - Recep))
  (:action Go
    :parameters (?A - Recep ?B - Recep)
    :precondition (and (AT-AGENT ?A))
    :effect (and (at-agent ?B) (not (At-Agent ?A)))
  )
)
)");
    CHECK(d.name == "casetest");
    CHECK(d.predicates[0].name == "at-agent");
    CHECK(d.actions[0].precondition[0].predicate == "at-agent");
    CHECK(d.actions[0].params[0].name == "a");
}

TEST_CASE("unknown requirement flag is rejected") {
    CHECK_THROWS_AS(parse_domain(R"(
(define (domain bad)
  (:requirements :strips :adl)
  (:predicates (p))
)
)"),
                    SemanticError);
}

TEST_CASE("semantic checks on schemas") {
    SUBCASE("undeclared predicate") {
        CHECK_THROWS_AS(parse_domain(R"(
(define (domain bad)
  (:predicates (p))
  (:action a :parameters () :precondition (and (q)) :effect (and (p)))
)
)"),
                        SemanticError);
    }
    SUBCASE("arity mismatch") {
        CHECK_THROWS_AS(parse_domain(R"(
(define (domain bad)
  (:types t - object)
  (:predicates (p ?x - t))
  (:action a :parameters (?x - t) :precondition (and (p ?x ?x)) :effect (and (p ?x)))
)
)"),
                        SemanticError);
    }
    SUBCASE("unbound variable") {
        CHECK_THROWS_AS(parse_domain(R"(
(define (domain bad)
  (:types t - object)
  (:predicates (p ?x - t))
  (:action a :parameters (?x - t) :precondition (and (p ?y)) :effect (and (p ?x)))
)
)"),
                        SemanticError);
    }
    SUBCASE("literal in both add and delete effects") {
        CHECK_THROWS_AS(parse_domain(R"(
(define (domain bad)
  (:predicates (p))
  (:action a :parameters () :precondition (and) :effect (and (p) (not (p))))
)
)"),
                        SemanticError);
    }
    SUBCASE("type cycle") {
        CHECK_THROWS_AS(parse_domain(R"(
(define (domain bad)
  (:types a - b b - a)
  (:predicates (p))
)
)"),
                        SemanticError);
    }
}

TEST_CASE("empty problem is valid") {
    Domain d = mini();
    Problem p = parse_problem(R"(
(define (problem empty)
  (:domain mini)
  (:objects )
  (:init )
  (:goal (and ))
)
)",
                              d);
    CHECK(p.objects.empty());
    CHECK(p.init.empty());
    CHECK(p.goal.empty());
}

TEST_CASE("undeclared object in init is named in the error") {
    Domain d = testutil::load_domain("alfworld");
    try {
        parse_problem(R"(
(define (problem bad)
  (:domain alfworld)
  (:objects table-1 - recep)
  (:init (holding apple-1))
  (:goal (and ))
)
)",
                      d);
        FAIL("expected SemanticError");
    } catch (const SemanticError& e) {
        CHECK(e.message().find("apple-1") != std::string::npos);
    }
}

TEST_CASE("problem round-trips through the serializer") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(
        testutil::read_file(testutil::fixtures_dir() +
                            "/pddl/apple_fridge.problem.pddl"),
        d);
    Problem again = parse_problem(serialize_problem(p), d);
    CHECK(again == p);
}

TEST_CASE("domain round-trips through the serializer") {
    Domain d = testutil::load_domain("alfworld");
    Domain again = parse_domain(serialize_domain(d));
    CHECK(again == d);
}

TEST_CASE("serializer golden layout") {
    Domain d = mini();
    Problem p;
    p.name = "golden";
    p.domain_name = "mini";
    CHECK(serialize_goal(p.goal) == "(and )");
    CHECK(serialize_problem(p) ==
          "(define (problem golden)\n"
          "  (:domain mini)\n"
          "  (:objects\n"
          "  )\n"
          "  (:init\n"
          "  )\n"
          "  (:goal (and ))\n"
          ")\n");

    Goal g;
    g.push_back({{"lit", {}}, false});
    g.push_back({{"lit", {}}, true});
    CHECK(serialize_goal(g) == "(and\n  (lit)\n  (not (lit))\n)");
}

TEST_CASE("serialized atom argument order is preserved") {
    Atom a{"in", {"apple-1", "fridge-1"}};
    CHECK(to_string(a) == "(in apple-1 fridge-1)");
    Atom b{"in", {"fridge-1", "apple-1"}};
    CHECK(to_string(b) == "(in fridge-1 apple-1)");
}

TEST_CASE("goal parsing") {
    Domain d = testutil::load_domain("alfworld");
    std::vector<TypedObject> objs = {{"bowl-1", "item"},
                                     {"cabinet-2", "recep"},
                                     {"egg-1", "item"}};

    SUBCASE("direct conjunction") {
        Goal g = parse_goal("(and (isClean bowl-1) (in bowl-1 cabinet-2))", d,
                            objs);
        REQUIRE(g.size() == 2);
        CHECK(g[0].atom.predicate == "isclean");
        CHECK(g[1].atom.args ==
              std::vector<std::string>{"bowl-1", "cabinet-2"});
    }
    SUBCASE("extraction from prose") {
        Goal g = parse_goal("The goal is: (isHot egg-1)", d, objs);
        REQUIRE(g.size() == 1);
        CHECK(g[0].atom.predicate == "ishot");
        CHECK(!g[0].negated);
    }
    SUBCASE("unknown predicate is named") {
        try {
            parse_goal("(and (isShiny bowl-1))", d, objs);
            FAIL("expected GoalParseError");
        } catch (const GoalParseError& e) {
            CHECK(e.message().find("isshiny") != std::string::npos);
        }
    }
    SUBCASE("unknown object is named") {
        try {
            parse_goal("(and (isclean mug-3))", d, objs);
            FAIL("expected GoalParseError");
        } catch (const GoalParseError& e) {
            CHECK(e.message().find("mug-3") != std::string::npos);
        }
    }
    SUBCASE("tolerant mode defers object checks") {
        GoalParseOptions opts;
        opts.check_objects = false;
        Goal g = parse_goal("(and (isclean mug-3))", d, objs, opts);
        REQUIRE(g.size() == 1);
        CHECK(g[0].atom.args[0] == "mug-3");
    }
    SUBCASE("negated literal") {
        Goal g = parse_goal("(and (not (holding egg-1)))", d, objs);
        REQUIRE(g.size() == 1);
        CHECK(g[0].negated);
    }
    SUBCASE("no extractable expression") {
        CHECK_THROWS_AS(parse_goal("I cannot produce a goal.", d, objs),
                        GoalParseError);
    }
    SUBCASE("prose with only an unknown head names it") {
        try {
            parse_goal("maybe (frobnicate bowl-1) works", d, objs);
            FAIL("expected GoalParseError");
        } catch (const GoalParseError& e) {
            CHECK(e.message().find("frobnicate") != std::string::npos);
        }
    }
    SUBCASE("first and-expression wins over earlier literals") {
        Goal g = parse_goal(
            "(isclean bowl-1) then (and (ishot egg-1))", d, objs);
        REQUIRE(g.size() == 1);
        CHECK(g[0].atom.predicate == "ishot");
    }
}

namespace {

// Independent grounding oracle: enumerates typed bindings per schema with
// plain string sets, applies the equality filter, then runs the relaxed
// reachability fixpoint. Shares no code with ground().
struct OracleGround {
    int total_instantiations = 0;
    int reachable_actions = 0;
};

OracleGround oracle_ground(const Domain& d, const Problem& p) {
    struct Inst {
        std::vector<std::string> pre;
        std::vector<std::string> add;
    };
    auto atom_key = [](const std::string& pred,
                       const std::vector<std::string>& args) {
        std::string k = pred;
        for (const auto& a : args) k += " " + a;
        return k;
    };

    std::vector<Inst> insts;
    int total = 0;
    for (const auto& schema : d.actions) {
        std::vector<std::vector<std::string>> choices;
        for (const auto& prm : schema.params) {
            std::vector<std::string> c;
            for (const auto& o : p.objects)
                if (d.is_subtype(o.type, prm.type)) c.push_back(o.name);
            choices.push_back(c);
        }
        std::vector<size_t> idx(schema.params.size(), 0);
        bool done = schema.params.empty() ? false : choices[0].empty();
        // When the schema has no params there is exactly one instantiation.
        size_t combos = 1;
        for (const auto& c : choices) combos *= c.size();
        for (size_t n = 0; n < combos && !done; ++n) {
            std::vector<std::string> binding;
            size_t rem = n;
            for (size_t i = 0; i < choices.size(); ++i) {
                binding.push_back(choices[i][rem % choices[i].size()]);
                rem /= choices[i].size();
            }
            auto subst = [&](const Literal& lit) {
                std::vector<std::string> args;
                for (const auto& v : lit.args) {
                    size_t pi = 0;
                    while (schema.params[pi].name != v) ++pi;
                    args.push_back(binding[pi]);
                }
                return args;
            };
            bool eq_ok = true;
            Inst inst;
            for (const auto& lit : schema.precondition) {
                auto args = subst(lit);
                if (lit.predicate == "=") {
                    if ((args[0] == args[1]) == lit.negated) eq_ok = false;
                } else if (!lit.negated) {
                    inst.pre.push_back(atom_key(lit.predicate, args));
                }
            }
            if (!eq_ok) continue;
            ++total;
            for (const auto& lit : schema.add_effects)
                inst.add.push_back(atom_key(lit.predicate, subst(lit)));
            insts.push_back(inst);
        }
    }

    std::set<std::string> reach;
    for (const auto& a : p.init) reach.insert(atom_key(a.predicate, a.args));
    std::set<size_t> fired;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < insts.size(); ++i) {
            if (fired.count(i)) continue;
            bool ok = true;
            for (const auto& pre : insts[i].pre)
                if (!reach.count(pre)) ok = false;
            if (!ok) continue;
            fired.insert(i);
            changed = true;
            for (const auto& a : insts[i].add) reach.insert(a);
        }
    }

    OracleGround og;
    og.total_instantiations = total;
    og.reachable_actions = static_cast<int>(fired.size());
    return og;
}

}  // namespace

TEST_CASE("cartesian instantiation of a one-parameter schema") {
    Domain d = parse_domain(R"(
(define (domain movers)
  (:types recep - object)
  (:predicates (visited ?r - recep) (ready))
  (:action move
    :parameters (?r - recep)
    :precondition (and (ready))
    :effect (and (visited ?r))
  )
)
)");
    Problem p = parse_problem(R"(
(define (problem two)
  (:domain movers)
  (:objects a - recep b - recep)
  (:init (ready))
  (:goal (and (visited a)))
)
)",
                              d);
    StripsTask task = ground(d, p);
    CHECK(task.actions.size() == 2);
}

TEST_CASE("grounding matches the independent enumeration oracle") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(
        testutil::read_file(testutil::fixtures_dir() +
                            "/pddl/apple_fridge.problem.pddl"),
        d);

    OracleGround og = oracle_ground(d, p);
    StripsTask pruned = ground(d, p);
    StripsTask full = ground(d, p, {.prune = false});

    CHECK(static_cast<int>(pruned.actions.size()) == og.reachable_actions);
    CHECK(static_cast<int>(full.actions.size()) == og.total_instantiations);
    // Frozen oracle values for this fixture.
    CHECK(og.reachable_actions == 9);
    CHECK(og.total_instantiations == 18);
}

TEST_CASE("type filter excludes incompatible bindings") {
    Domain d = parse_domain(R"(
(define (domain typed)
  (:types recep - object human - object)
  (:predicates (checked ?r - recep))
  (:action check
    :parameters (?r - recep)
    :precondition (and )
    :effect (and (checked ?r))
  )
)
)");
    Problem p = parse_problem(R"(
(define (problem one)
  (:domain typed)
  (:objects shelf-1 - recep alice - human)
  (:init )
  (:goal (and (checked shelf-1)))
)
)",
                              d);
    StripsTask task = ground(d, p);
    REQUIRE(task.actions.size() == 1);
    CHECK(task.actions[0].args == std::vector<std::string>{"shelf-1"});
}

TEST_CASE("subtype objects satisfy parent-typed parameters") {
    Domain d = parse_domain(R"(
(define (domain subty)
  (:types thing - object gadget - thing)
  (:predicates (poked ?t - thing))
  (:action poke
    :parameters (?t - thing)
    :precondition (and )
    :effect (and (poked ?t))
  )
)
)");
    Problem p = parse_problem(R"(
(define (problem st)
  (:domain subty)
  (:objects g - gadget t - thing)
  (:init )
  (:goal (and (poked g)))
)
)",
                              d);
    CHECK(ground(d, p).actions.size() == 2);
}

TEST_CASE("pruned positive goal atom flags the task impossible") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(R"(
(define (problem nohot)
  (:domain alfworld)
  (:objects table-1 - recep apple-1 - item)
  (:init (at-agent table-1) (accessible table-1) (in apple-1 table-1)
         (hand-empty))
  (:goal (and (ishot apple-1)))
)
)",
                              d);
    StripsTask task = ground(d, p);
    CHECK(task.goal_impossible);
}

TEST_CASE("negative goal on a pruned atom is vacuously satisfied") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(R"(
(define (problem nothot)
  (:domain alfworld)
  (:objects table-1 - recep apple-1 - item)
  (:init (at-agent table-1) (accessible table-1) (in apple-1 table-1)
         (hand-empty))
  (:goal (and (not (ishot apple-1))))
)
)",
                              d);
    StripsTask task = ground(d, p);
    CHECK(!task.goal_impossible);
    CHECK(task.goal.empty());
}

TEST_CASE("ground action index sets stay inside the universe") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(
        testutil::read_file(testutil::fixtures_dir() +
                            "/pddl/apple_fridge.problem.pddl"),
        d);
    for (bool prune : {true, false}) {
        StripsTask task = ground(d, p, {.prune = prune});
        int n = task.num_atoms();
        for (const auto& a : task.actions) {
            for (int i : a.pre_pos) CHECK((i >= 0 && i < n));
            for (int i : a.pre_neg) CHECK((i >= 0 && i < n));
            for (int i : a.add) CHECK((i >= 0 && i < n));
            for (int i : a.del) CHECK((i >= 0 && i < n));
            // add and del disjoint
            for (int i : a.add)
                CHECK(std::find(a.del.begin(), a.del.end(), i) == a.del.end());
        }
        for (int i : task.init) CHECK((i >= 0 && i < n));
    }
}

TEST_CASE("ground action bindings re-derive to compatible types") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(
        testutil::read_file(testutil::fixtures_dir() +
                            "/pddl/apple_fridge.problem.pddl"),
        d);
    StripsTask task = ground(d, p);
    for (const auto& ga : task.actions) {
        const ActionSchema* schema = d.find_action(ga.schema);
        REQUIRE(schema != nullptr);
        REQUIRE(ga.args.size() == schema->params.size());
        for (size_t i = 0; i < ga.args.size(); ++i) {
            const TypedObject* obj = p.find_object(ga.args[i]);
            REQUIRE(obj != nullptr);
            CHECK(d.is_subtype(obj->type, schema->params[i].type));
        }
    }
}

TEST_CASE("empty plan on an already-satisfied task validates") {
    Domain d = mini();
    Problem p = parse_problem(R"(
(define (problem done)
  (:domain mini)
  (:init (lit))
  (:goal (and (lit)))
)
)",
                              d);
    StripsTask task = ground(d, p);
    PlanTrace trace = validate_plan(task, {});
    CHECK(trace.valid);
    CHECK(trace.states.size() == 1);
    CHECK(trace.violation_index == -1);
}

TEST_CASE("violation reported at the first failing action") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(
        testutil::read_file(testutil::fixtures_dir() +
                            "/pddl/apple_fridge.problem.pddl"),
        d);
    StripsTask task = ground(d, p);

    auto find_action = [&](const std::string& display) {
        for (int i = 0; i < static_cast<int>(task.actions.size()); ++i)
            if (task.actions[static_cast<size_t>(i)].display() == display)
                return i;
        FAIL("no such action: " << display);
        return -1;
    };

    // take deletes hand-empty, so a second take cannot apply.
    int take = find_action("take apple-1 table-1");
    PlanTrace trace = validate_plan(task, {take, take});
    CHECK(!trace.valid);
    CHECK(trace.violation_index == 1);
    CHECK(trace.states.size() == 2);
}

TEST_CASE("validate_plan is total over arbitrary index sequences") {
    Domain d = testutil::load_domain("alfworld");
    Problem p = parse_problem(
        testutil::read_file(testutil::fixtures_dir() +
                            "/pddl/apple_fridge.problem.pddl"),
        d);
    StripsTask task = ground(d, p);
    PlanTrace t1 = validate_plan(task, {9999});
    CHECK(!t1.valid);
    CHECK(t1.violation_index == 0);
    PlanTrace t2 = validate_plan(task, {-3});
    CHECK(t2.violation_index == 0);
}
