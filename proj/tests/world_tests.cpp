#include <set>
#include <string>

#include "doctest.h"
#include "fixture_util.hpp"
#include "sclplan/pddl/ground.hpp"
#include "sclplan/search/solve.hpp"
#include "sclplan/world/belief.hpp"
#include "sclplan/world/scene_json.hpp"

using namespace sclplan;
using namespace sclplan::world;

namespace {

SceneGraph kitchen() {
    return load_scene_file(testutil::fixtures_dir() +
                           "/layouts/kitchen_small.json");
}

SceneGraph discover_all(SceneGraph s) {
    for (const auto& [id, e] : s.entities) s.discovered.insert(id);
    return s;
}

}  // namespace

TEST_CASE("empty scene with empty goal yields a trivial problem") {
    SceneGraph scene;
    pddl::Domain d = testutil::load_domain("alfworld");
    pddl::Problem p = to_problem(scene, d, {});
    CHECK(p.objects.empty());
    CHECK(p.goal.empty());
    pddl::StripsTask task = pddl::ground(d, p);
    CHECK(search::solve(task).solved());
    CHECK(search::solve(task).plan.cost() == 0);
}

TEST_CASE("goal over an undiscovered entity throws UnknownGoalObject") {
    SceneGraph scene = kitchen();
    scene.discovered = {"countertop-1", "table-1", "apple-1"};
    pddl::Domain d = testutil::load_domain("alfworld");
    pddl::Goal goal = {{{"in", {"apple-1", "fridge-1"}}, false}};
    try {
        to_problem(scene, d, goal);
        FAIL("expected UnknownGoalObject");
    } catch (const UnknownGoalObject& e) {
        CHECK(e.name() == "fridge-1");
    }
}

TEST_CASE("goal over a class name (not an instance) is unknown") {
    SceneGraph scene = discover_all(kitchen());
    pddl::Domain d = testutil::load_domain("alfworld");
    pddl::Goal goal = {{{"isclean", {"bowl"}}, false}};
    CHECK_THROWS_AS(to_problem(scene, d, goal), UnknownGoalObject);
}

namespace {

// Independent count of the atoms a fully discovered scene should produce:
// walks the scene directly with its own rules rather than reusing
// to_problem's emission path.
int oracle_atom_count(const SceneGraph& scene, const pddl::Domain& d) {
    int n = 0;
    auto emittable = [&](const std::string& pred, size_t arity) {
        if (pred == "isreceptacle" || pred == "ishuman") return false;
        const pddl::PredicateSchema* ps = d.find_predicate(pred);
        return ps != nullptr && ps->arity() == arity;
    };
    for (const auto& [id, e] : scene.entities) {
        if (!scene.discovered.count(id)) continue;
        for (const auto& [pred, v] : e.static_preds)
            if (v && emittable(pred, 1)) ++n;
        for (const auto& [pred, v] : e.dynamic_preds)
            if (v && emittable(pred, 1)) ++n;
    }
    for (const auto& r : scene.relations) {
        if (!scene.discovered.count(r.subject) ||
            !scene.discovered.count(r.object))
            continue;
        if (emittable(r.rel == "at" ? "at-entity" : "in", 2)) ++n;
    }
    if (scene.agent_location != kNowhere &&
        scene.discovered.count(scene.agent_location))
        ++n;
    if (!scene.holding.empty() && scene.discovered.count(scene.holding))
        ++n;
    else if (d.find_predicate("hand-empty"))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("kitchen fixture init atom count matches the enumeration oracle") {
    SceneGraph scene = discover_all(kitchen());
    pddl::Domain d = testutil::load_domain("alfworld");
    pddl::Problem p = to_problem(scene, d, {});
    CHECK(static_cast<int>(p.init.size()) == oracle_atom_count(scene, d));
    // Frozen for this fixture: 10 unary facts, 6 containment relations,
    // at-agent, hand-empty.
    CHECK(p.init.size() == 18);
    CHECK(p.objects.size() == 12);
}

TEST_CASE("to_problem is pure") {
    SceneGraph scene = discover_all(kitchen());
    pddl::Domain d = testutil::load_domain("alfworld");
    pddl::Goal goal = {{{"holding", {"apple-1"}}, false}};
    CHECK(to_problem(scene, d, goal) == to_problem(scene, d, goal));
}

TEST_CASE("every emitted predicate exists in the domain schema list") {
    pddl::Domain d = testutil::load_domain("alfworld");
    SceneGraph full = discover_all(kitchen());
    SceneGraph partial = kitchen();
    partial.discovered = {"countertop-1", "apple-1", "fridge-1"};
    for (const SceneGraph& scene : {full, partial}) {
        pddl::Problem p = to_problem(scene, d, {});
        for (const auto& atom : p.init) {
            const pddl::PredicateSchema* ps = d.find_predicate(atom.predicate);
            REQUIRE(ps != nullptr);
            CHECK(ps->arity() == atom.args.size());
        }
    }
}

TEST_CASE("init atoms correspond one-to-one with scene facts") {
    pddl::Domain d = testutil::load_domain("alfworld");
    SceneGraph scene = discover_all(kitchen());
    pddl::Problem p = to_problem(scene, d, {});

    std::set<pddl::Atom> atoms(p.init.begin(), p.init.end());
    CHECK(atoms.size() == p.init.size());  // no duplicates

    // Forward: every scene fact that the domain can express appears.
    for (const auto& r : scene.relations)
        CHECK(atoms.count({"in", {r.subject, r.object}}) == 1);
    CHECK(atoms.count({"at-agent", {scene.agent_location}}) == 1);
    for (const auto& [id, e] : scene.entities)
        for (const auto& [pred, v] : e.static_preds)
            if (v && d.find_predicate(pred) &&
                d.find_predicate(pred)->arity() == 1)
                CHECK(atoms.count({pred, {id}}) == 1);

    // Backward: every atom maps back to a scene fact.
    for (const auto& atom : p.init) {
        if (atom.predicate == "in") {
            bool found = scene.relations.count(
                             {atom.args[0], "in", atom.args[1]}) ||
                         scene.relations.count(
                             {atom.args[0], "on", atom.args[1]});
            CHECK(found);
        } else if (atom.predicate == "at-agent") {
            CHECK(atom.args[0] == scene.agent_location);
        } else if (atom.predicate == "hand-empty") {
            CHECK(scene.holding.empty());
        } else {
            REQUIRE(atom.args.size() == 1);
            const Entity* e = scene.find(atom.args[0]);
            REQUIRE(e != nullptr);
            CHECK(e->flag(atom.predicate));
        }
    }
}

TEST_CASE("belief problem is plannable once enough is discovered") {
    pddl::Domain d = testutil::load_domain("alfworld");
    SceneGraph scene = kitchen();
    scene.discovered = {"countertop-1", "apple-1", "fridge-1"};
    pddl::Goal goal = {{{"iscold", {"apple-1"}}, false}};
    pddl::Problem p = to_problem(scene, d, goal);
    pddl::StripsTask task = pddl::ground(d, p);
    search::SolveOutcome o = search::solve(task);
    REQUIRE(o.solved());
    // take, go to fridge, cool (cooling does not need the door open)
    CHECK(o.plan.cost() == 3);
    CHECK(o.plan.cost() == search::solve_oracle(task).plan.cost());
}

TEST_CASE("merge adds revealed entities to the discovered set") {
    SceneGraph scene;
    Observation obs;
    Entity apple;
    apple.id = "apple-1";
    apple.cls = "apple";
    apple.static_preds["pickupable"] = true;
    Entity table;
    table.id = "table-1";
    table.cls = "table";
    table.static_preds["isreceptacle"] = true;
    obs.revealed = {apple, table};
    obs.revealed_relations = {{"apple-1", "on", "table-1"}};

    SceneGraph merged = merge_observation(scene, obs);
    CHECK(merged.discovered.size() == 2);
    CHECK(merged.has("apple-1"));
    CHECK(merged.relations.count({"apple-1", "on", "table-1"}) == 1);
}

TEST_CASE("predicate delta shows up in the next problem") {
    pddl::Domain d = testutil::load_domain("alfworld");
    SceneGraph scene = discover_all(kitchen());

    Observation obs;
    obs.deltas = {Delta::set_pred("fridge-1", "isopen", true),
                  Delta::set_pred("fridge-1", "accessible", true)};
    SceneGraph merged = merge_observation(scene, obs);

    pddl::Problem p = to_problem(merged, d, {});
    std::set<pddl::Atom> atoms(p.init.begin(), p.init.end());
    CHECK(atoms.count({"isopen", {"fridge-1"}}) == 1);
    CHECK(atoms.count({"accessible", {"fridge-1"}}) == 1);
}

TEST_CASE("merging the same observation twice equals merging once") {
    SceneGraph scene = kitchen();
    scene.discovered = {"countertop-1"};

    Observation obs;
    Entity mug;
    mug.id = "mug-9";
    mug.cls = "mug";
    mug.static_preds["pickupable"] = true;
    obs.revealed = {mug};
    obs.revealed_relations = {{"mug-9", "on", "countertop-1"}};
    obs.deltas = {Delta::agent_at("countertop-1"),
                  Delta::set_pred("countertop-1", "visited", true),
                  Delta::remove_rel("apple-1", "on", "countertop-1")};

    SceneGraph once = merge_observation(scene, obs);
    SceneGraph twice = merge_observation(once, obs);
    CHECK(once == twice);
}

TEST_CASE("deltas over unknown entities are skipped") {
    SceneGraph scene = kitchen();
    Observation obs;
    obs.deltas = {Delta::set_pred("ghost-1", "isopen", true),
                  Delta::add_rel("ghost-1", "in", "fridge-1")};
    SceneGraph merged = merge_observation(scene, obs);
    CHECK(merged == scene);
}

TEST_CASE("static predicates are immune to deltas") {
    SceneGraph scene = discover_all(kitchen());
    Observation obs;
    obs.deltas = {Delta::set_pred("fridge-1", "openable", false)};
    SceneGraph merged = merge_observation(scene, obs);
    CHECK(merged.entities.at("fridge-1").flag("openable"));
}

TEST_CASE("entity removal cleans relations and holding") {
    SceneGraph scene = discover_all(kitchen());
    scene.holding = "apple-1";
    scene.relations.erase({"apple-1", "on", "countertop-1"});

    Observation obs;
    obs.deltas = {Delta::remove_entity("apple-1")};
    SceneGraph merged = merge_observation(scene, obs);
    CHECK(!merged.has("apple-1"));
    CHECK(merged.holding.empty());
    CHECK(!merged.discovered.count("apple-1"));
}

TEST_CASE("scene loader rejects malformed fixtures") {
    SUBCASE("dangling relation") {
        CHECK_THROWS_AS(load_scene_json(R"({
            "entities": [{"id": "a", "class": "x"}],
            "relations": [["a", "in", "b"]]
        })"),
                        std::runtime_error);
    }
    SUBCASE("duplicate id") {
        CHECK_THROWS_AS(load_scene_json(R"({
            "entities": [{"id": "a", "class": "x"}, {"id": "a", "class": "y"}]
        })"),
                        std::runtime_error);
    }
    SUBCASE("holding a non-pickupable entity") {
        CHECK_THROWS_AS(load_scene_json(R"({
            "entities": [{"id": "rock-1", "class": "rock"}],
            "agent": {"location": null, "holding": "rock-1"}
        })"),
                        std::runtime_error);
    }
    SUBCASE("unknown relation kind") {
        CHECK_THROWS_AS(load_scene_json(R"({
            "entities": [{"id": "a", "class": "x"}, {"id": "b", "class": "y"}],
            "relations": [["a", "under", "b"]]
        })"),
                        std::runtime_error);
    }
}

TEST_CASE("loader normalizes identifiers to lower case") {
    SceneGraph s = load_scene_json(R"({
        "entities": [{"id": "Fridge-1", "class": "Fridge",
                      "static": {"IsReceptacle": true, "Openable": true}}],
        "agent": {"location": "fridge-1"}
    })");
    CHECK(s.has("fridge-1"));
    CHECK(s.entities.at("fridge-1").is_receptacle());
    CHECK(s.agent_location == "fridge-1");
}
