#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sclplan/sim/action_language.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::sim {

// Scripted dialogue behavior for one human, defined per task. The human
// hands over `yields` once `wants` has been brought to their location and
// they are spoken to; before that, speaking earns the demand line.
struct DialogueSpec {
    std::string human;
    std::string wants;
    std::string yields;
    std::string demand_text;
    std::string yield_text;
    std::string thanks_text = "Thank you!";
};

// What one rule firing changes. New entities (slicing) arrive revealed-ready
// with their placement relations.
struct RuleEffect {
    std::vector<world::Delta> deltas;
    std::vector<world::Entity> new_entities;
    std::vector<world::Relation> new_relations;
    std::string message;  // dialogue line, empty for physics

    bool empty() const {
        return deltas.empty() && new_entities.empty() &&
               new_relations.empty() && message.empty();
    }
};

// Environment physics and dialogue: evaluated against ground truth after
// every executed action, applied first-match and re-run to fixpoint.
struct ImplicitRule {
    std::string name;
    std::function<RuleEffect(const world::SceneGraph&)> eval;
};

// Slicing replaces the parent with this many pieces (entity count change per
// slice event is kSlicePieces - 1).
inline constexpr int kSlicePieces = 2;

std::vector<ImplicitRule> rule_table(ActionSet set,
                                     const std::vector<DialogueSpec>& dialogue);

// True when the wanted item sits at the human's own location.
bool dialogue_wants_met(const world::SceneGraph& truth, const DialogueSpec& d);

}  // namespace sclplan::sim
