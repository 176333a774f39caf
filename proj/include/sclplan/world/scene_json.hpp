#pragma once

#include <string_view>

#include "sclplan/world/scene.hpp"

namespace sclplan::world {

// Loads a scene fixture. Expected shape:
//   {
//     "entities": [{"id": "...", "class": "...",
//                   "static": {...}, "dynamic": {...}, "hidden": false}],
//     "relations": [["subject", "in|on|at", "object"]],
//     "agent": {"location": "...", "holding": null},
//     "discovered": ["..."]   // optional, defaults to empty
//   }
// Throws std::runtime_error on malformed input or dangling references.
SceneGraph load_scene_json(std::string_view text);

SceneGraph load_scene_file(const std::string& path);

}  // namespace sclplan::world
