#ifndef SCENEFST_APP_SCENE_SET_H_
#define SCENEFST_APP_SCENE_SET_H_

#include <filesystem>
#include <vector>

#include "scenefst/scene/grid.h"

namespace scenefst {

// Expands each argument into scene directories: a directory holding
// grid.txt is a scene, any other directory contributes its scene
// subdirectories. The result is sorted by scene name and deduplicated.
// Throws InputError for missing paths or when nothing is found.
std::vector<std::filesystem::path> CollectSceneDirs(
    const std::vector<std::filesystem::path>& paths);

std::vector<SuperpixelGrid> LoadScenes(const std::vector<std::filesystem::path>& dirs);

}  // namespace scenefst

#endif  // SCENEFST_APP_SCENE_SET_H_
