#include "scenefst/app/scene_set.h"

#include <algorithm>

#include "scenefst/errors.h"
#include "scenefst/scene/scene_io.h"

namespace scenefst {
namespace fs = std::filesystem;

namespace {

bool IsSceneDir(const fs::path& dir) { return fs::is_regular_file(dir / "grid.txt"); }

}  // namespace

std::vector<fs::path> CollectSceneDirs(const std::vector<fs::path>& paths) {
  std::vector<fs::path> dirs;
  for (const fs::path& path : paths) {
    if (!fs::is_directory(path)) throw InputError("not a directory: " + path.string());
    if (IsSceneDir(path)) {
      dirs.push_back(path);
      continue;
    }
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_directory() && IsSceneDir(entry.path())) dirs.push_back(entry.path());
    }
  }
  if (dirs.empty()) throw InputError("no scene directories found");
  std::sort(dirs.begin(), dirs.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename() != b.filename() ? a.filename() < b.filename() : a < b;
  });
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  return dirs;
}

std::vector<SuperpixelGrid> LoadScenes(const std::vector<fs::path>& dirs) {
  std::vector<SuperpixelGrid> scenes;
  scenes.reserve(dirs.size());
  for (const fs::path& dir : dirs) scenes.push_back(ReadScene(dir));
  return scenes;
}

}  // namespace scenefst
