#ifndef SCENEFST_SCENE_SCENE_IO_H_
#define SCENEFST_SCENE_SCENE_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "scenefst/scene/grid.h"

namespace scenefst {

// Scene directory layout:
//   grid.txt      "rows cols"
//   features.tsv  one row per cell: cell_id then D tab-separated reals
//   labels.tsv    optional, one row per cell: cell_id<TAB>label
// Feature rows are L1-normalized on load; a warning is logged when the
// correction exceeds 1e-6. The scene name is the directory name.
SuperpixelGrid ReadScene(const std::filesystem::path& dir);
void WriteScene(const SuperpixelGrid& grid, const std::filesystem::path& dir);

// `cell_id<TAB>label` rows covering cells 0..n-1 exactly once.
std::vector<std::string> ReadLabelMap(const std::filesystem::path& file, std::size_t n);
void WriteLabelMap(const std::vector<std::string>& labels, const std::filesystem::path& file);

}  // namespace scenefst

#endif  // SCENEFST_SCENE_SCENE_IO_H_
