#ifndef SCENEFST_SCENE_GRID_H_
#define SCENEFST_SCENE_GRID_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scenefst {

using CellId = std::uint32_t;
using Histogram = std::vector<double>;

// Observed scene: a rows x cols grid of L1-normalized feature histograms.
// Cells are numbered row-major. Labels are present only for training and
// evaluation scenes.
class SuperpixelGrid {
 public:
  static constexpr double kNormTolerance = 1e-9;

  // Throws InputError when the geometry, histogram dimensions, sign or
  // normalization (within kNormTolerance) are violated.
  SuperpixelGrid(int rows, int cols, std::vector<Histogram> features,
                 std::vector<std::string> labels = {}, std::string name = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return features_.size(); }
  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }

  std::span<const double> features(CellId cell) const { return features_.at(cell); }
  const std::vector<Histogram>& all_features() const { return features_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(CellId cell) const { return labels_.at(cell); }
  const std::vector<std::string>& labels() const { return labels_; }

  CellId cell(int row, int col) const { return static_cast<CellId>(row * cols_ + col); }
  int row_of(CellId cell) const { return static_cast<int>(cell) / cols_; }
  int col_of(CellId cell) const { return static_cast<int>(cell) % cols_; }

 private:
  int rows_;
  int cols_;
  std::size_t dim_ = 0;
  std::vector<Histogram> features_;
  std::vector<std::string> labels_;
  std::string name_;
};

// Scales `h` to unit L1 norm in place and returns the absolute correction
// |sum - 1| that was applied. An all-zero histogram becomes uniform.
double NormalizeL1(Histogram& h);

}  // namespace scenefst

#endif  // SCENEFST_SCENE_GRID_H_
