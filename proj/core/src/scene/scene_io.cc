#include "scenefst/scene/scene_io.h"

#include <fstream>
#include <optional>

#include <spdlog/spdlog.h>

#include "scenefst/errors.h"
#include "scenefst/text_util.h"

namespace scenefst {
namespace fs = std::filesystem;

namespace {

std::ifstream OpenInput(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open " + file.string());
  return in;
}

std::ofstream OpenOutput(const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + file.string());
  return out;
}

std::string StripCr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

SuperpixelGrid ReadScene(const fs::path& dir) {
  const std::string where = dir.string();
  int rows = 0;
  int cols = 0;
  {
    auto in = OpenInput(dir / "grid.txt");
    if (!(in >> rows >> cols) || rows < 1 || cols < 1) {
      throw InputError(where + "/grid.txt: expected two positive integers");
    }
  }
  const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);

  std::vector<std::optional<Histogram>> rows_read(n);
  {
    auto in = OpenInput(dir / "features.tsv");
    std::string line;
    while (std::getline(in, line)) {
      line = StripCr(std::move(line));
      if (line.empty()) continue;
      const auto fields = SplitTabs(line);
      const auto cell = ParseUnsigned(fields[0], where + "/features.tsv cell id");
      if (cell >= n || rows_read[cell]) {
        throw InputError(where + "/features.tsv: cell " + std::to_string(cell) +
                         " out of range or repeated");
      }
      Histogram h;
      h.reserve(fields.size() - 1);
      for (std::size_t i = 1; i < fields.size(); ++i) {
        h.push_back(ParseDouble(fields[i], where + "/features.tsv"));
      }
      rows_read[cell] = std::move(h);
    }
  }
  std::vector<Histogram> features;
  features.reserve(n);
  double worst = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (!rows_read[c]) {
      throw InputError(where + "/features.tsv: missing cell " + std::to_string(c));
    }
    for (double v : *rows_read[c]) {
      if (v < 0.0) {
        throw InputError(where + "/features.tsv: negative feature at cell " +
                         std::to_string(c));
      }
    }
    worst = std::max(worst, NormalizeL1(*rows_read[c]));
    features.push_back(std::move(*rows_read[c]));
  }
  if (worst > 1e-6) {
    spdlog::warn("{}: feature rows renormalized (largest L1 correction {})", where, worst);
  }

  std::vector<std::string> labels;
  if (fs::exists(dir / "labels.tsv")) labels = ReadLabelMap(dir / "labels.tsv", n);
  return SuperpixelGrid(rows, cols, std::move(features), std::move(labels),
                        dir.filename().string());
}

void WriteScene(const SuperpixelGrid& grid, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
  {
    auto out = OpenOutput(dir / "grid.txt");
    out << grid.rows() << ' ' << grid.cols() << '\n';
  }
  {
    auto out = OpenOutput(dir / "features.tsv");
    for (CellId c = 0; c < grid.size(); ++c) {
      out << c;
      for (double v : grid.features(c)) out << '\t' << FormatDouble(v);
      out << '\n';
    }
  }
  if (grid.has_labels()) WriteLabelMap(grid.labels(), dir / "labels.tsv");
}

std::vector<std::string> ReadLabelMap(const fs::path& file, std::size_t n) {
  auto in = OpenInput(file);
  std::vector<std::string> labels(n);
  std::string line;
  while (std::getline(in, line)) {
    line = StripCr(std::move(line));
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields.size() != 2 || fields[1].empty()) {
      throw InputError(file.string() + ": expected cell_id<TAB>label rows");
    }
    const auto cell = ParseUnsigned(fields[0], file.string());
    if (cell >= n || !labels[cell].empty()) {
      throw InputError(file.string() + ": cell " + std::to_string(cell) +
                       " out of range or repeated");
    }
    labels[cell] = std::string(fields[1]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (labels[c].empty()) {
      throw InputError(file.string() + ": missing label for cell " + std::to_string(c));
    }
  }
  return labels;
}

void WriteLabelMap(const std::vector<std::string>& labels, const fs::path& file) {
  auto out = OpenOutput(file);
  for (std::size_t c = 0; c < labels.size(); ++c) out << c << '\t' << labels[c] << '\n';
}

}  // namespace scenefst
