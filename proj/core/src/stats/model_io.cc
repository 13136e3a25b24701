#include "scenefst/stats/model_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "scenefst/errors.h"
#include "scenefst/text_util.h"

namespace scenefst {
namespace {

constexpr std::string_view kMagic = "scenefst-model";

std::string Expect(std::istream& is, std::string_view key, std::size_t& line_no) {
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields[0] != key) {
      throw InputError("model line " + std::to_string(line_no) + ": expected '" +
                       std::string(key) + "'");
    }
    return line;
  }
  throw InputError("model file truncated: missing '" + std::string(key) + "'");
}

}  // namespace

void WriteModel(const SceneModel& model, std::ostream& os) {
  if (!model.stats || !model.scorer) throw InputError("model is incomplete");
  const LabelStats& stats = *model.stats;
  const LinearScorer& scorer = *model.scorer;
  if (scorer.num_labels() != stats.num_labels()) {
    throw InputError("label statistics and visual scorer disagree on the label count");
  }
  const std::size_t L = stats.num_labels();
  const std::size_t n = stats.num_cells();

  os << kMagic << "\t1\n";
  os << "labels\t" << L;
  for (const auto& label : stats.labels()) os << '\t' << label;
  os << '\n';
  os << "geometry\t" << stats.rows() << '\t' << stats.cols() << '\n';
  os << "dim\t" << scorer.dim() << '\n';
  os << "alpha\t" << FormatDouble(model.alpha) << '\n';
  os << "lambda\t" << FormatDouble(model.lambda) << '\n';
  os << "images\t" << stats.num_images() << '\n';

  for (LabelId l = 0; l < L; ++l) {
    for (CellId p = 0; p < n; ++p) {
      if (const auto c = stats.unigram(l, p)) {
        os << "u\t" << stats.labels()[l] << '\t' << p << '\t' << c << '\n';
      }
    }
  }
  std::string line;
  for (LabelId l = 0; l < L; ++l) {
    for (LabelId l2 = 0; l2 < L; ++l2) {
      for (CellId p = 0; p < n; ++p) {
        for (CellId q = 0; q < n; ++q) {
          const auto c = stats.bigram(l, l2, p, q);
          if (c == 0) continue;
          line.clear();
          line.append("b\t").append(stats.labels()[l]).append("\t").append(stats.labels()[l2]);
          line.append("\t").append(std::to_string(p)).append("\t").append(std::to_string(q));
          line.append("\t").append(std::to_string(c)).append("\n");
          os << line;
        }
      }
    }
  }
  for (LabelId l = 0; l < L; ++l) {
    os << "w\t" << stats.labels()[l];
    for (double w : scorer.weights(l)) os << '\t' << FormatDouble(w);
    os << '\t' << FormatDouble(scorer.bias(l)) << '\n';
  }
}

SceneModel ReadModel(std::istream& is) {
  std::size_t line_no = 0;
  {
    const auto line = Expect(is, kMagic, line_no);
    const auto fields = SplitTabs(line);
    if (fields.size() != 2 || fields[1] != "1") throw InputError("unsupported model version");
  }
  std::vector<std::string> labels;
  {
    const auto line = Expect(is, "labels", line_no);
    const auto fields = SplitTabs(line);
    const auto count = ParseUnsigned(fields.at(1), "model labels");
    if (fields.size() != count + 2) throw InputError("model labels: count mismatch");
    for (std::size_t i = 2; i < fields.size(); ++i) labels.emplace_back(fields[i]);
  }
  int rows = 0;
  int cols = 0;
  {
    const auto line = Expect(is, "geometry", line_no);
    const auto fields = SplitTabs(line);
    if (fields.size() != 3) throw InputError("model geometry: expected rows and cols");
    rows = static_cast<int>(ParseUnsigned(fields[1], "model rows"));
    cols = static_cast<int>(ParseUnsigned(fields[2], "model cols"));
  }
  auto scalar = [&](std::string_view key) {
    const auto line = Expect(is, key, line_no);
    const auto fields = SplitTabs(line);
    if (fields.size() != 2) throw InputError("model " + std::string(key) + ": expected a value");
    return std::string(fields[1]);
  };
  const auto dim = ParseUnsigned(scalar("dim"), "model dim");
  SceneModel model;
  model.alpha = ParseDouble(scalar("alpha"), "model alpha");
  model.lambda = ParseDouble(scalar("lambda"), "model lambda");
  const auto images = static_cast<std::uint32_t>(ParseUnsigned(scalar("images"), "model images"));

  // Reuse LabelStats' own validation of the label set and geometry.
  const LabelStats shape(labels, rows, cols);
  const std::size_t L = shape.num_labels();
  const std::size_t n = shape.num_cells();
  std::vector<std::uint32_t> unigram(L * n, 0);
  std::vector<std::uint32_t> bigram(L * L * n * n, 0);
  std::vector<std::vector<double>> weights(L);
  std::vector<double> bias(L, 0.0);
  std::vector<bool> have_weights(L, false);

  auto label_id = [&](std::string_view name) {
    const auto id = shape.FindLabel(name);
    if (!id) {
      throw InputError("model line " + std::to_string(line_no) + ": unknown label '" +
                       std::string(name) + "'");
    }
    return *id;
  };
  auto cell_id = [&](std::string_view token) {
    const auto c = ParseUnsigned(token, "model cell");
    if (c >= n) throw InputError("model line " + std::to_string(line_no) + ": cell out of range");
    return static_cast<CellId>(c);
  };

  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields[0] == "u" && fields.size() == 4) {
      unigram[label_id(fields[1]) * n + cell_id(fields[2])] =
          static_cast<std::uint32_t>(ParseUnsigned(fields[3], "model count"));
    } else if (fields[0] == "b" && fields.size() == 6) {
      const std::size_t index =
          ((static_cast<std::size_t>(label_id(fields[1])) * L + label_id(fields[2])) * n +
           cell_id(fields[3])) * n + cell_id(fields[4]);
      bigram[index] = static_cast<std::uint32_t>(ParseUnsigned(fields[5], "model count"));
    } else if (fields[0] == "w" && fields.size() == dim + 3) {
      const LabelId l = label_id(fields[1]);
      weights[l].clear();
      for (std::size_t d = 0; d < dim; ++d) {
        weights[l].push_back(ParseDouble(fields[2 + d], "model weight"));
      }
      bias[l] = ParseDouble(fields[2 + dim], "model bias");
      have_weights[l] = true;
    } else {
      throw InputError("model line " + std::to_string(line_no) + ": unrecognized record");
    }
  }
  for (LabelId l = 0; l < L; ++l) {
    if (!have_weights[l]) throw InputError("model has no visual weights for '" + labels[l] + "'");
  }

  model.stats = std::make_shared<const LabelStats>(LabelStats::FromCounts(
      std::move(labels), rows, cols, images, std::move(unigram), std::move(bigram)));
  model.scorer = std::make_shared<const LinearScorer>(std::move(weights), std::move(bias));
  return model;
}

void SaveModel(const SceneModel& model, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write model " + file.string());
  WriteModel(model, out);
  if (!out) throw InputError("failed writing model " + file.string());
}

SceneModel LoadModel(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open model " + file.string());
  return ReadModel(in);
}

}  // namespace scenefst
