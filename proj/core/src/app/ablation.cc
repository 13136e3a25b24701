#include "scenefst/app/ablation.h"

#include <algorithm>
#include <cstdio>

#include "scenefst/app/parallel.h"
#include "scenefst/decoder/decode.h"
#include "scenefst/errors.h"

namespace scenefst {

std::vector<AblationLine> AblationLines(const DecodeConfig& base) {
  std::vector<AblationLine> lines;
  const auto add = [&](int line, const char* reordering, bool reorder, ModelKind grouping,
                       ModelKind dependency, ModelKind visual) {
    AblationLine l;
    l.line = line;
    l.reordering = reordering;
    l.config = base;
    l.config.reorder = reorder;
    l.config.grouping = grouping;
    l.config.dependency = dependency;
    l.config.visual = visual;
    lines.push_back(std::move(l));
  };
  constexpr ModelKind kFlat = ModelKind::kFlat;
  constexpr ModelKind kLearned = ModelKind::kLearned;
  add(1, "Yes/No", false, kFlat, kFlat, kFlat);
  lines.back().config.tie_break = fst::TieBreak::kSeeded;
  add(2, "No", false, kFlat, kFlat, kLearned);
  add(3, "No", false, kFlat, kLearned, kFlat);
  add(4, "No", false, kFlat, kLearned, kLearned);
  add(5, "Yes + flat", true, kFlat, kFlat, kLearned);
  add(6, "Yes + flat", true, kFlat, kLearned, kFlat);
  add(7, "Yes + flat", true, kFlat, kLearned, kLearned);
  add(8, "Yes + learned", true, kLearned, kFlat, kLearned);
  add(9, "Yes + learned", true, kLearned, kLearned, kFlat);
  add(10, "Yes + learned", true, kLearned, kLearned, kLearned);
  return lines;
}

DecodeConfig ForScene(const DecodeConfig& base, std::size_t index) {
  DecodeConfig config = base;
  config.seed = base.seed + index;
  return config;
}

std::vector<AblationRow> RunAblation(std::span<const SuperpixelGrid> scenes, const Models& models,
                                     const DecodeConfig& base, std::span<const int> lines,
                                     std::size_t threads) {
  for (const SuperpixelGrid& scene : scenes) {
    if (!scene.has_labels()) throw InputError("scene '" + scene.name() + "' has no labels");
  }
  std::vector<AblationRow> rows;
  for (const AblationLine& setting : AblationLines(base)) {
    if (!lines.empty() && std::find(lines.begin(), lines.end(), setting.line) == lines.end()) {
      continue;
    }
    std::vector<std::vector<std::string>> predicted(scenes.size());
    ParallelFor(scenes.size(), threads, [&](std::size_t i) {
      const DecodeConfig config = ForScene(setting.config, i);
      predicted[i] = CellLabelNames(Decode(scenes[i], models, config), models);
    });
    Evaluator evaluator(models.labels);
    for (std::size_t i = 0; i < scenes.size(); ++i) {
      evaluator.Add(predicted[i], scenes[i].labels());
    }
    rows.push_back(AblationRow{setting, evaluator.Report()});
  }
  return rows;
}

void WriteAblation(std::span<const AblationRow> rows, std::ostream& os) {
  os << "line\treordering\tdependency\tvisual\tFAR\tFRR\tEER\n";
  char buf[128];
  for (const AblationRow& row : rows) {
    const DecodeConfig& c = row.setting.config;
    std::snprintf(buf, sizeof(buf), "\t%.2f\t%.2f\t%.2f\n", row.report.mean_far,
                  row.report.mean_frr, row.report.mean_eer);
    os << row.setting.line << '\t' << row.setting.reordering << '\t' << ToString(c.dependency)
       << '\t' << ToString(c.visual) << buf;
  }
}

}  // namespace scenefst
