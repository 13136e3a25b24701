// scenefst: synthetic data, training, decoding, evaluation and ablation.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "scenefst/app/ablation.h"
#include "scenefst/app/evaluation.h"
#include "scenefst/app/parallel.h"
#include "scenefst/app/render.h"
#include "scenefst/app/scene_set.h"
#include "scenefst/app/synth.h"
#include "scenefst/decoder/decode.h"
#include "scenefst/decoder/machines.h"
#include "scenefst/errors.h"
#include "scenefst/fst/text_io.h"
#include "scenefst/oracle/oracle.h"
#include "scenefst/scene/scene_io.h"
#include "scenefst/stats/model_io.h"
#include "scenefst/text_util.h"

namespace {

namespace fs = std::filesystem;
using namespace scenefst;

enum ExitCode : int { kOk = 0, kInputError = 1, kResourceError = 2, kDecodeFailure = 3 };

struct DecodeFlags {
  int walks = 8;
  std::size_t beam = 100;
  bool no_beam = false;
  std::optional<double> alpha;
  std::string dependency = "learned";
  std::string visual = "learned";
  std::string grouping = "learned";
  std::string reorder = "on";
  std::string dep_mode = "boundary-pair";
  std::string tie_break = "det";
  std::uint64_t seed = 0;
  bool normalize_visual = false;
  std::size_t threads = 1;
};

void AddDecodeFlags(CLI::App* cmd, DecodeFlags& f) {
  cmd->add_option("--walks", f.walks, "Walks in the reordering machine")->capture_default_str();
  cmd->add_option("--beam", f.beam, "Beam width per frontier")->capture_default_str();
  cmd->add_flag("--no-beam", f.no_beam, "Exact uniform-cost search");
  cmd->add_option("--alpha", f.alpha, "Additive smoothing (default: the model's)");
  const auto kinds = CLI::IsMember({"flat", "learned"});
  cmd->add_option("--dependency", f.dependency)->check(kinds)->capture_default_str();
  cmd->add_option("--visual", f.visual)->check(kinds)->capture_default_str();
  cmd->add_option("--grouping", f.grouping)->check(kinds)->capture_default_str();
  cmd->add_option("--reorder", f.reorder)->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  cmd->add_option("--dep-mode", f.dep_mode)
      ->check(CLI::IsMember({"exact", "boundary-pair"}))
      ->capture_default_str();
  cmd->add_option("--tie-break", f.tie_break)->check(CLI::IsMember({"det", "rand"}))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Walk sampling and tie-break seed")->capture_default_str();
  cmd->add_flag("--normalize-visual", f.normalize_visual,
                "Normalize visual likelihoods over labels per cell");
  cmd->add_option("--threads", f.threads, "Scene-level workers (0: all cores)")
      ->capture_default_str();
}

DecodeConfig ToConfig(const DecodeFlags& f, double model_alpha) {
  DecodeConfig c;
  c.walk_count = f.walks;
  if (f.no_beam) {
    c.beam.reset();
  } else {
    c.beam = f.beam;
  }
  c.smoothing.alpha = f.alpha.value_or(model_alpha);
  c.dependency = ParseModelKind(f.dependency);
  c.visual = ParseModelKind(f.visual);
  c.grouping = ParseModelKind(f.grouping);
  c.reorder = f.reorder == "on";
  c.dependency_mode = ParseDependencyMode(f.dep_mode);
  c.tie_break = f.tie_break == "rand" ? fst::TieBreak::kSeeded : fst::TieBreak::kDeterministic;
  c.seed = f.seed;
  c.normalize_visual = f.normalize_visual;
  c.Validate();
  return c;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<fs::path> ToPaths(const std::vector<std::string>& args) {
  return {args.begin(), args.end()};
}

struct LoadedModels {
  Models models;
  double alpha = 0.0;
};

LoadedModels LoadModels(const std::string& model_file, const std::string& labels,
                        const DecodeConfig& probe) {
  LoadedModels out;
  if (!model_file.empty()) {
    const SceneModel model = LoadModel(model_file);
    out.models = ModelsFrom(model);
    out.alpha = model.alpha;
    return out;
  }
  if (probe.dependency == ModelKind::kLearned || probe.visual == ModelKind::kLearned) {
    throw InputError("--model is required unless --dependency and --visual are both flat");
  }
  out.models = FlatModels(SplitList(labels));
  return out;
}

void WriteSymbols(const fst::SymbolTable& table, const fs::path& file) {
  std::ofstream os(file);
  if (!os) throw InputError("cannot write " + file.string());
  table.Write(os);
}

// --- synth -----------------------------------------------------------------

struct SynthFlags {
  SynthSpec spec;
  double strength = 3.0;
  std::string out;
};

int RunSynth(const SynthFlags& f) {
  SynthSpec spec = f.spec;
  spec.concentrations = DefaultConcentrations(spec.dim, f.strength);
  const auto dirs = WriteSynthScenes(spec, f.out);
  for (const auto& dir : dirs) std::cout << dir.string() << '\n';
  return kOk;
}

// --- train -----------------------------------------------------------------

struct TrainFlags {
  std::vector<std::string> scenes;
  std::string out;
  std::string labels;
  double alpha = 0.0;
  VisualTrainOptions visual;
};

int RunTrain(const TrainFlags& f) {
  const auto scenes = LoadScenes(CollectSceneDirs(ToPaths(f.scenes)));
  SceneModel model;
  auto stats = std::make_shared<LabelStats>(LabelStats::Fit(scenes, SplitList(f.labels)));
  model.scorer = std::make_shared<LinearScorer>(FitVisual(scenes, stats->labels(), f.visual));
  model.stats = std::move(stats);
  model.alpha = f.alpha;
  model.lambda = f.visual.lambda;
  SaveModel(model, f.out);
  spdlog::info("trained on {} scenes, {} labels", scenes.size(), model.stats->num_labels());
  return kOk;
}

// --- decode ----------------------------------------------------------------

struct DecodeCommand {
  std::vector<std::string> scenes;
  std::string model;
  std::string labels = "sky,sea,sand,sun";
  std::string out;
  bool render = false;
  int block = 8;
  bool oracle_check = false;
  std::string dump;
  std::size_t state_budget = 100000;
  DecodeFlags flags;
};

int RunDecode(const DecodeCommand& cmd) {
  const DecodeConfig probe = ToConfig(cmd.flags, 0.0);
  const LoadedModels loaded = LoadModels(cmd.model, cmd.labels, probe);
  const Models& models = loaded.models;
  const DecodeConfig base = ToConfig(cmd.flags, loaded.alpha);

  const auto dirs = CollectSceneDirs(ToPaths(cmd.scenes));
  const auto scenes = LoadScenes(dirs);
  if (!cmd.dump.empty() && scenes.size() != 1) {
    throw InputError("--dump-lattice needs exactly one scene");
  }

  std::vector<Labeling> results(scenes.size());
  ParallelFor(scenes.size(), cmd.flags.threads, [&](std::size_t i) {
    const DecodeConfig config = ForScene(base, i);
    const SceneProblem problem(scenes[i], config);
    results[i] = Decode(problem, models, config);
    if (cmd.oracle_check) {
      const OracleResult oracle = EnumerateBest(problem, models, config);
      const double gap = std::abs(results[i].energy.Value() - oracle.best.Value());
      if (!(gap <= 1e-9) || !oracle.Contains(results[i])) {
        throw DecodeError("oracle check failed on '" + scenes[i].name() + "': decoder " +
                          FormatDouble(results[i].energy.Value()) + ", oracle " +
                          FormatDouble(oracle.best.Value()));
      }
    }
  });

  const bool single = scenes.size() == 1;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const fs::path dir = single ? fs::path(cmd.out) : fs::path(cmd.out) / scenes[i].name();
    fs::create_directories(dir);
    const auto names = CellLabelNames(results[i], models);
    WriteLabelMap(names, dir / "labels_out.tsv");
    if (cmd.render) {
      std::ofstream os(dir / "labels_out.ppm", std::ios::binary);
      if (!os) throw InputError("cannot write " + (dir / "labels_out.ppm").string());
      WritePpm(os, scenes[i].rows(), scenes[i].cols(), names, models.labels, cmd.block);
    }
    std::cout << scenes[i].name() << "\tsegments=" << results[i].num_segments()
              << "\tenergy=" << FormatDouble(results[i].energy.Value()) << '\n';
  }
  if (cmd.oracle_check) std::cout << "oracle-check\tok\n";

  if (!cmd.dump.empty()) {
    const DecodeConfig config = ForScene(base, 0);
    const SceneProblem problem(scenes[0], config);
    const fst::Machine lattice = MaterializeLattice(problem, models, config, cmd.state_budget);
    std::ofstream os(cmd.dump);
    if (!os) throw InputError("cannot write " + cmd.dump);
    fst::WriteText(lattice, os);
    WriteSymbols(*lattice.InputSymbols(), cmd.dump + ".isyms");
    WriteSymbols(*lattice.OutputSymbols(), cmd.dump + ".osyms");
  }
  return kOk;
}

// --- eval ------------------------------------------------------------------

struct EvalCommand {
  std::string pred;
  std::vector<std::string> truth;
  std::string labels;
  std::string out;
};

fs::path PredictionFile(const fs::path& pred, const std::string& scene, bool single) {
  const fs::path nested = pred / scene / "labels_out.tsv";
  if (fs::exists(nested)) return nested;
  if (single && fs::exists(pred / "labels_out.tsv")) return pred / "labels_out.tsv";
  if (single && fs::is_regular_file(pred)) return pred;
  throw InputError("no prediction for scene '" + scene + "' under " + pred.string());
}

int RunEval(const EvalCommand& cmd) {
  const auto scenes = LoadScenes(CollectSceneDirs(ToPaths(cmd.truth)));
  std::vector<std::vector<std::string>> predicted;
  for (const auto& scene : scenes) {
    if (!scene.has_labels()) throw InputError("scene '" + scene.name() + "' has no labels");
    predicted.push_back(
        ReadLabelMap(PredictionFile(cmd.pred, scene.name(), scenes.size() == 1), scene.size()));
  }
  std::vector<std::string> labels = SplitList(cmd.labels);
  if (labels.empty()) {
    for (std::size_t i = 0; i < scenes.size(); ++i) {
      labels.insert(labels.end(), scenes[i].labels().begin(), scenes[i].labels().end());
      labels.insert(labels.end(), predicted[i].begin(), predicted[i].end());
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  }
  Evaluator evaluator(labels);
  for (std::size_t i = 0; i < scenes.size(); ++i) evaluator.Add(predicted[i], scenes[i].labels());
  const EvalReport report = evaluator.Report();
  if (cmd.out.empty()) {
    WriteReport(report, std::cout);
  } else {
    std::ofstream os(cmd.out);
    if (!os) throw InputError("cannot write " + cmd.out);
    WriteReport(report, os);
  }
  return kOk;
}

// --- ablate ----------------------------------------------------------------

struct AblateCommand {
  std::vector<std::string> scenes;
  std::string model;
  std::string out;
  std::vector<int> lines;
  DecodeFlags flags;
};

int RunAblate(const AblateCommand& cmd) {
  const SceneModel model = LoadModel(cmd.model);
  const Models models = ModelsFrom(model);
  const DecodeConfig base = ToConfig(cmd.flags, model.alpha);
  const auto scenes = LoadScenes(CollectSceneDirs(ToPaths(cmd.scenes)));
  const auto rows = RunAblation(scenes, models, base, cmd.lines, cmd.flags.threads);
  if (cmd.out.empty()) {
    WriteAblation(rows, std::cout);
  } else {
    std::ofstream os(cmd.out);
    if (!os) throw InputError("cannot write " + cmd.out);
    WriteAblation(rows, os);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_st("scenefst"));

  CLI::App app{"Scene labeling by weighted finite-state transducer decoding"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Only report errors");

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate labeled synthetic scenes");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--count", synth.spec.count, "Number of scenes")->capture_default_str();
  synth_cmd->add_option("--rows", synth.spec.rows)->capture_default_str();
  synth_cmd->add_option("--cols", synth.spec.cols)->capture_default_str();
  synth_cmd->add_option("--dim", synth.spec.dim, "Feature dimension")->capture_default_str();
  synth_cmd->add_option("--strength", synth.strength, "Dirichlet concentration scale")
      ->capture_default_str();
  synth_cmd->add_option("--jitter", synth.spec.band_jitter, "Band boundary jitter (rows)")
      ->capture_default_str();
  synth_cmd->add_option("--noise", synth.spec.label_noise, "Label noise rate")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed)->capture_default_str();

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "Fit label statistics and the visual model");
  train_cmd->add_option("scenes", train.scenes, "Scene directories or their parents")
      ->required();
  train_cmd->add_option("--out", train.out, "Model file")->required();
  train_cmd->add_option("--labels", train.labels, "Comma-separated label order");
  train_cmd->add_option("--alpha", train.alpha, "Smoothing stored with the model")
      ->capture_default_str();
  train_cmd->add_option("--lambda", train.visual.lambda, "L2 strength")->capture_default_str();
  train_cmd->add_option("--iterations", train.visual.iterations, "Newton iterations")
      ->capture_default_str();
  train_cmd->add_option("--max-samples", train.visual.max_samples,
                        "Seeded subsample of training cells (0: all)")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.visual.seed)->capture_default_str();

  DecodeCommand decode;
  auto* decode_cmd = app.add_subcommand("decode", "Label scenes by shortest-path decoding");
  decode_cmd->add_option("scenes", decode.scenes, "Scene directories or their parents")
      ->required();
  decode_cmd->add_option("--model", decode.model, "Model file from `train`");
  decode_cmd->add_option("--labels", decode.labels, "Label set when decoding without a model")
      ->capture_default_str();
  decode_cmd->add_option("--out", decode.out, "Output directory")->required();
  decode_cmd->add_flag("--render", decode.render, "Also write labels_out.ppm");
  decode_cmd->add_option("--block", decode.block, "Pixels per cell side when rendering")
      ->capture_default_str();
  decode_cmd->add_option("--dump-lattice", decode.dump,
                         "Write the expanded composed machine (one small scene)");
  decode_cmd->add_option("--state-budget", decode.state_budget,
                         "State limit for --dump-lattice")
      ->capture_default_str();
  decode_cmd->add_flag("--oracle-check", decode.oracle_check)->group("");
  AddDecodeFlags(decode_cmd, decode.flags);

  EvalCommand eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score label maps against ground truth");
  eval_cmd->add_option("--pred", eval.pred, "Decode output directory")->required();
  eval_cmd->add_option("--truth", eval.truth, "Labeled scene directories or their parents")
      ->required();
  eval_cmd->add_option("--labels", eval.labels, "Comma-separated class order");
  eval_cmd->add_option("--out", eval.out, "Report file (default: stdout)");

  AblateCommand ablate;
  auto* ablate_cmd = app.add_subcommand("ablate", "Run the ten model settings and score each");
  ablate_cmd->add_option("scenes", ablate.scenes, "Labeled test scenes or their parents")
      ->required();
  ablate_cmd->add_option("--model", ablate.model, "Model file from `train`")->required();
  ablate_cmd->add_option("--out", ablate.out, "Table file (default: stdout)");
  ablate_cmd->add_option("--lines", ablate.lines, "Subset of lines 1-10")
      ->check(CLI::Range(1, 10));
  AddDecodeFlags(ablate_cmd, ablate.flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (quiet) spdlog::set_level(spdlog::level::err);

  try {
    if (*synth_cmd) return RunSynth(synth);
    if (*train_cmd) return RunTrain(train);
    if (*decode_cmd) return RunDecode(decode);
    if (*eval_cmd) return RunEval(eval);
    if (*ablate_cmd) return RunAblate(ablate);
  } catch (const ResourceError& e) {
    spdlog::error("{}", e.what());
    return kResourceError;
  } catch (const DecodeError& e) {
    spdlog::error("{}", e.what());
    return kDecodeFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  }
  return kInputError;
}
