#ifndef SCENEFST_APP_EVALUATION_H_
#define SCENEFST_APP_EVALUATION_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace scenefst {

// Per-class rates in percent, pooled over every evaluated cell.
struct ClassRates {
  std::string label;
  bool defined = false;  // false when the class never occurs in the truth
  double far = 0.0;
  double frr = 0.0;
  double eer = 0.0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  std::uint64_t false_accepts = 0;
  std::uint64_t false_rejects = 0;
};

struct EvalReport {
  std::vector<ClassRates> classes;
  double mean_far = 0.0;
  double mean_frr = 0.0;
  double mean_eer = 0.0;
  std::uint64_t cells = 0;
};

// Accumulates hard-label confusion counts over scenes.
class Evaluator {
 public:
  explicit Evaluator(std::vector<std::string> labels);

  // Throws InputError when the maps differ in size or contain a label outside
  // the label set.
  void Add(std::span<const std::string> predicted, std::span<const std::string> truth);
  EvalReport Report() const;

 private:
  std::size_t Index(const std::string& label) const;

  std::vector<std::string> labels_;
  std::vector<std::uint64_t> predicted_;  // cells predicted as each class
  std::vector<std::uint64_t> truth_;      // cells of each class
  std::vector<std::uint64_t> correct_;
  std::uint64_t cells_ = 0;
};

// class<TAB>FAR<TAB>FRR<TAB>EER rows, then a `mean` row; undefined classes
// print `undefined`.
void WriteReport(const EvalReport& report, std::ostream& os);

}  // namespace scenefst

#endif  // SCENEFST_APP_EVALUATION_H_
