#ifndef SCENEFST_FST_WEIGHT_H_
#define SCENEFST_FST_WEIGHT_H_

#include <cmath>
#include <iosfwd>
#include <limits>
#include <stdexcept>

namespace scenefst::fst {

// Tropical semiring element: plus = min, times = +, zero = +inf, one = 0.
// Values are -log probabilities, so they are restricted to [0, +inf].
class TropicalWeight {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  constexpr TropicalWeight() = default;
  explicit TropicalWeight(double value) : value_(value) {
    if (std::isnan(value) || value < 0.0) {
      throw std::domain_error("tropical weight must be non-negative or +inf");
    }
  }

  static constexpr TropicalWeight Zero() { return TropicalWeight(); }
  static constexpr TropicalWeight One() {
    TropicalWeight w;
    w.value_ = 0.0;
    return w;
  }

  // -log p, with p >= 1 clamped to One() and p <= 0 mapped to Zero().
  static TropicalWeight FromProbability(double p) {
    if (!(p > 0.0)) return Zero();
    if (p >= 1.0) return One();
    return TropicalWeight(-std::log(p));
  }

  constexpr double Value() const { return value_; }
  constexpr bool IsZero() const { return value_ == kInfinity; }

  friend constexpr bool operator==(TropicalWeight a, TropicalWeight b) {
    return a.value_ == b.value_;
  }
  friend constexpr bool operator<(TropicalWeight a, TropicalWeight b) {
    return a.value_ < b.value_;
  }

 private:
  double value_ = kInfinity;
};

constexpr TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return b < a ? b : a;
}

inline TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  if (a.IsZero() || b.IsZero()) return TropicalWeight::Zero();
  return TropicalWeight(a.Value() + b.Value());
}

std::ostream& operator<<(std::ostream& os, TropicalWeight w);

// Log semiring over -log values. Only used to check that probability models
// normalize; decoding never touches it.
class LogWeight {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  constexpr LogWeight() = default;
  explicit constexpr LogWeight(double value) : value_(value) {}

  static constexpr LogWeight Zero() { return LogWeight(); }
  static constexpr LogWeight One() { return LogWeight(0.0); }
  static LogWeight FromProbability(double p) {
    return p > 0.0 ? LogWeight(-std::log(p)) : Zero();
  }

  constexpr double Value() const { return value_; }
  double Probability() const { return std::exp(-value_); }

 private:
  double value_ = kInfinity;
};

inline LogWeight Plus(LogWeight a, LogWeight b) {
  if (a.Value() == LogWeight::kInfinity) return b;
  if (b.Value() == LogWeight::kInfinity) return a;
  const double lo = std::fmin(a.Value(), b.Value());
  const double hi = std::fmax(a.Value(), b.Value());
  return LogWeight(lo - std::log1p(std::exp(lo - hi)));
}

inline LogWeight Times(LogWeight a, LogWeight b) {
  if (a.Value() == LogWeight::kInfinity || b.Value() == LogWeight::kInfinity) {
    return LogWeight::Zero();
  }
  return LogWeight(a.Value() + b.Value());
}

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_WEIGHT_H_
