#pragma once

#include "caimdp/types.hpp"

#include <vector>

namespace caimdp {

/// Feasible distributions {p : lo <= p <= hi, sum p = 1} for one
/// state-action pair.
class IntervalSimplex {
 public:
  /// Slack allowed on the construction checks (rounding in evaluated bounds).
  static constexpr double kTol = 1e-9;

  /// Throws ValidationError unless 0 <= lo <= hi <= 1 and sum lo <= 1 <= sum hi.
  IntervalSimplex(Vector lo, Vector hi);

  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  int size() const { return static_cast<int>(lo_.size()); }

 private:
  Vector lo_;
  Vector hi_;
};

struct Allocation {
  Vector p;
  double value = 0.0;
  /// Coordinate that absorbs the remainder of the mass.
  int pivot = 0;
};

/// Stable ascending order of `v` (ties keep index order).
std::vector<int> ascending_order(const Vector& v);
std::vector<int> descending_order(const Vector& v);

/// argmin_p p·v over the interval simplex. Mass beyond the lower bounds is
/// poured into coordinates in ascending-v order.
Allocation worst_case_distribution(const IntervalSimplex& gamma, const Vector& v);

/// argmax_p p·v; same fill in descending-v order.
Allocation best_case_distribution(const IntervalSimplex& gamma, const Vector& v);

/// Fill along an explicit order; exposed for callers that reuse one sort
/// across many interval sets.
Allocation allocate_in_order(const Vector& lo, const Vector& hi, const Vector& v,
                             const std::vector<int>& order);

}  // namespace caimdp
