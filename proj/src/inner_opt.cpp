#include "caimdp/inner_opt.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace caimdp {

IntervalSimplex::IntervalSimplex(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() == 0 || lo_.size() != hi_.size()) {
    throw ValidationError("interval simplex bounds must be nonempty and of equal length");
  }
  if (!lo_.allFinite() || !hi_.allFinite()) throw ValidationError("interval bounds must be finite");
  for (int i = 0; i < size(); ++i) {
    if (lo_(i) < -kTol || hi_(i) > 1.0 + kTol || lo_(i) > hi_(i) + kTol) {
      std::ostringstream msg;
      msg << "interval " << i << " is [" << lo_(i) << ", " << hi_(i) << "], outside 0 <= lo <= hi <= 1";
      throw ValidationError(msg.str());
    }
  }
  if (lo_.sum() > 1.0 + kTol || hi_.sum() < 1.0 - kTol) {
    std::ostringstream msg;
    msg << "interval sums violate sum(lo) <= 1 <= sum(hi): " << lo_.sum() << ", " << hi_.sum();
    throw ValidationError(msg.str());
  }
}

std::vector<int> ascending_order(const Vector& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v(a) < v(b); });
  return order;
}

std::vector<int> descending_order(const Vector& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v(a) > v(b); });
  return order;
}

Allocation allocate_in_order(const Vector& lo, const Vector& hi, const Vector& v,
                             const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  // suffix_lo[k] = sum of lo over order positions > k
  std::vector<double> suffix_lo(n, 0.0);
  for (int k = n - 2; k >= 0; --k) suffix_lo[k] = suffix_lo[k + 1] + lo(order[k + 1]);

  Allocation out;
  out.p.resize(n);
  double prefix_hi = 0.0;
  int m = n - 1;
  // If rounding leaves sum(hi) just below 1, the last position is the pivot.
  for (int k = 0; k < n - 1; ++k) {
    if (prefix_hi + hi(order[k]) + suffix_lo[k] >= 1.0) {
      m = k;
      break;
    }
    prefix_hi += hi(order[k]);
  }
  for (int k = 0; k < m; ++k) out.p(order[k]) = hi(order[k]);
  for (int k = m + 1; k < n; ++k) out.p(order[k]) = lo(order[k]);
  const int pm = order[m];
  out.p(pm) = std::clamp(1.0 - prefix_hi - suffix_lo[m], lo(pm), std::max(lo(pm), hi(pm)));
  out.pivot = pm;
  out.value = out.p.dot(v);
  return out;
}

Allocation worst_case_distribution(const IntervalSimplex& gamma, const Vector& v) {
  if (v.size() != gamma.size()) throw ValidationError("value vector has the wrong length");
  if (!v.allFinite()) throw ValidationError("value vector must be finite");
  return allocate_in_order(gamma.lo(), gamma.hi(), v, ascending_order(v));
}

Allocation best_case_distribution(const IntervalSimplex& gamma, const Vector& v) {
  if (v.size() != gamma.size()) throw ValidationError("value vector has the wrong length");
  if (!v.allFinite()) throw ValidationError("value vector must be finite");
  return allocate_in_order(gamma.lo(), gamma.hi(), v, descending_order(v));
}

}  // namespace caimdp
