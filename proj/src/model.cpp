#include "caimdp/model.hpp"

#include "caimdp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace caimdp {

Caimdp::Caimdp(ActionSet action_set, BoundMatrix lower, BoundMatrix upper, Vector reward)
    : set_(std::move(action_set)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      reward_(std::move(reward)) {
  const auto n = static_cast<std::size_t>(reward_.size());
  if (n == 0) throw ValidationError("model needs at least one state");
  for (Eigen::Index q = 0; q < reward_.size(); ++q) {
    if (!std::isfinite(reward_(q))) throw ValidationError("reward must be finite");
    if (reward_(q) < 0.0) throw ValidationError("reward must be nonnegative");
  }
  auto check = [&](const BoundMatrix& m, const char* name) {
    if (m.size() != n) {
      throw ValidationError(std::string(name) + " must have n_states rows");
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (m[q].size() != n) {
        throw ValidationError(std::string(name) + "[" + std::to_string(q) +
                              "] must have n_states entries");
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (m[q][r].dim() != set_.dim()) {
          throw ValidationError(std::string(name) + "[" + std::to_string(q) + "][" +
                                std::to_string(r) + "] has the wrong action dimension");
        }
      }
    }
  };
  check(lower_, "lower");
  check(upper_, "upper");
}

void Caimdp::evaluate_row(int q, const Vector& a, Vector& lo, Vector& hi) const {
  const int n = n_states();
  lo.resize(n);
  hi.resize(n);
  for (int r = 0; r < n; ++r) {
    lo(r) = lower_[q][r](a);
    hi(r) = upper_[q][r](a);
  }
}

IntervalSimplex Caimdp::interval(int q, const Vector& a) const {
  Vector lo, hi;
  evaluate_row(q, a, lo, hi);
  return IntervalSimplex(std::move(lo), std::move(hi));
}

Caimdp Caimdp::with_reward(Vector reward) const {
  return Caimdp(set_, lower_, upper_, std::move(reward));
}

Caimdp Caimdp::relabeled(const std::vector<int>& perm) const {
  const int n = n_states();
  if (static_cast<int>(perm.size()) != n) throw ValidationError("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw ValidationError("not a permutation");
    seen[p] = true;
  }
  BoundMatrix lo(n, std::vector<BoundFunction>(n, lower_[0][0]));
  BoundMatrix hi(n, std::vector<BoundFunction>(n, upper_[0][0]));
  Vector rew(n);
  for (int q = 0; q < n; ++q) {
    rew(perm[q]) = reward_(q);
    for (int r = 0; r < n; ++r) {
      lo[perm[q]][perm[r]] = lower_[q][r];
      hi[perm[q]][perm[r]] = upper_[q][r];
    }
  }
  return Caimdp(set_, std::move(lo), std::move(hi), std::move(rew));
}

bool Caimdp::serializable() const {
  for (const auto* m : {&lower_, &upper_}) {
    for (const auto& row : *m) {
      for (const auto& b : row) {
        if (!b.serializable()) return false;
      }
    }
  }
  return true;
}

bool Caimdp::operator==(const Caimdp& other) const {
  return set_ == other.set_ && reward_.size() == other.reward_.size() &&
         reward_ == other.reward_ && lower_ == other.lower_ && upper_ == other.upper_;
}

std::string to_string(ShapeClass c) {
  switch (c) {
    case ShapeClass::Linear:
      return "linear";
    case ShapeClass::ConcaveConvex:
      return "concave_convex";
    case ShapeClass::ConvexConcave:
      return "convex_concave";
    case ShapeClass::General:
      break;
  }
  return "general";
}

namespace {

bool all_bounds(const BoundMatrix& m, std::initializer_list<Shape> ok) {
  for (const auto& row : m) {
    for (const auto& b : row) {
      if (std::find(ok.begin(), ok.end(), b.shape()) == ok.end()) return false;
    }
  }
  return true;
}

}  // namespace

ShapeClass classify(const Caimdp& imdp) {
  const bool polytopic = imdp.action_set().is_polytope();
  if (polytopic && all_bounds(imdp.lower(), {Shape::Linear}) &&
      all_bounds(imdp.upper(), {Shape::Linear})) {
    return ShapeClass::Linear;
  }
  // Every supported action set is convex.
  if (all_bounds(imdp.lower(), {Shape::Linear, Shape::Concave}) &&
      all_bounds(imdp.upper(), {Shape::Linear, Shape::Convex})) {
    return ShapeClass::ConcaveConvex;
  }
  if (polytopic && all_bounds(imdp.lower(), {Shape::Linear, Shape::Convex}) &&
      all_bounds(imdp.upper(), {Shape::Linear, Shape::Concave})) {
    return ShapeClass::ConvexConcave;
  }
  return ShapeClass::General;
}

std::string describe_general_class(const Caimdp& imdp) {
  std::ostringstream out;
  int listed = 0;
  auto list = [&](const BoundMatrix& m, const char* name, Shape bad_a, Shape bad_b) {
    for (std::size_t q = 0; q < m.size(); ++q) {
      for (std::size_t r = 0; r < m[q].size(); ++r) {
        const Shape s = m[q][r].shape();
        if (s == Shape::Unknown || s == bad_a || s == bad_b) {
          if (listed < 8) {
            out << (listed ? ", " : "") << name << "[" << q << "][" << r << "] (" << to_string(s)
                << ")";
          }
          ++listed;
        }
      }
    }
  };
  // Report against the concave/convex pattern, which admits any convex set.
  list(imdp.lower(), "lower", Shape::Convex, Shape::Unknown);
  list(imdp.upper(), "upper", Shape::Concave, Shape::Unknown);
  if (listed > 8) out << " and " << (listed - 8) << " more";
  if (!imdp.action_set().is_polytope()) out << "; action set is not polytopic";
  return out.str();
}

double ValidationEntry::worst() const {
  return std::max({ordering, range, lower_sum, upper_sum});
}

ValidationReport validate_pointwise(const Caimdp& imdp, const std::vector<Vector>& actions) {
  ValidationReport report;
  const int n = imdp.n_states();
  Vector lo, hi;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    if (!imdp.action_set().contains(actions[k])) {
      throw MembershipError("action " + std::to_string(k) + " is outside the action set",
                            static_cast<long>(k));
    }
    ValidationEntry e;
    e.action_index = static_cast<int>(k);
    for (int q = 0; q < n; ++q) {
      imdp.evaluate_row(q, actions[k], lo, hi);
      for (int r = 0; r < n; ++r) {
        e.ordering = std::max(e.ordering, lo(r) - hi(r));
        e.range = std::max({e.range, -lo(r), lo(r) - 1.0, -hi(r), hi(r) - 1.0});
      }
      e.lower_sum = std::max(e.lower_sum, lo.sum() - 1.0);
      e.upper_sum = std::max(e.upper_sum, 1.0 - hi.sum());
    }
    report.worst_violation = std::max(report.worst_violation, e.worst());
    report.entries.push_back(e);
  }
  report.passed = report.worst_violation <= ValidationReport::kTol;
  return report;
}

std::vector<Vector> default_validation_actions(const ActionSet& set, int samples) {
  auto actions = quasi_random_points(set, samples);
  if (set.is_polytope() && set.vertex_count() <= 4096) {
    for (auto& v : set.vertices()) actions.push_back(std::move(v));
  }
  return actions;
}

void validate_model(const Caimdp& imdp, int samples) {
  const auto report = validate_pointwise(imdp, default_validation_actions(imdp.action_set(), samples));
  if (!report.passed) {
    const auto worst = std::max_element(
        report.entries.begin(), report.entries.end(),
        [](const ValidationEntry& a, const ValidationEntry& b) { return a.worst() < b.worst(); });
    std::ostringstream msg;
    msg << "interval bounds inconsistent at sampled action " << worst->action_index
        << ": worst violation " << report.worst_violation;
    throw ValidationError(msg.str());
  }
}

std::vector<std::string> spot_check_opaque_shapes(const Caimdp& imdp, int chords,
                                                  std::uint64_t seed) {
  std::vector<std::string> warnings;
  Rng rng(seed);
  const auto& set = imdp.action_set();
  auto check = [&](const BoundMatrix& m, const char* name) {
    for (std::size_t q = 0; q < m.size(); ++q) {
      for (std::size_t r = 0; r < m[q].size(); ++r) {
        const auto& b = m[q][r];
        if (!b.as_opaque() || b.shape() == Shape::Unknown) continue;
        for (int c = 0; c < chords; ++c) {
          const Vector x = sample_uniform(set, rng);
          const Vector y = sample_uniform(set, rng);
          const double mid = b(0.5 * (x + y));
          const double avg = 0.5 * (b(x) + b(y));
          const bool concave_ok = mid >= avg - 1e-8;
          const bool convex_ok = mid <= avg + 1e-8;
          const bool ok = b.shape() == Shape::Concave  ? concave_ok
                          : b.shape() == Shape::Convex ? convex_ok
                                                       : concave_ok && convex_ok;
          if (!ok) {
            warnings.push_back(std::string(name) + "[" + std::to_string(q) + "][" +
                               std::to_string(r) + "] declared " + to_string(b.shape()) +
                               " fails a midpoint test");
            break;
          }
        }
      }
    }
  };
  check(imdp.lower(), "lower");
  check(imdp.upper(), "upper");
  return warnings;
}

}  // namespace caimdp
