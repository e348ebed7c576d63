#pragma once

#include "caimdp/action_set.hpp"
#include "caimdp/bound_function.hpp"
#include "caimdp/inner_opt.hpp"

#include <string>
#include <vector>

namespace caimdp {

using BoundMatrix = std::vector<std::vector<BoundFunction>>;

/// Continuous-action interval MDP: states 0..n-1, a compact action set, and
/// action-dependent lower/upper transition bounds with a state reward.
///
/// The constructor checks the structural invariants (dimensions, finite
/// nonnegative reward). Pointwise interval consistency is a property of the
/// bound functions over the whole action set and is checked by sampling, see
/// validate_pointwise() and validate_model().
class Caimdp {
 public:
  Caimdp(ActionSet action_set, BoundMatrix lower, BoundMatrix upper, Vector reward);

  int n_states() const { return static_cast<int>(reward_.size()); }
  int action_dim() const { return set_.dim(); }
  const ActionSet& action_set() const { return set_; }
  const BoundFunction& lower(int q, int r) const { return lower_[q][r]; }
  const BoundFunction& upper(int q, int r) const { return upper_[q][r]; }
  const BoundMatrix& lower() const { return lower_; }
  const BoundMatrix& upper() const { return upper_; }
  const Vector& reward() const { return reward_; }

  /// Bounds of row q evaluated at action a.
  IntervalSimplex interval(int q, const Vector& a) const;
  void evaluate_row(int q, const Vector& a, Vector& lo, Vector& hi) const;

  Caimdp with_reward(Vector reward) const;
  /// State q of this model becomes state perm[q] of the result.
  Caimdp relabeled(const std::vector<int>& perm) const;

  bool serializable() const;
  bool operator==(const Caimdp& other) const;

 private:
  ActionSet set_;
  BoundMatrix lower_;
  BoundMatrix upper_;
  Vector reward_;
};

enum class ShapeClass { Linear, ConcaveConvex, ConvexConcave, General };

std::string to_string(ShapeClass c);

/// Most specific class, checked in the order Linear, ConcaveConvex,
/// ConvexConcave.
ShapeClass classify(const Caimdp& imdp);

/// Human-readable list of the bounds that keep the model out of every
/// tractable class (used in UnsupportedClassError).
std::string describe_general_class(const Caimdp& imdp);

struct ValidationEntry {
  int action_index = 0;
  double ordering = 0.0;    // max(lo - hi)
  double range = 0.0;       // max(-lo, hi - 1, lo - 1, -hi)
  double lower_sum = 0.0;   // max(sum lo - 1)
  double upper_sum = 0.0;   // max(1 - sum hi)
  double worst() const;
};

struct ValidationReport {
  static constexpr double kTol = 1e-9;
  std::vector<ValidationEntry> entries;
  double worst_violation = 0.0;
  bool passed = true;
};

/// Checks the interval consistency constraints at each given action.
/// Throws MembershipError (carrying the action index) if an action is not in
/// the action set.
ValidationReport validate_pointwise(const Caimdp& imdp, const std::vector<Vector>& actions);

/// `samples` quasi-random actions plus every vertex of a polytopic set.
std::vector<Vector> default_validation_actions(const ActionSet& set, int samples = 256);

/// validate_pointwise on default_validation_actions; throws ValidationError
/// naming the worst violation on failure.
void validate_model(const Caimdp& imdp, int samples = 256);

/// Midpoint-convexity spot check of the declared shapes of opaque bounds on
/// `chords` random chords. Returns warnings; sampling cannot prove a shape,
/// so disagreement is never an error.
std::vector<std::string> spot_check_opaque_shapes(const Caimdp& imdp, int chords = 1000,
                                                  std::uint64_t seed = 0);

}  // namespace caimdp
