#pragma once

#include "caimdp/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace caimdp {

/// A compact convex set of actions in R^n.
///
/// Four variants are supported. Each one implements the oracles it can
/// answer exactly; asking for an unsupported oracle throws CapabilityError.
///
///   variant     contains  project  vertices  linear_maximizer
///   Box         yes       yes      yes       yes
///   Ball        yes       yes      no        yes
///   Product     yes       factors  factors   yes
///   PolytopeV   LP        no       yes       yes
///
/// Sets are immutable once built and may be shared across threads.
class ActionSet {
 public:
  struct Box {
    Vector lo;
    Vector hi;
  };
  struct Ball {
    Vector center;
    double radius;
  };
  struct Product {
    std::vector<ActionSet> factors;
  };
  struct PolytopeV {
    std::vector<Vector> vertices;
  };
  using Variant = std::variant<Box, Ball, Product, PolytopeV>;

  static ActionSet box(Vector lo, Vector hi);
  static ActionSet ball(Vector center, double radius);
  static ActionSet product(std::vector<ActionSet> factors);
  static ActionSet polytope(std::vector<Vector> vertices);
  /// Degenerate box {point}.
  static ActionSet singleton(const Vector& point);

  int dim() const { return dim_; }
  const Variant& variant() const { return v_; }
  std::string kind_name() const;

  bool contains(const Vector& x, double tol = kMembershipTol) const;

  bool can_project() const;
  /// Euclidean projection.
  Vector project(const Vector& x) const;

  /// Box, PolytopeV, or a Product made only of those.
  bool is_polytope() const;
  /// Vertex list (index order: first coordinate / first factor varies
  /// fastest). For PolytopeV this is the stored list verbatim.
  std::vector<Vector> vertices() const;
  std::size_t vertex_count() const;

  /// argmax_{a in set} g·a. Ties resolve to the lowest bound / first vertex.
  Vector linear_maximizer(const Vector& g) const;

  /// A deterministic interior-ish reference point.
  Vector center() const;
  Vector bbox_lo() const;
  Vector bbox_hi() const;

  bool operator==(const ActionSet& other) const;

 private:
  ActionSet(Variant v, int dim) : v_(std::move(v)), dim_(dim) {}

  Variant v_;
  int dim_;
};

/// The three-dimensional cylinder {(a1-0.5)^2 + (a2-0.5)^2 <= 0.2, a3 in [0,1]}.
ActionSet cylinder_action_set();

}  // namespace caimdp
