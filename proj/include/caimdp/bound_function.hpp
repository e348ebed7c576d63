#pragma once

#include "caimdp/types.hpp"

#include <functional>
#include <string>
#include <variant>

namespace caimdp {

/// Curvature of a function of the action, as declared by the model author.
enum class Shape { Linear, Concave, Convex, Unknown };

std::string to_string(Shape s);

/// One transition-probability bound as a function of the action.
///
///   Affine     c·a + d                   (shape Linear)
///   Quadratic  aᵀHa + c·a + d            (shape Concave or Convex, verified)
///   Opaque     user evaluators           (shape trusted, not serializable)
class BoundFunction {
 public:
  struct Affine {
    Vector c;
    double d;
  };
  struct Quadratic {
    Matrix h;
    Vector c;
    double d;
  };
  struct Opaque {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
  };

  static BoundFunction affine(Vector c, double d);
  static BoundFunction constant(int dim, double d);
  /// Throws ValidationError if H is not symmetric or its eigenvalues disagree
  /// with `shape` (tolerance 1e-10).
  static BoundFunction quadratic(Matrix h, Vector c, double d, Shape shape);
  /// Evaluators must be re-entrant.
  static BoundFunction opaque(int dim, std::function<double(const Vector&)> value,
                              std::function<Vector(const Vector&)> gradient, Shape shape);

  double operator()(const Vector& a) const;
  Vector gradient(const Vector& a) const;

  Shape shape() const { return shape_; }
  int dim() const { return dim_; }
  bool serializable() const { return !std::holds_alternative<Opaque>(kind_); }

  const Affine* as_affine() const { return std::get_if<Affine>(&kind_); }
  const Quadratic* as_quadratic() const { return std::get_if<Quadratic>(&kind_); }
  const Opaque* as_opaque() const { return std::get_if<Opaque>(&kind_); }

  /// Structural equality; opaque bounds never compare equal.
  bool operator==(const BoundFunction& other) const;

 private:
  using Kind = std::variant<Affine, Quadratic, Opaque>;
  BoundFunction(Kind k, Shape s, int dim) : kind_(std::move(k)), shape_(s), dim_(dim) {}

  Kind kind_;
  Shape shape_;
  int dim_;
};

}  // namespace caimdp
