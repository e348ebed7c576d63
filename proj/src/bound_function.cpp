#include "caimdp/bound_function.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace caimdp {

namespace {
constexpr double kEigenTol = 1e-10;
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::Linear:
      return "linear";
    case Shape::Concave:
      return "concave";
    case Shape::Convex:
      return "convex";
    case Shape::Unknown:
      break;
  }
  return "unknown";
}

BoundFunction BoundFunction::affine(Vector c, double d) {
  if (c.size() == 0) throw ValidationError("affine bound needs a nonempty coefficient vector");
  if (!c.allFinite() || !std::isfinite(d)) throw ValidationError("affine bound must be finite");
  const int dim = static_cast<int>(c.size());
  return BoundFunction(Affine{std::move(c), d}, Shape::Linear, dim);
}

BoundFunction BoundFunction::constant(int dim, double d) { return affine(Vector::Zero(dim), d); }

BoundFunction BoundFunction::quadratic(Matrix h, Vector c, double d, Shape shape) {
  const auto n = c.size();
  if (n == 0 || h.rows() != n || h.cols() != n) {
    throw ValidationError("quadratic bound: H must be n x n with n = len(c) > 0");
  }
  if (!h.allFinite() || !c.allFinite() || !std::isfinite(d)) {
    throw ValidationError("quadratic bound must be finite");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("quadratic bound: H must be symmetric");
  }
  if (shape != Shape::Concave && shape != Shape::Convex) {
    throw ValidationError("quadratic bound shape must be concave or convex");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  if (shape == Shape::Concave && ev.maxCoeff() > kEigenTol) {
    std::ostringstream msg;
    msg << "quadratic bound declared concave but H has eigenvalue " << ev.maxCoeff() << " > 0";
    throw ValidationError(msg.str());
  }
  if (shape == Shape::Convex && ev.minCoeff() < -kEigenTol) {
    std::ostringstream msg;
    msg << "quadratic bound declared convex but H has eigenvalue " << ev.minCoeff() << " < 0";
    throw ValidationError(msg.str());
  }
  return BoundFunction(Quadratic{std::move(h), std::move(c), d}, shape, static_cast<int>(n));
}

BoundFunction BoundFunction::opaque(int dim, std::function<double(const Vector&)> value,
                                    std::function<Vector(const Vector&)> gradient, Shape shape) {
  if (dim <= 0 || !value || !gradient) {
    throw ValidationError("opaque bound needs a positive dimension and both evaluators");
  }
  return BoundFunction(Opaque{std::move(value), std::move(gradient)}, shape, dim);
}

double BoundFunction::operator()(const Vector& a) const {
  if (const auto* f = std::get_if<Affine>(&kind_)) return f->c.dot(a) + f->d;
  if (const auto* f = std::get_if<Quadratic>(&kind_)) {
    // Written out to avoid temporaries in the hot loops.
    double acc = f->d;
    const auto n = a.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) row += f->h(i, k) * a(k);
      acc += a(i) * (row + f->c(i));
    }
    return acc;
  }
  return std::get<Opaque>(kind_).value(a);
}

Vector BoundFunction::gradient(const Vector& a) const {
  if (const auto* f = std::get_if<Affine>(&kind_)) return f->c;
  if (const auto* f = std::get_if<Quadratic>(&kind_)) return 2.0 * (f->h * a) + f->c;
  return std::get<Opaque>(kind_).gradient(a);
}

bool BoundFunction::operator==(const BoundFunction& other) const {
  if (shape_ != other.shape_ || dim_ != other.dim_ || kind_.index() != other.kind_.index()) {
    return false;
  }
  if (const auto* f = as_affine()) {
    const auto* g = other.as_affine();
    return f->c == g->c && f->d == g->d;
  }
  if (const auto* f = as_quadratic()) {
    const auto* g = other.as_quadratic();
    return f->h == g->h && f->c == g->c && f->d == g->d;
  }
  return false;
}

}  // namespace caimdp
