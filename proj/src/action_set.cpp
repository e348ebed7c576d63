#include "caimdp/action_set.hpp"

#include "caimdp/lp.hpp"

#include <cmath>
#include <numeric>

namespace caimdp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool all_finite(const Vector& v) { return v.allFinite(); }

// Splits x into consecutive blocks matching the product's factors.
template <class Fn>
void for_each_block(const ActionSet::Product& p, Fn&& fn) {
  int offset = 0;
  for (const auto& f : p.factors) {
    fn(f, offset);
    offset += f.dim();
  }
}

}  // namespace

ActionSet ActionSet::box(Vector lo, Vector hi) {
  if (lo.size() == 0 || lo.size() != hi.size()) {
    throw ValidationError("box bounds must be nonempty and of equal length");
  }
  if (!all_finite(lo) || !all_finite(hi)) throw ValidationError("box bounds must be finite");
  for (int i = 0; i < lo.size(); ++i) {
    if (lo(i) > hi(i)) throw ValidationError("box requires lo <= hi componentwise");
  }
  const int d = static_cast<int>(lo.size());
  return ActionSet(Box{std::move(lo), std::move(hi)}, d);
}

ActionSet ActionSet::ball(Vector center, double radius) {
  if (center.size() == 0 || !all_finite(center)) {
    throw ValidationError("ball center must be a nonempty finite vector");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("ball radius must be > 0");
  const int d = static_cast<int>(center.size());
  return ActionSet(Ball{std::move(center), radius}, d);
}

ActionSet ActionSet::product(std::vector<ActionSet> factors) {
  if (factors.empty()) throw ValidationError("product needs at least one factor");
  int d = 0;
  for (const auto& f : factors) d += f.dim();
  return ActionSet(Product{std::move(factors)}, d);
}

ActionSet ActionSet::polytope(std::vector<Vector> vertices) {
  if (vertices.empty()) throw ValidationError("polytope needs at least one vertex");
  const auto d = vertices.front().size();
  if (d == 0) throw ValidationError("polytope vertices must be nonempty vectors");
  for (const auto& v : vertices) {
    if (v.size() != d) throw ValidationError("polytope vertices must share one dimension");
    if (!all_finite(v)) throw ValidationError("polytope vertices must be finite");
  }
  return ActionSet(PolytopeV{std::move(vertices)}, static_cast<int>(d));
}

ActionSet ActionSet::singleton(const Vector& point) { return box(point, point); }

ActionSet cylinder_action_set() {
  Vector center(2);
  center << 0.5, 0.5;
  Vector lo(1), hi(1);
  lo << 0.0;
  hi << 1.0;
  return ActionSet::product({ActionSet::ball(center, std::sqrt(0.2)), ActionSet::box(lo, hi)});
}

std::string ActionSet::kind_name() const {
  return std::visit(Overloaded{[](const Box&) { return std::string("box"); },
                               [](const Ball&) { return std::string("ball"); },
                               [](const Product&) { return std::string("product"); },
                               [](const PolytopeV&) { return std::string("polytope_v"); }},
                    v_);
}

bool ActionSet::contains(const Vector& x, double tol) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  return std::visit(
      Overloaded{
          [&](const Box& b) {
            return ((x - b.lo).array() >= -tol).all() && ((b.hi - x).array() >= -tol).all();
          },
          [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; },
          [&](const Product& p) {
            bool ok = true;
            for_each_block(p, [&](const ActionSet& f, int off) {
              ok = ok && f.contains(x.segment(off, f.dim()), tol);
            });
            return ok;
          },
          [&](const PolytopeV& p) {
            if (((x - bbox_lo()).array() < -tol).any() || ((bbox_hi() - x).array() < -tol).any()) {
              return false;
            }
            // Feasibility of  sum_v w_v v = x,  sum_v w_v = 1,  w >= 0.
            const int m = static_cast<int>(p.vertices.size());
            LinearProgram lp;
            lp.objective = Vector::Zero(m);
            lp.a_eq = Matrix::Ones(dim_ + 1, m);
            for (int v = 0; v < m; ++v) lp.a_eq.col(v).head(dim_) = p.vertices[v];
            lp.b_eq.resize(dim_ + 1);
            lp.b_eq.head(dim_) = x;
            lp.b_eq(dim_) = 1.0;
            return simplex_lp_max(lp, tol * (1 + dim_)).status == LpStatus::Optimal;
          }},
      v_);
}

bool ActionSet::can_project() const {
  return std::visit(Overloaded{[](const Box&) { return true; }, [](const Ball&) { return true; },
                               [](const Product& p) {
                                 for (const auto& f : p.factors) {
                                   if (!f.can_project()) return false;
                                 }
                                 return true;
                               },
                               [](const PolytopeV&) { return false; }},
                    v_);
}

Vector ActionSet::project(const Vector& x) const {
  if (x.size() != dim_) throw ValidationError("projection point has the wrong dimension");
  return std::visit(
      Overloaded{[&](const Box& b) -> Vector { return x.cwiseMax(b.lo).cwiseMin(b.hi); },
                 [&](const Ball& b) -> Vector {
                   const Vector off = x - b.center;
                   const double r = off.norm();
                   if (r <= b.radius) return x;
                   return b.center + off * (b.radius / r);
                 },
                 [&](const Product& p) -> Vector {
                   Vector out(dim_);
                   for_each_block(p, [&](const ActionSet& f, int off) {
                     out.segment(off, f.dim()) = f.project(x.segment(off, f.dim()));
                   });
                   return out;
                 },
                 [&](const PolytopeV&) -> Vector {
                   throw CapabilityError(
                       "polytope_v sets have no projection oracle; use Frank-Wolfe");
                 }},
      v_);
}

bool ActionSet::is_polytope() const {
  return std::visit(Overloaded{[](const Box&) { return true; }, [](const Ball&) { return false; },
                               [](const Product& p) {
                                 for (const auto& f : p.factors) {
                                   if (!f.is_polytope()) return false;
                                 }
                                 return true;
                               },
                               [](const PolytopeV&) { return true; }},
                    v_);
}

std::size_t ActionSet::vertex_count() const {
  return std::visit(Overloaded{[](const Box& b) {
                                 std::size_t n = 1;
                                 for (int i = 0; i < b.lo.size(); ++i) n *= b.lo(i) < b.hi(i) ? 2 : 1;
                                 return n;
                               },
                               [](const Ball&) -> std::size_t {
                                 throw CapabilityError("ball sets have no vertices");
                               },
                               [](const Product& p) {
                                 std::size_t n = 1;
                                 for (const auto& f : p.factors) n *= f.vertex_count();
                                 return n;
                               },
                               [](const PolytopeV& p) { return p.vertices.size(); }},
                    v_);
}

std::vector<Vector> ActionSet::vertices() const {
  return std::visit(
      Overloaded{[&](const Box& b) {
                   std::vector<int> free_dims;
                   for (int i = 0; i < b.lo.size(); ++i) {
                     if (b.lo(i) < b.hi(i)) free_dims.push_back(i);
                   }
                   std::vector<Vector> out;
                   const std::size_t count = std::size_t{1} << free_dims.size();
                   out.reserve(count);
                   for (std::size_t mask = 0; mask < count; ++mask) {
                     Vector v = b.lo;
                     for (std::size_t k = 0; k < free_dims.size(); ++k) {
                       if (mask & (std::size_t{1} << k)) v(free_dims[k]) = b.hi(free_dims[k]);
                     }
                     out.push_back(std::move(v));
                   }
                   return out;
                 },
                 [](const Ball&) -> std::vector<Vector> {
                   throw CapabilityError("ball sets have no vertices");
                 },
                 [&](const Product& p) {
                   std::vector<std::vector<Vector>> per;
                   for (const auto& f : p.factors) per.push_back(f.vertices());
                   std::vector<Vector> out;
                   std::vector<std::size_t> idx(per.size(), 0);
                   while (true) {
                     Vector v(dim_);
                     int off = 0;
                     for (std::size_t k = 0; k < per.size(); ++k) {
                       const Vector& part = per[k][idx[k]];
                       v.segment(off, part.size()) = part;
                       off += static_cast<int>(part.size());
                     }
                     out.push_back(std::move(v));
                     std::size_t k = 0;
                     while (k < per.size() && ++idx[k] == per[k].size()) idx[k++] = 0;
                     if (k == per.size()) break;
                   }
                   return out;
                 },
                 [](const PolytopeV& p) { return p.vertices; }},
      v_);
}

Vector ActionSet::linear_maximizer(const Vector& g) const {
  if (g.size() != dim_) throw ValidationError("direction has the wrong dimension");
  return std::visit(
      Overloaded{[&](const Box& b) -> Vector {
                   Vector out = b.lo;
                   for (int i = 0; i < g.size(); ++i) {
                     if (g(i) > 0.0) out(i) = b.hi(i);
                   }
                   return out;
                 },
                 [&](const Ball& b) -> Vector {
                   const double n = g.norm();
                   if (n == 0.0) return b.center;
                   return b.center + g * (b.radius / n);
                 },
                 [&](const Product& p) -> Vector {
                   Vector out(dim_);
                   for_each_block(p, [&](const ActionSet& f, int off) {
                     out.segment(off, f.dim()) = f.linear_maximizer(g.segment(off, f.dim()));
                   });
                   return out;
                 },
                 [&](const PolytopeV& p) -> Vector {
                   std::size_t best = 0;
                   double best_val = g.dot(p.vertices[0]);
                   for (std::size_t v = 1; v < p.vertices.size(); ++v) {
                     const double val = g.dot(p.vertices[v]);
                     if (val > best_val) {
                       best_val = val;
                       best = v;
                     }
                   }
                   return p.vertices[best];
                 }},
      v_);
}

Vector ActionSet::center() const {
  return std::visit(Overloaded{[](const Box& b) -> Vector { return 0.5 * (b.lo + b.hi); },
                               [](const Ball& b) -> Vector { return b.center; },
                               [&](const Product& p) -> Vector {
                                 Vector out(dim_);
                                 for_each_block(p, [&](const ActionSet& f, int off) {
                                   out.segment(off, f.dim()) = f.center();
                                 });
                                 return out;
                               },
                               [](const PolytopeV& p) -> Vector {
                                 Vector sum = Vector::Zero(p.vertices[0].size());
                                 for (const auto& v : p.vertices) sum += v;
                                 return sum / static_cast<double>(p.vertices.size());
                               }},
                    v_);
}

Vector ActionSet::bbox_lo() const {
  return std::visit(
      Overloaded{[](const Box& b) -> Vector { return b.lo; },
                 [](const Ball& b) -> Vector { return b.center.array() - b.radius; },
                 [&](const Product& p) -> Vector {
                   Vector out(dim_);
                   for_each_block(p, [&](const ActionSet& f, int off) {
                     out.segment(off, f.dim()) = f.bbox_lo();
                   });
                   return out;
                 },
                 [](const PolytopeV& p) -> Vector {
                   Vector out = p.vertices[0];
                   for (const auto& v : p.vertices) out = out.cwiseMin(v);
                   return out;
                 }},
      v_);
}

Vector ActionSet::bbox_hi() const {
  return std::visit(
      Overloaded{[](const Box& b) -> Vector { return b.hi; },
                 [](const Ball& b) -> Vector { return b.center.array() + b.radius; },
                 [&](const Product& p) -> Vector {
                   Vector out(dim_);
                   for_each_block(p, [&](const ActionSet& f, int off) {
                     out.segment(off, f.dim()) = f.bbox_hi();
                   });
                   return out;
                 },
                 [](const PolytopeV& p) -> Vector {
                   Vector out = p.vertices[0];
                   for (const auto& v : p.vertices) out = out.cwiseMax(v);
                   return out;
                 }},
      v_);
}

bool ActionSet::operator==(const ActionSet& other) const {
  if (dim_ != other.dim_ || v_.index() != other.v_.index()) return false;
  return std::visit(
      Overloaded{[&](const Box& b) {
                   const auto& o = std::get<Box>(other.v_);
                   return b.lo == o.lo && b.hi == o.hi;
                 },
                 [&](const Ball& b) {
                   const auto& o = std::get<Ball>(other.v_);
                   return b.center == o.center && b.radius == o.radius;
                 },
                 [&](const Product& p) {
                   const auto& o = std::get<Product>(other.v_);
                   return p.factors == o.factors;
                 },
                 [&](const PolytopeV& p) {
                   const auto& o = std::get<PolytopeV>(other.v_);
                   return p.vertices == o.vertices;
                 }},
      v_);
}

}  // namespace caimdp
