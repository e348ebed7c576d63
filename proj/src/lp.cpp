#include "caimdp/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace caimdp {
namespace {

constexpr double kPivotEps = 1e-9;
constexpr long kMaxPivots = 200000;

enum class VarKind { Shift, Flip, Free };

struct Tableau {
  Matrix t;                 // m rows, last column is the right-hand side
  std::vector<int> basis;   // basic column per row

  int rows() const { return static_cast<int>(t.rows()); }
  int rhs() const { return static_cast<int>(t.cols()) - 1; }

  void pivot(int r, int e, Vector& reduced) {
    t.row(r) /= t(r, e);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && t(i, e) != 0.0) {
        t.row(i) -= t(i, e) * t.row(r);
        if (t(i, rhs()) < 0.0 && t(i, rhs()) > -1e-12) t(i, rhs()) = 0.0;
      }
    }
    if (reduced(e) != 0.0) reduced -= reduced(e) * t.row(r).transpose();
    basis[r] = e;
  }
};

enum class Outcome { Optimal, Unbounded };

// Maximizes cost·z over the tableau's current basis. `allowed` masks the
// columns that may enter. Bland's rule: lowest-index entering column, ties in
// the ratio test broken by lowest basic index.
Outcome run_simplex(Tableau& tab, const Vector& cost, const std::vector<bool>& allowed,
                    long& pivots) {
  const int ncols = tab.rhs();
  Vector reduced(ncols + 1);
  reduced.head(ncols) = cost;
  reduced(ncols) = 0.0;
  for (int i = 0; i < tab.rows(); ++i) {
    const double cb = cost(tab.basis[i]);
    if (cb != 0.0) reduced -= cb * tab.t.row(i).transpose();
  }
  const double rc_eps = 1e-10 * (1.0 + cost.cwiseAbs().maxCoeff());

  while (true) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (allowed[j] && reduced(j) > rc_eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return Outcome::Optimal;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.rows(); ++i) {
      const double a = tab.t(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = tab.t(i, ncols) / a;
      if (ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && tab.basis[i] < tab.basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return Outcome::Unbounded;
    tab.pivot(leave, enter, reduced);
    if (++pivots > kMaxPivots) throw SolverError("simplex pivot limit exceeded");
  }
}

}  // namespace

LpSolution simplex_lp_max(const LinearProgram& lp, double feasibility_tol) {
  const int n = static_cast<int>(lp.objective.size());
  const int n_ub = static_cast<int>(lp.b_ub.size());
  const int n_eq = static_cast<int>(lp.b_eq.size());
  if ((n_ub > 0 && (lp.a_ub.rows() != n_ub || lp.a_ub.cols() != n)) ||
      (n_eq > 0 && (lp.a_eq.rows() != n_eq || lp.a_eq.cols() != n)) ||
      (lp.lower.size() != 0 && lp.lower.size() != n) ||
      (lp.upper.size() != 0 && lp.upper.size() != n)) {
    throw ValidationError("linear program dimensions are inconsistent");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();

  LpSolution out;

  // Substitute every variable by nonnegative ones.
  std::vector<VarKind> kind(n);
  std::vector<int> col(n);
  std::vector<double> offset(n, 0.0);
  std::vector<std::pair<int, double>> ranges;
  int ny = 0;
  for (int k = 0; k < n; ++k) {
    const double lo = lp.lower.size() ? lp.lower(k) : 0.0;
    const double hi = lp.upper.size() ? lp.upper(k) : inf;
    if (lo > hi) return out;
    if (std::isfinite(lo)) {
      kind[k] = VarKind::Shift;
      offset[k] = lo;
      col[k] = ny++;
      if (std::isfinite(hi)) ranges.emplace_back(col[k], hi - lo);
    } else if (std::isfinite(hi)) {
      kind[k] = VarKind::Flip;
      offset[k] = hi;
      col[k] = ny++;
    } else {
      kind[k] = VarKind::Free;
      col[k] = ny;
      ny += 2;
    }
  }

  struct Row {
    Vector a;
    double b;
    bool eq;
  };
  std::vector<Row> rows;
  auto add_row = [&](const auto& coeffs, double b, bool eq) {
    Row r{Vector::Zero(ny), b, eq};
    for (int k = 0; k < n; ++k) {
      const double a = coeffs(k);
      if (a == 0.0) continue;
      switch (kind[k]) {
        case VarKind::Shift:
          r.a(col[k]) += a;
          r.b -= a * offset[k];
          break;
        case VarKind::Flip:
          r.a(col[k]) -= a;
          r.b -= a * offset[k];
          break;
        case VarKind::Free:
          r.a(col[k]) += a;
          r.a(col[k] + 1) -= a;
          break;
      }
    }
    rows.push_back(std::move(r));
  };
  for (int i = 0; i < n_ub; ++i) add_row(lp.a_ub.row(i), lp.b_ub(i), false);
  for (const auto& [c, width] : ranges) {
    Row r{Vector::Zero(ny), width, false};
    r.a(c) = 1.0;
    rows.push_back(std::move(r));
  }
  for (int i = 0; i < n_eq; ++i) add_row(lp.a_eq.row(i), lp.b_eq(i), true);

  const int m = static_cast<int>(rows.size());
  int ns = 0;
  for (const auto& r : rows) ns += r.eq ? 0 : 1;
  std::vector<bool> needs_art(m, false);
  int na = 0;
  for (int i = 0; i < m; ++i) {
    needs_art[i] = rows[i].eq || rows[i].b < 0.0;
    na += needs_art[i] ? 1 : 0;
  }

  const int slack0 = ny;
  const int art0 = ny + ns;
  const int ncols = ny + ns + na;
  Tableau tab{Matrix::Zero(m, ncols + 1), std::vector<int>(m, -1)};
  int s = 0;
  int a = 0;
  for (int i = 0; i < m; ++i) {
    const double sign = rows[i].b < 0.0 ? -1.0 : 1.0;
    tab.t.row(i).head(ny) = sign * rows[i].a.transpose();
    tab.t(i, ncols) = sign * rows[i].b;
    if (!rows[i].eq) {
      tab.t(i, slack0 + s) = sign;
      if (!needs_art[i]) tab.basis[i] = slack0 + s;
      ++s;
    }
    if (needs_art[i]) {
      tab.t(i, art0 + a) = 1.0;
      tab.basis[i] = art0 + a;
      ++a;
    }
  }

  if (na > 0) {
    Vector phase1 = Vector::Zero(ncols);
    phase1.tail(na).setConstant(-1.0);
    std::vector<bool> allowed(ncols, true);
    run_simplex(tab, phase1, allowed, out.pivots);
    double infeas = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
      if (tab.basis[i] >= art0) infeas += tab.t(i, ncols);
    }
    if (infeas > feasibility_tol) return out;

    // Drive remaining artificial variables out of the basis; rows where that
    // is impossible are redundant.
    std::vector<int> keep;
    Vector dummy = Vector::Zero(ncols + 1);
    for (int i = 0; i < tab.rows(); ++i) {
      if (tab.basis[i] < art0) {
        keep.push_back(i);
        continue;
      }
      int j = 0;
      while (j < art0 && std::abs(tab.t(i, j)) <= kPivotEps) ++j;
      if (j < art0) {
        tab.pivot(i, j, dummy);
        keep.push_back(i);
      }
    }
    if (static_cast<int>(keep.size()) != tab.rows()) {
      Tableau reduced{Matrix(keep.size(), ncols + 1), {}};
      for (std::size_t r = 0; r < keep.size(); ++r) {
        reduced.t.row(r) = tab.t.row(keep[r]);
        reduced.basis.push_back(tab.basis[keep[r]]);
      }
      tab = std::move(reduced);
    }
  }

  Vector cost = Vector::Zero(ncols);
  for (int k = 0; k < n; ++k) {
    const double c = lp.objective(k);
    switch (kind[k]) {
      case VarKind::Shift:
        cost(col[k]) += c;
        break;
      case VarKind::Flip:
        cost(col[k]) -= c;
        break;
      case VarKind::Free:
        cost(col[k]) += c;
        cost(col[k] + 1) -= c;
        break;
    }
  }
  std::vector<bool> allowed(ncols, false);
  for (int j = 0; j < art0; ++j) allowed[j] = true;
  if (run_simplex(tab, cost, allowed, out.pivots) == Outcome::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  Vector y = Vector::Zero(ncols);
  for (int i = 0; i < tab.rows(); ++i) y(tab.basis[i]) = tab.t(i, ncols);
  out.x.resize(n);
  for (int k = 0; k < n; ++k) {
    switch (kind[k]) {
      case VarKind::Shift:
        out.x(k) = offset[k] + y(col[k]);
        break;
      case VarKind::Flip:
        out.x(k) = offset[k] - y(col[k]);
        break;
      case VarKind::Free:
        out.x(k) = y(col[k]) - y(col[k] + 1);
        break;
    }
  }
  out.value = lp.objective.dot(out.x);
  out.status = LpStatus::Optimal;
  return out;
}

}  // namespace caimdp
