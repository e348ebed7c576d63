#include "caimdp/sampling.hpp"

#include <cmath>
#include <mutex>

namespace caimdp {
namespace {

std::vector<int> primes(int count) {
  static std::vector<int> table;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  for (int candidate = table.empty() ? 2 : table.back() + 1;
       static_cast<int>(table.size()) < count; ++candidate) {
    bool prime = true;
    for (int p : table) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) table.push_back(candidate);
  }
  return {table.begin(), table.begin() + count};
}

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

Vector halton(std::uint64_t index, int dims) {
  const auto p = primes(dims);
  Vector u(dims);
  for (int k = 0; k < dims; ++k) u(k) = radical_inverse(index, p[k]);
  return u;
}

int cube_dim(const ActionSet& set) {
  if (const auto* p = std::get_if<ActionSet::Product>(&set.variant())) {
    int d = 0;
    for (const auto& f : p->factors) d += cube_dim(f);
    return d;
  }
  if (const auto* p = std::get_if<ActionSet::PolytopeV>(&set.variant())) {
    return static_cast<int>(p->vertices.size());
  }
  return set.dim();
}

Vector from_unit_cube(const ActionSet& set, const Vector& u) {
  const auto& v = set.variant();
  if (const auto* b = std::get_if<ActionSet::Box>(&v)) {
    return b->lo.array() + u.head(set.dim()).array() * (b->hi - b->lo).array();
  }
  if (std::holds_alternative<ActionSet::Ball>(v)) {
    const Vector lo = set.bbox_lo();
    const Vector hi = set.bbox_hi();
    return set.project(lo.array() + u.head(set.dim()).array() * (hi - lo).array());
  }
  if (const auto* p = std::get_if<ActionSet::Product>(&v)) {
    Vector out(set.dim());
    int off = 0;
    int uoff = 0;
    for (const auto& f : p->factors) {
      const int cd = cube_dim(f);
      out.segment(off, f.dim()) = from_unit_cube(f, u.segment(uoff, cd));
      off += f.dim();
      uoff += cd;
    }
    return out;
  }
  const auto& poly = std::get<ActionSet::PolytopeV>(v);
  const int m = static_cast<int>(poly.vertices.size());
  Vector w(m);
  for (int k = 0; k < m; ++k) w(k) = -std::log(std::max(1.0 - u(k), 1e-300));
  const double total = w.sum();
  if (total <= 0.0) return set.center();
  Vector out = Vector::Zero(set.dim());
  for (int k = 0; k < m; ++k) out += (w(k) / total) * poly.vertices[k];
  return out;
}

std::vector<Vector> quasi_random_points(const ActionSet& set, int count, std::uint64_t start) {
  const int cd = cube_dim(set);
  std::vector<Vector> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(from_unit_cube(set, halton(start + k, cd)));
  return out;
}

Vector sample_uniform(const ActionSet& set, Rng& rng) {
  const Vector lo = set.bbox_lo();
  const Vector hi = set.bbox_hi();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    Vector x(set.dim());
    for (int i = 0; i < set.dim(); ++i) x(i) = lo(i) + unit(rng) * (hi(i) - lo(i));
    if (set.contains(x, 0.0)) return x;
  }
  throw SolverError("rejection sampling failed to hit the action set");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

}  // namespace caimdp
