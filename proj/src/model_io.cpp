#include "caimdp/model_io.hpp"

#include "caimdp/json_writer.hpp"

#include <fstream>
#include <sstream>

namespace caimdp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

Matrix matrix_from_json(const json& j, const std::string& path, long rows, long cols) {
  if (!j.is_array() || static_cast<long>(j.size()) != rows) {
    fail(path, "expected an array of " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    m.row(r) = vector_from_json(j[r], path + "[" + std::to_string(r) + "]", cols).transpose();
  }
  return m;
}

}  // namespace

Vector vector_from_json(const json& j, const std::string& path, long expected) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (expected >= 0 && static_cast<long>(j.size()) != expected) {
    fail(path, "expected length " + std::to_string(expected) + ", got " + std::to_string(j.size()));
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json action_set_to_json(const ActionSet& set) {
  json out;
  const auto& v = set.variant();
  if (const auto* b = std::get_if<ActionSet::Box>(&v)) {
    out["type"] = "box";
    out["lo"] = vector_to_json(b->lo);
    out["hi"] = vector_to_json(b->hi);
  } else if (const auto* b = std::get_if<ActionSet::Ball>(&v)) {
    out["type"] = "ball";
    out["center"] = vector_to_json(b->center);
    out["radius"] = b->radius;
  } else if (const auto* p = std::get_if<ActionSet::Product>(&v)) {
    out["type"] = "product";
    out["factors"] = json::array();
    for (const auto& f : p->factors) out["factors"].push_back(action_set_to_json(f));
  } else {
    const auto& poly = std::get<ActionSet::PolytopeV>(v);
    out["type"] = "polytope_v";
    out["vertices"] = json::array();
    for (const auto& x : poly.vertices) out["vertices"].push_back(vector_to_json(x));
  }
  return out;
}

ActionSet action_set_from_json(const json& j, const std::string& path) {
  const json& type = field(j, "type", path);
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "box") {
      Vector lo = vector_from_json(field(j, "lo", path), path + ".lo");
      Vector hi = vector_from_json(field(j, "hi", path), path + ".hi", lo.size());
      return ActionSet::box(std::move(lo), std::move(hi));
    }
    if (t == "ball") {
      return ActionSet::ball(vector_from_json(field(j, "center", path), path + ".center"),
                             number(field(j, "radius", path), path + ".radius"));
    }
    if (t == "product") {
      const json& fs = field(j, "factors", path);
      if (!fs.is_array()) fail(path + ".factors", "expected an array");
      std::vector<ActionSet> factors;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        factors.push_back(action_set_from_json(fs[k], path + ".factors[" + std::to_string(k) + "]"));
      }
      return ActionSet::product(std::move(factors));
    }
    if (t == "polytope_v") {
      const json& vs = field(j, "vertices", path);
      if (!vs.is_array() || vs.empty()) fail(path + ".vertices", "expected a nonempty array");
      std::vector<Vector> vertices;
      const long d = vs[0].is_array() ? static_cast<long>(vs[0].size()) : -1;
      for (std::size_t k = 0; k < vs.size(); ++k) {
        vertices.push_back(vector_from_json(vs[k], path + ".vertices[" + std::to_string(k) + "]", d));
      }
      return ActionSet::polytope(std::move(vertices));
    }
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  fail(path + ".type", "unknown action set type '" + t + "'");
}

json bound_to_json(const BoundFunction& b) {
  json out;
  if (const auto* f = b.as_affine()) {
    out["kind"] = "affine";
    out["c"] = vector_to_json(f->c);
    out["d"] = f->d;
  } else if (const auto* f = b.as_quadratic()) {
    out["kind"] = "quadratic";
    out["H"] = json::array();
    for (Eigen::Index r = 0; r < f->h.rows(); ++r) out["H"].push_back(vector_to_json(f->h.row(r).transpose()));
    out["c"] = vector_to_json(f->c);
    out["d"] = f->d;
    out["shape"] = to_string(b.shape());
  } else {
    throw CapabilityError("opaque bound functions cannot be serialized");
  }
  return out;
}

BoundFunction bound_from_json(const json& j, int dim, const std::string& path) {
  const json& kind = field(j, "kind", path);
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  const auto k = kind.get<std::string>();
  try {
    if (k == "affine") {
      return BoundFunction::affine(vector_from_json(field(j, "c", path), path + ".c", dim),
                                   number(field(j, "d", path), path + ".d"));
    }
    if (k == "quadratic") {
      const json& shape = field(j, "shape", path);
      if (!shape.is_string()) fail(path + ".shape", "expected a string");
      const auto s = shape.get<std::string>();
      if (s != "concave" && s != "convex") fail(path + ".shape", "expected 'concave' or 'convex'");
      return BoundFunction::quadratic(matrix_from_json(field(j, "H", path), path + ".H", dim, dim),
                                      vector_from_json(field(j, "c", path), path + ".c", dim),
                                      number(field(j, "d", path), path + ".d"),
                                      s == "concave" ? Shape::Concave : Shape::Convex);
    }
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  fail(path + ".kind", "unknown bound kind '" + k + "'");
}

json model_to_json(const Caimdp& imdp) {
  json out;
  const int n = imdp.n_states();
  out["n_states"] = n;
  out["n_actions_dim"] = imdp.action_dim();
  out["action_set"] = action_set_to_json(imdp.action_set());
  for (const char* name : {"lower", "upper"}) {
    const auto& m = std::string(name) == "lower" ? imdp.lower() : imdp.upper();
    json rows = json::array();
    for (int q = 0; q < n; ++q) {
      json row = json::array();
      for (int r = 0; r < n; ++r) row.push_back(bound_to_json(m[q][r]));
      rows.push_back(std::move(row));
    }
    out[name] = std::move(rows);
  }
  out["reward"] = vector_to_json(imdp.reward());
  return out;
}

Caimdp model_from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  const long n = integer(field(j, "n_states", "$"), "n_states");
  const long dim = integer(field(j, "n_actions_dim", "$"), "n_actions_dim");
  if (n <= 0) throw ValidationError("n_states must be positive");
  if (dim <= 0) throw ValidationError("n_actions_dim must be positive");
  ActionSet set = action_set_from_json(field(j, "action_set", "$"));
  if (set.dim() != dim) {
    throw ValidationError("action_set dimension " + std::to_string(set.dim()) +
                          " does not match n_actions_dim " + std::to_string(dim));
  }
  auto read_bounds = [&](const char* name) {
    const json& rows = field(j, name, "$");
    if (!rows.is_array() || static_cast<long>(rows.size()) != n) {
      fail(name, "expected " + std::to_string(n) + " rows");
    }
    BoundMatrix m;
    for (long q = 0; q < n; ++q) {
      const std::string rp = std::string(name) + "[" + std::to_string(q) + "]";
      if (!rows[q].is_array() || static_cast<long>(rows[q].size()) != n) {
        fail(rp, "expected " + std::to_string(n) + " entries");
      }
      std::vector<BoundFunction> row;
      for (long r = 0; r < n; ++r) {
        row.push_back(bound_from_json(rows[q][r], static_cast<int>(dim),
                                      rp + "[" + std::to_string(r) + "]"));
      }
      m.push_back(std::move(row));
    }
    return m;
  };
  BoundMatrix lower = read_bounds("lower");
  BoundMatrix upper = read_bounds("upper");
  Vector reward = vector_from_json(field(j, "reward", "$"), "reward", n);
  return Caimdp(std::move(set), std::move(lower), std::move(upper), std::move(reward));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(path.string() + ": cannot open file for writing");
  write_json(out, j);
}

Caimdp load_model(const std::filesystem::path& path, bool check_intervals) {
  Caimdp imdp = model_from_json(read_json_file(path));
  if (check_intervals) validate_model(imdp);
  return imdp;
}

void save_model(const Caimdp& imdp, const std::filesystem::path& path) {
  write_json_file(model_to_json(imdp), path);
}

}  // namespace caimdp
