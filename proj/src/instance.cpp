#include "sparsecw/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sparsecw/rng.hpp"

namespace sparsecw {

using json = nlohmann::ordered_json;

std::size_t ProblemInstance::n() const {
  switch (kind) {
    case ModelKind::least_squares: return a.cols();
    case ModelKind::quadratic: return a.rows();
    case ModelKind::quartic:
      if (!factors.empty()) return factors.front().size();
      return mats.empty() ? 0 : mats.front().rows();
  }
  return 0;
}

std::size_t ProblemInstance::m() const {
  switch (kind) {
    case ModelKind::least_squares: return a.rows();
    case ModelKind::quadratic: return a.rows();
    case ModelKind::quartic: return c.size();
  }
  return 0;
}

void ProblemInstance::validate() const {
  const std::size_t dim = n();
  if (dim == 0) throw FormatError("problem has dimension 0");
  if (s == 0 || s >= dim) {
    throw FormatError("sparsity level s=" + std::to_string(s) + " must satisfy 0 < s < n=" +
                      std::to_string(dim));
  }
  switch (kind) {
    case ModelKind::least_squares:
      if (b.size() != a.rows()) throw FormatError("least_squares: b length != rows of A");
      break;
    case ModelKind::quadratic:
      if (!a.square() || b.size() != a.rows()) throw FormatError("quadratic: Q must be n×n, b length n");
      break;
    case ModelKind::quartic:
      if (factors.empty() == mats.empty()) throw FormatError("quartic: give exactly one of factors or mats");
      if (c.size() != (factors.empty() ? mats.size() : factors.size())) {
        throw FormatError("quartic: target count differs from measurement count");
      }
      break;
  }
  if (x_true && x_true->size() != dim) throw FormatError("x_true has the wrong length");
}

std::unique_ptr<ObjectiveModel> ProblemInstance::make_model() const {
  validate();
  switch (kind) {
    case ModelKind::least_squares: return std::make_unique<LeastSquaresModel>(a, b);
    case ModelKind::quadratic: return std::make_unique<QuadraticModel>(a, b);
    case ModelKind::quartic:
      if (!factors.empty()) return std::make_unique<QuarticModel>(QuarticModel::rank_one(factors, c));
      return std::make_unique<QuarticModel>(mats, c);
  }
  throw std::logic_error("make_model: unhandled kind");
}

json ProblemInstance::to_json() const {
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = to_string(kind);
  j["m"] = m();
  j["n"] = n();
  j["s"] = s;
  switch (kind) {
    case ModelKind::least_squares:
      j["A"] = a.data();
      j["b"] = b;
      break;
    case ModelKind::quadratic:
      j["Q"] = a.data();
      j["b"] = b;
      break;
    case ModelKind::quartic:
      if (!factors.empty()) {
        j["factors"] = factors;
      } else {
        auto arr = json::array();
        for (const auto& mat : mats) arr.push_back(mat.data());
        j["mats"] = std::move(arr);
      }
      j["c"] = c;
      break;
  }
  j["x_true"] = x_true ? json(*x_true) : json(nullptr);
  j["provenance"] = {{"generator", provenance.generator},
                     {"seed", provenance.seed},
                     {"params", provenance.params}};
  return j;
}

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("problem file: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("problem file: bad field '") + key + "': " + e.what());
  }
}

DenseMatrix matrix_field(const json& j, const char* key, std::size_t rows, std::size_t cols) {
  auto flat = field<std::vector<double>>(j, key);
  if (flat.size() != rows * cols) {
    throw FormatError(std::string("problem file: '") + key + "' has " + std::to_string(flat.size()) +
                      " entries, expected " + std::to_string(rows * cols));
  }
  return DenseMatrix(rows, cols, std::move(flat));
}

}  // namespace

ProblemInstance ProblemInstance::from_json(const json& j) {
  const int version = field<int>(j, "format_version");
  if (version != kFormatVersion) {
    throw FormatError("problem file: unsupported format_version " + std::to_string(version));
  }
  ProblemInstance p;
  const auto kind = field<std::string>(j, "kind");
  const auto n = field<std::size_t>(j, "n");
  p.s = field<std::size_t>(j, "s");
  if (kind == "least_squares") {
    p.kind = ModelKind::least_squares;
    const auto m = field<std::size_t>(j, "m");
    p.a = matrix_field(j, "A", m, n);
    p.b = field<DenseVector>(j, "b");
  } else if (kind == "quadratic") {
    p.kind = ModelKind::quadratic;
    p.a = matrix_field(j, "Q", n, n);
    p.b = field<DenseVector>(j, "b");
  } else if (kind == "quartic") {
    p.kind = ModelKind::quartic;
    if (j.contains("factors")) {
      p.factors = field<std::vector<DenseVector>>(j, "factors");
    } else {
      for (auto flat : field<std::vector<std::vector<double>>>(j, "mats")) {
        if (flat.size() != n * n) throw FormatError("problem file: a quartic matrix is not n×n");
        p.mats.emplace_back(n, n, std::move(flat));
      }
    }
    p.c = field<DenseVector>(j, "c");
  } else {
    throw FormatError("problem file: unknown kind '" + kind + "'");
  }
  if (j.contains("x_true") && !j.at("x_true").is_null()) p.x_true = field<DenseVector>(j, "x_true");
  if (j.contains("provenance")) {
    const auto& pj = j.at("provenance");
    if (pj.contains("generator")) p.provenance.generator = pj.at("generator").get<std::string>();
    if (pj.contains("seed")) p.provenance.seed = pj.at("seed").get<std::uint64_t>();
    if (pj.contains("params")) p.provenance.params = pj.at("params");
  }
  if (p.n() != n) throw FormatError("problem file: payload dimension disagrees with n");
  p.validate();
  return p;
}

ProblemInstance ProblemInstance::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open problem file '" + path + "'");
  try {
    return from_json(json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("problem file '" + path + "' is not valid JSON: " + e.what());
  }
}

void ProblemInstance::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << dump();
}

ProblemInstance make_least_squares_instance(DenseMatrix a, DenseVector b, std::size_t s) {
  ProblemInstance p;
  p.kind = ModelKind::least_squares;
  p.a = std::move(a);
  p.b = std::move(b);
  p.s = s;
  p.validate();
  return p;
}

ProblemInstance make_quadratic_instance(DenseMatrix q, DenseVector b, std::size_t s) {
  ProblemInstance p;
  p.kind = ModelKind::quadratic;
  p.a = std::move(q);
  p.b = std::move(b);
  p.s = s;
  p.validate();
  return p;
}

ProblemInstance generate_gaussian_ls(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t s,
                                     bool normalize_columns, bool planted) {
  SparsityBudget budget(s, n);
  CounterRng matrix_rng(seed, 0);
  DenseMatrix a(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = matrix_rng.normal();
  if (normalize_columns) {
    for (std::size_t c = 0; c < n; ++c) {
      double sq = 0.0;
      for (std::size_t r = 0; r < m; ++r) sq += a(r, c) * a(r, c);
      const double norm = std::sqrt(sq);
      for (std::size_t r = 0; r < m; ++r) a(r, c) /= norm;
    }
  }
  ProblemInstance p;
  p.kind = ModelKind::least_squares;
  p.s = budget.s();
  CounterRng rhs_rng(seed, 1);
  if (planted) {
    SparseVector xt = random_sparse_vector(rhs_rng, n, s);
    p.b = mat_vec(a, xt.entries());
    p.x_true = xt.entries();
  } else {
    p.b.resize(m);
    for (double& v : p.b) v = rhs_rng.normal();
  }
  p.a = std::move(a);
  p.provenance.generator = "gaussian_ls";
  p.provenance.seed = seed;
  p.provenance.params = {{"m", m}, {"n", n}, {"s", s},
                         {"normalize_columns", normalize_columns}, {"planted", planted}};
  p.validate();
  return p;
}

ProblemInstance generate_quartic(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t s) {
  SparsityBudget budget(s, n);
  CounterRng factor_rng(seed, 0);
  ProblemInstance p;
  p.kind = ModelKind::quartic;
  p.s = budget.s();
  p.factors.assign(m, DenseVector(n));
  for (auto& a : p.factors)
    for (double& v : a) v = factor_rng.normal();
  CounterRng truth_rng(seed, 1);
  const SparseVector xt = random_sparse_vector(truth_rng, n, s);
  p.c.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double inner = dot(p.factors[i], xt.entries());
    p.c[i] = inner * inner;
  }
  p.x_true = xt.entries();
  p.provenance.generator = "quartic_rank_one";
  p.provenance.seed = seed;
  p.provenance.params = {{"m", m}, {"n", n}, {"s", s}};
  p.validate();
  return p;
}

}  // namespace sparsecw
