#include "sparsecw/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace sparsecw {

double default_bf_tolerance(const DenseVector& gradient, const SparseVector& x) {
  double off = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.in_support(i)) off = std::max(off, std::abs(gradient[i]));
  return 1e-8 * std::max(1.0, off);
}

namespace {

void require_feasible(const SparseVector& x, std::size_t s, std::size_t n, const char* where) {
  if (x.size() != n) {
    throw DimensionError(std::string(where) + ": point dimension " + std::to_string(x.size()) +
                         " != model dimension " + std::to_string(n));
  }
  if (x.nnz() > s) {
    throw CertificationError(std::string(where) + ": point has " + std::to_string(x.nnz()) +
                             " nonzeros, budget is " + std::to_string(s));
  }
}

bool bf_from_gradient(const DenseVector& g, const SparseVector& x, std::size_t s, double tol) {
  if (x.nnz() < s) return norm_inf(g) <= tol;
  for (std::size_t i : x.support())
    if (std::abs(g[i]) > tol) return false;
  return true;
}

double level_from_gradient(const DenseVector& g, const SparseVector& x, std::size_t s) {
  if (x.nnz() < s) return 0.0;
  double off = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.in_support(i)) off = std::max(off, std::abs(g[i]));
  const double ms = m_stat(x, s);
  if (ms == 0.0) throw std::logic_error("stationarity_level: M_s(x) = 0 with ||x||_0 = s");
  return off / ms;
}

}  // namespace

bool is_basic_feasible(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                       std::optional<double> tol) {
  require_feasible(x, s, model.dim(), "is_basic_feasible");
  const DenseVector g = model.grad(x.entries());
  return bf_from_gradient(g, x, s, tol.value_or(default_bf_tolerance(g, x)));
}

double stationarity_level(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                          std::optional<double> bf_tol) {
  require_feasible(x, s, model.dim(), "stationarity_level");
  const DenseVector g = model.grad(x.entries());
  if (!bf_from_gradient(g, x, s, bf_tol.value_or(default_bf_tolerance(g, x)))) {
    throw CertificationError("stationarity_level: point is not a basic feasible vector");
  }
  return level_from_gradient(g, x, s);
}

bool is_l_stationary(const ObjectiveModel& model, const SparseVector& x, std::size_t s, double l,
                     double rel_tol, std::optional<double> bf_tol) {
  if (!(l > 0.0)) throw std::invalid_argument("is_l_stationary: L must be positive");
  require_feasible(x, s, model.dim(), "is_l_stationary");
  const DenseVector g = model.grad(x.entries());
  if (!bf_from_gradient(g, x, s, bf_tol.value_or(default_bf_tolerance(g, x)))) return false;
  return level_from_gradient(g, x, s) <= l * (1.0 + rel_tol);
}

CwVerdict is_cw_minimum(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                        std::optional<double> tol) {
  require_feasible(x, s, model.dim(), "is_cw_minimum");
  const double f = model.eval(x.entries());
  CwVerdict verdict;
  verdict.tolerance = tol.value_or(1e-9 * (1.0 + std::abs(f)));
  const double bar = f - verdict.tolerance;

  if (x.nnz() < s) {
    const auto moves = model.minimize_1d_all(x.entries());
    for (std::size_t j = 0; j < moves.size(); ++j) {
      if (moves[j].value < bar) {
        verdict.witness = CwWitness{std::nullopt, j, moves[j].t, moves[j].value};
        return verdict;
      }
    }
  } else {
    DenseVector y = x.entries();
    for (std::size_t i : x.support()) {
      const double saved = y[i];
      y[i] = 0.0;
      const auto moves = model.minimize_1d_all(y);
      y[i] = saved;
      for (std::size_t j = 0; j < moves.size(); ++j) {
        if (moves[j].value < bar) {
          verdict.witness = CwWitness{i, j, moves[j].t, moves[j].value};
          return verdict;
        }
      }
    }
  }
  verdict.is_cw_minimum = true;
  return verdict;
}

OptimalityCertificate certify(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                              const CertifyOptions& options) {
  OptimalityCertificate cert;
  cert.queried_l = options.l;
  cert.level_rel_tol = options.level_rel_tol;
  cert.stationarity_level = std::numeric_limits<double>::infinity();
  if (x.size() != model.dim()) throw DimensionError("certify: dimension mismatch");
  cert.value = model.eval(x.entries());
  cert.is_feasible = x.nnz() <= s;
  if (!cert.is_feasible) {
    if (options.l) cert.l_stationary = false;
    if (options.check_cw) cert.is_cw_minimum = false;
    return cert;
  }
  const DenseVector g = model.grad(x.entries());
  double scale = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.in_support(i)) scale = std::max(scale, std::abs(g[i]));
  cert.bf_tol = options.bf_tol.value_or(options.bf_rel_tol * scale);
  cert.is_bf = bf_from_gradient(g, x, s, cert.bf_tol);
  if (cert.is_bf) cert.stationarity_level = level_from_gradient(g, x, s);
  if (options.l) {
    cert.l_stationary = cert.is_bf && cert.stationarity_level <= *options.l * (1.0 + options.level_rel_tol);
  }
  if (options.check_cw) {
    const CwVerdict cw = is_cw_minimum(model, x, s, options.cw_tol);
    cert.is_cw_minimum = cw.is_cw_minimum;
    cert.cw_witness = cw.witness;
    cert.cw_tol = cw.tolerance;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// BF catalog

std::optional<std::size_t> BFCatalog::match(const DenseVector& x, double rel_tol) const {
  std::optional<std::size_t> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& p = entries[k].point.entries();
    const double d = distance(x, p);
    if (d <= rel_tol * (1.0 + norm2(p)) && d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

std::size_t BFCatalog::argmin_value() const {
  if (entries.empty()) throw std::logic_error("BFCatalog::argmin_value: empty catalog");
  std::size_t best = 0;
  for (std::size_t k = 1; k < entries.size(); ++k)
    if (entries[k].value < entries[best].value) best = k;
  return best;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_indices(const IndexList& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(idx[k]);
  }
  return out;
}

}  // namespace

std::string BFCatalog::to_csv() const {
  std::ostringstream os;
  os << "index,support,coordinates,value,stationarity_level\n";
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    os << k << ',' << join_indices(e.support) << ',';
    const auto& p = e.point.entries();
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << fmt_double(p[i]);
    os << ',' << fmt_double(e.value) << ',' << fmt_double(e.stationarity_level) << '\n';
  }
  return os.str();
}

std::string BFCatalog::to_json() const {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["s"] = s;
  j["provenance"] = provenance;
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    nlohmann::ordered_json je;
    je["index"] = k;
    je["support"] = e.support;
    je["point"] = e.point.entries();
    je["value"] = e.value;
    je["stationarity_level"] = e.stationarity_level;
    je["under_budget"] = e.under_budget;
    arr.push_back(std::move(je));
  }
  j["entries"] = std::move(arr);
  j["singular_supports"] = singular_supports;
  j["rejected_supports"] = rejected_supports;
  return j.dump(2) + "\n";
}

BFCatalog enumerate_bf(const ObjectiveModel& model, std::size_t s, std::size_t max_supports,
                       ExecutionPolicy policy) {
  const std::size_t n = model.dim();
  if (s == 0 || s >= n) throw std::invalid_argument("enumerate_bf: need 0 < s < n");
  const std::size_t count = binomial(n, s);
  if (count > max_supports) {
    throw std::length_error("enumerate_bf: C(" + std::to_string(n) + "," + std::to_string(s) +
                            ") = " + std::to_string(count) + " supports exceeds guard " +
                            std::to_string(max_supports));
  }

  DenseMatrix h;
  DenseVector rhs;
  if (const auto* ls = dynamic_cast<const LeastSquaresModel*>(&model)) {
    h = ls->gram();
    rhs = mat_t_vec(ls->matrix(), ls->rhs());
  } else if (const auto* qm = dynamic_cast<const QuadraticModel*>(&model)) {
    h = qm->hessian_half();
    rhs = qm->linear();
    for (double& v : rhs) v = -v;
  } else {
    throw std::invalid_argument("enumerate_bf: only least-squares and quadratic models are supported");
  }

  const std::vector<IndexList> supports = combinations(n, s);
  std::vector<std::optional<DenseVector>> solved(supports.size());

  const bool par = policy == ExecutionPolicy::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::size_t k = 0; k < supports.size(); ++k) {
    const IndexList& sup = supports[k];
    DenseVector g(sup.size());
    for (std::size_t a = 0; a < sup.size(); ++a) g[a] = rhs[sup[a]];
    try {
      const DenseVector xs = solve_linear(h.principal(sup), std::move(g));
      DenseVector x(n, 0.0);
      for (std::size_t a = 0; a < sup.size(); ++a) x[sup[a]] = xs[a];
      solved[k] = std::move(x);
    } catch (const NumericalError&) {
      solved[k].reset();
    }
  }

  BFCatalog cat;
  cat.s = s;
  cat.provenance = std::string(to_string(model.kind())) + " n=" + std::to_string(n) +
                   " s=" + std::to_string(s);
  for (std::size_t k = 0; k < supports.size(); ++k) {
    if (!solved[k]) {
      cat.singular_supports.push_back(supports[k]);
      continue;
    }
    SparseVector x = SparseVector::snapped(*solved[k]);
    const bool under = x.nnz() < s;
    if (under && !is_basic_feasible(model, x, s)) {
      cat.rejected_supports.push_back(supports[k]);
      continue;
    }
    const auto dup = std::find_if(cat.entries.begin(), cat.entries.end(), [&](const CatalogEntry& e) {
      return distance(e.point.entries(), x.entries()) <= 1e-10 * (1.0 + norm_inf(x.entries()));
    });
    if (dup != cat.entries.end()) continue;
    CatalogEntry e;
    e.support = supports[k];
    e.value = model.eval(x.entries());
    e.stationarity_level = stationarity_level(model, x, s);
    e.under_budget = under;
    e.point = std::move(x);
    cat.entries.push_back(std::move(e));
  }
  if (cat.entries.empty() && cat.rejected_supports.empty()) {
    throw NumericalError("enumerate_bf: every support is singular");
  }
  return cat;
}

bool is_s_regular(const DenseMatrix& a, std::size_t s, std::size_t max_supports) {
  if (s == 0 || s > std::min(a.rows(), a.cols())) {
    throw std::invalid_argument("is_s_regular: need 0 < s <= min(m, n)");
  }
  const std::size_t count = binomial(a.cols(), s);
  if (count > max_supports) throw std::length_error("is_s_regular: support guard exceeded");
  const DenseMatrix g = a.gram();
  for (const IndexList& sup : combinations(a.cols(), s)) {
    const DenseMatrix gs = g.principal(sup);
    const double hi = lambda_max_sym(gs);
    if (!(hi > 0.0)) return false;
    if (lambda_min_sym(gs) <= 1e-10 * hi) return false;
  }
  return true;
}

}  // namespace sparsecw

#include "sparsecw/serialize.hpp"

namespace sparsecw {

nlohmann::ordered_json certificate_json(const OptimalityCertificate& c) {
  using J = nlohmann::ordered_json;
  J j;
  j["is_feasible"] = c.is_feasible;
  j["is_bf"] = c.is_bf;
  j["value"] = c.value;
  if (std::isinf(c.stationarity_level)) {
    j["stationarity_level"] = nullptr;
    j["stationarity_level_infinite"] = true;
  } else {
    j["stationarity_level"] = c.stationarity_level;
    j["stationarity_level_infinite"] = false;
  }
  j["queried_l"] = c.queried_l ? J(*c.queried_l) : J(nullptr);
  j["l_stationary"] = c.l_stationary ? J(*c.l_stationary) : J(nullptr);
  j["is_cw_minimum"] = c.is_cw_minimum ? J(*c.is_cw_minimum) : J(nullptr);
  if (c.cw_witness) {
    J w;
    w["removed"] = c.cw_witness->removed ? J(*c.cw_witness->removed) : J(nullptr);
    w["inserted"] = c.cw_witness->inserted;
    w["t"] = c.cw_witness->t;
    w["value"] = c.cw_witness->value;
    j["cw_witness"] = std::move(w);
  } else {
    j["cw_witness"] = nullptr;
  }
  j["tolerances"] = {{"bf", c.bf_tol}, {"level_rel", c.level_rel_tol}, {"cw", c.cw_tol}};
  return j;
}

}  // namespace sparsecw
