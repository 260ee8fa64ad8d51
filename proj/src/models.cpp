#include "sparsecw/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace sparsecw {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::least_squares: return "least_squares";
    case ModelKind::quadratic: return "quadratic";
    case ModelKind::quartic: return "quartic";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ObjectiveModel

std::vector<LineMin> ObjectiveModel::minimize_1d_all(std::span<const double> x) const {
  std::vector<LineMin> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = minimize_1d(x, i);
  return out;
}

LineMin ObjectiveModel::minimize_swap(std::span<const double> x, std::size_t i,
                                      std::size_t j) const {
  check_dim(x, "minimize_swap");
  check_index(i, "minimize_swap");
  check_index(j, "minimize_swap");
  DenseVector y(x.begin(), x.end());
  y[i] = 0.0;
  return minimize_1d(y, j);
}

double ObjectiveModel::surrogate_value(std::span<const double> x, std::span<const double> y,
                                       double l) const {
  check_dim(x, "surrogate_value");
  check_dim(y, "surrogate_value");
  const DenseVector g = grad(y);
  double lin = 0.0;
  double sq = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    lin += g[k] * d;
    sq += d * d;
  }
  return eval(y) + lin + 0.5 * l * sq;
}

void ObjectiveModel::check_dim(std::span<const double> x, const char* where) const {
  if (x.size() != dim()) {
    throw DimensionError(std::string(where) + ": point has " + std::to_string(x.size()) +
                         " entries, model dimension is " + std::to_string(dim()));
  }
}

void ObjectiveModel::check_index(std::size_t i, const char* where) const {
  if (i >= dim()) {
    throw std::out_of_range(std::string(where) + ": coordinate " + std::to_string(i) +
                            " outside model dimension " + std::to_string(dim()));
  }
}

namespace {

// Local Lipschitz constant over all coordinate pairs: 2·max ρ(H_{ij}) where
// H_{ij} is the 2×2 principal block and ρ its spectral radius.
double pairwise_lipschitz(const DenseMatrix& h) {
  const std::size_t n = h.rows();
  if (n == 1) return 2.0 * std::abs(h(0, 0));
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double hi = lambda_max_2x2(h(i, i), h(i, j), h(j, j));
      const double lo = -lambda_max_2x2(-h(i, i), -h(i, j), -h(j, j));
      best = std::max({best, std::abs(hi), std::abs(lo)});
    }
  }
  return 2.0 * best;
}

double spectral_radius(const DenseMatrix& h) {
  return std::max(std::abs(lambda_max_sym(h)), std::abs(lambda_min_sym(h)));
}

}  // namespace

// ---------------------------------------------------------------------------
// LeastSquaresModel

LeastSquaresModel::LeastSquaresModel(DenseMatrix a, DenseVector b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.size()) {
    throw DimensionError("LeastSquaresModel: A has " + std::to_string(a_.rows()) +
                         " rows, b has " + std::to_string(b_.size()) + " entries");
  }
  if (a_.cols() == 0) throw DimensionError("LeastSquaresModel: A has no columns");
  if (!a_.all_finite()) throw std::invalid_argument("LeastSquaresModel: non-finite entry in A");
  gram_ = a_.gram();
  col_sq_.resize(a_.cols());
  for (std::size_t i = 0; i < a_.cols(); ++i) {
    col_sq_[i] = gram_(i, i);
    if (!(col_sq_[i] > 0.0)) {
      throw std::invalid_argument("LeastSquaresModel: column " + std::to_string(i) + " is zero");
    }
  }
  lipschitz_.global = 2.0 * lambda_max_sym(gram_);
  lipschitz_.local = pairwise_lipschitz(gram_);
}

DenseVector LeastSquaresModel::residual(std::span<const double> x) const {
  check_dim(x, "LeastSquaresModel::residual");
  DenseVector r = mat_vec(a_, x);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b_[k];
  return r;
}

double LeastSquaresModel::eval(std::span<const double> x) const {
  return squared_norm(residual(x));
}

DenseVector LeastSquaresModel::grad(std::span<const double> x) const {
  DenseVector g = mat_t_vec(a_, residual(x));
  for (double& v : g) v *= 2.0;
  return g;
}

LineMin LeastSquaresModel::minimize_1d(std::span<const double> x, std::size_t i) const {
  check_index(i, "LeastSquaresModel::minimize_1d");
  const DenseVector r = residual(x);
  double c = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) c += a_(k, i) * r[k];
  return {-c / col_sq_[i], squared_norm(r) - c * c / col_sq_[i]};
}

std::vector<LineMin> LeastSquaresModel::minimize_1d_all(std::span<const double> x) const {
  const DenseVector r = residual(x);
  const DenseVector c = mat_t_vec(a_, r);
  const double rr = squared_norm(r);
  std::vector<LineMin> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = {-c[i] / col_sq_[i], rr - c[i] * c[i] / col_sq_[i]};
  return out;
}

// ---------------------------------------------------------------------------
// QuadraticModel

QuadraticModel::QuadraticModel(DenseMatrix q, DenseVector b) : q_(std::move(q)), b_(std::move(b)) {
  if (!q_.square() || q_.rows() != b_.size() || q_.rows() == 0) {
    throw DimensionError("QuadraticModel: Q must be n×n with b of length n");
  }
  if (!q_.all_finite()) throw std::invalid_argument("QuadraticModel: non-finite entry in Q");
  if (!q_.is_symmetric(1e-12)) throw std::invalid_argument("QuadraticModel: Q is not symmetric");
  lipschitz_.global = 2.0 * spectral_radius(q_);
  lipschitz_.local = pairwise_lipschitz(q_);
}

double QuadraticModel::eval(std::span<const double> x) const {
  check_dim(x, "QuadraticModel::eval");
  const DenseVector qx = mat_vec(q_, x);
  return dot(x, qx) + 2.0 * dot(b_, x);
}

DenseVector QuadraticModel::grad(std::span<const double> x) const {
  check_dim(x, "QuadraticModel::grad");
  DenseVector g = mat_vec(q_, x);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = 2.0 * (g[k] + b_[k]);
  return g;
}

namespace {

LineMin quadratic_line(double f, double g, double qii, std::size_t i) {
  if (qii > 0.0) return {-g / (2.0 * qii), f - g * g / (4.0 * qii)};
  if (qii == 0.0 && g == 0.0) return {0.0, f};
  throw UnboundedDirection("QuadraticModel: restriction to coordinate " + std::to_string(i) +
                           " is unbounded below (Q_ii <= 0)");
}

}  // namespace

LineMin QuadraticModel::minimize_1d(std::span<const double> x, std::size_t i) const {
  check_index(i, "QuadraticModel::minimize_1d");
  const DenseVector g = grad(x);
  return quadratic_line(eval(x), g[i], q_(i, i), i);
}

std::vector<LineMin> QuadraticModel::minimize_1d_all(std::span<const double> x) const {
  const DenseVector g = grad(x);
  const double f = eval(x);
  std::vector<LineMin> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = quadratic_line(f, g[i], q_(i, i), i);
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial line search

namespace {

constexpr double kDegreeCut = 1e-14;

// Candidate minimizers of a degree ≤ 4 polynomial; empty means constant.
std::vector<double> stationary_candidates(const std::array<double, 5>& p) {
  const double scale = std::max({std::abs(p[1]), std::abs(p[2]), std::abs(p[3]), std::abs(p[4])});
  if (scale == 0.0) return {};
  int degree = 0;
  for (int k = 4; k >= 1; --k) {
    if (std::abs(p[static_cast<std::size_t>(k)]) > kDegreeCut * scale) {
      degree = k;
      break;
    }
  }
  const double lead = p[static_cast<std::size_t>(degree)];
  if (degree % 2 == 1 || lead < 0.0) {
    throw UnboundedDirection("polynomial restriction of effective degree " +
                             std::to_string(degree) + " is unbounded below");
  }
  if (degree == 2) return {-p[1] / (2.0 * p[2])};
  const double c3 = 4.0 * p[4];
  const double c2 = std::abs(p[3]) > kDegreeCut * scale ? 3.0 * p[3] : 0.0;
  const double c1 = std::abs(p[2]) > kDegreeCut * scale ? 2.0 * p[2] : 0.0;
  const double c0 = std::abs(p[1]) > kDegreeCut * scale ? p[1] : 0.0;
  return real_cubic_roots(c3, c2, c1, c0);
}

LineMin pick_best(const std::vector<double>& candidates, double constant,
                  const std::function<double(double)>& value_at) {
  if (candidates.empty()) return {0.0, constant};
  LineMin best{candidates.front(), value_at(candidates.front())};
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double t = candidates[k];
    const double v = value_at(t);
    const double slack = 1e-13 * (1.0 + std::abs(best.value));
    if (v < best.value - slack) {
      best = {t, v};
    } else if (v <= best.value + slack) {
      const bool closer = std::abs(t) < std::abs(best.t) ||
                          (std::abs(t) == std::abs(best.t) && t < best.t);
      if (closer) best = {t, v};
    }
  }
  return best;
}

}  // namespace

LineMin minimize_quartic_polynomial(const std::array<double, 5>& coef) {
  const auto value_at = [&](double t) {
    return (((coef[4] * t + coef[3]) * t + coef[2]) * t + coef[1]) * t + coef[0];
  };
  return pick_best(stationary_candidates(coef), coef[0], value_at);
}

// ---------------------------------------------------------------------------
// QuarticModel

QuarticModel::QuarticModel(std::vector<DenseMatrix> mats, DenseVector targets)
    : mats_(std::move(mats)), targets_(std::move(targets)) {
  if (mats_.empty()) throw DimensionError("QuarticModel: no measurements");
  if (mats_.size() != targets_.size()) {
    throw DimensionError("QuarticModel: " + std::to_string(mats_.size()) + " matrices but " +
                         std::to_string(targets_.size()) + " targets");
  }
  n_ = mats_.front().rows();
  for (const auto& m : mats_) {
    if (!m.square() || m.rows() != n_) throw DimensionError("QuarticModel: matrices must all be n×n");
    if (!m.is_symmetric(1e-12)) throw std::invalid_argument("QuarticModel: A_i is not symmetric");
  }
}

QuarticModel QuarticModel::rank_one(std::vector<DenseVector> factors, DenseVector targets) {
  if (factors.empty()) throw DimensionError("QuarticModel: no measurements");
  if (factors.size() != targets.size()) throw DimensionError("QuarticModel: factor/target count mismatch");
  QuarticModel m;
  m.n_ = factors.front().size();
  for (const auto& a : factors)
    if (a.size() != m.n_) throw DimensionError("QuarticModel: factors must all have length n");
  if (m.n_ == 0) throw DimensionError("QuarticModel: empty factors");
  m.factors_ = std::move(factors);
  m.targets_ = std::move(targets);
  return m;
}

QuarticModel::Forms QuarticModel::forms(std::span<const double> x) const {
  check_dim(x, "QuarticModel");
  Forms f;
  const std::size_t count = targets_.size();
  f.gap.resize(count);
  if (is_rank_one()) {
    f.inner.resize(count);
    for (std::size_t m = 0; m < count; ++m) {
      f.inner[m] = dot(factors_[m], x);
      f.gap[m] = f.inner[m] * f.inner[m] - targets_[m];
    }
  } else {
    f.ax.resize(count);
    for (std::size_t m = 0; m < count; ++m) {
      f.ax[m] = mat_vec(mats_[m], x);
      f.gap[m] = dot(x, f.ax[m]) - targets_[m];
    }
  }
  return f;
}

double QuarticModel::diag(std::size_t m, std::size_t i) const {
  return is_rank_one() ? factors_[m][i] * factors_[m][i] : mats_[m](i, i);
}

double QuarticModel::ax_entry(const Forms& f, std::size_t m, std::size_t i) const {
  return is_rank_one() ? factors_[m][i] * f.inner[m] : f.ax[m][i];
}

double QuarticModel::eval(std::span<const double> x) const {
  const Forms f = forms(x);
  return squared_norm(f.gap);
}

DenseVector QuarticModel::grad(std::span<const double> x) const {
  const Forms f = forms(x);
  DenseVector g(n_, 0.0);
  for (std::size_t m = 0; m < targets_.size(); ++m) {
    const double w = 4.0 * f.gap[m];
    for (std::size_t i = 0; i < n_; ++i) g[i] += w * ax_entry(f, m, i);
  }
  return g;
}

std::array<double, 5> QuarticModel::restriction(std::span<const double> x, std::size_t i) const {
  check_index(i, "QuarticModel::restriction");
  const Forms f = forms(x);
  std::array<double, 5> p{};
  for (std::size_t m = 0; m < targets_.size(); ++m) {
    const double alpha = diag(m, i);
    const double beta = 2.0 * ax_entry(f, m, i);
    const double gamma = f.gap[m];
    p[4] += alpha * alpha;
    p[3] += 2.0 * alpha * beta;
    p[2] += beta * beta + 2.0 * alpha * gamma;
    p[1] += 2.0 * beta * gamma;
    p[0] += gamma * gamma;
  }
  return p;
}

LineMin QuarticModel::minimize_restriction(const Forms& f, std::size_t i) const {
  const std::size_t count = targets_.size();
  std::vector<double> alpha(count), beta(count);
  std::array<double, 5> p{};
  for (std::size_t m = 0; m < count; ++m) {
    alpha[m] = diag(m, i);
    beta[m] = 2.0 * ax_entry(f, m, i);
    const double gamma = f.gap[m];
    p[4] += alpha[m] * alpha[m];
    p[3] += 2.0 * alpha[m] * beta[m];
    p[2] += beta[m] * beta[m] + 2.0 * alpha[m] * gamma;
    p[1] += 2.0 * beta[m] * gamma;
    p[0] += gamma * gamma;
  }
  // Evaluate as a sum of squares rather than through the expanded coefficients.
  const auto value_at = [&](double t) {
    double s = 0.0;
    for (std::size_t m = 0; m < count; ++m) {
      const double q = (alpha[m] * t + beta[m]) * t + f.gap[m];
      s += q * q;
    }
    return s;
  };
  return pick_best(stationary_candidates(p), p[0], value_at);
}

LineMin QuarticModel::minimize_1d(std::span<const double> x, std::size_t i) const {
  check_index(i, "QuarticModel::minimize_1d");
  return minimize_restriction(forms(x), i);
}

std::vector<LineMin> QuarticModel::minimize_1d_all(std::span<const double> x) const {
  const Forms f = forms(x);
  std::vector<LineMin> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = minimize_restriction(f, i);
  return out;
}

}  // namespace sparsecw
