#include "sparsecw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace sparsecw {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("DenseMatrix: entry count " + std::to_string(data_.size()) +
                         " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseVector DenseMatrix::column(std::size_t c) const {
  DenseVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

DenseMatrix DenseMatrix::gram() const {
  DenseMatrix g(cols_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto a = row(r);
    for (std::size_t i = 0; i < cols_; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      for (std::size_t j = i; j < cols_; ++j) g(i, j) += ai * a[j];
    }
  }
  for (std::size_t i = 0; i < cols_; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

DenseMatrix DenseMatrix::principal(std::span<const std::size_t> idx) const {
  DenseMatrix p(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) p(a, b) = (*this)(idx[a], idx[b]);
  return p;
}

DenseMatrix DenseMatrix::columns(std::span<const std::size_t> idx) const {
  DenseMatrix p(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t b = 0; b < idx.size(); ++b) p(r, b) = (*this)(r, idx[b]);
  return p;
}

bool DenseMatrix::is_symmetric(double tol) const {
  if (!square()) return false;
  const double scale = 1.0 + max_abs();
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
  return true;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseVector mat_vec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("mat_vec: matrix has " + std::to_string(a.cols()) +
                         " columns, vector has " + std::to_string(x.size()) + " entries");
  }
  DenseVector y(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) y[r] = dot(a.row(r), x);
  return y;
}

DenseVector mat_t_vec(const DenseMatrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) {
    throw DimensionError("mat_t_vec: matrix has " + std::to_string(a.rows()) +
                         " rows, vector has " + std::to_string(x.size()) + " entries");
  }
  DenseVector y(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    const auto row = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) y[c] += row[c] * xr;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(std::span<const double> a) { return dot(a, a); }

double norm2(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

namespace {

constexpr std::size_t kPowerIterationCap = 200000;
constexpr double kPowerResidualTol = 1e-13;

// Deterministic restart vector: splitmix64 of the index mapped to [-1, 1).
DenseVector restart_vector(std::size_t n) {
  DenseVector v(n);
  std::uint64_t z = 0x5EED5EEDULL;
  for (std::size_t i = 0; i < n; ++i) {
    z += 0x9E3779B97F4A7C15ULL;
    std::uint64_t w = z;
    w = (w ^ (w >> 30)) * 0xBF58476D1CE4E5B9ULL;
    w = (w ^ (w >> 27)) * 0x94D049BB133111EBULL;
    w ^= w >> 31;
    v[i] = static_cast<double>(w >> 11) * 0x1.0p-52 - 1.0;
  }
  return v;
}

// Power iteration on M + shift·I, which is positive semidefinite.
double shifted_power(const DenseMatrix& m, double shift, DenseVector v) {
  const std::size_t n = m.rows();
  double nv = norm2(v);
  for (double& e : v) e /= nv;
  DenseVector w(n);
  const double tol = kPowerResidualTol * shift;
  double lambda = 0.0;
  for (std::size_t it = 0; it < kPowerIterationCap; ++it) {
    for (std::size_t r = 0; r < n; ++r) w[r] = dot(m.row(r), v) + shift * v[r];
    lambda = dot(v, w);
    double res = 0.0;
    for (std::size_t r = 0; r < n; ++r) res += (w[r] - lambda * v[r]) * (w[r] - lambda * v[r]);
    if (std::sqrt(res) <= tol) return lambda - shift;
    const double nw = norm2(w);
    if (nw == 0.0) return -shift;  // start landed in the null space of M + shift·I
    for (std::size_t r = 0; r < n; ++r) v[r] = w[r] / nw;
  }
  throw NumericalError("lambda_max_sym: power iteration did not converge within " +
                       std::to_string(kPowerIterationCap) + " iterations (ill-conditioned spectrum)");
}

}  // namespace

double lambda_max_sym(const DenseMatrix& m) {
  if (!m.square()) throw DimensionError("lambda_max_sym: matrix is not square");
  if (!m.is_symmetric(1e-12)) throw NumericalError("lambda_max_sym: matrix is not symmetric");
  const std::size_t n = m.rows();
  if (n == 0) throw DimensionError("lambda_max_sym: empty matrix");
  if (n == 1) return m(0, 0);
  double gersh = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (double v : m.row(r)) s += std::abs(v);
    gersh = std::max(gersh, s);
  }
  if (gersh == 0.0) return 0.0;
  const double first = shifted_power(m, gersh, DenseVector(n, 1.0));
  const double second = shifted_power(m, gersh, restart_vector(n));
  return std::max(first, second);
}

double lambda_min_sym(const DenseMatrix& m) {
  DenseMatrix neg = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) neg(r, c) = -m(r, c);
  return -lambda_max_sym(neg);
}

double lambda_max_2x2(double a, double b, double d) noexcept {
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  return mean + std::hypot(half, b);
}

DenseVector solve_linear(DenseMatrix h, DenseVector g, double rel_pivot_tol) {
  const std::size_t n = h.rows();
  if (!h.square() || g.size() != n) throw DimensionError("solve_linear: shape mismatch");
  const double tol = rel_pivot_tol * h.max_abs();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(h(r, k)) > std::abs(h(piv, k))) piv = r;
    if (!(std::abs(h(piv, k)) > tol)) throw NumericalError("solve_linear: singular system");
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(k, c), h(piv, c));
      std::swap(g[k], g[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = h(r, k) / h(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) h(r, c) -= f * h(k, c);
      g[r] -= f * g[k];
    }
  }
  DenseVector x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = g[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= h(k, c) * x[c];
    x[k] = s / h(k, k);
  }
  return x;
}

namespace {

constexpr double kDegenerateCoef = 1e-14;

void newton_polish(double c3, double c2, double c1, double c0, double& t) {
  const double p = ((c3 * t + c2) * t + c1) * t + c0;
  const double dp = (3.0 * c3 * t + 2.0 * c2) * t + c1;
  if (dp == 0.0 || !std::isfinite(dp)) return;
  const double cand = t - p / dp;
  const double pc = ((c3 * cand + c2) * cand + c1) * cand + c0;
  if (std::isfinite(cand) && std::abs(pc) <= std::abs(p)) t = cand;
}

std::vector<double> quadratic_roots(double a, double b, double c) {
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc < -kDegenerateCoef * (b * b + std::abs(4.0 * a * c))) return {};
    disc = 0.0;
  }
  if (disc == 0.0) return {-b / (2.0 * a)};
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  return {q / a, c / q};
}

std::vector<double> monic_cubic_roots(double a, double b, double c) {
  // t³ + a t² + b t + c
  const double q = (a * a - 3.0 * b) / 9.0;
  const double r = (a * (2.0 * a * a - 9.0 * b) + 27.0 * c) / 54.0;
  const double shift = a / 3.0;
  const double q3 = q * q * q;
  if (r * r < q3) {
    const double theta = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double amp = -2.0 * std::sqrt(q);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return {amp * std::cos(theta / 3.0) - shift, amp * std::cos((theta + two_pi) / 3.0) - shift,
            amp * std::cos((theta - two_pi) / 3.0) - shift};
  }
  const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q3)), r);
  const double small = big == 0.0 ? 0.0 : q / big;
  std::vector<double> roots{big + small - shift};
  // A double root shows up when the complex pair collapses onto the real axis.
  if (std::abs(big - small) <= 1e-10 * (std::abs(big) + std::abs(small)) && big != 0.0) {
    roots.push_back(-0.5 * (big + small) - shift);
  }
  return roots;
}

}  // namespace

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
  if (!std::isfinite(c3) || !std::isfinite(c2) || !std::isfinite(c1) || !std::isfinite(c0)) {
    throw std::invalid_argument("real_cubic_roots: non-finite coefficient");
  }
  const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) throw std::invalid_argument("real_cubic_roots: identically zero polynomial");
  const double eps = kDegenerateCoef * scale;
  if (std::abs(c3) <= eps) c3 = 0.0;
  if (std::abs(c2) <= eps) c2 = 0.0;
  if (std::abs(c1) <= eps) c1 = 0.0;

  std::vector<double> roots;
  if (c3 != 0.0) {
    // Keep only the largest-magnitude closed-form root; the other two come from
    // the deflated quadratic, which stays accurate when the roots differ in scale.
    const auto closed = monic_cubic_roots(c2 / c3, c1 / c3, c0 / c3);
    double r1 = *std::max_element(closed.begin(), closed.end(),
                                  [](double x, double y) { return std::abs(x) < std::abs(y); });
    newton_polish(c3, c2, c1, c0, r1);
    if (r1 == 0.0) {
      roots = quadratic_roots(c3, c2, c1);
    } else {
      // Backward deflation: p(t) = (t − r1)(c3 t² + q1 t + q0).
      const double q0 = -c0 / r1;
      const double q1 = (q0 - c1) / r1;
      roots = quadratic_roots(c3, q1, q0);
    }
    roots.push_back(r1);
  } else if (c2 != 0.0) {
    roots = quadratic_roots(c2, c1, c0);
  } else if (c1 != 0.0) {
    roots = {-c0 / c1};
  } else {
    return {};  // nonzero constant
  }
  for (double& t : roots) newton_polish(c3, c2, c1, c0, t);
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double t : roots) {
    if (unique.empty() || std::abs(t - unique.back()) > 1e-9 * (1.0 + std::abs(t))) unique.push_back(t);
  }
  return unique;
}

}  // namespace sparsecw
