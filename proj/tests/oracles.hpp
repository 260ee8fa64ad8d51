#pragma once
// Independent reference computations for the tests. Nothing here calls into the
// library's numerics, so agreement is a real cross-check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, rows × cols

inline Mat random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> nd;
  Mat a(rows, Vec(cols));
  for (auto& r : a)
    for (double& v : r) v = nd(gen);
  return a;
}

inline Vec random_vector(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (double& x : v) x = nd(gen);
  return v;
}

inline Vec random_sparse(std::mt19937_64& gen, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), gen);
  std::normal_distribution<double> nd;
  Vec v(n, 0.0);
  for (std::size_t q = 0; q < k; ++q) v[idx[q]] = nd(gen);
  return v;
}

/// Symmetric positive definite: BᵀB + shift·I.
inline Mat random_spd(std::mt19937_64& gen, std::size_t n, double shift = 0.5) {
  Mat b = random_matrix(gen, n, n);
  Mat q(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) q[i][j] += b[k][i] * b[k][j];
      if (i == j) q[i][j] += shift;
    }
  return q;
}

inline Vec flatten(const Mat& a) {
  Vec out;
  for (const auto& r : a) out.insert(out.end(), r.begin(), r.end());
  return out;
}

inline Vec mat_vec(const Mat& a, const Vec& x) {
  Vec y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline double ls_value(const Mat& a, const Vec& b, const Vec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = -b[i];
    for (std::size_t j = 0; j < x.size(); ++j) r += a[i][j] * x[j];
    s += r * r;
  }
  return s;
}

inline double quad_value(const Mat& q, const Vec& b, const Vec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += 2.0 * b[i] * x[i];
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * q[i][j] * x[j];
  }
  return s;
}

/// Σ ((a_mᵀx)² − c_m)².
inline double rank_one_quartic_value(const Mat& factors, const Vec& c, const Vec& x) {
  double s = 0.0;
  for (std::size_t m = 0; m < factors.size(); ++m) {
    double in = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) in += factors[m][j] * x[j];
    const double g = in * in - c[m];
    s += g * g;
  }
  return s;
}

/// Central differences with step h·(1 + |x_i|).
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, Vec x, double h = 1e-6) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double step = h * (1.0 + std::abs(xi));
    x[i] = xi + step;
    const double fp = f(x);
    x[i] = xi - step;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

/// Global minimum of a 1-D function on [lo, hi]: dense scan, then golden-section
/// refinement around the best few samples.
inline std::pair<double, double> line_min(const std::function<double(double)>& phi, double lo, double hi,
                                          std::size_t samples = 20001) {
  std::vector<std::pair<double, double>> pts(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(samples - 1);
    pts[k] = {phi(t), t};
  }
  const double h = (hi - lo) / static_cast<double>(samples - 1);
  std::vector<std::pair<double, double>> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  double best_t = sorted[0].second, best_v = sorted[0].first;
  for (std::size_t q = 0; q < std::min<std::size_t>(8, sorted.size()); ++q) {
    double a = sorted[q].second - h, b = sorted[q].second + h;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    for (int it = 0; it < 200; ++it) {
      if (phi(c) < phi(d)) {
        b = d;
      } else {
        a = c;
      }
      c = b - r * (b - a);
      d = a + r * (b - a);
    }
    const double t = 0.5 * (a + b);
    if (phi(t) < best_v) {
      best_v = phi(t);
      best_t = t;
    }
  }
  return {best_t, best_v};
}

/// Cyclic Jacobi eigenvalues of a symmetric matrix, ascending.
inline Vec jacobi_eigenvalues(Mat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  Vec ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline Mat gram(const Mat& a) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  Mat g(n, Vec(n, 0.0));
  for (const auto& r : a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i][j] += r[i] * r[j];
  return g;
}

/// Solves H x = g by Cramer's rule (small systems only).
inline double det(Mat m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  double d = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    d += ((c % 2) ? -1.0 : 1.0) * m[0][c] * det(minor);
  }
  return d;
}

inline Vec cramer(const Mat& h, const Vec& g) {
  const double d = det(h);
  Vec x(g.size());
  for (std::size_t c = 0; c < g.size(); ++c) {
    Mat hc = h;
    for (std::size_t r = 0; r < g.size(); ++r) hc[r][c] = g[r];
    x[c] = det(hc) / d;
  }
  return x;
}

/// All size-k subsets by bitmask, ordered lexicographically.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountl(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// min over supports S, |S| = s, of ‖x − x_S‖².
inline double projection_distance(const Vec& x, std::size_t s) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& sup : subsets(x.size(), s)) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::find(sup.begin(), sup.end(), i) == sup.end()) d += x[i] * x[i];
    best = std::min(best, d);
  }
  return best;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace oracle
