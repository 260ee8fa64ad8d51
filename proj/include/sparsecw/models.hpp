#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sparsecw/numerics.hpp"

namespace sparsecw {

/// The restriction t ↦ f(x + t·e_i) has no minimizer.
class UnboundedDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind { least_squares, quadratic, quartic };

std::string_view to_string(ModelKind kind);

/// Result of a one-dimensional minimization along a coordinate: the step t
/// added to the coordinate and the objective value reached.
struct LineMin {
  double t = 0.0;
  double value = 0.0;
};

struct LipschitzConstants {
  std::optional<double> global;  // L(f)
  std::optional<double> local;   // L₂(f)
};

/// Smooth objective over ℝⁿ with exact coordinate minimization.
class ObjectiveModel {
 public:
  virtual ~ObjectiveModel() = default;

  virtual ModelKind kind() const noexcept = 0;
  virtual std::size_t dim() const noexcept = 0;
  virtual double eval(std::span<const double> x) const = 0;
  virtual DenseVector grad(std::span<const double> x) const = 0;

  /// Global minimizer of t ↦ f(x + t·e_i). Throws UnboundedDirection.
  virtual LineMin minimize_1d(std::span<const double> x, std::size_t i) const = 0;

  /// minimize_1d for every coordinate. Models override this to share the work
  /// (residuals, inner products) across coordinates.
  virtual std::vector<LineMin> minimize_1d_all(std::span<const double> x) const;

  /// minimize_1d at x − x_i·e_i along coordinate j.
  LineMin minimize_swap(std::span<const double> x, std::size_t i, std::size_t j) const;

  virtual LipschitzConstants lipschitz_constants() const { return {}; }
  virtual std::optional<double> lower_bound() const { return std::nullopt; }

  /// Quadratic upper model h_L(x, y) = f(y) + ⟨∇f(y), x − y⟩ + (L/2)‖x − y‖².
  double surrogate_value(std::span<const double> x, std::span<const double> y, double l) const;

 protected:
  void check_dim(std::span<const double> x, const char* where) const;
  void check_index(std::size_t i, const char* where) const;
};

/// f(x) = ‖Ax − b‖².
class LeastSquaresModel final : public ObjectiveModel {
 public:
  LeastSquaresModel(DenseMatrix a, DenseVector b);

  ModelKind kind() const noexcept override { return ModelKind::least_squares; }
  std::size_t dim() const noexcept override { return a_.cols(); }
  double eval(std::span<const double> x) const override;
  DenseVector grad(std::span<const double> x) const override;
  LineMin minimize_1d(std::span<const double> x, std::size_t i) const override;
  std::vector<LineMin> minimize_1d_all(std::span<const double> x) const override;
  LipschitzConstants lipschitz_constants() const override { return lipschitz_; }
  std::optional<double> lower_bound() const override { return 0.0; }

  const DenseMatrix& matrix() const noexcept { return a_; }
  const DenseVector& rhs() const noexcept { return b_; }
  const DenseMatrix& gram() const noexcept { return gram_; }
  /// ‖a_i‖² per column.
  const DenseVector& column_sq_norms() const noexcept { return col_sq_; }
  /// Ax − b.
  DenseVector residual(std::span<const double> x) const;

 private:
  DenseMatrix a_;
  DenseVector b_;
  DenseMatrix gram_;
  DenseVector col_sq_;
  LipschitzConstants lipschitz_;
};

/// f(x) = xᵀQx + 2bᵀx with Q symmetric.
class QuadraticModel final : public ObjectiveModel {
 public:
  QuadraticModel(DenseMatrix q, DenseVector b);

  ModelKind kind() const noexcept override { return ModelKind::quadratic; }
  std::size_t dim() const noexcept override { return q_.rows(); }
  double eval(std::span<const double> x) const override;
  DenseVector grad(std::span<const double> x) const override;
  LineMin minimize_1d(std::span<const double> x, std::size_t i) const override;
  std::vector<LineMin> minimize_1d_all(std::span<const double> x) const override;
  LipschitzConstants lipschitz_constants() const override { return lipschitz_; }

  const DenseMatrix& hessian_half() const noexcept { return q_; }
  const DenseVector& linear() const noexcept { return b_; }

 private:
  DenseMatrix q_;
  DenseVector b_;
  LipschitzConstants lipschitz_;
};

/// f(x) = Σ_m (xᵀA_m x − c_m)² with symmetric A_m, or with A_m = a_m a_mᵀ when
/// built from rank-one factors.
class QuarticModel final : public ObjectiveModel {
 public:
  QuarticModel(std::vector<DenseMatrix> mats, DenseVector targets);
  /// Rank-one measurements (a_mᵀx)² = c_m; factors[m] = a_m.
  static QuarticModel rank_one(std::vector<DenseVector> factors, DenseVector targets);

  ModelKind kind() const noexcept override { return ModelKind::quartic; }
  std::size_t dim() const noexcept override { return n_; }
  double eval(std::span<const double> x) const override;
  DenseVector grad(std::span<const double> x) const override;
  LineMin minimize_1d(std::span<const double> x, std::size_t i) const override;
  std::vector<LineMin> minimize_1d_all(std::span<const double> x) const override;
  std::optional<double> lower_bound() const override { return 0.0; }

  std::size_t measurements() const noexcept { return targets_.size(); }
  bool is_rank_one() const noexcept { return !factors_.empty(); }
  const std::vector<DenseMatrix>& mats() const noexcept { return mats_; }
  const std::vector<DenseVector>& factors() const noexcept { return factors_; }
  const DenseVector& targets() const noexcept { return targets_; }

  /// Coefficients of f(x + t·e_i) as a polynomial in t, lowest degree first.
  std::array<double, 5> restriction(std::span<const double> x, std::size_t i) const;

 private:
  QuarticModel() = default;

  // Per measurement: (A_m x) and xᵀA_m x − c_m.
  struct Forms {
    std::vector<DenseVector> ax;  // empty for rank-one
    DenseVector inner;            // a_mᵀx for rank-one
    DenseVector gap;
  };
  Forms forms(std::span<const double> x) const;
  double diag(std::size_t m, std::size_t i) const;
  double ax_entry(const Forms& f, std::size_t m, std::size_t i) const;
  LineMin minimize_restriction(const Forms& f, std::size_t i) const;

  std::size_t n_ = 0;
  std::vector<DenseMatrix> mats_;
  std::vector<DenseVector> factors_;
  DenseVector targets_;
};

/// Minimizer of a polynomial of degree ≤ 4 (coefficients lowest degree first).
/// Ties in value prefer smaller |t|, then smaller t. Throws UnboundedDirection
/// when the polynomial is not bounded below.
LineMin minimize_quartic_polynomial(const std::array<double, 5>& coef);

}  // namespace sparsecw
