#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparsecw/models.hpp"

namespace sparsecw {

/// Raised for malformed problem files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Provenance {
  std::string generator = "manual";
  std::uint64_t seed = 0;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

/// A serializable problem: model data, sparsity level and where it came from.
struct ProblemInstance {
  static constexpr int kFormatVersion = 1;

  ModelKind kind = ModelKind::least_squares;
  std::size_t s = 1;
  DenseMatrix a;                   // least squares: A (m×n); quadratic: Q (n×n)
  DenseVector b;                   // least squares: b; quadratic: b
  std::vector<DenseMatrix> mats;   // quartic, general form
  std::vector<DenseVector> factors;  // quartic, rank-one form
  DenseVector c;                   // quartic targets
  std::optional<DenseVector> x_true;
  Provenance provenance;

  std::size_t n() const;
  std::size_t m() const;

  /// Throws FormatError when dimensions disagree or s is not in (0, n).
  void validate() const;
  std::unique_ptr<ObjectiveModel> make_model() const;

  nlohmann::ordered_json to_json() const;
  static ProblemInstance from_json(const nlohmann::ordered_json& j);
  std::string dump() const { return to_json().dump(2) + "\n"; }

  static ProblemInstance load(const std::string& path);
  void save(const std::string& path) const;
};

ProblemInstance make_least_squares_instance(DenseMatrix a, DenseVector b, std::size_t s);
ProblemInstance make_quadratic_instance(DenseMatrix q, DenseVector b, std::size_t s);

/// Gaussian sensing matrix (stream 0, row-major draws), optionally with unit
/// columns. Planted mode draws a random s-sparse x_true (stream 1) and sets
/// b = A·x_true; otherwise b is standard normal (stream 1).
ProblemInstance generate_gaussian_ls(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t s,
                                     bool normalize_columns, bool planted);

/// Rank-one quartic instance: a_i standard normal (stream 0), x_true random
/// s-sparse (stream 1), c_i = (a_iᵀx_true)².
ProblemInstance generate_quartic(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t s);

}  // namespace sparsecw
