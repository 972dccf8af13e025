#ifndef JMETRIC_LINALG_HPP_
#define JMETRIC_LINALG_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "jmetric/tensor.hpp"

namespace jmetric {

/// One homogeneous linear equation sum_k coeff_k * x_{index_k} = 0.
struct SparseRow {
  std::vector<std::pair<std::size_t, double>> terms;
};

/// A homogeneous system A x = 0 stored as sparse rows.
class LinearConstraintSystem {
 public:
  explicit LinearConstraintSystem(std::size_t n_unknowns) : n_unknowns_(n_unknowns) {}

  void add_row(SparseRow row);

  std::size_t n_unknowns() const { return n_unknowns_; }
  std::size_t n_rows() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }

  /// Row-wise product A x.
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t n_unknowns_;
  std::vector<SparseRow> rows_;
};

struct NullSpace {
  std::size_t dimension = 0;
  std::size_t rank = 0;
  /// Orthonormal basis vectors, each of length n_unknowns.
  std::vector<std::vector<double>> basis;
};

inline constexpr double kDefaultNullSpaceTol = 1e-9;

/// Null space from an SVD; singular values at or below tol * sigma_max are
/// treated as zero. Throws Error(DegenerateSystem) when n_unknowns == 0.
NullSpace null_space(const LinearConstraintSystem& sys, double tol = kDefaultNullSpaceTol);

/// Rank over the rationals by exact sparse elimination.
/// Every coefficient must be an exact integer (throws DegenerateSystem
/// otherwise).
std::size_t exact_rank(const LinearConstraintSystem& sys);

inline constexpr double kSingularMetricDet = 1e-10;

/// Pivoted LU of a symmetric, possibly indefinite, metric g_ij.
/// Construction throws Error(NearSingularMetric) when |det g| <= 1e-10.
class MetricFactorization {
 public:
  explicit MetricFactorization(const TensorValue& g);
  ~MetricFactorization();
  MetricFactorization(MetricFactorization&&) noexcept;
  MetricFactorization& operator=(MetricFactorization&&) noexcept;

  double determinant() const { return det_; }
  std::vector<double> solve(std::span<const double> rhs) const;
  /// Inverse metric g^ij as an (Upper, Upper) tensor.
  TensorValue inverse() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double det_ = 0.0;
};

/// Solves g x = rhs for a symmetric (possibly indefinite) metric.
std::vector<double> solve_symmetric(const TensorValue& g, std::span<const double> rhs);

}  // namespace jmetric

#endif  // JMETRIC_LINALG_HPP_
