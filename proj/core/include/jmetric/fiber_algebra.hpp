#ifndef JMETRIC_FIBER_ALGEBRA_HPP_
#define JMETRIC_FIBER_ALGEBRA_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "jmetric/linalg.hpp"
#include "jmetric/square_matrix.hpp"
#include "jmetric/structure_kind.hpp"

namespace jmetric {

/// A model tangent space (V, J0, <,>) of dimension 2n with integer entries.
struct ModelFiber {
  int n = 1;
  StructureKind kind;
  SquareMatrix<double> J0;
  SquareMatrix<double> inner;

  int dim() const { return 2 * n; }

  /// The block model of model_structure(kind, n).
  static ModelFiber standard(StructureKind kind, int n);

  /// Same structure in the basis given by the columns of a unimodular integer
  /// matrix P: J0' = P^{-1} J0 P, inner' = P^T inner P. Throws
  /// std::invalid_argument unless |det P| = 1.
  ModelFiber conjugated(const SquareMatrix<double>& P) const;
};

/// Max residual of J0^2 = alpha Id, inner(J0.,J0.) = eps inner, inner
/// symmetric, and |det inner| >= 1 (exact for integer data).
double fiber_residual(const ModelFiber& fiber);

enum class ExtraConstraint {
  None,                 // W
  AlternatingFirstTwo,  // W1: phi(x,y,z) + phi(y,x,z) = 0
  SymmetricFirstTwo,    // Codazzi: phi(x,y,z) - phi(y,x,z) = 0
};

struct SubspaceQuery {
  ExtraConstraint extra = ExtraConstraint::None;
};

inline constexpr SubspaceQuery kQueryW{ExtraConstraint::None};
inline constexpr SubspaceQuery kQueryW1{ExtraConstraint::AlternatingFirstTwo};
inline constexpr SubspaceQuery kQueryCodazzi{ExtraConstraint::SymmetricFirstTwo};

std::string_view query_name(SubspaceQuery q);

/// Unknown index of phi_ijk among the (2n)^3 components.
inline std::size_t phi_index(int m, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)) *
             static_cast<std::size_t>(m) +
         static_cast<std::size_t>(k);
}

/// Defining relations of W on phi_ijk = phi(e_i, e_j, e_k), one pair of rows
/// per basis triple:
///   phi_ijk - ae phi_ikj = 0
///   J0^q_j phi_iqk + ae J0^q_k phi_ijq = 0     (phi(x,J0y,z) + ae phi(x,y,J0z))
/// followed by one row per triple for the extra constraint, if any.
/// Throws Error(UnsupportedDimension) unless n is 1, 2 or 3.
LinearConstraintSystem build_constraints(const ModelFiber& fiber, SubspaceQuery q);

/// W together with the polarized form of phi(x,x,y) = 0: rows for
/// x = e_i and x = e_i + e_j (i < j), y = e_k.
LinearConstraintSystem build_w1_polarized(const ModelFiber& fiber);

struct SubspaceDimension {
  std::size_t dimension = 0;
  std::size_t n_unknowns = 0;
  std::size_t n_rows = 0;
  std::size_t numeric_rank = 0;
  std::size_t exact_rank = 0;
};

/// Null-space dimension computed numerically (tol 1e-9) and by exact rational
/// elimination. Throws Error(ExactRankMismatch) if the two ranks differ.
SubspaceDimension analyze_subspace(const ModelFiber& fiber, SubspaceQuery q);
std::size_t subspace_dimension(const ModelFiber& fiber, SubspaceQuery q);

/// True iff the polarized and the alternating definitions of W1 give the
/// same subspace (equal dimension, each basis inside the other to 1e-9).
bool equivalent_W1_definitions(const ModelFiber& fiber);

struct AlgebraTableRow {
  StructureKind kind;
  int n = 1;
  std::size_t w = 0;
  std::size_t w1 = 0;
  std::size_t codazzi = 0;
  bool w1_definitions_agree = false;

  bool operator==(const AlgebraTableRow&) const = default;
};

/// Dimensions of W, W1 and the Codazzi-symmetric subspace for all four kinds
/// and n = 1, 2, 3, using the standard model fibers.
std::vector<AlgebraTableRow> algebra_table();

}  // namespace jmetric

#endif  // JMETRIC_FIBER_ALGEBRA_HPP_
