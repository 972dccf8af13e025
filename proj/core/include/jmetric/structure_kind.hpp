#ifndef JMETRIC_STRUCTURE_KIND_HPP_
#define JMETRIC_STRUCTURE_KIND_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "jmetric/square_matrix.hpp"

namespace jmetric {

/// The sign pair (alpha, epsilon) with J^2 = alpha Id and
/// g(J., J.) = epsilon g. The four values give the four geometries:
///   (-1, +1) almost Hermitian          slug "hermitian"
///   (+1, +1) almost product Riemannian slug "product-riemannian"
///   (-1, -1) almost Norden             slug "norden"
///   (+1, -1) almost para-Hermitian     slug "para-hermitian"
struct StructureKind {
  int alpha = -1;
  int epsilon = 1;

  constexpr int product() const { return alpha * epsilon; }
  bool operator==(const StructureKind&) const = default;
};

inline constexpr StructureKind kHermitian{-1, 1};
inline constexpr StructureKind kProductRiemannian{1, 1};
inline constexpr StructureKind kNorden{-1, -1};
inline constexpr StructureKind kParaHermitian{1, -1};

inline constexpr std::array<StructureKind, 4> kAllKinds{kHermitian, kProductRiemannian, kNorden,
                                                        kParaHermitian};

/// Validates alpha, epsilon in {-1, +1}; throws std::invalid_argument.
StructureKind make_kind(int alpha, int epsilon);

std::string_view slug(StructureKind kind);
std::optional<StructureKind> kind_from_slug(std::string_view s);

/// Integer model pair (J0, inner) on R^{2n}:
///   alpha = -1: J0 = blockdiag([[0,-1],[1,0]]) (n blocks)
///   alpha = +1: J0 = diag(Id_n, -Id_n)
///   epsilon = +1: inner = Id
///   epsilon = -1: blockdiag(diag(1,-1)) paired with rotation blocks, or
///                 [[0, Id_n], [Id_n, 0]] paired with diag(Id_n, -Id_n).
/// Both satisfy J0^2 = alpha Id and J0^T inner J0 = epsilon inner exactly.
struct ModelStructure {
  SquareMatrix<double> J0;
  SquareMatrix<double> inner;
};

ModelStructure model_structure(StructureKind kind, int n);

}  // namespace jmetric

#endif  // JMETRIC_STRUCTURE_KIND_HPP_
