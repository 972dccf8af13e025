#include "jmetric/structure_kind.hpp"

#include <stdexcept>

namespace jmetric {

StructureKind make_kind(int alpha, int epsilon) {
  if ((alpha != 1 && alpha != -1) || (epsilon != 1 && epsilon != -1))
    throw std::invalid_argument("alpha and epsilon must each be +1 or -1");
  return StructureKind{alpha, epsilon};
}

std::string_view slug(StructureKind kind) {
  if (kind == kHermitian) return "hermitian";
  if (kind == kProductRiemannian) return "product-riemannian";
  if (kind == kNorden) return "norden";
  return "para-hermitian";
}

std::optional<StructureKind> kind_from_slug(std::string_view s) {
  for (StructureKind k : kAllKinds)
    if (slug(k) == s) return k;
  return std::nullopt;
}

ModelStructure model_structure(StructureKind kind, int n) {
  const int m = 2 * n;
  ModelStructure out{SquareMatrix<double>(m), SquareMatrix<double>(m)};
  if (kind.alpha == -1) {
    for (int b = 0; b < n; ++b) {
      out.J0(2 * b, 2 * b + 1) = -1.0;
      out.J0(2 * b + 1, 2 * b) = 1.0;
    }
    for (int b = 0; b < n; ++b) {
      out.inner(2 * b, 2 * b) = 1.0;
      out.inner(2 * b + 1, 2 * b + 1) = kind.epsilon == 1 ? 1.0 : -1.0;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      out.J0(i, i) = 1.0;
      out.J0(n + i, n + i) = -1.0;
    }
    if (kind.epsilon == 1) {
      out.inner = SquareMatrix<double>::identity(m);
    } else {
      for (int i = 0; i < n; ++i) {
        out.inner(i, n + i) = 1.0;
        out.inner(n + i, i) = 1.0;
      }
    }
  }
  return out;
}

}  // namespace jmetric
