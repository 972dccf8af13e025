#ifndef JMETRIC_CATALOG_HPP_
#define JMETRIC_CATALOG_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jmetric/manifold.hpp"

namespace jmetric {

/// Built-in manifolds, selected by name:
///
///   flat-kahler               R^2, J0 rotation, g = delta,          (-1, +1)
///   flat-para-kahler          R^2, J = diag(1,-1), g = dx dy + dy dx, (+1, -1)
///   flat-anti-kahler          R^2, J0 rotation, g = diag(1,-1),     (-1, -1)
///   flat-product-riemannian   R^2, J = diag(1,-1), g = delta,       (+1, +1)
///   s6-nearly-kahler          round unit S^6, stereographic chart from -e1
///                             over the ball |u| < 2, J_p(X) = p X (octonions)
///   pullback-integrable-<kind>  dim 4: J pulled back from the constant model
///                             structure through a fixed quadratic
///                             diffeomorphism, g polarized from a fixed
///                             non-flat h (integrable, not Kahler type)
///   random-<kind>-<seed>      dim 4: J = A J0 A^{-1}, A = Id + 0.1 P(x),
///                             g polarized from a seeded h
///
/// <kind> is one of hermitian, product-riemannian, norden, para-hermitian.
/// Throws Error(UnknownCatalogName) or Error(DegenerateConstruction).
ChartedManifold catalog(std::string_view name);

/// Every named entry used by the suites: the four flat models, S^6, the four
/// pullback entries and one random entry per kind.
const std::vector<std::string>& standard_catalog_names();

/// Minimum |det g| a random or pullback construction must reach on its
/// check set before it is accepted.
inline constexpr double kConstructionMinDet = 1e-3;
inline constexpr int kConstructionRetries = 20;

namespace s6 {

/// Inverse stereographic projection from the pole -e1: chart point u in R^6
/// to p in S^6 inside Im(O) = R^7 (component 0 is e1).
template <typename T>
std::array<T, 7> embed(std::span<const T> u);

/// Ambient coordinates of d/du_j at u (row j).
template <typename T>
std::array<std::array<T, 7>, 6> embed_jacobian(std::span<const T> u);

}  // namespace s6

}  // namespace jmetric

#endif  // JMETRIC_CATALOG_HPP_
