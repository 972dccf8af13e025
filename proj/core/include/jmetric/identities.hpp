#ifndef JMETRIC_IDENTITIES_HPP_
#define JMETRIC_IDENTITIES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "jmetric/manifold.hpp"

namespace jmetric {

/// One identity evaluated over a sample set: max residual and its verdict.
struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool holds = false;

  bool operator==(const IdentityCheck&) const = default;
};

struct IdentityReport {
  std::string manifold;
  StructureKind kind;
  std::uint64_t seed = 0;
  int n_points = 0;
  int n_vector_triples = 0;
  std::vector<IdentityCheck> checks;
  bool all_hold = false;

  const IdentityCheck* find(std::string_view name) const;
  bool operator==(const IdentityReport&) const = default;
};

/// Checks, at every sample point and vector triple (X, Y, Z):
///
///   alternative-metric       g(JX,Y) - ae g(X,JY)
///   nablaJ-anticommutes      (nabla_X J)JY + J(nabla_X J)Y
///   nablaJ-symmetry          g((nabla_X J)Y,Z) - ae g((nabla_X J)Z,Y)
///   nablaJ-J-symmetry        g((nabla_X J)JY,Z) + ae g((nabla_X J)Y,JZ)
///   torsion-three-way        spread of the three torsion routes       (1e-9)
///   nijenhuis-two-way        Nijenhuis from nabla J vs brackets
///   torsion-nijenhuis        -1/2 N - T0(J.,J.) - alpha T0
///   torsion-antisymmetry     T0(X,Y) + T0(Y,X)                        (1e-10)
///   nijenhuis-antisymmetry   N(X,Y) + N(Y,X)                          (1e-10)
///   canonical-parallel-J     nabla^0 J
///   canonical-parallel-g     nabla^0 g
///   levi-civita-compatible   nabla^g g
///   levi-civita-symmetric    Gamma^k_ij - Gamma^k_ji                  (1e-10)
///   codazzi-coupled-g        (nabla_Z g)(X,Y) - (nabla_X g)(Z,Y)      (1e-10)
///   twin-metric-codazzi      (nabla_X g~)(Y,Z) - (nabla_Y g~)(X,Z)
///                              - g((nabla_X J)Y - (nabla_Y J)X, Z)
///   fundamental-form-skew    omega(X,Y) + omega(Y,X)       ae = -1 only (1e-10)
///   fundamental-form-nearly  (nabla_X omega)(Y,Z) + (nabla_Y omega)(X,Z)
///                              - g((nabla_X J)Y + (nabla_Y J)X, Z)  ae = -1 only
///
/// where ae = alpha epsilon, g~(X,Y) = omega(X,Y) = g(JX,Y). Unmarked
/// checks use `tol`. Consistency errors from the connection module propagate.
IdentityReport check_identities(const ChartedManifold& m, const SamplePlan& plan,
                                double tol = 1e-8);

}  // namespace jmetric

#endif  // JMETRIC_IDENTITIES_HPP_
