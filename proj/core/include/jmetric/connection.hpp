#ifndef JMETRIC_CONNECTION_HPP_
#define JMETRIC_CONNECTION_HPP_

#include <span>
#include <vector>

#include "jmetric/manifold.hpp"
#include "jmetric/tensor.hpp"

namespace jmetric {

/// Gamma^k_ij at a point, slots (Upper k, Lower i, Lower j), meaning
/// nabla_{d_i} d_j = Gamma^k_ij d_k.
struct ConnectionCoefficients {
  TensorValue gamma;
};

/// Levi-Civita connection from the Koszul formula
///   Gamma^k_ij = 1/2 g^kl (d_i g_lj + d_j g_il - d_l g_ij).
/// Throws Error(NearSingularMetric).
ConnectionCoefficients christoffel(const LocalJet& jet);
ConnectionCoefficients christoffel(const ChartedManifold& m, std::span<const double> p);

/// (nabla_k J)^i_j = d_k J^i_j + Gamma^i_kl J^l_j - Gamma^l_kj J^i_l for an
/// arbitrary connection.
TensorValue covariant_derivative_of_endomorphism(const ConnectionCoefficients& conn,
                                                 const TensorValue& J, const TensorValue& dJ);

/// (nabla_k b)_ij = d_k b_ij - Gamma^l_ki b_lj - Gamma^l_kj b_il for a
/// (0,2) tensor b with partials db (slots k, i, j).
TensorValue covariant_derivative_of_form(const ConnectionCoefficients& conn, const TensorValue& b,
                                         const TensorValue& db);

/// nabla^g J, slots (Lower k, Upper i, Lower j).
TensorValue nabla_J(const LocalJet& jet, const ConnectionCoefficients& levi_civita);
TensorValue nabla_J(const ChartedManifold& m, std::span<const double> p);

struct FirstCanonical {
  ConnectionCoefficients coefficients;
  double parallel_J_residual = 0.0;  // |nabla^0 J|_inf
  double parallel_g_residual = 0.0;  // |nabla^0 g|_inf
};

/// nabla^0 = nabla^g + (-alpha/2) (nabla^g J) J:
///   Gamma0^k_ij = Gamma^k_ij + (-alpha/2) (nabla_i J)^k_l J^l_j.
FirstCanonical first_canonical(const LocalJet& jet, int alpha,
                               const ConnectionCoefficients& levi_civita,
                               const TensorValue& nabla_j);
FirstCanonical first_canonical(const ChartedManifold& m, std::span<const double> p);

/// The three independent torsion routes, slots (Upper i, Lower j, Lower k).
struct TorsionRoutes {
  TensorValue from_coefficients;  // Gamma0^i_jk - Gamma0^i_kj
  TensorValue from_nabla_J;       // (-alpha/2)((nabla_X J)JY - (nabla_Y J)JX)
  TensorValue from_codazzi;       // (alpha/2) J((nabla_X J)Y - (nabla_Y J)X)
  double max_disagreement() const;
};

TorsionRoutes torsion_routes(const LocalJet& jet, int alpha, const FirstCanonical& canonical,
                             const TensorValue& nabla_j);

inline constexpr double kTorsionAgreementTol = 1e-9;
inline constexpr double kNijenhuisAgreementTol = 1e-8;

/// Torsion of the first canonical connection. Computes all three routes and
/// throws Error(TorsionFormulaMismatch) if they differ by more than 1e-9.
TensorValue torsion0(const ChartedManifold& m, std::span<const double> p);

/// N_J from nabla^g J:
///   N(X,Y) = (nabla_X J)JY + (nabla_JX J)Y - (nabla_Y J)JX - (nabla_JY J)X.
TensorValue nijenhuis_from_nabla_J(const TensorValue& J, const TensorValue& nabla_j);

/// Connection-free N(X,Y) = J^2[X,Y] + [JX,JY] - J[JX,Y] - J[X,JY] on
/// coordinate fields, from J and its partials only.
TensorValue nijenhuis_from_brackets(const TensorValue& J, const TensorValue& dJ);

/// Residual of -1/2 N(X,Y) = T0(JX,JY) + alpha T0(X,Y), as a tensor.
TensorValue torsion_nijenhuis_relation(const TensorValue& J, int alpha, const TensorValue& torsion,
                                       const TensorValue& nijenhuis);

/// T0(JX,JY) + alpha T0(X,Y), slots (Upper, Lower, Lower).
TensorValue torsion_integrability_tensor(const TensorValue& J, int alpha,
                                         const TensorValue& torsion);

/// Nijenhuis tensor. Computes both routes and the torsion relation; throws
/// Error(NijenhuisFormulaMismatch) if either disagrees beyond 1e-8.
TensorValue nijenhuis(const ChartedManifold& m, std::span<const double> p);

/// (nabla_X J)Y -+ (nabla_Y J)X as tensors with slots (Upper i, Lower X, Lower Y).
TensorValue codazzi_tensor(const TensorValue& nabla_j);
TensorValue nearly_tensor(const TensorValue& nabla_j);

struct CodazziCoupledResiduals {
  double r_J = 0.0;  // |(nabla_X J)Y - (nabla_Y J)X|_inf
  double r_g = 0.0;  // |(nabla_Z g)(X,Y) - (nabla_X g)(Z,Y)|_inf, Levi-Civita
};

CodazziCoupledResiduals codazzi_coupled_residuals(const LocalJet& jet,
                                                  const ConnectionCoefficients& levi_civita,
                                                  const TensorValue& nabla_j);
CodazziCoupledResiduals codazzi_coupled_residuals(const ChartedManifold& m,
                                                  std::span<const double> p);

/// Every tensor of interest at one point, computed once.
struct DerivedTensors {
  LocalJet jet;
  ConnectionCoefficients levi_civita;
  TensorValue nabla_J;
  FirstCanonical canonical;
  TensorValue torsion0;
  TensorValue nijenhuis;
  double torsion_disagreement = 0.0;
  double nijenhuis_disagreement = 0.0;
  double torsion_relation_residual = 0.0;
  double metric_compatibility = 0.0;  // |nabla^g g|_inf
  double gamma_asymmetry = 0.0;       // |Gamma^k_ij - Gamma^k_ji|_inf

  const std::vector<double>& point() const { return jet.point; }
};

/// Computes all derived tensors; throws the same consistency errors as
/// torsion0() and nijenhuis().
DerivedTensors derive_tensors(const ChartedManifold& m, std::span<const double> p);

// Small helpers for tensorial evaluation on constant-coefficient vectors.

/// (nabla_X J)Y as a vector: X^k Y^j (nabla_k J)^i_j.
std::vector<double> apply_nabla_J(const TensorValue& nabla_j, std::span<const double> x,
                                  std::span<const double> y);
/// A^i_j v^j for an (Upper, Lower) tensor.
std::vector<double> apply_endomorphism(const TensorValue& a, std::span<const double> v);
/// T^i_jk X^j Y^k.
std::vector<double> apply_vector_valued_form(const TensorValue& t, std::span<const double> x,
                                             std::span<const double> y);
/// g_ij X^i Y^j.
double pair(const TensorValue& g, std::span<const double> x, std::span<const double> y);

}  // namespace jmetric

#endif  // JMETRIC_CONNECTION_HPP_
