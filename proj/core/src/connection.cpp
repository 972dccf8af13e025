#include "jmetric/connection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jmetric/error.hpp"
#include "jmetric/linalg.hpp"

namespace jmetric {

namespace {

constexpr Variance U = Variance::Upper;
constexpr Variance L = Variance::Lower;

TensorValue vector_valued_form(int m) { return TensorValue::zeros(m, {U, L, L}); }

std::string describe_point(std::span<const double> p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

}  // namespace

ConnectionCoefficients christoffel(const LocalJet& jet) {
  const int m = jet.dim();
  const MetricFactorization metric(jet.g);
  ConnectionCoefficients out{vector_valued_form(m)};
  std::vector<double> lowered(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int l = 0; l < m; ++l)
        lowered[static_cast<std::size_t>(l)] =
            0.5 * (jet.dg(i, l, j) + jet.dg(j, i, l) - jet.dg(l, i, j));
      const std::vector<double> raised = metric.solve(lowered);
      for (int k = 0; k < m; ++k) out.gamma(k, i, j) = raised[static_cast<std::size_t>(k)];
    }
  return out;
}

ConnectionCoefficients christoffel(const ChartedManifold& m, std::span<const double> p) {
  return christoffel(m.eval_with_derivatives(p));
}

TensorValue covariant_derivative_of_endomorphism(const ConnectionCoefficients& conn,
                                                 const TensorValue& J, const TensorValue& dJ) {
  const int m = J.extent(0);
  const TensorValue& G = conn.gamma;
  TensorValue out = TensorValue::zeros(m, {L, U, L});
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = dJ(k, i, j);
        for (int l = 0; l < m; ++l) v += G(i, k, l) * J(l, j) - G(l, k, j) * J(i, l);
        out(k, i, j) = v;
      }
  return out;
}

TensorValue covariant_derivative_of_form(const ConnectionCoefficients& conn, const TensorValue& b,
                                         const TensorValue& db) {
  const int m = b.extent(0);
  const TensorValue& G = conn.gamma;
  TensorValue out = TensorValue::zeros(m, {L, L, L});
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = db(k, i, j);
        for (int l = 0; l < m; ++l) v -= G(l, k, i) * b(l, j) + G(l, k, j) * b(i, l);
        out(k, i, j) = v;
      }
  return out;
}

TensorValue nabla_J(const LocalJet& jet, const ConnectionCoefficients& levi_civita) {
  return covariant_derivative_of_endomorphism(levi_civita, jet.J, jet.dJ);
}

TensorValue nabla_J(const ChartedManifold& m, std::span<const double> p) {
  const LocalJet jet = m.eval_with_derivatives(p);
  return nabla_J(jet, christoffel(jet));
}

FirstCanonical first_canonical(const LocalJet& jet, int alpha,
                               const ConnectionCoefficients& levi_civita,
                               const TensorValue& nabla_j) {
  const int m = jet.dim();
  const double c = -0.5 * alpha;
  FirstCanonical out{levi_civita, 0.0, 0.0};
  TensorValue& G0 = out.coefficients.gamma;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        for (int l = 0; l < m; ++l) v += nabla_j(i, k, l) * jet.J(l, j);
        G0(k, i, j) += c * v;
      }
  out.parallel_J_residual =
      covariant_derivative_of_endomorphism(out.coefficients, jet.J, jet.dJ).max_abs();
  out.parallel_g_residual = covariant_derivative_of_form(out.coefficients, jet.g, jet.dg).max_abs();
  return out;
}

FirstCanonical first_canonical(const ChartedManifold& m, std::span<const double> p) {
  const LocalJet jet = m.eval_with_derivatives(p);
  const ConnectionCoefficients lc = christoffel(jet);
  return first_canonical(jet, m.kind().alpha, lc, nabla_J(jet, lc));
}

double TorsionRoutes::max_disagreement() const {
  return std::max({max_abs_difference(from_coefficients, from_nabla_J),
                   max_abs_difference(from_coefficients, from_codazzi),
                   max_abs_difference(from_nabla_J, from_codazzi)});
}

TorsionRoutes torsion_routes(const LocalJet& jet, int alpha, const FirstCanonical& canonical,
                             const TensorValue& nabla_j) {
  const int m = jet.dim();
  const TensorValue& G0 = canonical.coefficients.gamma;
  const TensorValue& J = jet.J;
  TorsionRoutes r{vector_valued_form(m), vector_valued_form(m), vector_valued_form(m)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        r.from_coefficients(i, j, k) = G0(i, j, k) - G0(i, k, j);
        double b = 0.0, c = 0.0;
        for (int l = 0; l < m; ++l) {
          b += nabla_j(j, i, l) * J(l, k) - nabla_j(k, i, l) * J(l, j);
          c += J(i, l) * (nabla_j(j, l, k) - nabla_j(k, l, j));
        }
        r.from_nabla_J(i, j, k) = -0.5 * alpha * b;
        r.from_codazzi(i, j, k) = 0.5 * alpha * c;
      }
  return r;
}

TensorValue nijenhuis_from_nabla_J(const TensorValue& J, const TensorValue& nabla_j) {
  const int m = J.extent(0);
  TensorValue N = vector_valued_form(m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double v = 0.0;
        for (int l = 0; l < m; ++l)
          v += nabla_j(a, i, l) * J(l, b) + J(l, a) * nabla_j(l, i, b) - nabla_j(b, i, l) * J(l, a) -
               J(l, b) * nabla_j(l, i, a);
        N(i, a, b) = v;
      }
  return N;
}

TensorValue nijenhuis_from_brackets(const TensorValue& J, const TensorValue& dJ) {
  const int m = J.extent(0);
  TensorValue N = vector_valued_form(m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double v = 0.0;
        for (int l = 0; l < m; ++l) {
          // [J d_a, J d_b] (coordinate brackets [d_a, d_b] vanish)
          v += J(l, a) * dJ(l, i, b) - J(l, b) * dJ(l, i, a);
          // -J[J d_a, d_b] - J[d_a, J d_b]
          v += J(i, l) * (dJ(b, l, a) - dJ(a, l, b));
        }
        N(i, a, b) = v;
      }
  return N;
}

TensorValue torsion_integrability_tensor(const TensorValue& J, int alpha,
                                         const TensorValue& torsion) {
  const int m = J.extent(0);
  TensorValue out = vector_valued_form(m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double v = alpha * torsion(i, a, b);
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) v += J(p, a) * J(q, b) * torsion(i, p, q);
        out(i, a, b) = v;
      }
  return out;
}

TensorValue torsion_nijenhuis_relation(const TensorValue& J, int alpha, const TensorValue& torsion,
                                       const TensorValue& nijenhuis) {
  return torsion_integrability_tensor(J, alpha, torsion) + 0.5 * nijenhuis;
}

TensorValue torsion0(const ChartedManifold& m, std::span<const double> p) {
  return derive_tensors(m, p).torsion0;
}

TensorValue nijenhuis(const ChartedManifold& m, std::span<const double> p) {
  return derive_tensors(m, p).nijenhuis;
}

TensorValue codazzi_tensor(const TensorValue& nabla_j) {
  const int m = nabla_j.extent(0);
  TensorValue c = vector_valued_form(m);
  for (int i = 0; i < m; ++i)
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) c(i, x, y) = nabla_j(x, i, y) - nabla_j(y, i, x);
  return c;
}

TensorValue nearly_tensor(const TensorValue& nabla_j) {
  const int m = nabla_j.extent(0);
  TensorValue s = vector_valued_form(m);
  for (int i = 0; i < m; ++i)
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) s(i, x, y) = nabla_j(x, i, y) + nabla_j(y, i, x);
  return s;
}

CodazziCoupledResiduals codazzi_coupled_residuals(const LocalJet& jet,
                                                  const ConnectionCoefficients& levi_civita,
                                                  const TensorValue& nabla_j) {
  const int m = jet.dim();
  const TensorValue nabla_g = covariant_derivative_of_form(levi_civita, jet.g, jet.dg);
  double r_g = 0.0;
  for (int z = 0; z < m; ++z)
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) r_g = std::max(r_g, std::abs(nabla_g(z, x, y) - nabla_g(x, z, y)));
  return {codazzi_tensor(nabla_j).max_abs(), r_g};
}

CodazziCoupledResiduals codazzi_coupled_residuals(const ChartedManifold& m,
                                                  std::span<const double> p) {
  const LocalJet jet = m.eval_with_derivatives(p);
  const ConnectionCoefficients lc = christoffel(jet);
  return codazzi_coupled_residuals(jet, lc, nabla_J(jet, lc));
}

DerivedTensors derive_tensors(const ChartedManifold& m, std::span<const double> p) {
  const int alpha = m.kind().alpha;
  DerivedTensors d;
  d.jet = m.eval_with_derivatives(p);
  d.levi_civita = christoffel(d.jet);
  d.nabla_J = nabla_J(d.jet, d.levi_civita);
  d.canonical = first_canonical(d.jet, alpha, d.levi_civita, d.nabla_J);

  const TorsionRoutes routes = torsion_routes(d.jet, alpha, d.canonical, d.nabla_J);
  d.torsion_disagreement = routes.max_disagreement();
  if (!(d.torsion_disagreement <= kTorsionAgreementTol)) {
    std::ostringstream os;
    os << "torsion routes disagree by " << d.torsion_disagreement << " at "
       << describe_point(p) << " on " << m.name();
    throw Error(ErrorCode::TorsionFormulaMismatch, os.str());
  }
  d.torsion0 = routes.from_coefficients;

  d.nijenhuis = nijenhuis_from_nabla_J(d.jet.J, d.nabla_J);
  d.nijenhuis_disagreement =
      max_abs_difference(d.nijenhuis, nijenhuis_from_brackets(d.jet.J, d.jet.dJ));
  d.torsion_relation_residual =
      torsion_nijenhuis_relation(d.jet.J, alpha, d.torsion0, d.nijenhuis).max_abs();
  if (!(d.nijenhuis_disagreement <= kNijenhuisAgreementTol) ||
      !(d.torsion_relation_residual <= kNijenhuisAgreementTol)) {
    std::ostringstream os;
    os << "Nijenhuis routes disagree by " << d.nijenhuis_disagreement
       << ", torsion relation residual " << d.torsion_relation_residual << " at "
       << describe_point(p) << " on " << m.name();
    throw Error(ErrorCode::NijenhuisFormulaMismatch, os.str());
  }

  d.metric_compatibility =
      covariant_derivative_of_form(d.levi_civita, d.jet.g, d.jet.dg).max_abs();
  const TensorValue& G = d.levi_civita.gamma;
  const int dim = d.jet.dim();
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        d.gamma_asymmetry = std::max(d.gamma_asymmetry, std::abs(G(k, i, j) - G(k, j, i)));
  return d;
}

std::vector<double> apply_nabla_J(const TensorValue& nabla_j, std::span<const double> x,
                                  std::span<const double> y) {
  const int m = nabla_j.extent(0);
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out[static_cast<std::size_t>(i)] +=
            x[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(j)] * nabla_j(k, i, j);
  return out;
}

std::vector<double> apply_endomorphism(const TensorValue& a, std::span<const double> v) {
  const int m = a.extent(0);
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(i)] += a(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

std::vector<double> apply_vector_valued_form(const TensorValue& t, std::span<const double> x,
                                             std::span<const double> y) {
  const int m = t.extent(0);
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out[static_cast<std::size_t>(i)] +=
            t(i, j, k) * x[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(k)];
  return out;
}

double pair(const TensorValue& g, std::span<const double> x, std::span<const double> y) {
  const int m = g.extent(0);
  double s = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      s += g(i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
  return s;
}

}  // namespace jmetric
