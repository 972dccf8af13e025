#include "jmetric/identities.hpp"

#include <algorithm>
#include <cmath>

#include "jmetric/connection.hpp"

namespace jmetric {

namespace {

constexpr double kTightTol = 1e-10;

// t_kij X^k Y^i Z^j
double form3(const TensorValue& t, std::span<const double> x, std::span<const double> y,
             std::span<const double> z) {
  const int m = t.extent(0);
  double s = 0.0;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        s += t(k, i, j) * x[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(i)] *
             z[static_cast<std::size_t>(j)];
  return s;
}

double max_abs_vec(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s = std::max(s, std::abs(e));
  return s;
}

std::vector<double> add(std::vector<double> a, const std::vector<double>& b, double sb = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += sb * b[i];
  return a;
}

// g~_ij = g(J d_i, d_j) and its partials.
void twin_metric(const LocalJet& jet, TensorValue& gt, TensorValue& dgt) {
  const int m = jet.dim();
  gt = TensorValue::zeros(m, {Variance::Lower, Variance::Lower});
  dgt = TensorValue::zeros(m, {Variance::Lower, Variance::Lower, Variance::Lower});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        gt(i, j) += jet.J(l, i) * jet.g(l, j);
        for (int k = 0; k < m; ++k)
          dgt(k, i, j) += jet.dg(k, l, j) * jet.J(l, i) + jet.g(l, j) * jet.dJ(k, l, i);
      }
}

struct Accumulator {
  std::vector<IdentityCheck> checks;

  void record(std::size_t slot, double r) {
    checks[slot].residual = std::max(checks[slot].residual, r);
  }
};

}  // namespace

const IdentityCheck* IdentityReport::find(std::string_view name) const {
  for (const IdentityCheck& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

IdentityReport check_identities(const ChartedManifold& m, const SamplePlan& plan, double tol) {
  const StructureKind kind = m.kind();
  const double ae = kind.product();
  const bool skew_omega = kind.product() == -1;

  enum Slot : std::size_t {
    kAlt, kAnti, kSym, kJSym, kTorsion3, kNij2, kTorNij, kTorSkew, kNijSkew, kParJ, kParG,
    kLcCompat, kLcSym, kCoupled, kTwin, kOmegaSkew, kOmegaNearly, kSlots
  };
  Accumulator acc;
  acc.checks = {
      {"alternative-metric", 0, tol, false},
      {"nablaJ-anticommutes", 0, tol, false},
      {"nablaJ-symmetry", 0, tol, false},
      {"nablaJ-J-symmetry", 0, tol, false},
      {"torsion-three-way", 0, kTorsionAgreementTol, false},
      {"nijenhuis-two-way", 0, kNijenhuisAgreementTol, false},
      {"torsion-nijenhuis", 0, tol, false},
      {"torsion-antisymmetry", 0, kTightTol, false},
      {"nijenhuis-antisymmetry", 0, kTightTol, false},
      {"canonical-parallel-J", 0, tol, false},
      {"canonical-parallel-g", 0, tol, false},
      {"levi-civita-compatible", 0, tol, false},
      {"levi-civita-symmetric", 0, kTightTol, false},
      {"codazzi-coupled-g", 0, kTightTol, false},
      {"twin-metric-codazzi", 0, tol, false},
      {"fundamental-form-skew", 0, kTightTol, false},
      {"fundamental-form-nearly", 0, tol, false},
  };

  for (const SamplePoint& sp : draw_samples(m.domain(), plan)) {
    const DerivedTensors d = derive_tensors(m, sp.coords);
    const LocalJet& jet = d.jet;
    const int dim = jet.dim();

    acc.record(kTorsion3, d.torsion_disagreement);
    acc.record(kNij2, d.nijenhuis_disagreement);
    acc.record(kTorNij, d.torsion_relation_residual);
    acc.record(kParJ, d.canonical.parallel_J_residual);
    acc.record(kParG, d.canonical.parallel_g_residual);
    acc.record(kLcCompat, d.metric_compatibility);
    acc.record(kLcSym, d.gamma_asymmetry);
    acc.record(kCoupled, codazzi_coupled_residuals(jet, d.levi_civita, d.nabla_J).r_g);

    for (int i = 0; i < dim; ++i)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          acc.record(kTorSkew, std::abs(d.torsion0(i, a, b) + d.torsion0(i, b, a)));
          acc.record(kNijSkew, std::abs(d.nijenhuis(i, a, b) + d.nijenhuis(i, b, a)));
        }

    TensorValue gt, dgt;
    twin_metric(jet, gt, dgt);
    const TensorValue nabla_gt = covariant_derivative_of_form(d.levi_civita, gt, dgt);
    if (skew_omega)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) acc.record(kOmegaSkew, std::abs(gt(i, j) + gt(j, i)));

    for (const VectorTriple& t : sp.triples) {
      const std::vector<double> Jx = apply_endomorphism(jet.J, t.x);
      const std::vector<double> Jy = apply_endomorphism(jet.J, t.y);
      const std::vector<double> Jz = apply_endomorphism(jet.J, t.z);
      acc.record(kAlt, std::abs(pair(jet.g, Jx, t.y) - ae * pair(jet.g, t.x, Jy)));

      const std::vector<double> nxy = apply_nabla_J(d.nabla_J, t.x, t.y);
      const std::vector<double> nxz = apply_nabla_J(d.nabla_J, t.x, t.z);
      const std::vector<double> nyx = apply_nabla_J(d.nabla_J, t.y, t.x);
      const std::vector<double> nxJy = apply_nabla_J(d.nabla_J, t.x, Jy);
      acc.record(kAnti, max_abs_vec(add(nxJy, apply_endomorphism(jet.J, nxy))));
      acc.record(kSym, std::abs(pair(jet.g, nxy, t.z) - ae * pair(jet.g, nxz, t.y)));
      acc.record(kJSym, std::abs(pair(jet.g, nxJy, t.z) + ae * pair(jet.g, nxy, Jz)));

      const double twin =
          form3(nabla_gt, t.x, t.y, t.z) - form3(nabla_gt, t.y, t.x, t.z);
      acc.record(kTwin, std::abs(twin - pair(jet.g, add(nxy, nyx, -1.0), t.z)));
      if (skew_omega) {
        const double omega_nearly =
            form3(nabla_gt, t.x, t.y, t.z) + form3(nabla_gt, t.y, t.x, t.z);
        acc.record(kOmegaNearly, std::abs(omega_nearly - pair(jet.g, add(nxy, nyx), t.z)));
      }
    }
  }

  if (!skew_omega) {
    acc.checks.erase(acc.checks.begin() + kOmegaSkew, acc.checks.begin() + kSlots);
  }

  IdentityReport rep;
  rep.manifold = m.name();
  rep.kind = kind;
  rep.seed = plan.seed;
  rep.n_points = plan.n_points;
  rep.n_vector_triples = plan.n_vector_triples;
  rep.all_hold = true;
  for (IdentityCheck& c : acc.checks) {
    c.holds = c.residual < c.tolerance;
    rep.all_hold = rep.all_hold && c.holds;
  }
  rep.checks = std::move(acc.checks);
  return rep;
}

}  // namespace jmetric
