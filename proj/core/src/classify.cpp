#include "jmetric/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "jmetric/catalog.hpp"
#include "jmetric/connection.hpp"
#include "jmetric/error.hpp"
#include "jmetric/fiber_algebra.hpp"

namespace jmetric {

namespace {

// Dimensions for n = 1, 2, 3 on the standard fibers, computed once per kind.
std::vector<std::size_t> model_dimensions(StructureKind kind, SubspaceQuery q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::size_t>> cache;
  const std::pair<int, int> key{kind.alpha * 2 + kind.epsilon,
                                static_cast<int>(q.extra)};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<std::size_t> dims;
  for (int n = 1; n <= 3; ++n) dims.push_back(subspace_dimension(ModelFiber::standard(kind, n), q));
  std::lock_guard lock(mu);
  cache.emplace(key, dims);
  return dims;
}

std::string dims_label(std::string_view query, StructureKind kind) {
  return std::string("dim ") + std::string(query) + " " + std::string(slug(kind));
}

[[noreturn]] void violation(const ClassificationReport& r, const std::string& theorem,
                            const std::string& what) {
  throw Error(ErrorCode::TheoremViolation, theorem + " on " + r.manifold + ": " + what);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Biconditional a < tol <=> b < tol, violated only when one side holds and
// the other exceeds the slack bound.
void check_iff(const ClassificationReport& r, const std::string& theorem, const std::string& lhs,
               double a, const std::string& rhs, double b, CheckResult& out) {
  const double tol = r.tolerance;
  const bool ha = a < tol, hb = b < tol;
  if ((ha && b >= kTheoremSlack * tol) || (hb && a >= kTheoremSlack * tol))
    violation(r, theorem, lhs + " = " + fmt(a) + " but " + rhs + " = " + fmt(b));
  out.notes.push_back(lhs + (ha ? " < tol" : " >= tol") + (ha == hb ? " and " : " but ") + rhs +
                      (hb ? " < tol" : " >= tol"));
}

void require_product(const ClassificationReport& r, int ae, const std::string& theorem) {
  if (r.kind.product() != ae)
    throw Error(ErrorCode::KindMismatch, theorem + " needs alpha*epsilon = " + std::to_string(ae) +
                                             ", " + r.manifold + " has kind " +
                                             std::string(slug(r.kind)));
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds:
      return "holds";
    case CheckStatus::HypothesisNotMet:
      return "hypothesis not met";
  }
  return "?";
}

ClassificationReport measure_classes(const ChartedManifold& m, const SamplePlan& plan, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  ClassificationReport rep;
  rep.manifold = m.name();
  rep.kind = m.kind();
  rep.seed = plan.seed;
  rep.n_points = plan.n_points;
  rep.n_vector_triples = plan.n_vector_triples;
  rep.tolerance = tol;
  ClassResiduals& res = rep.residuals;
  const int alpha = m.kind().alpha;

  for (const SamplePoint& sp : draw_samples(m.domain(), plan)) {
    const DerivedTensors d = derive_tensors(m, sp.coords);
    res.kahler = std::max(res.kahler, d.nabla_J.max_abs());
    res.integrable = std::max(res.integrable, d.nijenhuis.max_abs());
    res.nearly = std::max(res.nearly, nearly_tensor(d.nabla_J).max_abs());
    res.codazzi = std::max(res.codazzi, codazzi_tensor(d.nabla_J).max_abs());
    res.torsion0 = std::max(res.torsion0, d.torsion0.max_abs());
    res.torsion0_integrability =
        std::max(res.torsion0_integrability,
                 torsion_integrability_tensor(d.jet.J, alpha, d.torsion0).max_abs());
    res.codazzi_coupled_g = std::max(
        res.codazzi_coupled_g, codazzi_coupled_residuals(d.jet, d.levi_civita, d.nabla_J).r_g);
    for (const VectorTriple& t : sp.triples) {
      const double skew =
          std::abs(pair(d.jet.g, apply_vector_valued_form(d.torsion0, t.x, t.y), t.x));
      res.torsion0_skew_g = std::max(res.torsion0_skew_g, skew);
    }
  }

  rep.verdicts.kahler = res.kahler < tol;
  rep.verdicts.integrable = res.integrable < tol;
  rep.verdicts.nearly = res.nearly < tol;
  rep.verdicts.codazzi = res.codazzi < tol;
  rep.verdicts.torsion_free = res.torsion0 < tol;
  return rep;
}

CheckResult verify_theorem_torsion_characterizations(const ClassificationReport& r) {
  const std::string name = "torsion-characterizations";
  CheckResult out{name, CheckStatus::Holds, {}, {}};
  const ClassResiduals& res = r.residuals;
  out.evidence = {{"torsion0", res.torsion0},
                  {"kahler", res.kahler},
                  {"torsion0_integrability", res.torsion0_integrability},
                  {"integrable", res.integrable}};
  check_iff(r, name, "|T0|", res.torsion0, "|nabla J|", res.kahler, out);
  check_iff(r, name, "|T0(J.,J.) + alpha T0|", res.torsion0_integrability, "|N_J|",
            res.integrable, out);
  return out;
}

CheckResult verify_theorem_nearly_implies_kahler(const ClassificationReport& r) {
  const std::string name = "nearly-implies-kahler";
  require_product(r, 1, name);
  CheckResult out{name, CheckStatus::Holds, {}, {}};
  const ClassResiduals& res = r.residuals;
  out.evidence = {{"nearly", res.nearly}, {"kahler", res.kahler}};
  const std::vector<std::size_t> w1 = model_dimensions(r.kind, kQueryW1);
  for (std::size_t i = 0; i < w1.size(); ++i)
    out.evidence.emplace_back(dims_label("W1", r.kind) + " n=" + std::to_string(i + 1),
                              static_cast<double>(w1[i]));
  if (std::any_of(w1.begin(), w1.end(), [](std::size_t d) { return d != 0; }))
    violation(r, name, "W1 is not zero for this kind");

  if (res.nearly < r.tolerance) {
    if (!(res.kahler < kTheoremSlack * r.tolerance))
      violation(r, name, "nearly residual " + fmt(res.nearly) + " but |nabla J| = " +
                             fmt(res.kahler));
    out.notes.push_back("nearly condition holds and nabla J vanishes");
  } else {
    out.status = CheckStatus::HypothesisNotMet;
    out.notes.push_back("nearly condition fails; implication vacuous");
  }
  return out;
}

CheckResult verify_theorem_nearly_torsion_characterization(const ClassificationReport& r) {
  const std::string name = "nearly-torsion-characterization";
  require_product(r, -1, name);
  CheckResult out{name, CheckStatus::Holds, {}, {}};
  const ClassResiduals& res = r.residuals;
  out.evidence = {{"nearly", res.nearly}, {"torsion0_skew_g", res.torsion0_skew_g}};
  check_iff(r, name, "nearly residual", res.nearly, "max |g(T0(X,Y),X)|", res.torsion0_skew_g,
            out);
  return out;
}

CheckResult verify_theorem_codazzi_implies_kahler(const ClassificationReport& r) {
  const std::string name = "codazzi-implies-kahler";
  CheckResult out{name, CheckStatus::Holds, {}, {}};
  const ClassResiduals& res = r.residuals;
  out.evidence = {{"codazzi", res.codazzi},
                  {"kahler", res.kahler},
                  {"codazzi_coupled_g", res.codazzi_coupled_g}};
  const std::vector<std::size_t> sym = model_dimensions(r.kind, kQueryCodazzi);
  for (std::size_t i = 0; i < sym.size(); ++i)
    out.evidence.emplace_back(dims_label("codazzi", r.kind) + " n=" + std::to_string(i + 1),
                              static_cast<double>(sym[i]));
  if (std::any_of(sym.begin(), sym.end(), [](std::size_t d) { return d != 0; }))
    violation(r, name, "Codazzi-symmetric subspace is not zero for this kind");
  if (!(res.codazzi_coupled_g < kCoupledMetricTol))
    violation(r, name, "Levi-Civita coupled residual " + fmt(res.codazzi_coupled_g));

  if (res.codazzi < r.tolerance) {
    if (!(res.kahler < kTheoremSlack * r.tolerance))
      violation(r, name, "codazzi residual " + fmt(res.codazzi) + " but |nabla J| = " +
                             fmt(res.kahler));
    out.notes.push_back("Codazzi condition holds and nabla J vanishes");
  } else {
    out.status = CheckStatus::HypothesisNotMet;
    out.notes.push_back(res.kahler >= r.tolerance
                            ? "contrapositive: nabla J and the Codazzi residual are both nonzero"
                            : "Codazzi condition fails; implication vacuous");
  }
  return out;
}

CheckResult verify_theorem_torsion_characterizations(const ChartedManifold& m,
                                                     const SamplePlan& plan, double tol) {
  return verify_theorem_torsion_characterizations(measure_classes(m, plan, tol));
}

CheckResult verify_theorem_nearly_implies_kahler(const ChartedManifold& m, const SamplePlan& plan,
                                                 double tol) {
  if (m.kind().product() != 1)
    throw Error(ErrorCode::KindMismatch, "nearly-implies-kahler needs alpha*epsilon = 1");
  return verify_theorem_nearly_implies_kahler(measure_classes(m, plan, tol));
}

CheckResult verify_theorem_nearly_torsion_characterization(const ChartedManifold& m,
                                                           const SamplePlan& plan, double tol) {
  if (m.kind().product() != -1)
    throw Error(ErrorCode::KindMismatch,
                "nearly-torsion-characterization needs alpha*epsilon = -1");
  return verify_theorem_nearly_torsion_characterization(measure_classes(m, plan, tol));
}

CheckResult verify_theorem_codazzi_implies_kahler(const ChartedManifold& m, const SamplePlan& plan,
                                                  double tol) {
  return verify_theorem_codazzi_implies_kahler(measure_classes(m, plan, tol));
}

ClassificationReport classify(const ChartedManifold& m, const SamplePlan& plan, double tol) {
  ClassificationReport rep = measure_classes(m, plan, tol);
  rep.theorem_checks.push_back(verify_theorem_torsion_characterizations(rep));
  if (rep.kind.product() == 1)
    rep.theorem_checks.push_back(verify_theorem_nearly_implies_kahler(rep));
  else
    rep.theorem_checks.push_back(verify_theorem_nearly_torsion_characterization(rep));
  rep.theorem_checks.push_back(verify_theorem_codazzi_implies_kahler(rep));
  return rep;
}

const TableCell& TableReport::cell(int alpha_epsilon, bool plus_condition) const {
  for (const TableCell& c : cells)
    if (c.alpha_epsilon == alpha_epsilon && c.plus_condition == plus_condition) return c;
  throw std::out_of_range("no such table cell");
}

TableReport table1_summary(const SamplePlan& plan, double tol) {
  TableReport table;
  table.seed = plan.seed;
  table.n_points = plan.n_points;
  table.n_vector_triples = plan.n_vector_triples;
  table.tolerance = tol;

  std::vector<ClassificationReport> measured;
  for (const std::string& name : standard_catalog_names())
    measured.push_back(measure_classes(catalog(name), plan, tol));

  for (bool plus : {true, false})
    for (int ae : {-1, 1}) {
      TableCell cell;
      cell.alpha_epsilon = ae;
      cell.plus_condition = plus;
      const SubspaceQuery q = plus ? kQueryW1 : kQueryCodazzi;
      bool all_zero = true;
      for (StructureKind kind : kAllKinds) {
        if (kind.product() != ae) continue;
        std::vector<std::size_t> dims = model_dimensions(kind, q);
        all_zero = all_zero && std::all_of(dims.begin(), dims.end(),
                                           [](std::size_t d) { return d == 0; });
        cell.algebra.emplace_back(dims_label(query_name(q), kind), std::move(dims));
      }
      for (const ClassificationReport& r : measured) {
        if (r.kind.product() != ae) continue;
        const CheckResult c = !plus ? verify_theorem_codazzi_implies_kahler(r)
                              : ae == 1 ? verify_theorem_nearly_implies_kahler(r)
                                        : verify_theorem_nearly_torsion_characterization(r);
        cell.entries.emplace_back(r.manifold, c.status);
      }
      // A zero model space forces nabla J = 0; otherwise strict examples
      // of the condition exist and the class is the nearly one.
      cell.verdict = all_zero ? "Kahler type" : (plus ? "nearly Kahler type" : "Codazzi type");
      table.cells.push_back(std::move(cell));
    }
  return table;
}

}  // namespace jmetric
