// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "jmetric/catalog.hpp"
#include "jmetric/classify.hpp"
#include "jmetric/connection.hpp"
#include "jmetric/error.hpp"
#include "jmetric/fiber_algebra.hpp"
#include "jmetric/identities.hpp"
#include "jmetric/manifold_config.hpp"
#include "jmetric_cli/cli.hpp"
#include "oracles.hpp"

using namespace jmetric;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::vector<ChartedManifold> standard_entries() {
  std::vector<ChartedManifold> out;
  for (const std::string& name : standard_catalog_names()) out.push_back(catalog(name));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome structure_axioms() {
  Outcome o;
  for (const ChartedManifold& m : standard_entries()) {
    const ValidationReport v = validate_structure(m, SamplePlan{0, 50, 0});
    const double worst = std::max({v.structure_square, v.isometry, v.alternative_metric,
                                   v.metric_symmetry, v.trace.value_or(0.0)});
    o.require(v.valid && worst < 1e-8, m.name() + " residual " + fmt(worst));
  }
  return o;
}

// Identity reports at 50 x 20 are shared by criteria 2 and 3.
std::vector<IdentityReport>& identity_reports() {
  static std::vector<IdentityReport> reports = [] {
    std::vector<IdentityReport> r;
    for (const ChartedManifold& m : standard_entries())
      r.push_back(check_identities(m, SamplePlan{0, 50, 20}));
    return r;
  }();
  return reports;
}

Outcome identity_suite() {
  Outcome o;
  for (const IdentityReport& r : identity_reports())
    for (const char* name :
         {"alternative-metric", "nablaJ-anticommutes", "nablaJ-symmetry", "nablaJ-J-symmetry"}) {
      const IdentityCheck* c = r.find(name);
      o.require(c && c->residual < 1e-8, r.manifold + " " + name);
    }
  return o;
}

Outcome torsion_agreement() {
  Outcome o;
  for (const IdentityReport& r : identity_reports()) {
    const IdentityCheck* t = r.find("torsion-three-way");
    o.require(t && t->residual < 1e-9, r.manifold + " torsion routes");
    for (const char* name : {"canonical-parallel-J", "canonical-parallel-g"}) {
      const IdentityCheck* c = r.find(name);
      o.require(c && c->residual < 1e-8, r.manifold + " " + name);
    }
  }
  return o;
}

Outcome nijenhuis_agreement() {
  Outcome o;
  for (const IdentityReport& r : identity_reports()) {
    const IdentityCheck* n = r.find("nijenhuis-two-way");
    const IdentityCheck* rel = r.find("torsion-nijenhuis");
    o.require(n && n->residual < 1e-8, r.manifold + " nijenhuis routes");
    o.require(rel && rel->residual < 1e-8, r.manifold + " torsion relation");
  }
  return o;
}

Outcome algebra_dimensions() {
  Outcome o;
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 3; ++n) {
      const ModelFiber f = ModelFiber::standard(kind, n);
      const std::string tag = std::string(slug(kind)) + " n=" + std::to_string(n);
      for (SubspaceQuery q : {kQueryW1, kQueryCodazzi}) {
        const SubspaceDimension d = analyze_subspace(f, q);
        const std::size_t oracle_rank = oracle::integer_rank(oracle::dense_of(build_constraints(f, q)));
        o.require(d.numeric_rank == d.exact_rank && d.exact_rank == oracle_rank,
                  tag + " " + std::string(query_name(q)) + " ranks differ");
        const bool must_vanish = q.extra == ExtraConstraint::SymmetricFirstTwo || kind.product() == 1;
        if (must_vanish)
          o.require(d.dimension == 0, tag + " " + std::string(query_name(q)) + " dim " +
                                          std::to_string(d.dimension));
      }
    }
  return o;
}

Outcome sphere_behaviour() {
  Outcome o;
  const ChartedManifold m = catalog("s6-nearly-kahler").restricted_to(Domain::ball(6, 0.5));
  const SamplePlan plan{0, 20, 20};
  const ClassificationReport r = measure_classes(m, plan);
  o.require(r.residuals.nearly < 1e-8, "nearly residual " + fmt(r.residuals.nearly));
  o.require(r.residuals.torsion0_skew_g < 1e-8, "g(T0(X,Y),X) " + fmt(r.residuals.torsion0_skew_g));
  for (const SamplePoint& sp : draw_samples(m.domain(), plan)) {
    const DerivedTensors d = derive_tensors(m, sp.coords);
    o.require(d.nabla_J.max_abs() > 1e-3, "nabla J vanishes near the origin");
    o.require(d.nijenhuis.max_abs() > 1e-3, "N_J vanishes near the origin");
  }
  return o;
}

Outcome theorem_suite() {
  Outcome o;
  const SamplePlan plan{0, 50, 20};
  for (const ChartedManifold& m : standard_entries()) {
    ClassificationReport r;
    try {
      r = classify(m, plan);
    } catch (const Error& e) {
      o.require(false, e.what());
      continue;
    }
    for (const CheckResult& c : r.theorem_checks) {
      if (c.name == "nearly-implies-kahler")
        o.require((c.status == CheckStatus::HypothesisNotMet) == !r.verdicts.nearly,
                  m.name() + " " + c.name + " vacuity");
      else if (c.name == "codazzi-implies-kahler")
        o.require((c.status == CheckStatus::HypothesisNotMet) == !r.verdicts.codazzi,
                  m.name() + " " + c.name + " vacuity");
      else
        o.require(c.status == CheckStatus::Holds, m.name() + " " + c.name);
    }
  }
  const TableReport t = table1_summary(plan);
  o.require(t.cell(-1, true).verdict == "nearly Kahler type", "cell (-1,+)");
  o.require(t.cell(1, true).verdict == "Kahler type", "cell (+1,+)");
  o.require(t.cell(-1, false).verdict == "Kahler type", "cell (-1,-)");
  o.require(t.cell(1, false).verdict == "Kahler type", "cell (+1,-)");
  return o;
}

Outcome christoffel_oracle() {
  Outcome o;
  std::vector<ChartedManifold> ms{load_manifold_config(std::string(JMETRIC_TEST_DATA_DIR) + "/polar.json")};
  for (const std::string& name : standard_catalog_names())
    if (name.starts_with("random-")) ms.push_back(catalog(name));
  for (const ChartedManifold& m : ms)
    for (const SamplePoint& sp : draw_samples(m.domain(), SamplePlan{0, 10, 0})) {
      const ConnectionCoefficients c = christoffel(m, sp.coords);
      const auto ref = oracle::christoffel_fd(m, sp.coords);
      double worst = 0.0;
      for (int k = 0; k < m.dim(); ++k)
        for (int i = 0; i < m.dim(); ++i)
          for (int j = 0; j < m.dim(); ++j) {
            const double e = std::abs(c.gamma(k, i, j) - ref[k][i][j]) /
                             std::max(1.0, std::abs(ref[k][i][j]));
            worst = std::max(worst, e);
          }
      o.require(worst < 1e-5, m.name() + " relative error " + fmt(worst));
    }
  return o;
}

std::string cli_suite() {
  const std::vector<std::vector<std::string>> runs{
      {"validate", "--format", "json"},
      {"identities", "--format", "json", "--points", "10", "--vectors", "5"},
      {"classify", "--format", "json", "--points", "10", "--vectors", "5"},
      {"verify", "--format", "json", "--points", "10", "--vectors", "5"},
      {"algebra-table", "--format", "json"},
  };
  std::string all;
  for (const auto& args : runs) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    all += std::to_string(code) + "\n" + out.str();
  }
  return all;
}

Outcome determinism() {
  Outcome o;
  const std::string a = cli_suite();
  const std::string b = cli_suite();
  o.require(a == b, "CLI reports differ between runs");
  o.require(a.find("\"command\"") != std::string::npos, "CLI produced no JSON");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // 0 for no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "structure axioms", 5.0, structure_axioms},
      {2, "identity suite", 30.0, identity_suite},
      {3, "torsion three-way and canonical parallelism", 0.0, torsion_agreement},
      {4, "Nijenhuis two-way and torsion relation", 0.0, nijenhuis_agreement},
      {5, "algebra dimensions", 10.0, algebra_dimensions},
      {6, "S^6 strict nearly Kahler", 10.0, sphere_behaviour},
      {7, "theorem suite and summary table", 0.0, theorem_suite},
      {8, "Christoffel vs finite-difference Koszul", 0.0, christoffel_oracle},
      {9, "CLI determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs >= c.budget_s)
      o.require(false, "runtime " + fmt(secs) + " s over " + fmt(c.budget_s) + " s");
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.pass ? "" : " -- ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
