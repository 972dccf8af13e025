#include "jmetric_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "jmetric/catalog.hpp"
#include "jmetric/classify.hpp"
#include "jmetric/error.hpp"
#include "jmetric/fiber_algebra.hpp"
#include "jmetric/identities.hpp"
#include "jmetric/manifold_config.hpp"
#include "jmetric/report_json.hpp"

namespace jmetric::cli {

namespace {

struct RunConfig {
  std::string command;
  std::optional<std::string> manifold;
  std::uint64_t seed = 0;
  int points = 50;
  int vectors = 20;
  double tol = kDefaultTolerance;
  std::string format = "text";
  std::optional<std::string> output;

  SamplePlan plan() const { return SamplePlan{seed, points, vectors}; }
  Format fmt() const { return format == "json" ? Format::Json : Format::Text; }
};

void add_common_flags(CLI::App* sub, RunConfig& cfg, bool sampling) {
  sub->add_option("--manifold", cfg.manifold,
                  "catalog name, 'all' for the standard catalog, or a JSON config path");
  if (sampling) {
    sub->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    sub->add_option("--points", cfg.points, "sample points")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    sub->add_option("--vectors", cfg.vectors, "vector triples per point")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    sub->add_option("--tol", cfg.tol, "verdict tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  sub->add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--output", cfg.output, "write the report to this file");
}

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos || s.ends_with(".json") ||
         std::filesystem::exists(s);
}

std::vector<ChartedManifold> resolve_manifolds(const RunConfig& cfg) {
  const std::string sel = cfg.manifold.value_or("all");
  std::vector<ChartedManifold> out;
  if (sel == "all") {
    for (const std::string& name : standard_catalog_names()) out.push_back(catalog(name));
  } else if (looks_like_path(sel)) {
    out.push_back(load_manifold_config(sel));
  } else {
    out.push_back(catalog(sel));
  }
  return out;
}

// Validates every manifold first; structural failures are verdict failures.
bool structures_valid(const std::vector<ChartedManifold>& ms, const RunConfig& cfg,
                      std::ostream& err) {
  bool ok = true;
  for (const ChartedManifold& m : ms) {
    const ValidationReport v = validate_structure(m, SamplePlan{cfg.seed, cfg.points, 0});
    if (!v.valid) {
      std::string flags;
      for (const std::string& f : v.flags) flags += (flags.empty() ? "" : ", ") + f;
      err << "error: " << m.name() << " is not a valid " << slug(m.kind())
          << " structure: " << flags << "\n";
      ok = false;
    }
  }
  return ok;
}

struct Outcome {
  std::string report;
  int code = kExitOk;
};

Outcome run_command(const RunConfig& cfg, std::ostream& err) {
  const Format f = cfg.fmt();
  const SamplePlan plan = cfg.plan();

  if (cfg.command == "catalog") {
    std::vector<CatalogListing> entries;
    for (const std::string& name : standard_catalog_names()) {
      const ChartedManifold m = catalog(name);
      entries.push_back({m.name(), m.kind(), m.dim()});
    }
    return {render_catalog(entries, f), kExitOk};
  }

  if (cfg.command == "algebra-table") {
    const std::vector<AlgebraTableRow> rows = algebra_table();
    int code = kExitOk;
    for (const AlgebraTableRow& r : rows) {
      if ((r.kind.product() == 1 && r.w1 != 0) || r.codazzi != 0 || !r.w1_definitions_agree) {
        err << "error: unexpected algebra dimensions for " << slug(r.kind) << ", n = " << r.n
            << "\n";
        code = kExitVerdict;
      }
    }
    return {render_algebra_table(rows, f), code};
  }

  const std::vector<ChartedManifold> ms = resolve_manifolds(cfg);

  if (cfg.command == "validate") {
    std::vector<ValidationReport> reports;
    int code = kExitOk;
    for (const ChartedManifold& m : ms) {
      reports.push_back(validate_structure(m, SamplePlan{cfg.seed, cfg.points, 0}));
      if (!reports.back().valid) code = kExitVerdict;
    }
    return {render_validation(reports, f), code};
  }

  if (!structures_valid(ms, cfg, err)) return {"", kExitVerdict};

  if (cfg.command == "identities") {
    std::vector<IdentityReport> reports;
    int code = kExitOk;
    for (const ChartedManifold& m : ms) {
      reports.push_back(check_identities(m, plan, cfg.tol));
      if (!reports.back().all_hold) code = kExitVerdict;
    }
    return {render_identities(reports, f), code};
  }

  if (cfg.command == "classify") {
    std::vector<ClassificationReport> reports;
    for (const ChartedManifold& m : ms) reports.push_back(classify(m, plan, cfg.tol));
    return {render_classification(reports, f), kExitOk};
  }

  // verify
  std::vector<ClassificationReport> reports;
  for (const ChartedManifold& m : ms) reports.push_back(classify(m, plan, cfg.tol));
  std::optional<TableReport> table;
  int code = kExitOk;
  if (!cfg.manifold || *cfg.manifold == "all") {
    table = table1_summary(plan, cfg.tol);
    const bool matches = table->cell(-1, true).verdict == "nearly Kahler type" &&
                         table->cell(1, true).verdict == "Kahler type" &&
                         table->cell(-1, false).verdict == "Kahler type" &&
                         table->cell(1, false).verdict == "Kahler type";
    if (!matches) {
      err << "error: summary table verdicts differ from the expected classification\n";
      code = kExitVerdict;
    }
  }
  return {render_verify(reports, table ? &*table : nullptr, f), code};
}

int exit_code_for(ErrorCode c) {
  if (is_internal_consistency_failure(c)) return kExitInternal;
  if (c == ErrorCode::NearSingularMetric) return kExitVerdict;
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for (J^2 = +-1)-metric manifolds", "jmetric"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  struct Sub {
    const char* name;
    const char* help;
    bool sampling;
  };
  const Sub subs[] = {
      {"catalog", "list the built-in manifolds", false},
      {"validate", "check the structure axioms", true},
      {"classify", "class residuals, verdicts and theorem checks", true},
      {"verify", "theorem checks; with no --manifold also the summary table", true},
      {"algebra-table", "dimensions of W, W1 and the Codazzi subspace", false},
      {"identities", "tensor identities at sample points", true},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common_flags(sub, cfg, s.sampling);
    sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto selected = app.get_subcommands();
    out << (selected.empty() ? app.help() : selected.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'jmetric --help' for usage\n";
    return kExitUsage;
  }

  Outcome outcome;
  try {
    outcome = run_command(cfg, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) {
      err << "usage error: --output: cannot open " << *cfg.output << "\n";
      return kExitUsage;
    }
    file << outcome.report;
  } else {
    out << outcome.report;
  }
  return outcome.code;
}

}  // namespace jmetric::cli
