#include "jmetric/report_json.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "jmetric/error.hpp"

namespace jmetric {

namespace {

using ojson = nlohmann::ordered_json;

ojson kind_json(StructureKind k) {
  ojson j;
  j["slug"] = std::string(slug(k));
  j["alpha"] = k.alpha;
  j["epsilon"] = k.epsilon;
  return j;
}

StructureKind kind_from(const ojson& j) {
  return make_kind(j.at("alpha").get<int>(), j.at("epsilon").get<int>());
}

template <typename F>
auto parse_guarded(std::string_view text, F&& build) {
  try {
    const ojson doc = ojson::parse(text.begin(), text.end());
    return build(doc);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigParse, std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ConfigParse, std::string("malformed report: ") + e.what());
  }
}

// --- validation -----------------------------------------------------------

ojson json_of(const ValidationReport& r) {
  ojson j;
  j["manifold"] = r.manifold;
  j["kind"] = kind_json(r.kind);
  j["seed"] = r.seed;
  j["n_points"] = r.n_points;
  ojson res;
  res["structure_square"] = r.structure_square;
  res["isometry"] = r.isometry;
  res["alternative_metric"] = r.alternative_metric;
  res["metric_symmetry"] = r.metric_symmetry;
  res["min_abs_det"] = r.min_abs_det;
  res["trace"] = r.trace ? ojson(*r.trace) : ojson(nullptr);
  j["residuals"] = res;
  j["flags"] = r.flags;
  j["worst_point"] = r.worst_point;
  j["valid"] = r.valid;
  return j;
}

ValidationReport validation_of(const ojson& j) {
  ValidationReport r;
  r.manifold = j.at("manifold").get<std::string>();
  r.kind = kind_from(j.at("kind"));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n_points = j.at("n_points").get<int>();
  const ojson& res = j.at("residuals");
  r.structure_square = res.at("structure_square").get<double>();
  r.isometry = res.at("isometry").get<double>();
  r.alternative_metric = res.at("alternative_metric").get<double>();
  r.metric_symmetry = res.at("metric_symmetry").get<double>();
  r.min_abs_det = res.at("min_abs_det").get<double>();
  if (!res.at("trace").is_null()) r.trace = res.at("trace").get<double>();
  r.flags = j.at("flags").get<std::vector<std::string>>();
  r.worst_point = j.at("worst_point").get<std::vector<double>>();
  r.valid = j.at("valid").get<bool>();
  return r;
}

// --- identities -----------------------------------------------------------

ojson json_of(const IdentityReport& r) {
  ojson j;
  j["manifold"] = r.manifold;
  j["kind"] = kind_json(r.kind);
  j["seed"] = r.seed;
  j["n_points"] = r.n_points;
  j["n_vector_triples"] = r.n_vector_triples;
  ojson checks = ojson::array();
  for (const IdentityCheck& c : r.checks) {
    ojson e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["holds"] = c.holds;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["all_hold"] = r.all_hold;
  return j;
}

IdentityReport identities_of(const ojson& j) {
  IdentityReport r;
  r.manifold = j.at("manifold").get<std::string>();
  r.kind = kind_from(j.at("kind"));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n_points = j.at("n_points").get<int>();
  r.n_vector_triples = j.at("n_vector_triples").get<int>();
  for (const ojson& e : j.at("checks"))
    r.checks.push_back({e.at("name").get<std::string>(), e.at("residual").get<double>(),
                        e.at("tolerance").get<double>(), e.at("holds").get<bool>()});
  r.all_hold = j.at("all_hold").get<bool>();
  return r;
}

// --- classification -------------------------------------------------------

CheckStatus status_from(const std::string& s) {
  if (s == to_string(CheckStatus::Holds)) return CheckStatus::Holds;
  if (s == to_string(CheckStatus::HypothesisNotMet)) return CheckStatus::HypothesisNotMet;
  throw std::invalid_argument("unknown check status \"" + s + "\"");
}

ojson json_of(const CheckResult& c) {
  ojson j;
  j["name"] = c.name;
  j["status"] = std::string(to_string(c.status));
  ojson ev = ojson::array();
  for (const auto& [k, v] : c.evidence) ev.push_back(ojson{{"name", k}, {"value", v}});
  j["evidence"] = std::move(ev);
  j["notes"] = c.notes;
  return j;
}

CheckResult check_of(const ojson& j) {
  CheckResult c;
  c.name = j.at("name").get<std::string>();
  c.status = status_from(j.at("status").get<std::string>());
  for (const ojson& e : j.at("evidence"))
    c.evidence.emplace_back(e.at("name").get<std::string>(), e.at("value").get<double>());
  c.notes = j.at("notes").get<std::vector<std::string>>();
  return c;
}

const char* verdict_word(bool holds) { return holds ? "holds" : "fails"; }

ojson json_of(const ClassificationReport& r) {
  ojson j;
  j["manifold"] = r.manifold;
  j["kind"] = kind_json(r.kind);
  j["seed"] = r.seed;
  j["n_points"] = r.n_points;
  j["n_vector_triples"] = r.n_vector_triples;
  j["tolerance"] = r.tolerance;
  const ClassResiduals& s = r.residuals;
  j["residuals"] = ojson{{"kahler", s.kahler},
                         {"integrable", s.integrable},
                         {"nearly", s.nearly},
                         {"codazzi", s.codazzi},
                         {"torsion0", s.torsion0},
                         {"torsion0_skew_g", s.torsion0_skew_g},
                         {"torsion0_integrability", s.torsion0_integrability},
                         {"codazzi_coupled_g", s.codazzi_coupled_g}};
  const ClassVerdicts& v = r.verdicts;
  j["verdicts"] = ojson{{"kahler", verdict_word(v.kahler)},
                        {"integrable", verdict_word(v.integrable)},
                        {"nearly", verdict_word(v.nearly)},
                        {"codazzi", verdict_word(v.codazzi)},
                        {"torsion_free", verdict_word(v.torsion_free)}};
  ojson checks = ojson::array();
  for (const CheckResult& c : r.theorem_checks) checks.push_back(json_of(c));
  j["theorem_checks"] = std::move(checks);
  return j;
}

bool verdict_from(const ojson& j) {
  const std::string s = j.get<std::string>();
  if (s == "holds") return true;
  if (s == "fails") return false;
  throw std::invalid_argument("unknown verdict \"" + s + "\"");
}

ClassificationReport classification_of(const ojson& j) {
  ClassificationReport r;
  r.manifold = j.at("manifold").get<std::string>();
  r.kind = kind_from(j.at("kind"));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n_points = j.at("n_points").get<int>();
  r.n_vector_triples = j.at("n_vector_triples").get<int>();
  r.tolerance = j.at("tolerance").get<double>();
  const ojson& s = j.at("residuals");
  r.residuals = {s.at("kahler").get<double>(),         s.at("integrable").get<double>(),
                 s.at("nearly").get<double>(),         s.at("codazzi").get<double>(),
                 s.at("torsion0").get<double>(),       s.at("torsion0_skew_g").get<double>(),
                 s.at("torsion0_integrability").get<double>(),
                 s.at("codazzi_coupled_g").get<double>()};
  const ojson& v = j.at("verdicts");
  r.verdicts = {verdict_from(v.at("kahler")), verdict_from(v.at("integrable")),
                verdict_from(v.at("nearly")), verdict_from(v.at("codazzi")),
                verdict_from(v.at("torsion_free"))};
  for (const ojson& c : j.at("theorem_checks")) r.theorem_checks.push_back(check_of(c));
  return r;
}

// --- table ----------------------------------------------------------------

ojson json_of(const TableReport& t) {
  ojson j;
  j["seed"] = t.seed;
  j["n_points"] = t.n_points;
  j["n_vector_triples"] = t.n_vector_triples;
  j["tolerance"] = t.tolerance;
  ojson cells = ojson::array();
  for (const TableCell& c : t.cells) {
    ojson e;
    e["alpha_epsilon"] = c.alpha_epsilon;
    e["condition"] = c.plus_condition ? "plus" : "minus";
    e["verdict"] = c.verdict;
    ojson alg = ojson::array();
    for (const auto& [k, dims] : c.algebra) alg.push_back(ojson{{"query", k}, {"dimensions", dims}});
    e["algebra"] = std::move(alg);
    ojson entries = ojson::array();
    for (const auto& [name, st] : c.entries)
      entries.push_back(ojson{{"manifold", name}, {"status", std::string(to_string(st))}});
    e["entries"] = std::move(entries);
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  return j;
}

TableReport table_of(const ojson& j) {
  TableReport t;
  t.seed = j.at("seed").get<std::uint64_t>();
  t.n_points = j.at("n_points").get<int>();
  t.n_vector_triples = j.at("n_vector_triples").get<int>();
  t.tolerance = j.at("tolerance").get<double>();
  for (const ojson& e : j.at("cells")) {
    TableCell c;
    c.alpha_epsilon = e.at("alpha_epsilon").get<int>();
    c.plus_condition = e.at("condition").get<std::string>() == "plus";
    c.verdict = e.at("verdict").get<std::string>();
    for (const ojson& a : e.at("algebra"))
      c.algebra.emplace_back(a.at("query").get<std::string>(),
                             a.at("dimensions").get<std::vector<std::size_t>>());
    for (const ojson& x : e.at("entries"))
      c.entries.emplace_back(x.at("manifold").get<std::string>(),
                             status_from(x.at("status").get<std::string>()));
    t.cells.push_back(std::move(c));
  }
  return t;
}

// --- text -----------------------------------------------------------------

std::string line(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return std::string(buf) + "\n";
}

std::string kind_text(StructureKind k) {
  return std::string(slug(k)) + " (alpha " + (k.alpha > 0 ? "+1" : "-1") + ", epsilon " +
         (k.epsilon > 0 ? "+1" : "-1") + ")";
}

std::string text_of(const ValidationReport& r) {
  std::string s;
  s += line("manifold  %s  kind %s", r.manifold.c_str(), kind_text(r.kind).c_str());
  s += line("samples   %d points, seed %llu", r.n_points,
            static_cast<unsigned long long>(r.seed));
  s += line("  %-22s %12.3e", "J^2 - alpha Id", r.structure_square);
  s += line("  %-22s %12.3e", "g(J.,J.) - eps g", r.isometry);
  s += line("  %-22s %12.3e", "g(J.,.) - ae g(.,J.)", r.alternative_metric);
  s += line("  %-22s %12.3e", "g - g^T", r.metric_symmetry);
  s += line("  %-22s %12.3e", "min |det g|", r.min_abs_det);
  if (r.trace) s += line("  %-22s %12.3e", "|trace J|", *r.trace);
  std::string flags;
  for (const std::string& f : r.flags) flags += (flags.empty() ? "" : ", ") + f;
  s += line("verdict   %s%s%s", r.valid ? "valid" : "invalid", flags.empty() ? "" : ": ",
            flags.c_str());
  return s;
}

std::string text_of(const IdentityReport& r) {
  std::string s;
  s += line("manifold  %s  kind %s", r.manifold.c_str(), kind_text(r.kind).c_str());
  s += line("samples   %d points x %d triples, seed %llu", r.n_points, r.n_vector_triples,
            static_cast<unsigned long long>(r.seed));
  s += line("  %-26s %12s %10s  %s", "identity", "residual", "tol", "verdict");
  for (const IdentityCheck& c : r.checks)
    s += line("  %-26s %12.3e %10.0e  %s", c.name.c_str(), c.residual, c.tolerance,
              c.holds ? "holds" : "FAILS");
  s += line("verdict   %s", r.all_hold ? "all identities hold" : "identity failure");
  return s;
}

std::string text_of(const CheckResult& c) {
  std::string s = line("  %-34s %s", c.name.c_str(), std::string(to_string(c.status)).c_str());
  for (const auto& [k, v] : c.evidence) s += line("      %-36s %12.3e", k.c_str(), v);
  for (const std::string& n : c.notes) s += line("      %s", n.c_str());
  return s;
}

std::string text_of(const ClassificationReport& r) {
  std::string s;
  s += line("manifold  %s  kind %s", r.manifold.c_str(), kind_text(r.kind).c_str());
  s += line("samples   %d points x %d triples, seed %llu, tol %.0e", r.n_points,
            r.n_vector_triples, static_cast<unsigned long long>(r.seed), r.tolerance);
  const ClassResiduals& x = r.residuals;
  const ClassVerdicts& v = r.verdicts;
  s += line("  %-24s %12s  %s", "residual", "value", "verdict");
  s += line("  %-24s %12.3e  %s", "kahler", x.kahler, verdict_word(v.kahler));
  s += line("  %-24s %12.3e  %s", "integrable", x.integrable, verdict_word(v.integrable));
  s += line("  %-24s %12.3e  %s", "nearly", x.nearly, verdict_word(v.nearly));
  s += line("  %-24s %12.3e  %s", "codazzi", x.codazzi, verdict_word(v.codazzi));
  s += line("  %-24s %12.3e  %s", "torsion0", x.torsion0, verdict_word(v.torsion_free));
  s += line("  %-24s %12.3e", "torsion0_skew_g", x.torsion0_skew_g);
  s += line("  %-24s %12.3e", "torsion0_integrability", x.torsion0_integrability);
  s += line("  %-24s %12.3e", "codazzi_coupled_g", x.codazzi_coupled_g);
  if (!r.theorem_checks.empty()) {
    s += "theorem checks\n";
    for (const CheckResult& c : r.theorem_checks) s += text_of(c);
  }
  return s;
}

std::string text_of(const TableReport& t) {
  std::string s;
  s += line("summary over the standard catalog, %d points x %d triples, seed %llu", t.n_points,
            t.n_vector_triples, static_cast<unsigned long long>(t.seed));
  s += line("  %-34s %-20s %-20s", "condition", "alpha*epsilon = -1", "alpha*epsilon = +1");
  for (bool plus : {true, false})
    s += line("  %-34s %-20s %-20s",
              plus ? "(nabla_X J)Y + (nabla_Y J)X = 0" : "(nabla_X J)Y - (nabla_Y J)X = 0",
              t.cell(-1, plus).verdict.c_str(), t.cell(1, plus).verdict.c_str());
  for (const TableCell& c : t.cells) {
    s += line("cell ae=%+d %s: %s", c.alpha_epsilon, c.plus_condition ? "plus" : "minus",
              c.verdict.c_str());
    for (const auto& [q, dims] : c.algebra) {
      std::string d;
      for (std::size_t x : dims) d += (d.empty() ? "" : " ") + std::to_string(x);
      s += line("    %-40s n=1..3: %s", q.c_str(), d.c_str());
    }
    for (const auto& [name, st] : c.entries)
      s += line("    %-40s %s", name.c_str(), std::string(to_string(st)).c_str());
  }
  return s;
}

template <typename R>
std::string render_many(const char* command, const std::vector<R>& reports, Format f) {
  if (f == Format::Json) {
    ojson j;
    j["command"] = command;
    ojson arr = ojson::array();
    for (const R& r : reports) arr.push_back(json_of(r));
    j["reports"] = std::move(arr);
    return j.dump(2) + "\n";
  }
  std::string s;
  for (std::size_t i = 0; i < reports.size(); ++i) s += (i ? "\n" : "") + text_of(reports[i]);
  return s;
}

}  // namespace

std::string to_json(const ValidationReport& r) { return json_of(r).dump(2); }
std::string to_json(const IdentityReport& r) { return json_of(r).dump(2); }
std::string to_json(const ClassificationReport& r) { return json_of(r).dump(2); }
std::string to_json(const TableReport& r) { return json_of(r).dump(2); }

ValidationReport validation_from_json(std::string_view text) {
  return parse_guarded(text, [](const ojson& j) { return validation_of(j); });
}
IdentityReport identities_from_json(std::string_view text) {
  return parse_guarded(text, [](const ojson& j) { return identities_of(j); });
}
ClassificationReport classification_from_json(std::string_view text) {
  return parse_guarded(text, [](const ojson& j) { return classification_of(j); });
}
TableReport table_from_json(std::string_view text) {
  return parse_guarded(text, [](const ojson& j) { return table_of(j); });
}

std::string render_catalog(const std::vector<CatalogListing>& entries, Format f) {
  if (f == Format::Json) {
    ojson j;
    j["command"] = "catalog";
    ojson arr = ojson::array();
    for (const CatalogListing& e : entries)
      arr.push_back(ojson{{"name", e.name}, {"kind", kind_json(e.kind)}, {"dim", e.dim}});
    j["entries"] = std::move(arr);
    return j.dump(2) + "\n";
  }
  std::string s = line("%-40s %-20s %s", "name", "kind", "dim");
  for (const CatalogListing& e : entries)
    s += line("%-40s %-20s %d", e.name.c_str(), std::string(slug(e.kind)).c_str(), e.dim);
  return s;
}

std::string render_validation(const std::vector<ValidationReport>& reports, Format f) {
  return render_many("validate", reports, f);
}

std::string render_identities(const std::vector<IdentityReport>& reports, Format f) {
  return render_many("identities", reports, f);
}

std::string render_classification(const std::vector<ClassificationReport>& reports, Format f) {
  return render_many("classify", reports, f);
}

std::string render_verify(const std::vector<ClassificationReport>& reports,
                          const TableReport* table, Format f) {
  if (f == Format::Json) {
    ojson j;
    j["command"] = "verify";
    ojson arr = ojson::array();
    for (const ClassificationReport& r : reports) {
      ojson e;
      e["manifold"] = r.manifold;
      e["kind"] = kind_json(r.kind);
      ojson checks = ojson::array();
      for (const CheckResult& c : r.theorem_checks) checks.push_back(json_of(c));
      e["theorem_checks"] = std::move(checks);
      arr.push_back(std::move(e));
    }
    j["reports"] = std::move(arr);
    j["table"] = table ? json_of(*table) : ojson(nullptr);
    return j.dump(2) + "\n";
  }
  std::string s;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ClassificationReport& r = reports[i];
    s += (i ? "\n" : "") + line("manifold  %s  kind %s", r.manifold.c_str(),
                                kind_text(r.kind).c_str());
    for (const CheckResult& c : r.theorem_checks) s += text_of(c);
  }
  if (table) s += (s.empty() ? "" : "\n") + text_of(*table);
  return s;
}

std::string render_algebra_table(const std::vector<AlgebraTableRow>& rows, Format f) {
  if (f == Format::Json) {
    ojson j;
    j["command"] = "algebra-table";
    ojson arr = ojson::array();
    for (const AlgebraTableRow& r : rows)
      arr.push_back(ojson{{"kind", kind_json(r.kind)},
                          {"n", r.n},
                          {"W", r.w},
                          {"W1", r.w1},
                          {"codazzi", r.codazzi},
                          {"W1_definitions_agree", r.w1_definitions_agree}});
    j["rows"] = std::move(arr);
    return j.dump(2) + "\n";
  }
  std::string s = line("%-20s %3s %6s %6s %8s  %s", "kind", "n", "W", "W1", "codazzi",
                       "W1 definitions agree");
  for (const AlgebraTableRow& r : rows)
    s += line("%-20s %3d %6zu %6zu %8zu  %s", std::string(slug(r.kind)).c_str(), r.n, r.w, r.w1,
              r.codazzi, r.w1_definitions_agree ? "yes" : "no");
  s += "dimensions are computed null-space dimensions (numeric and exact rank agree)\n";
  return s;
}

}  // namespace jmetric
