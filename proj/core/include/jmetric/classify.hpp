#ifndef JMETRIC_CLASSIFY_HPP_
#define JMETRIC_CLASSIFY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jmetric/manifold.hpp"

namespace jmetric {

/// Max over the sample set of each class residual (infinity norms of the
/// component tensors unless noted).
struct ClassResiduals {
  double kahler = 0.0;                  // |nabla J|
  double integrable = 0.0;              // |N_J|
  double nearly = 0.0;                  // |(nabla_X J)Y + (nabla_Y J)X|
  double codazzi = 0.0;                 // |(nabla_X J)Y - (nabla_Y J)X|
  double torsion0 = 0.0;                // |T0|
  double torsion0_skew_g = 0.0;         // max |g(T0(X,Y),X)| over sampled pairs
  double torsion0_integrability = 0.0;  // |T0(J.,J.) + alpha T0|
  double codazzi_coupled_g = 0.0;       // |(nabla_Z g)(X,Y) - (nabla_X g)(Z,Y)|

  bool operator==(const ClassResiduals&) const = default;
};

/// Predicate verdicts: true means the residual is below tolerance.
struct ClassVerdicts {
  bool kahler = false;
  bool integrable = false;
  bool nearly = false;
  bool codazzi = false;
  bool torsion_free = false;

  bool operator==(const ClassVerdicts&) const = default;
};

enum class CheckStatus {
  Holds,             // hypothesis met and conclusion verified, or biconditional consistent
  HypothesisNotMet,  // implication vacuous on this data
};

std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Holds;
  /// Named witnessing quantities (residuals, algebra dimensions).
  std::vector<std::pair<std::string, double>> evidence;
  std::vector<std::string> notes;

  bool operator==(const CheckResult&) const = default;
};

struct ClassificationReport {
  std::string manifold;
  StructureKind kind;
  std::uint64_t seed = 0;
  int n_points = 0;
  int n_vector_triples = 0;
  double tolerance = 0.0;
  ClassResiduals residuals;
  ClassVerdicts verdicts;
  std::vector<CheckResult> theorem_checks;

  bool operator==(const ClassificationReport&) const = default;
};

inline constexpr double kDefaultTolerance = 1e-8;
/// Slack on theorem conclusions relative to the verdict tolerance.
inline constexpr double kTheoremSlack = 10.0;
/// Bound on the Levi-Civita Codazzi-coupled residual.
inline constexpr double kCoupledMetricTol = 1e-10;

/// Residuals and verdicts only, no theorem checks.
ClassificationReport measure_classes(const ChartedManifold& m, const SamplePlan& plan,
                                     double tol = kDefaultTolerance);

/// Residuals, verdicts and every applicable theorem check. Throws
/// std::invalid_argument if tol <= 0.
ClassificationReport classify(const ChartedManifold& m, const SamplePlan& plan,
                              double tol = kDefaultTolerance);

// Theorem verifiers. Each throws Error(TheoremViolation) when the data
// contradicts the statement beyond slack. The report overloads reuse
// measured residuals.

/// |T0| < tol <=> |nabla J| < tol, and |T0(J.,J.) + alpha T0| < tol <=> |N_J| < tol.
CheckResult verify_theorem_torsion_characterizations(const ClassificationReport& r);
CheckResult verify_theorem_torsion_characterizations(const ChartedManifold& m,
                                                     const SamplePlan& plan,
                                                     double tol = kDefaultTolerance);

/// ae = +1: nearly < tol => |nabla J| < 10 tol. Also records dim W1 = 0 for
/// the kind at n = 1, 2, 3. Throws Error(KindMismatch) if ae != +1.
CheckResult verify_theorem_nearly_implies_kahler(const ClassificationReport& r);
CheckResult verify_theorem_nearly_implies_kahler(const ChartedManifold& m, const SamplePlan& plan,
                                                 double tol = kDefaultTolerance);

/// ae = -1: nearly < tol <=> max |g(T0(X,Y),X)| < tol. Throws
/// Error(KindMismatch) if ae != -1.
CheckResult verify_theorem_nearly_torsion_characterization(const ClassificationReport& r);
CheckResult verify_theorem_nearly_torsion_characterization(const ChartedManifold& m,
                                                           const SamplePlan& plan,
                                                           double tol = kDefaultTolerance);

/// All kinds: codazzi < tol => |nabla J| < 10 tol, with the contrapositive
/// recorded on generic data and the Levi-Civita coupled residual r_g < 1e-10.
CheckResult verify_theorem_codazzi_implies_kahler(const ClassificationReport& r);
CheckResult verify_theorem_codazzi_implies_kahler(const ChartedManifold& m, const SamplePlan& plan,
                                                  double tol = kDefaultTolerance);

/// One cell of the summary table: a sign condition and a value of ae.
struct TableCell {
  int alpha_epsilon = 1;
  bool plus_condition = true;  // (nabla_X J)Y + (nabla_Y J)X = 0, else the minus sign
  std::string verdict;         // "Kahler type" or "nearly Kahler type"
  /// Null-space dimensions backing the verdict, per kind and n = 1, 2, 3.
  std::vector<std::pair<std::string, std::vector<std::size_t>>> algebra;
  /// Theorem check status per catalog entry of the matching kinds.
  std::vector<std::pair<std::string, CheckStatus>> entries;

  bool operator==(const TableCell&) const = default;
};

struct TableReport {
  std::uint64_t seed = 0;
  int n_points = 0;
  int n_vector_triples = 0;
  double tolerance = 0.0;
  /// Order: (ae=-1, +), (ae=+1, +), (ae=-1, -), (ae=+1, -).
  std::vector<TableCell> cells;

  const TableCell& cell(int alpha_epsilon, bool plus_condition) const;
  bool operator==(const TableReport&) const = default;
};

/// Runs the matching theorem verifier on every standard catalog entry and
/// the algebra dimension queries, and assembles the 2x2 table of verdicts.
TableReport table1_summary(const SamplePlan& plan, double tol = kDefaultTolerance);

}  // namespace jmetric

#endif  // JMETRIC_CLASSIFY_HPP_
