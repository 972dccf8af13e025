#ifndef JMETRIC_MANIFOLD_HPP_
#define JMETRIC_MANIFOLD_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jmetric/dual.hpp"
#include "jmetric/square_matrix.hpp"
#include "jmetric/structure_kind.hpp"
#include "jmetric/tensor.hpp"

namespace jmetric {

/// Axis-aligned coordinate box, optionally intersected with the open ball
/// |x| < ball_radius.
struct Domain {
  std::vector<double> lo;
  std::vector<double> hi;
  std::optional<double> ball_radius;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const;
  bool contains_strictly(std::span<const double> p) const;

  static Domain box(int dim, double lo, double hi);
  static Domain ball(int dim, double radius);
};

/// Values and first partials of the chart fields at one point.
struct LocalJet {
  std::vector<double> point;
  TensorValue g;   // g_ij
  TensorValue dg;  // d_k g_ij
  TensorValue J;   // J^i_j
  TensorValue dJ;  // d_k J^i_j

  int dim() const { return g.extent(0); }
};

/// A (J^2 = +-1)-metric manifold given on a single chart.
///
/// The metric and structure maps are evaluated on dual numbers so that one
/// call produces g, J and all their first partial derivatives.
class ChartedManifold {
 public:
  using Field = std::function<SquareMatrix<Dual>(std::span<const Dual>)>;

  ChartedManifold(std::string name, StructureKind kind, Domain domain, Field metric,
                  Field structure);

  const std::string& name() const { return name_; }
  StructureKind kind() const { return kind_; }
  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }

  SquareMatrix<double> metric_at(std::span<const double> p) const;
  SquareMatrix<double> structure_at(std::span<const double> p) const;

  /// Throws Error(PointOutsideDomain) unless p lies strictly inside the domain.
  LocalJet eval_with_derivatives(std::span<const double> p) const;

  /// Same fields on a smaller domain (used to sample near a chosen point).
  ChartedManifold restricted_to(Domain sub) const;

  const Field& metric_field() const { return metric_; }
  const Field& structure_field() const { return structure_; }

 private:
  std::string name_;
  StructureKind kind_;
  Domain domain_;
  Field metric_;
  Field structure_;
};

struct SamplePlan {
  std::uint64_t seed = 0;
  int n_points = 50;
  int n_vector_triples = 20;
};

struct VectorTriple {
  std::vector<double> x, y, z;
};

struct SamplePoint {
  std::size_t index = 0;
  std::vector<double> coords;
  std::vector<VectorTriple> triples;
};

/// Deterministic sample set. Point k and its vector triples depend only on
/// (seed, k), so a plan with fewer points draws a prefix of a larger plan.
/// Points lie strictly inside the domain; every vector has infinity norm in
/// [0.1, 1].
std::vector<SamplePoint> draw_samples(const Domain& domain, const SamplePlan& plan);

inline constexpr double kStructureTolerance = 1e-8;

struct ValidationReport {
  std::string manifold;
  StructureKind kind;
  std::uint64_t seed = 0;
  int n_points = 0;
  double structure_square = 0.0;    // max |J^2 - alpha Id|
  double isometry = 0.0;            // max |J^a_i J^b_j g_ab - eps g_ij|
  double alternative_metric = 0.0;  // max |g(JX,Y) - alpha eps g(X,JY)| on basis pairs
  double metric_symmetry = 0.0;     // max |g_ij - g_ji|
  double min_abs_det = 0.0;
  std::optional<double> trace;  // max |trace J|, only for kind (+1, +1)
  std::vector<std::string> flags;
  std::vector<double> worst_point;
  bool valid = false;
};

/// Checks the structure axioms at every sample point; verdict is valid iff
/// every residual is below 1e-8. Throws Error(DomainEmpty) or
/// Error(NearSingularMetric) naming the offending point.
ValidationReport validate_structure(const ChartedManifold& m, const SamplePlan& plan);

}  // namespace jmetric

#endif  // JMETRIC_MANIFOLD_HPP_
