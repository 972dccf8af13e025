#include "jmetric/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "jmetric/error.hpp"

namespace jmetric {

namespace {

std::string format_point(std::span<const double> p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> random_vector(std::mt19937_64& rng, int dim) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  double norm = 0.0;
  while (norm == 0.0) {
    for (double& c : v) c = 2.0 * uniform01(rng) - 1.0;
    for (double c : v) norm = std::max(norm, std::abs(c));
  }
  const double target = 0.1 + 0.9 * uniform01(rng);
  for (double& c : v) c *= target / norm;
  return v;
}

}  // namespace

bool Domain::empty() const {
  if (lo.empty() || lo.size() != hi.size()) return true;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i])) return true;
  if (ball_radius) {
    if (!(*ball_radius > 0.0)) return true;
    // the ball must meet the box interior: test the box point closest to 0
    double r2 = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const double c = std::clamp(0.0, lo[i], hi[i]);
      r2 += c * c;
    }
    if (r2 >= *ball_radius * *ball_radius) return true;
  }
  return false;
}

bool Domain::contains_strictly(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim()) return false;
  double r2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > lo[i] && p[i] < hi[i])) return false;
    r2 += p[i] * p[i];
  }
  return !ball_radius || r2 < *ball_radius * *ball_radius;
}

Domain Domain::box(int dim, double lo, double hi) {
  return Domain{std::vector<double>(static_cast<std::size_t>(dim), lo),
                std::vector<double>(static_cast<std::size_t>(dim), hi), std::nullopt};
}

Domain Domain::ball(int dim, double radius) {
  Domain d = box(dim, -radius, radius);
  d.ball_radius = radius;
  return d;
}

ChartedManifold::ChartedManifold(std::string name, StructureKind kind, Domain domain,
                                 Field metric, Field structure)
    : name_(std::move(name)),
      kind_(kind),
      domain_(std::move(domain)),
      metric_(std::move(metric)),
      structure_(std::move(structure)) {
  if (domain_.dim() > kMaxChartDim)
    throw Error(ErrorCode::UnsupportedDimension, "chart dimension " + std::to_string(domain_.dim()) +
                                            " exceeds the supported maximum " +
                                            std::to_string(kMaxChartDim));
}

namespace {

std::vector<Dual> constants(std::span<const double> p) {
  return std::vector<Dual>(p.begin(), p.end());
}

}  // namespace

SquareMatrix<double> ChartedManifold::metric_at(std::span<const double> p) const {
  return values_of(metric_(constants(p)));
}

SquareMatrix<double> ChartedManifold::structure_at(std::span<const double> p) const {
  return values_of(structure_(constants(p)));
}

LocalJet ChartedManifold::eval_with_derivatives(std::span<const double> p) const {
  if (!domain_.contains_strictly(p))
    throw Error(ErrorCode::PointOutsideDomain,
                "point " + format_point(p) + " is not strictly inside the domain of " + name_);
  const int m = dim();
  std::vector<Dual> x;
  x.reserve(p.size());
  for (int i = 0; i < m; ++i) x.push_back(Dual::variable(p[static_cast<std::size_t>(i)], i));

  const SquareMatrix<Dual> g = metric_(x);
  const SquareMatrix<Dual> J = structure_(x);
  if (g.size() != m || J.size() != m)
    throw Error(ErrorCode::SlotMismatch, "field of " + name_ + " has the wrong size");

  LocalJet jet{std::vector<double>(p.begin(), p.end()),
               TensorValue::zeros(m, {Variance::Lower, Variance::Lower}),
               TensorValue::zeros(m, {Variance::Lower, Variance::Lower, Variance::Lower}),
               TensorValue::zeros(m, {Variance::Upper, Variance::Lower}),
               TensorValue::zeros(m, {Variance::Lower, Variance::Upper, Variance::Lower})};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      jet.g(i, j) = g(i, j).value;
      jet.J(i, j) = J(i, j).value;
      for (int k = 0; k < m; ++k) {
        jet.dg(k, i, j) = g(i, j).d(k);
        jet.dJ(k, i, j) = J(i, j).d(k);
      }
    }
  return jet;
}

ChartedManifold ChartedManifold::restricted_to(Domain sub) const {
  return ChartedManifold(name_, kind_, std::move(sub), metric_, structure_);
}

std::vector<SamplePoint> draw_samples(const Domain& domain, const SamplePlan& plan) {
  if (domain.empty()) throw Error(ErrorCode::DomainEmpty, "sampling domain is empty");
  const int m = domain.dim();
  std::vector<SamplePoint> out;
  out.reserve(static_cast<std::size_t>(std::max(plan.n_points, 0)));
  for (int k = 0; k < plan.n_points; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(plan.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(plan.seed >> 32), static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    SamplePoint sp;
    sp.index = static_cast<std::size_t>(k);
    sp.coords.resize(static_cast<std::size_t>(m));
    bool found = false;
    for (int attempt = 0; attempt < 100000 && !found; ++attempt) {
      for (std::size_t i = 0; i < sp.coords.size(); ++i) {
        const double width = domain.hi[i] - domain.lo[i];
        sp.coords[i] = domain.lo[i] + width * (0.005 + 0.99 * uniform01(rng));
      }
      if (!domain.ball_radius) {
        found = true;
      } else {
        double r2 = 0.0;
        for (double c : sp.coords) r2 += c * c;
        const double rmax = 0.995 * *domain.ball_radius;
        found = r2 < rmax * rmax;
      }
    }
    if (!found) throw Error(ErrorCode::DomainEmpty, "could not place a sample inside the domain");
    for (int t = 0; t < plan.n_vector_triples; ++t) {
      VectorTriple tr;
      tr.x = random_vector(rng, m);
      tr.y = random_vector(rng, m);
      tr.z = random_vector(rng, m);
      sp.triples.push_back(std::move(tr));
    }
    out.push_back(std::move(sp));
  }
  return out;
}

ValidationReport validate_structure(const ChartedManifold& m, const SamplePlan& plan) {
  if (m.domain().empty())
    throw Error(ErrorCode::DomainEmpty, "domain of " + m.name() + " is empty");
  const StructureKind kind = m.kind();
  const int n = m.dim();
  ValidationReport rep;
  rep.manifold = m.name();
  rep.kind = kind;
  rep.seed = plan.seed;
  rep.n_points = plan.n_points;
  rep.min_abs_det = std::numeric_limits<double>::infinity();
  const bool check_trace = kind == kProductRiemannian;
  if (check_trace) rep.trace = 0.0;

  double worst = -1.0;
  for (const SamplePoint& sp : draw_samples(m.domain(), SamplePlan{plan.seed, plan.n_points, 0})) {
    const SquareMatrix<double> g = m.metric_at(sp.coords);
    const SquareMatrix<double> J = m.structure_at(sp.coords);

    const double det = determinant(g);
    if (!(std::abs(det) > 1e-10))
      throw Error(ErrorCode::NearSingularMetric, "|det g| = " + std::to_string(std::abs(det)) +
                                                     " at point " + format_point(sp.coords) +
                                                     " of " + m.name());
    rep.min_abs_det = std::min(rep.min_abs_det, std::abs(det));

    const SquareMatrix<double> J2 = J * J;
    const SquareMatrix<double> JtgJ = J.transposed() * g * J;
    const SquareMatrix<double> Jtg = J.transposed() * g;
    const SquareMatrix<double> gJ = g * J;
    double local = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double sq = std::abs(J2(i, j) - (i == j ? kind.alpha : 0.0));
        const double iso = std::abs(JtgJ(i, j) - kind.epsilon * g(i, j));
        const double alt = std::abs(Jtg(i, j) - kind.product() * gJ(i, j));
        const double sym = std::abs(g(i, j) - g(j, i));
        rep.structure_square = std::max(rep.structure_square, sq);
        rep.isometry = std::max(rep.isometry, iso);
        rep.alternative_metric = std::max(rep.alternative_metric, alt);
        rep.metric_symmetry = std::max(rep.metric_symmetry, sym);
        local = std::max({local, sq, iso, alt, sym});
      }
    if (check_trace) {
      const double tr = std::abs(J.trace());
      rep.trace = std::max(*rep.trace, tr);
      local = std::max(local, tr);
    }
    if (local > worst) {
      worst = local;
      rep.worst_point = sp.coords;
    }
  }

  if (rep.structure_square >= kStructureTolerance) rep.flags.emplace_back("StructureSquareMismatch");
  if (rep.isometry >= kStructureTolerance) rep.flags.emplace_back("IsometryMismatch");
  if (rep.alternative_metric >= kStructureTolerance)
    rep.flags.emplace_back("AlternativeMetricMismatch");
  if (rep.metric_symmetry >= kStructureTolerance) rep.flags.emplace_back("MetricNotSymmetric");
  if (rep.trace && *rep.trace >= kStructureTolerance) rep.flags.emplace_back("TraceNonZero");
  rep.valid = rep.flags.empty();
  return rep;
}

}  // namespace jmetric
