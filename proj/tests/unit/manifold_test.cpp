#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "jmetric/catalog.hpp"
#include "jmetric/error.hpp"
#include "jmetric/expression.hpp"
#include "jmetric/manifold.hpp"
#include "jmetric/manifold_config.hpp"
#include "jmetric/octonion.hpp"
#include "oracles.hpp"

using namespace jmetric;

namespace {

const std::string kData = JMETRIC_TEST_DATA_DIR;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no jmetric::Error thrown";
  return ErrorCode::SlotMismatch;
}

ChartedManifold constant_manifold(StructureKind kind, const SquareMatrix<double>& g,
                                  const SquareMatrix<double>& J) {
  auto lift = [](const SquareMatrix<double>& a) {
    SquareMatrix<Dual> d(a.size());
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < a.size(); ++j) d(i, j) = a(i, j);
    return d;
  };
  return ChartedManifold("test", kind, Domain::box(2, -1, 1),
                         [g = lift(g)](std::span<const Dual>) { return g; },
                         [J = lift(J)](std::span<const Dual>) { return J; });
}

}  // namespace

TEST(Catalog, FlatEntriesHaveZeroDerivatives) {
  const ChartedManifold m = catalog("flat-kahler");
  const LocalJet jet = m.eval_with_derivatives(std::vector<double>{0.3, -0.2});
  EXPECT_EQ(jet.dg.max_abs(), 0.0);
  EXPECT_EQ(jet.dJ.max_abs(), 0.0);
  const ValidationReport v = validate_structure(m, SamplePlan{});
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.structure_square, 0.0);
  EXPECT_EQ(v.isometry, 0.0);
  EXPECT_EQ(v.alternative_metric, 0.0);
}

TEST(Catalog, EveryStandardEntryValidates) {
  for (const std::string& name : standard_catalog_names()) {
    SCOPED_TRACE(name);
    const ValidationReport v = validate_structure(catalog(name), SamplePlan{0, 50, 0});
    EXPECT_TRUE(v.valid);
    EXPECT_TRUE(v.flags.empty());
    EXPECT_LT(v.structure_square, 1e-8);
    EXPECT_LT(v.isometry, 1e-8);
    EXPECT_LT(v.alternative_metric, 1e-8);
    EXPECT_LT(v.metric_symmetry, 1e-8);
    EXPECT_GT(v.min_abs_det, 1e-10);
    EXPECT_EQ(v.trace.has_value(), catalog(name).kind() == kProductRiemannian);
  }
}

TEST(Catalog, PolarizedMetricsAreCompatibleToRounding) {
  for (const char* name : {"random-hermitian-13", "random-product-riemannian-7", "random-norden-42",
                           "random-para-hermitian-5", "random-norden-1234"}) {
    SCOPED_TRACE(name);
    const ValidationReport v = validate_structure(catalog(name), SamplePlan{3, 50, 0});
    EXPECT_LT(v.isometry, 1e-10);
    EXPECT_LT(v.structure_square, 1e-10);
  }
}

TEST(Catalog, UnknownNames) {
  for (const char* name : {"flat", "random-norden", "random-norden-x", "random-foo-3",
                           "pullback-integrable-", "s7"})
    EXPECT_EQ(code_of([&] { catalog(name); }), ErrorCode::UnknownCatalogName) << name;
}

TEST(Catalog, NordenEntryHasNeutralSignature) {
  const ChartedManifold m = catalog("random-norden-42");
  for (const SamplePoint& sp : draw_samples(m.domain(), SamplePlan{0, 50, 0})) {
    const SquareMatrix<double> g = m.metric_at(sp.coords);
    Eigen::Matrix4d a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = g(i, j);
    const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(a).eigenvalues();
    int pos = 0, neg = 0;
    for (int i = 0; i < 4; ++i) (ev(i) > 0 ? pos : neg)++;
    EXPECT_EQ(pos, 2);
    EXPECT_EQ(neg, 2);
  }
}

TEST(S6, StructureAtChartOrigin) {
  const ChartedManifold m = catalog("s6-nearly-kahler");
  const std::vector<double> origin(6, 0.0);
  const SquareMatrix<double> J = m.structure_at(origin);
  const SquareMatrix<double> g = m.metric_at(origin);
  const SquareMatrix<double> J2 = J * J;
  const SquareMatrix<double> iso = J.transposed() * g * J;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      EXPECT_NEAR(J2(i, j), i == j ? -1.0 : 0.0, 1e-10);
      EXPECT_NEAR(iso(i, j), g(i, j), 1e-10);
    }
  const LocalJet jet = m.eval_with_derivatives(origin);
  EXPECT_GT(jet.dJ.max_abs(), 0.1);
}

TEST(S6, MatchesAmbientCrossProduct) {
  const ChartedManifold m = catalog("s6-nearly-kahler");
  for (const SamplePoint& sp : draw_samples(m.domain(), SamplePlan{4, 20, 0})) {
    const auto p = oracle::sphere_point(sp.coords);
    // tangent images of d/du_j by central differences of the direct formula
    std::array<std::array<double, 7>, 6> dp{};
    for (std::size_t j = 0; j < 6; ++j) {
      std::vector<double> a = sp.coords, b = sp.coords;
      a[j] += 1e-6;
      b[j] -= 1e-6;
      const auto pa = oracle::sphere_point(a), pb = oracle::sphere_point(b);
      for (std::size_t k = 0; k < 7; ++k) dp[j][k] = (pa[k] - pb[k]) / 2e-6;
    }
    const SquareMatrix<double> J = m.structure_at(sp.coords);
    for (std::size_t j = 0; j < 6; ++j) {
      const auto expected = oracle::cross7(p, dp[j]);
      for (std::size_t k = 0; k < 7; ++k) {
        double got = 0.0;
        for (std::size_t i = 0; i < 6; ++i) got += J(static_cast<int>(i), static_cast<int>(j)) * dp[i][k];
        EXPECT_NEAR(got, expected[k], 1e-6);
      }
    }
  }
}

TEST(S6, EmbeddingLiesOnUnitSphere) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x(6);
    for (double& c : x) c = u(rng);
    const auto p = s6::embed<double>(x);
    const auto q = oracle::sphere_point(x);
    double n2 = 0.0;
    for (std::size_t k = 0; k < 7; ++k) {
      n2 += p[k] * p[k];
      EXPECT_NEAR(p[k], q[k], 1e-15);
    }
    EXPECT_NEAR(n2, 1.0, 1e-14);
  }
}

TEST(Octonion, TableIsAlternative) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    Octonion<double> a, b;
    for (auto& c : a.c) c = u(rng);
    for (auto& c : b.c) c = u(rng);
    const Octonion<double> left = (a * a) * b - a * (a * b);
    const Octonion<double> right = (b * a) * a - b * (a * a);
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_NEAR(left.c[k], 0.0, 1e-13);
      EXPECT_NEAR(right.c[k], 0.0, 1e-13);
    }
  }
}

TEST(Octonion, ImaginaryProductIsCrossProduct) {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::array<double, 7> x, y;
    for (double& c : x) c = u(rng);
    for (double& c : y) c = u(rng);
    const auto prod = Octonion<double>::imaginary(x) * Octonion<double>::imaginary(y);
    const auto cross = oracle::cross7(x, y);
    double dot = 0.0;
    for (std::size_t k = 0; k < 7; ++k) {
      dot += x[k] * y[k];
      EXPECT_NEAR(prod.c[k + 1], cross[k], 1e-14);
    }
    EXPECT_NEAR(prod.c[0], -dot, 1e-14);
  }
}

TEST(Validate, TraceNonZeroFlagged) {
  const ChartedManifold m = constant_manifold(kProductRiemannian, SquareMatrix<double>::identity(2),
                                              SquareMatrix<double>::identity(2));
  const ValidationReport v = validate_structure(m, SamplePlan{0, 5, 0});
  EXPECT_FALSE(v.valid);
  ASSERT_TRUE(v.trace.has_value());
  EXPECT_EQ(*v.trace, 2.0);
  EXPECT_NE(std::find(v.flags.begin(), v.flags.end(), "TraceNonZero"), v.flags.end());
}

TEST(Validate, WrongAlphaGivesResidualTwo) {
  SquareMatrix<double> rot(2);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  const ChartedManifold m = constant_manifold(kParaHermitian, SquareMatrix<double>::identity(2), rot);
  const ValidationReport v = validate_structure(m, SamplePlan{0, 5, 0});
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.structure_square, 2.0);
  EXPECT_NE(std::find(v.flags.begin(), v.flags.end(), "StructureSquareMismatch"), v.flags.end());
}

TEST(Validate, SingularMetricNamesPoint) {
  const ChartedManifold m = constant_manifold(kHermitian, SquareMatrix<double>(2),
                                              SquareMatrix<double>::identity(2));
  try {
    validate_structure(m, SamplePlan{0, 3, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NearSingularMetric);
    EXPECT_NE(std::string(e.what()).find("point"), std::string::npos);
  }
}

TEST(Validate, EmptyDomain) {
  const ChartedManifold m = catalog("flat-kahler").restricted_to(Domain::box(2, 1.0, 1.0));
  EXPECT_EQ(code_of([&] { validate_structure(m, SamplePlan{}); }), ErrorCode::DomainEmpty);
}

TEST(Manifold, PointOutsideDomain) {
  const ChartedManifold m = catalog("flat-kahler");
  EXPECT_EQ(code_of([&] { m.eval_with_derivatives(std::vector<double>{1.0, 0.0}); }),
            ErrorCode::PointOutsideDomain);
  const ChartedManifold s6 = catalog("s6-nearly-kahler");
  EXPECT_EQ(code_of([&] { s6.eval_with_derivatives(std::vector<double>{1.9, 1.9, 0, 0, 0, 0}); }),
            ErrorCode::PointOutsideDomain);
}

TEST(Manifold, DimensionAboveSixIsUnsupported) {
  EXPECT_EQ(code_of([] {
              ChartedManifold("big", kHermitian, Domain::box(8, -1, 1), nullptr, nullptr);
            }),
            ErrorCode::UnsupportedDimension);
}

TEST(Sampling, DeterministicInsideAndPrefixStable) {
  const Domain d = Domain::ball(6, 2.0);
  const auto a = draw_samples(d, SamplePlan{42, 30, 5});
  const auto b = draw_samples(d, SamplePlan{42, 30, 5});
  const auto prefix = draw_samples(d, SamplePlan{42, 10, 5});
  const auto other = draw_samples(d, SamplePlan{43, 30, 5});
  ASSERT_EQ(a.size(), 30u);
  EXPECT_NE(a[0].coords, other[0].coords);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].coords, b[k].coords);
    if (k < prefix.size()) EXPECT_EQ(a[k].coords, prefix[k].coords);
    EXPECT_TRUE(d.contains_strictly(a[k].coords));
    for (const VectorTriple& t : a[k].triples)
      for (const auto* v : {&t.x, &t.y, &t.z}) {
        double inf = 0.0;
        for (double c : *v) inf = std::max(inf, std::abs(c));
        EXPECT_GE(inf, 0.1);
        EXPECT_LE(inf, 1.0);
      }
  }
}

TEST(Config, PolarMetricDerivatives) {
  const ChartedManifold m = load_manifold_config(kData + "/polar.json");
  EXPECT_EQ(m.name(), "polar-plane");
  const std::vector<double> p{2.0, 1.0};
  const LocalJet jet = m.eval_with_derivatives(p);
  EXPECT_DOUBLE_EQ(jet.dg(0, 1, 1), 4.0);
  const auto fd =
      oracle::central_partials([&](const std::vector<double>& q) { return m.metric_at(q); }, p);
  EXPECT_NEAR(jet.dg(0, 1, 1), fd[0][1][1], 1e-5 * 4.0);
  const auto fdJ =
      oracle::central_partials([&](const std::vector<double>& q) { return m.structure_at(q); }, p);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(jet.dJ(k, i, j), fdJ[k][i][j], 1e-6);
  EXPECT_TRUE(validate_structure(m, SamplePlan{}).valid);
}

TEST(Config, ErrorsCarryLineAndColumn) {
  try {
    load_manifold_config(kData + "/bad_expression.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigParse);
    EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
  }
  try {
    parse_manifold_config("{\n  \"kind\": {\"alpha\": 2, \"epsilon\": 1}\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  try {
    parse_manifold_config("{\n  \"dim\": 2,\n  oops\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, FlatArraysAndNumbers) {
  const ChartedManifold m = parse_manifold_config(R"({
    "kind": {"alpha": 1, "epsilon": -1}, "dim": 2,
    "domain": {"lo": [-1, -1], "hi": [1, 1]},
    "metric": [0, 1, 1, 0],
    "structure": [1, 0, 0, -1]
  })");
  EXPECT_EQ(m.kind(), kParaHermitian);
  EXPECT_TRUE(validate_structure(m, SamplePlan{}).valid);
}

TEST(Expression, EvaluatesAndDifferentiates) {
  const Expression e = Expression::parse("(1 + x1*x2)^2 / x2 - 3*x1^-1", 2);
  const std::vector<double> x{2.0, 0.5};
  const double v = e.evaluate(x);
  EXPECT_NEAR(v, 4.0 / 0.5 - 1.5, 1e-14);
  const std::vector<Dual> xd{Dual::variable(2.0, 0), Dual::variable(0.5, 1)};
  const Dual d = e.evaluate(xd);
  // d/dx1: 2(1+x1x2)x2/x2 + 3/x1^2 ; d/dx2: (2(1+x1x2)x1 x2 - (1+x1x2)^2)/x2^2
  EXPECT_NEAR(d.d(0), 2 * 2.0 + 3.0 / 4.0, 1e-13);
  EXPECT_NEAR(d.d(1), (2 * 2.0 * 2.0 * 0.5 - 4.0) / 0.25, 1e-13);
}

TEST(Expression, SyntaxErrorsReportColumn) {
  try {
    Expression::parse("x1 + * 2", 2);
    FAIL();
  } catch (const ExpressionError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
  EXPECT_THROW(Expression::parse("x3", 2), ExpressionError);
  EXPECT_THROW(Expression::parse("x1^x2", 2), ExpressionError);
  EXPECT_THROW(Expression::parse("(x1", 2), ExpressionError);
}
