#include <gtest/gtest.h>

#include <random>

#include "jmetric/error.hpp"
#include "jmetric/fiber_algebra.hpp"
#include "oracles.hpp"

using namespace jmetric;

namespace {

// dimension of the null space through the oracle's integer rank
std::size_t oracle_dimension(const LinearConstraintSystem& sys) {
  return sys.n_unknowns() - oracle::integer_rank(oracle::dense_of(sys));
}

double form(const std::vector<double>& phi, int m, const std::vector<double>& x,
            const std::vector<double>& y, const std::vector<double>& z) {
  double s = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) s += phi[phi_index(m, i, j, k)] * x[i] * y[j] * z[k];
  return s;
}

std::vector<double> mat_vec(const SquareMatrix<double>& a, const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

SquareMatrix<double> random_unimodular(int m, std::mt19937_64& rng) {
  SquareMatrix<double> p = SquareMatrix<double>::identity(m);
  std::uniform_int_distribution<int> idx(0, m - 1), c(-2, 2);
  for (int step = 0; step < 3 * m; ++step) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    SquareMatrix<double> e = SquareMatrix<double>::identity(m);
    e(i, j) = c(rng);
    p = p * e;
  }
  return p;
}

}  // namespace

TEST(ModelFiber, StandardModelsAreExact) {
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(fiber_residual(ModelFiber::standard(kind, n)), 0.0);
}

TEST(ModelFiber, ConjugationNeedsUnimodular) {
  SquareMatrix<double> p = SquareMatrix<double>::identity(2);
  p(0, 0) = 2.0;
  EXPECT_THROW(ModelFiber::standard(kHermitian, 1).conjugated(p), std::invalid_argument);
}

TEST(Constraints, RowCounts) {
  const LinearConstraintSystem w = build_constraints(ModelFiber::standard(kHermitian, 1), kQueryW);
  EXPECT_EQ(w.n_unknowns(), 8u);
  EXPECT_EQ(w.n_rows(), 16u);
  const LinearConstraintSystem w1 =
      build_constraints(ModelFiber::standard(kHermitian, 1), kQueryW1);
  EXPECT_EQ(w1.n_rows(), 24u);
  const LinearConstraintSystem cz =
      build_constraints(ModelFiber::standard(kNorden, 2), kQueryCodazzi);
  EXPECT_EQ(cz.n_unknowns(), 64u);
  EXPECT_EQ(cz.n_rows(), 128u + 64u - 16u);
}

TEST(Constraints, UnsupportedDimension) {
  try {
    build_constraints(ModelFiber::standard(kNorden, 4), kQueryW);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDimension);
  }
}

TEST(Dimensions, AgreeWithIntegerOracles) {
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 3; ++n)
      for (SubspaceQuery q : {kQueryW, kQueryW1, kQueryCodazzi}) {
        SCOPED_TRACE(std::string(slug(kind)) + " n=" + std::to_string(n) + " " +
                     std::string(query_name(q)));
        const ModelFiber f = ModelFiber::standard(kind, n);
        const LinearConstraintSystem sys = build_constraints(f, q);
        const SubspaceDimension d = analyze_subspace(f, q);
        EXPECT_EQ(d.numeric_rank, d.exact_rank);
        EXPECT_EQ(d.dimension, oracle_dimension(sys));
        EXPECT_EQ(d.n_unknowns, sys.n_unknowns());
        EXPECT_EQ(d.n_rows, sys.n_rows());
        if (n <= 2)
          EXPECT_EQ(d.dimension, sys.n_unknowns() - oracle::bareiss_rank(oracle::dense_of(sys)));
      }
}

TEST(Dimensions, KnownValues) {
  EXPECT_EQ(subspace_dimension(ModelFiber::standard(kHermitian, 1), kQueryW), 0u);
  EXPECT_EQ(subspace_dimension(ModelFiber::standard(kNorden, 1), kQueryW), 2u);
  EXPECT_EQ(subspace_dimension(ModelFiber::standard(kHermitian, 3), kQueryW1), 2u);
  EXPECT_EQ(subspace_dimension(ModelFiber::standard(kParaHermitian, 3), kQueryW1), 2u);
  for (StructureKind kind : {kProductRiemannian, kNorden})
    for (int n = 1; n <= 3; ++n)
      EXPECT_EQ(subspace_dimension(ModelFiber::standard(kind, n), kQueryW1), 0u);
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 3; ++n)
      EXPECT_EQ(subspace_dimension(ModelFiber::standard(kind, n), kQueryCodazzi), 0u);
}

TEST(Dimensions, PolarizedW1IsEquivalent) {
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 3; ++n) {
      const ModelFiber f = ModelFiber::standard(kind, n);
      EXPECT_TRUE(equivalent_W1_definitions(f));
      EXPECT_EQ(oracle_dimension(build_w1_polarized(f)), subspace_dimension(f, kQueryW1));
    }
}

TEST(Dimensions, InvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(31);
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 2; ++n) {
      const ModelFiber f = ModelFiber::standard(kind, n);
      const ModelFiber g = f.conjugated(random_unimodular(2 * n, rng));
      EXPECT_EQ(fiber_residual(g), 0.0);
      for (SubspaceQuery q : {kQueryW, kQueryW1, kQueryCodazzi}) {
        const SubspaceDimension d = analyze_subspace(g, q);
        EXPECT_EQ(d.dimension, subspace_dimension(f, q));
        EXPECT_EQ(d.dimension, oracle_dimension(build_constraints(g, q)));
      }
    }
}

TEST(Basis, ElementsSatisfyDefiningIdentities) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (StructureKind kind : kAllKinds)
    for (int n = 2; n <= 3; ++n) {
      const ModelFiber f = ModelFiber::standard(kind, n);
      const int m = f.dim();
      const int ae = kind.product();
      const NullSpace w = null_space(build_constraints(f, kQueryW));
      const NullSpace w1 = null_space(build_constraints(f, kQueryW1));
      for (int t = 0; t < 20; ++t) {
        std::vector<double> x(m), y(m), z(m);
        for (int i = 0; i < m; ++i) {
          x[i] = u(rng);
          y[i] = u(rng);
          z[i] = u(rng);
        }
        for (const auto& phi : w.basis) {
          EXPECT_NEAR(form(phi, m, x, y, z), ae * form(phi, m, x, z, y), 1e-9);
          EXPECT_NEAR(form(phi, m, x, mat_vec(f.J0, y), z), -ae * form(phi, m, x, y, mat_vec(f.J0, z)),
                      1e-9);
        }
        for (const auto& phi : w1.basis) EXPECT_NEAR(form(phi, m, x, x, y), 0.0, 1e-9);
      }
    }
}

TEST(AlgebraTable, AllRows) {
  const std::vector<AlgebraTableRow> rows = algebra_table();
  ASSERT_EQ(rows.size(), 12u);
  for (const AlgebraTableRow& r : rows) {
    const bool complex_like = r.kind.alpha == -1 && r.kind.epsilon == 1;
    const bool para = r.kind.alpha == 1 && r.kind.epsilon == -1;
    const std::size_t expect_w1 = (complex_like || para) && r.n == 3 ? 2 : 0;
    EXPECT_EQ(r.w1, expect_w1) << slug(r.kind) << " n=" << r.n;
    EXPECT_EQ(r.codazzi, 0u);
    EXPECT_TRUE(r.w1_definitions_agree);
  }
}

TEST(Basis, NullSpaceAnnihilatesEverySystem) {
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 3; ++n)
      for (SubspaceQuery q : {kQueryW, kQueryW1, kQueryCodazzi}) {
        const LinearConstraintSystem sys = build_constraints(ModelFiber::standard(kind, n), q);
        const NullSpace ns = null_space(sys);
        ASSERT_EQ(ns.basis.size(), ns.dimension);
        for (const auto& b : ns.basis) {
          double worst = 0.0;
          for (double v : sys.apply(b)) worst = std::max(worst, std::abs(v));
          EXPECT_LT(worst, 1e-12) << slug(kind) << " n=" << n << " " << query_name(q);
        }
      }
}
