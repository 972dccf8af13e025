#include "jmetric/fiber_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jmetric/error.hpp"

namespace jmetric {

namespace {

constexpr double kContainmentTol = 1e-9;

void require_supported(const ModelFiber& fiber) {
  if (fiber.n < 1 || fiber.n > 3)
    throw Error(ErrorCode::UnsupportedDimension,
                "model fiber half-dimension must be 1, 2 or 3, got " + std::to_string(fiber.n));
}

void add_w_rows(const ModelFiber& fiber, LinearConstraintSystem& sys) {
  const int m = fiber.dim();
  const double ae = fiber.kind.product();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        SparseRow a;
        a.terms.emplace_back(phi_index(m, i, j, k), 1.0);
        a.terms.emplace_back(phi_index(m, i, k, j), -ae);
        sys.add_row(std::move(a));

        // Slot action on the lower index: phi(x, J0 e_j, z) = J0^q_j phi_iqk.
        SparseRow b;
        for (int q = 0; q < m; ++q) {
          if (fiber.J0(q, j) != 0.0) b.terms.emplace_back(phi_index(m, i, q, k), fiber.J0(q, j));
          if (fiber.J0(q, k) != 0.0)
            b.terms.emplace_back(phi_index(m, i, j, q), ae * fiber.J0(q, k));
        }
        sys.add_row(std::move(b));
      }
}

bool inside(const LinearConstraintSystem& sys, const std::vector<std::vector<double>>& basis) {
  for (const auto& v : basis)
    for (double r : sys.apply(v))
      if (std::abs(r) > kContainmentTol) return false;
  return true;
}

}  // namespace

ModelFiber ModelFiber::standard(StructureKind kind, int n) {
  ModelStructure s = model_structure(kind, n);
  return ModelFiber{n, kind, std::move(s.J0), std::move(s.inner)};
}

ModelFiber ModelFiber::conjugated(const SquareMatrix<double>& P) const {
  if (P.size() != dim() || std::abs(std::abs(determinant(P)) - 1.0) > 1e-9)
    throw std::invalid_argument("conjugating matrix must be unimodular of size " +
                                std::to_string(dim()));
  SquareMatrix<double> Pinv = inverse(P);
  // A unimodular integer matrix has an integer inverse; remove rounding.
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) Pinv(i, j) = std::round(Pinv(i, j));
  return ModelFiber{n, kind, Pinv * J0 * P, P.transposed() * inner * P};
}

double fiber_residual(const ModelFiber& f) {
  const int m = f.dim();
  const SquareMatrix<double> J2 = f.J0 * f.J0;
  const SquareMatrix<double> iso = f.J0.transposed() * f.inner * f.J0;
  double r = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      r = std::max(r, std::abs(J2(i, j) - (i == j ? f.kind.alpha : 0)));
      r = std::max(r, std::abs(iso(i, j) - f.kind.epsilon * f.inner(i, j)));
      r = std::max(r, std::abs(f.inner(i, j) - f.inner(j, i)));
    }
  const double det = std::abs(determinant(f.inner));
  if (det < 1.0) r = std::max(r, 1.0 - det);
  return r;
}

std::string_view query_name(SubspaceQuery q) {
  switch (q.extra) {
    case ExtraConstraint::None:
      return "W";
    case ExtraConstraint::AlternatingFirstTwo:
      return "W1";
    case ExtraConstraint::SymmetricFirstTwo:
      return "codazzi";
  }
  return "?";
}

LinearConstraintSystem build_constraints(const ModelFiber& fiber, SubspaceQuery q) {
  require_supported(fiber);
  const int m = fiber.dim();
  LinearConstraintSystem sys(static_cast<std::size_t>(m) * m * m);
  add_w_rows(fiber, sys);
  if (q.extra == ExtraConstraint::None) return sys;
  const double sign = q.extra == ExtraConstraint::AlternatingFirstTwo ? 1.0 : -1.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        if (i == j && sign < 0) continue;  // phi_iik - phi_iik is trivially zero
        SparseRow r;
        if (i == j) {
          r.terms.emplace_back(phi_index(m, i, i, k), 2.0);
        } else {
          r.terms.emplace_back(phi_index(m, i, j, k), 1.0);
          r.terms.emplace_back(phi_index(m, j, i, k), sign);
        }
        sys.add_row(std::move(r));
      }
  return sys;
}

LinearConstraintSystem build_w1_polarized(const ModelFiber& fiber) {
  require_supported(fiber);
  const int m = fiber.dim();
  LinearConstraintSystem sys(static_cast<std::size_t>(m) * m * m);
  add_w_rows(fiber, sys);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i) {
      sys.add_row(SparseRow{{{phi_index(m, i, i, k), 1.0}}});
      // phi(e_i + e_j, e_i + e_j, e_k) = 0
      for (int j = i + 1; j < m; ++j)
        sys.add_row(SparseRow{{{phi_index(m, i, i, k), 1.0},
                               {phi_index(m, i, j, k), 1.0},
                               {phi_index(m, j, i, k), 1.0},
                               {phi_index(m, j, j, k), 1.0}}});
    }
  return sys;
}

SubspaceDimension analyze_subspace(const ModelFiber& fiber, SubspaceQuery q) {
  const LinearConstraintSystem sys = build_constraints(fiber, q);
  const NullSpace ns = null_space(sys);
  SubspaceDimension out;
  out.n_unknowns = sys.n_unknowns();
  out.n_rows = sys.n_rows();
  out.numeric_rank = ns.rank;
  out.exact_rank = exact_rank(sys);
  out.dimension = ns.dimension;
  if (out.numeric_rank != out.exact_rank)
    throw Error(ErrorCode::ExactRankMismatch,
                "numeric rank " + std::to_string(out.numeric_rank) + " vs exact rank " +
                    std::to_string(out.exact_rank) + " for " + std::string(query_name(q)) +
                    " of kind " + std::string(slug(fiber.kind)) + ", n = " +
                    std::to_string(fiber.n));
  return out;
}

std::size_t subspace_dimension(const ModelFiber& fiber, SubspaceQuery q) {
  return analyze_subspace(fiber, q).dimension;
}

bool equivalent_W1_definitions(const ModelFiber& fiber) {
  const LinearConstraintSystem polarized = build_w1_polarized(fiber);
  const LinearConstraintSystem alternating = build_constraints(fiber, kQueryW1);
  const NullSpace a = null_space(polarized);
  const NullSpace b = null_space(alternating);
  return a.dimension == b.dimension && inside(alternating, a.basis) && inside(polarized, b.basis);
}

std::vector<AlgebraTableRow> algebra_table() {
  std::vector<AlgebraTableRow> rows;
  for (StructureKind kind : kAllKinds)
    for (int n = 1; n <= 3; ++n) {
      const ModelFiber f = ModelFiber::standard(kind, n);
      rows.push_back({kind, n, subspace_dimension(f, kQueryW), subspace_dimension(f, kQueryW1),
                      subspace_dimension(f, kQueryCodazzi), equivalent_W1_definitions(f)});
    }
  return rows;
}

}  // namespace jmetric
