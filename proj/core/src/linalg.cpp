#include "jmetric/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "jmetric/error.hpp"

namespace jmetric {

void LinearConstraintSystem::add_row(SparseRow row) {
  for (const auto& [idx, c] : row.terms)
    if (idx >= n_unknowns_)
      throw Error(ErrorCode::DegenerateSystem,
                  "row references unknown " + std::to_string(idx) + " of " +
                      std::to_string(n_unknowns_));
  rows_.push_back(std::move(row));
}

std::vector<double> LinearConstraintSystem::apply(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    double s = 0.0;
    for (const auto& [idx, c] : row.terms) s += c * x[idx];
    out.push_back(s);
  }
  return out;
}

NullSpace null_space(const LinearConstraintSystem& sys, double tol) {
  const auto n = static_cast<Eigen::Index>(sys.n_unknowns());
  if (n == 0) throw Error(ErrorCode::DegenerateSystem, "system has no unknowns");
  if (!(tol > 0.0)) throw Error(ErrorCode::DegenerateSystem, "null-space tolerance must be > 0");

  NullSpace out;
  if (sys.n_rows() == 0) {
    out.dimension = sys.n_unknowns();
    for (std::size_t k = 0; k < sys.n_unknowns(); ++k) {
      std::vector<double> e(sys.n_unknowns(), 0.0);
      e[k] = 1.0;
      out.basis.push_back(std::move(e));
    }
    return out;
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sys.n_rows()), n);
  for (std::size_t r = 0; r < sys.n_rows(); ++r)
    for (const auto& [idx, c] : sys.rows()[r].terms)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(idx)) += c;

  // BDCSVD returned non-null V columns on some structured W systems
  Eigen::JacobiSVD<Eigen::MatrixXd, Eigen::ColPivHouseholderQRPreconditioner> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (smax > 0.0 && sigma(i) > tol * smax) ++rank;

  out.rank = rank;
  out.dimension = sys.n_unknowns() - rank;
  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index col = static_cast<Eigen::Index>(rank); col < n; ++col) {
    std::vector<double> b(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) b[static_cast<std::size_t>(k)] = v(k, col);
    out.basis.push_back(std::move(b));
  }
  return out;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;
using ExactRow = std::vector<std::pair<std::size_t, Rational>>;

// row - factor * pivot, both sorted by column.
ExactRow subtract_scaled(const ExactRow& row, const Rational& factor, const ExactRow& pivot) {
  ExactRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -factor * pivot[j].second);
      ++j;
    } else {
      Rational v = row[i].second - factor * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::size_t exact_rank(const LinearConstraintSystem& sys) {
  if (sys.n_unknowns() == 0) throw Error(ErrorCode::DegenerateSystem, "system has no unknowns");

  // Echelon rows keyed by leading column, leading coefficient normalized to 1.
  std::map<std::size_t, ExactRow> pivots;
  for (const auto& sparse : sys.rows()) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [idx, c] : sparse.terms) {
      if (c != std::round(c) || std::abs(c) > 9.0e15)
        throw Error(ErrorCode::DegenerateSystem, "exact rank needs integer coefficients");
      acc[idx] += Rational(static_cast<long long>(c));
    }
    ExactRow row;
    for (auto& [idx, c] : acc)
      if (c != 0) row.emplace_back(idx, std::move(c));

    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        const Rational lead = row.front().second;
        for (auto& term : row) term.second /= lead;
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      const Rational factor = row.front().second;
      row = subtract_scaled(row, factor, it->second);
    }
  }
  return pivots.size();
}

struct MetricFactorization::Impl {
  Eigen::MatrixXd matrix;
  Eigen::FullPivLU<Eigen::MatrixXd> lu;
  Eigen::Index n = 0;
};

MetricFactorization::MetricFactorization(const TensorValue& g) : impl_(std::make_unique<Impl>()) {
  if (g.rank() != 2 || g.extent(0) != g.extent(1))
    throw Error(ErrorCode::SlotMismatch, "metric must be a square rank-2 tensor");
  const Eigen::Index n = g.extent(0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g(i, j);
  impl_->n = n;
  impl_->matrix = m;
  impl_->lu.compute(m);
  det_ = impl_->lu.determinant();
  if (!(std::abs(det_) > kSingularMetricDet)) {
    std::ostringstream os;
    os << "|det g| = " << std::abs(det_) << " <= " << kSingularMetricDet;
    throw Error(ErrorCode::NearSingularMetric, os.str());
  }
}

MetricFactorization::~MetricFactorization() = default;
MetricFactorization::MetricFactorization(MetricFactorization&&) noexcept = default;
MetricFactorization& MetricFactorization::operator=(MetricFactorization&&) noexcept = default;

std::vector<double> MetricFactorization::solve(std::span<const double> rhs) const {
  const Eigen::Index n = impl_->n;
  if (static_cast<Eigen::Index>(rhs.size()) != n)
    throw Error(ErrorCode::SlotMismatch, "right-hand side length does not match metric");
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) b(i) = rhs[static_cast<std::size_t>(i)];
  Eigen::VectorXd x = impl_->lu.solve(b);
  // one step of iterative refinement keeps the residual at rounding level
  x += impl_->lu.solve(b - impl_->matrix * x);
  return {x.data(), x.data() + n};
}

TensorValue MetricFactorization::inverse() const {
  const int n = static_cast<int>(impl_->n);
  Eigen::MatrixXd inv = impl_->lu.inverse();
  TensorValue out = TensorValue::zeros(n, {Variance::Upper, Variance::Upper});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = inv(i, j);
  return out;
}

std::vector<double> solve_symmetric(const TensorValue& g, std::span<const double> rhs) {
  return MetricFactorization(g).solve(rhs);
}

}  // namespace jmetric
