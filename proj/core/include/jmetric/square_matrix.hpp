#ifndef JMETRIC_SQUARE_MATRIX_HPP_
#define JMETRIC_SQUARE_MATRIX_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jmetric/dual.hpp"

namespace jmetric {

/// Small dense row-major square matrix over double or Dual.
///
/// Chart fields (metric g_ij, structure J^i_j) are produced as
/// SquareMatrix<Dual> so one evaluation yields values and first partials.
/// For J the row index is the upper (contravariant) index.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), T(0.0)) {}

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  int size() const { return n_; }

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  SquareMatrix transposed() const {
    SquareMatrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  SquareMatrix& operator*=(const T& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, const T& s) { return a *= s; }
  friend SquareMatrix operator*(const T& s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        for (int j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  T trace() const {
    T t(0.0);
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  int n_ = 0;
  std::vector<T> a_;
};

/// Gauss-Jordan inverse with partial pivoting on the value part.
/// Throws std::domain_error when a pivot magnitude drops below `singular_tol`.
template <typename T>
SquareMatrix<T> inverse(SquareMatrix<T> a, double singular_tol = 1e-14) {
  const int n = a.size();
  SquareMatrix<T> inv = SquareMatrix<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(value_of(a(r, col))) > std::abs(value_of(a(pivot, col)))) pivot = r;
    if (std::abs(value_of(a(pivot, col))) < singular_tol)
      throw std::domain_error("matrix is numerically singular");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    const T p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Determinant by partial-pivot elimination (value only).
template <typename T>
double determinant(const SquareMatrix<T>& m) {
  const int n = m.size();
  std::vector<double> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = value_of(m(i, j));
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(at(col, j), at(pivot, j));
      det = -det;
    }
    det *= at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = at(r, col) / at(col, col);
      for (int j = col; j < n; ++j) at(r, j) -= f * at(col, j);
    }
  }
  return det;
}

template <typename T>
SquareMatrix<double> values_of(const SquareMatrix<T>& m) {
  SquareMatrix<double> v(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) v(i, j) = value_of(m(i, j));
  return v;
}

}  // namespace jmetric

#endif  // JMETRIC_SQUARE_MATRIX_HPP_
