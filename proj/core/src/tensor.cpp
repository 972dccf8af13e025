#include "jmetric/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "jmetric/error.hpp"

namespace jmetric {

namespace {

std::size_t product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

void require_same_shape(const TensorValue& a, const TensorValue& b) {
  if (a.dims() != b.dims() || a.variance() != b.variance())
    throw Error(ErrorCode::SlotMismatch, "tensor shapes differ");
}

}  // namespace

TensorValue::TensorValue(std::vector<int> dims, std::vector<Variance> variance)
    : dims_(std::move(dims)), variance_(std::move(variance)), data_(product(dims_), 0.0) {
  if (dims_.size() != variance_.size())
    throw Error(ErrorCode::SlotMismatch, "dims and variance lists differ in length");
}

TensorValue::TensorValue(std::vector<int> dims, std::vector<Variance> variance,
                         std::vector<double> data)
    : dims_(std::move(dims)), variance_(std::move(variance)), data_(std::move(data)) {
  if (dims_.size() != variance_.size())
    throw Error(ErrorCode::SlotMismatch, "dims and variance lists differ in length");
  if (data_.size() != product(dims_))
    throw Error(ErrorCode::SlotMismatch, "data length " + std::to_string(data_.size()) +
                                             " does not match product of dims " +
                                             std::to_string(product(dims_)));
}

TensorValue TensorValue::zeros(int extent, std::vector<Variance> variance) {
  std::vector<int> dims(variance.size(), extent);
  return TensorValue(std::move(dims), std::move(variance));
}

TensorValue TensorValue::from_matrix(const SquareMatrix<double>& m, Variance row, Variance col) {
  TensorValue t = zeros(m.size(), {row, col});
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) t(i, j) = m(i, j);
  return t;
}

std::size_t TensorValue::offset(std::span<const int> index) const {
  std::size_t off = 0;
  for (std::size_t s = 0; s < dims_.size(); ++s)
    off = off * static_cast<std::size_t>(dims_[s]) + static_cast<std::size_t>(index[s]);
  return off;
}

double TensorValue::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

TensorValue& TensorValue::operator+=(const TensorValue& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

TensorValue& TensorValue::operator-=(const TensorValue& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

TensorValue& TensorValue::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

TensorValue contract(const TensorValue& t, int upper_slot, int lower_slot) {
  const int r = t.rank();
  if (upper_slot < 0 || upper_slot >= r || lower_slot < 0 || lower_slot >= r ||
      upper_slot == lower_slot)
    throw Error(ErrorCode::SlotMismatch, "contraction slots out of range");
  if (t.variance()[static_cast<std::size_t>(upper_slot)] != Variance::Upper ||
      t.variance()[static_cast<std::size_t>(lower_slot)] != Variance::Lower)
    throw Error(ErrorCode::SlotMismatch, "contraction needs one upper and one lower slot");
  if (t.extent(upper_slot) != t.extent(lower_slot))
    throw Error(ErrorCode::SlotMismatch, "contracted slots have different extents");

  std::vector<int> dims;
  std::vector<Variance> var;
  std::vector<int> kept;
  for (int s = 0; s < r; ++s) {
    if (s == upper_slot || s == lower_slot) continue;
    kept.push_back(s);
    dims.push_back(t.extent(s));
    var.push_back(t.variance()[static_cast<std::size_t>(s)]);
  }
  TensorValue out(dims, var);

  std::vector<int> full(static_cast<std::size_t>(r), 0);
  std::vector<int> free_ix(kept.size(), 0);
  const int m = t.extent(upper_slot);
  for (std::size_t o = 0; o < out.data().size(); ++o) {
    // decode o into free indices (row-major)
    std::size_t rem = o;
    for (std::size_t s = kept.size(); s-- > 0;) {
      free_ix[s] = static_cast<int>(rem % static_cast<std::size_t>(dims[s]));
      rem /= static_cast<std::size_t>(dims[s]);
    }
    for (std::size_t s = 0; s < kept.size(); ++s)
      full[static_cast<std::size_t>(kept[s])] = free_ix[s];
    double sum = 0.0;
    for (int a = 0; a < m; ++a) {
      full[static_cast<std::size_t>(upper_slot)] = a;
      full[static_cast<std::size_t>(lower_slot)] = a;
      sum += t.data()[t.offset(full)];
    }
    out.data()[o] = sum;
  }
  return out;
}

TensorValue outer(const TensorValue& a, const TensorValue& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<Variance> var = a.variance();
  var.insert(var.end(), b.variance().begin(), b.variance().end());
  std::vector<double> data;
  data.reserve(a.data().size() * b.data().size());
  for (double x : a.data())
    for (double y : b.data()) data.push_back(x * y);
  return TensorValue(std::move(dims), std::move(var), std::move(data));
}

double max_abs_difference(const TensorValue& a, const TensorValue& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace jmetric
