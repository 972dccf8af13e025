#ifndef JMETRIC_TENSOR_HPP_
#define JMETRIC_TENSOR_HPP_

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "jmetric/square_matrix.hpp"

namespace jmetric {

enum class Variance { Upper, Lower };

/// Dense components of a tensor at a point, row-major over its slots.
///
/// Slot conventions used throughout the engine:
///   g_ij            (Lower, Lower)
///   J^i_j           (Upper, Lower)
///   d_k g_ij        (Lower, Lower, Lower)      derivative slot first
///   d_k J^i_j       (Lower, Upper, Lower)
///   Gamma^k_ij      (Upper, Lower, Lower)
///   (nabla_k J)^i_j (Lower, Upper, Lower)
///   T^i_jk, N^i_jk  (Upper, Lower, Lower)
class TensorValue {
 public:
  TensorValue() = default;
  /// Zero tensor of the given extents and slot variances.
  TensorValue(std::vector<int> dims, std::vector<Variance> variance);
  TensorValue(std::vector<int> dims, std::vector<Variance> variance, std::vector<double> data);

  /// Uniform-extent convenience: every slot has extent `extent`.
  static TensorValue zeros(int extent, std::vector<Variance> variance);
  static TensorValue from_matrix(const SquareMatrix<double>& m, Variance row, Variance col);

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int extent(int slot) const { return dims_[static_cast<std::size_t>(slot)]; }
  const std::vector<Variance>& variance() const { return variance_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  std::size_t offset(std::span<const int> index) const;

  template <typename... I>
  double& operator()(I... idx) {
    const std::array<int, sizeof...(I)> ix{static_cast<int>(idx)...};
    return data_[offset(ix)];
  }
  template <typename... I>
  double operator()(I... idx) const {
    const std::array<int, sizeof...(I)> ix{static_cast<int>(idx)...};
    return data_[offset(ix)];
  }

  /// Infinity norm over components.
  double max_abs() const;

  TensorValue& operator+=(const TensorValue& o);
  TensorValue& operator-=(const TensorValue& o);
  TensorValue& operator*=(double s);

  friend TensorValue operator+(TensorValue a, const TensorValue& b) { return a += b; }
  friend TensorValue operator-(TensorValue a, const TensorValue& b) { return a -= b; }
  friend TensorValue operator*(TensorValue a, double s) { return a *= s; }
  friend TensorValue operator*(double s, TensorValue a) { return a *= s; }

  bool operator==(const TensorValue&) const = default;

 private:
  std::vector<int> dims_;
  std::vector<Variance> variance_;
  std::vector<double> data_;
};

/// Einstein contraction of an upper slot against a lower slot.
/// Throws Error(SlotMismatch) unless the slots exist, differ in variance
/// as stated, and share an extent.
TensorValue contract(const TensorValue& t, int upper_slot, int lower_slot);

/// Tensor product; slots of `a` come first.
TensorValue outer(const TensorValue& a, const TensorValue& b);

/// Infinity norm of the component difference; shapes must match.
double max_abs_difference(const TensorValue& a, const TensorValue& b);

}  // namespace jmetric

#endif  // JMETRIC_TENSOR_HPP_
