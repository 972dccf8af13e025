#ifndef JMETRIC_DUAL_HPP_
#define JMETRIC_DUAL_HPP_

#include <array>
#include <cmath>
#include <cstddef>

namespace jmetric {

/// Largest chart dimension the engine supports (2n with n <= 3).
inline constexpr int kMaxChartDim = 6;

/// First-order forward-mode dual number a + sum_i b_i eps_i with eps_i eps_j = 0.
///
/// The gradient has a fixed capacity of kMaxChartDim slots; a chart of
/// dimension m only ever seeds the first m of them, the rest stay zero.
struct Dual {
  double value = 0.0;
  std::array<double, kMaxChartDim> grad{};

  constexpr Dual() = default;
  constexpr Dual(double v) : value(v) {}  // NOLINT: constants promote implicitly

  /// Coordinate x_i at value v, seeded with unit derivative in slot i.
  static constexpr Dual variable(double v, int slot) {
    Dual d(v);
    d.grad[static_cast<std::size_t>(slot)] = 1.0;
    return d;
  }

  constexpr double d(int slot) const { return grad[static_cast<std::size_t>(slot)]; }

  constexpr Dual& operator+=(const Dual& o) {
    value += o.value;
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += o.grad[i];
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    value -= o.value;
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= o.grad[i];
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = grad[i] * o.value + value * o.grad[i];
    value *= o.value;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.value;
    const double q = value * inv;
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = (grad[i] - q * o.grad[i]) * inv;
    value = q;
    return *this;
  }
};

constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }

constexpr Dual operator-(Dual a) {
  a.value = -a.value;
  for (auto& g : a.grad) g = -g;
  return a;
}
constexpr Dual operator+(const Dual& a) { return a; }

namespace detail {
// f(a) with f'(a) given: chain rule on every slot.
constexpr Dual chain(const Dual& a, double f, double df) {
  Dual r(f);
  for (std::size_t i = 0; i < a.grad.size(); ++i) r.grad[i] = df * a.grad[i];
  return r;
}
}  // namespace detail

inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.value);
  return detail::chain(a, s, 0.5 / s);
}
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.value);
  return detail::chain(a, e, e);
}
inline Dual sin(const Dual& a) { return detail::chain(a, std::sin(a.value), std::cos(a.value)); }
inline Dual cos(const Dual& a) { return detail::chain(a, std::cos(a.value), -std::sin(a.value)); }

/// Integer power by repeated squaring; negative exponents go through 1/x.
template <typename T>
T ipow(T base, int exponent) {
  if (exponent < 0) return T(1.0) / ipow(base, -exponent);
  T result(1.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

constexpr double value_of(double x) { return x; }
constexpr double value_of(const Dual& x) { return x.value; }

}  // namespace jmetric

#endif  // JMETRIC_DUAL_HPP_
