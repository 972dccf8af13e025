#ifndef JMETRIC_OCTONION_HPP_
#define JMETRIC_OCTONION_HPP_

#include <array>
#include <cstddef>

namespace jmetric {

/// Octonions over a scalar type T (double or Dual).
///
/// Components c[0] (real) and c[1..7] for the imaginary units e1..e7.
/// Multiplication table: e_i^2 = -1 and, for each oriented Fano triple
/// (a, b, c) below, e_a e_b = e_c, e_b e_c = e_a, e_c e_a = e_b, with the
/// reversed products negated:
///
///   (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5)
///
/// The resulting algebra is alternative: (uu)v = u(uv) and (vu)u = v(uu).
inline constexpr std::array<std::array<int, 3>, 7> kFanoTriples{{
    {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}}};

namespace detail {

struct UnitProduct {
  int sign;
  int index;
};

// kUnitTable[i][j] = e_i * e_j as sign * e_index.
constexpr std::array<std::array<UnitProduct, 8>, 8> make_unit_table() {
  std::array<std::array<UnitProduct, 8>, 8> t{};
  for (int i = 0; i < 8; ++i) {
    t[0][i] = {1, i};
    t[i][0] = {1, i};
  }
  for (int i = 1; i < 8; ++i) t[i][i] = {-1, 0};
  for (const auto& tr : kFanoTriples) {
    const int a = tr[0], b = tr[1], c = tr[2];
    t[a][b] = {1, c};
    t[b][c] = {1, a};
    t[c][a] = {1, b};
    t[b][a] = {-1, c};
    t[c][b] = {-1, a};
    t[a][c] = {-1, b};
  }
  return t;
}

inline constexpr auto kUnitTable = make_unit_table();

}  // namespace detail

template <typename T>
struct Octonion {
  std::array<T, 8> c{};

  static Octonion imaginary(const std::array<T, 7>& v) {
    Octonion o;
    o.c[0] = T(0.0);
    for (std::size_t k = 0; k < 7; ++k) o.c[k + 1] = v[k];
    return o;
  }

  std::array<T, 7> imaginary_part() const {
    std::array<T, 7> v;
    for (std::size_t k = 0; k < 7; ++k) v[k] = c[k + 1];
    return v;
  }

  friend Octonion operator*(const Octonion& x, const Octonion& y) {
    Octonion r;
    for (auto& v : r.c) v = T(0.0);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        const auto& p = detail::kUnitTable[i][j];
        const T term = x.c[i] * y.c[j];
        if (p.sign > 0)
          r.c[static_cast<std::size_t>(p.index)] += term;
        else
          r.c[static_cast<std::size_t>(p.index)] -= term;
      }
    return r;
  }

  friend Octonion operator-(const Octonion& x, const Octonion& y) {
    Octonion r;
    for (std::size_t k = 0; k < 8; ++k) r.c[k] = x.c[k] - y.c[k];
    return r;
  }
};

}  // namespace jmetric

#endif  // JMETRIC_OCTONION_HPP_
