#include "jmetric/catalog.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "jmetric/error.hpp"
#include "jmetric/octonion.hpp"

namespace jmetric {

namespace {

using DualMatrix = SquareMatrix<Dual>;

DualMatrix constant_field(const SquareMatrix<double>& m) {
  DualMatrix out(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out(i, j) = Dual(m(i, j));
  return out;
}

SquareMatrix<double> mat2(double a, double b, double c, double d) {
  SquareMatrix<double> m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

ChartedManifold flat(std::string name, StructureKind kind, const SquareMatrix<double>& g,
                     const SquareMatrix<double>& J) {
  const DualMatrix gd = constant_field(g);
  const DualMatrix Jd = constant_field(J);
  return ChartedManifold(
      std::move(name), kind, Domain::box(2, -1.0, 1.0),
      [gd](std::span<const Dual>) { return gd; }, [Jd](std::span<const Dual>) { return Jd; });
}

// ---------------------------------------------------------------------------
// S^6

ChartedManifold make_s6() {
  auto metric = [](std::span<const Dual> u) {
    const auto dp = s6::embed_jacobian<Dual>(u);
    DualMatrix g(6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        Dual s(0.0);
        for (std::size_t a = 0; a < 7; ++a)
          s += dp[static_cast<std::size_t>(i)][a] * dp[static_cast<std::size_t>(j)][a];
        g(i, j) = s;
      }
    return g;
  };
  auto structure = [](std::span<const Dual> u) {
    const auto p = s6::embed<Dual>(u);
    const auto dp = s6::embed_jacobian<Dual>(u);
    const Octonion<Dual> po = Octonion<Dual>::imaginary(p);
    const Dual denom = 1.0 + p[0];
    DualMatrix J(6);
    for (std::size_t j = 0; j < 6; ++j) {
      // ambient image p * (d/du_j); tangent to S^6 so the real part vanishes
      const auto v = (po * Octonion<Dual>::imaginary(dp[j])).imaginary_part();
      // differential of the stereographic projection q -> q_{2..7} / (1 + q_1)
      for (std::size_t a = 0; a < 6; ++a)
        J(static_cast<int>(a), static_cast<int>(j)) = v[a + 1] / denom - p[a + 1] * v[0] / (denom * denom);
    }
    return J;
  };
  return ChartedManifold("s6-nearly-kahler", kHermitian, Domain::ball(6, 2.0), metric, structure);
}

// ---------------------------------------------------------------------------
// Seeded polynomial constructions (dimension 4, domain [-1, 1]^4)

constexpr int kPolyDim = 4;
constexpr int kMonomials = 1 + kPolyDim + kPolyDim * (kPolyDim + 1) / 2;  // 15

// Quadratic polynomial with coefficients scaled so |p(x)| <= 1 on [-1, 1]^4.
struct QuadraticPoly {
  std::array<double, kMonomials> c{};

  static QuadraticPoly random(std::mt19937_64& rng) {
    QuadraticPoly p;
    for (double& v : p.c) v = (2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0) / kMonomials;
    return p;
  }

  template <typename T>
  T operator()(std::span<const T> x) const {
    T s(c[0]);
    std::size_t k = 1;
    for (int i = 0; i < kPolyDim; ++i) s += c[k++] * x[static_cast<std::size_t>(i)];
    for (int i = 0; i < kPolyDim; ++i)
      for (int j = i; j < kPolyDim; ++j)
        s += c[k++] * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    return s;
  }
};

using PolyMatrix = std::array<QuadraticPoly, kPolyDim * kPolyDim>;

double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

std::mt19937_64 construction_rng(std::uint64_t seed, int attempt, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(attempt),
                    salt};
  return std::mt19937_64(seq);
}

// h(x) = H0 + 0.1 S(x) with H0 = M M^T + 0.5 Id and S symmetric, |S_ab| <= 1:
// the smallest eigenvalue of H0 is >= 0.5 and the perturbation norm <= 0.4.
struct SeededInnerProduct {
  SquareMatrix<double> base{kPolyDim};
  PolyMatrix perturbation{};

  static SeededInnerProduct random(std::mt19937_64& rng) {
    SeededInnerProduct h;
    SquareMatrix<double> m(kPolyDim);
    for (int i = 0; i < kPolyDim; ++i)
      for (int j = 0; j < kPolyDim; ++j) m(i, j) = uniform_pm1(rng);
    h.base = m * m.transposed() + 0.5 * SquareMatrix<double>::identity(kPolyDim);
    for (auto& p : h.perturbation) p = QuadraticPoly::random(rng);
    return h;
  }

  DualMatrix operator()(std::span<const Dual> x) const {
    DualMatrix out(kPolyDim);
    for (int i = 0; i < kPolyDim; ++i)
      for (int j = i; j < kPolyDim; ++j) {
        const Dual v = base(i, j) + 0.1 * perturbation[static_cast<std::size_t>(i * kPolyDim + j)](x);
        out(i, j) = v;
        out(j, i) = v;
      }
    return out;
  }
};

// g = h + h(J., J.) for epsilon = +1, g = h - h(J., J.) for epsilon = -1.
// Either sign makes J an isometry / anti-isometry of g identically.
DualMatrix polarize(const DualMatrix& h, const DualMatrix& J, int epsilon) {
  const DualMatrix pulled = J.transposed() * h * J;
  return epsilon == 1 ? h + pulled : h - pulled;
}

using StructureBuilder = std::function<DualMatrix(std::span<const Dual>)>;

// Deterministic check set: the 3^4 grid on [-0.995, 0.995]^4 plus 64 seeded points.
std::vector<std::vector<double>> construction_check_points() {
  std::vector<std::vector<double>> pts;
  const double levels[3] = {-0.995, 0.0, 0.995};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) pts.push_back({levels[a], levels[b], levels[c], levels[d]});
  std::mt19937_64 rng(0x5eed);
  for (int k = 0; k < 64; ++k) {
    std::vector<double> p(kPolyDim);
    for (double& v : p) v = 0.995 * uniform_pm1(rng);
    pts.push_back(std::move(p));
  }
  return pts;
}

bool nondegenerate(const ChartedManifold::Field& metric) {
  static const auto points = construction_check_points();
  for (const auto& p : points) {
    const std::vector<Dual> x(p.begin(), p.end());
    if (!(std::abs(determinant(metric(x))) >= kConstructionMinDet)) return false;
  }
  return true;
}

ChartedManifold make_random(StructureKind kind, std::uint64_t seed) {
  const SquareMatrix<double> J0 = model_structure(kind, kPolyDim / 2).J0;
  for (int attempt = 0; attempt < kConstructionRetries; ++attempt) {
    auto rng = construction_rng(seed, attempt, 0xa11ce);
    auto perturb = std::make_shared<PolyMatrix>();
    for (auto& p : *perturb) p = QuadraticPoly::random(rng);
    auto h = std::make_shared<SeededInnerProduct>(SeededInnerProduct::random(rng));

    ChartedManifold::Field structure = [J0, perturb](std::span<const Dual> x) {
      DualMatrix A = DualMatrix::identity(kPolyDim);
      for (int i = 0; i < kPolyDim; ++i)
        for (int j = 0; j < kPolyDim; ++j)
          A(i, j) += 0.1 * (*perturb)[static_cast<std::size_t>(i * kPolyDim + j)](x);
      return A * constant_field(J0) * inverse(A);
    };
    const int eps = kind.epsilon;
    ChartedManifold::Field metric = [h, structure, eps](std::span<const Dual> x) {
      return polarize((*h)(x), structure(x), eps);
    };
    if (nondegenerate(metric))
      return ChartedManifold("random-" + std::string(slug(kind)) + "-" + std::to_string(seed), kind,
                             Domain::box(kPolyDim, -1.0, 1.0), metric, structure);
  }
  throw Error(ErrorCode::DegenerateConstruction,
              "random-" + std::string(slug(kind)) + "-" + std::to_string(seed) +
                  ": no non-degenerate metric after " + std::to_string(kConstructionRetries) +
                  " attempts");
}

// phi(x) = x + 0.1 q(x) with
//   q = (x2^2, x3 x4, x1^2, x1 x2)
// whose Jacobian Id + 0.1 L(x) stays invertible on [-1, 1]^4.
template <typename T>
SquareMatrix<T> diffeomorphism_jacobian(std::span<const T> x) {
  SquareMatrix<T> D = SquareMatrix<T>::identity(kPolyDim);
  D(0, 1) = 0.2 * x[1];
  D(1, 2) = 0.1 * x[3];
  D(1, 3) = 0.1 * x[2];
  D(2, 0) = 0.2 * x[0];
  D(3, 0) = 0.1 * x[1];
  D(3, 1) = 0.1 * x[0];
  return D;
}

ChartedManifold make_pullback(StructureKind kind) {
  const SquareMatrix<double> J0 = model_structure(kind, kPolyDim / 2).J0;
  // phi^* J0 = (D phi)^{-1} J0 (D phi): integrable because J0 is constant.
  ChartedManifold::Field structure = [J0](std::span<const Dual> x) {
    const DualMatrix D = diffeomorphism_jacobian<Dual>(x);
    return inverse(D) * constant_field(J0) * D;
  };
  const int eps = kind.epsilon;
  for (int attempt = 0; attempt < kConstructionRetries; ++attempt) {
    auto rng = construction_rng(2718, attempt, 0xb0b);
    auto h = std::make_shared<SeededInnerProduct>(SeededInnerProduct::random(rng));
    ChartedManifold::Field metric = [h, structure, eps](std::span<const Dual> x) {
      return polarize((*h)(x), structure(x), eps);
    };
    if (nondegenerate(metric))
      return ChartedManifold("pullback-integrable-" + std::string(slug(kind)), kind,
                             Domain::box(kPolyDim, -1.0, 1.0), metric, structure);
  }
  throw Error(ErrorCode::DegenerateConstruction,
              "pullback-integrable-" + std::string(slug(kind)) + ": no non-degenerate metric");
}

[[noreturn]] void unknown(std::string_view name) {
  throw Error(ErrorCode::UnknownCatalogName, "unknown catalog entry '" + std::string(name) + "'");
}

}  // namespace

namespace s6 {

template <typename T>
std::array<T, 7> embed(std::span<const T> u) {
  T r2(0.0);
  for (std::size_t a = 0; a < 6; ++a) r2 += u[a] * u[a];
  const T s = 1.0 + r2;
  std::array<T, 7> p;
  p[0] = (1.0 - r2) / s;
  for (std::size_t a = 0; a < 6; ++a) p[a + 1] = 2.0 * u[a] / s;
  return p;
}

template <typename T>
std::array<std::array<T, 7>, 6> embed_jacobian(std::span<const T> u) {
  T r2(0.0);
  for (std::size_t a = 0; a < 6; ++a) r2 += u[a] * u[a];
  const T s = 1.0 + r2;
  const T s2 = s * s;
  std::array<std::array<T, 7>, 6> dp;
  for (std::size_t j = 0; j < 6; ++j) {
    dp[j][0] = -4.0 * u[j] / s2;
    for (std::size_t a = 0; a < 6; ++a) {
      T v = -4.0 * u[a] * u[j] / s2;
      if (a == j) v += 2.0 / s;
      dp[j][a + 1] = v;
    }
  }
  return dp;
}

template std::array<double, 7> embed<double>(std::span<const double>);
template std::array<Dual, 7> embed<Dual>(std::span<const Dual>);
template std::array<std::array<double, 7>, 6> embed_jacobian<double>(std::span<const double>);
template std::array<std::array<Dual, 7>, 6> embed_jacobian<Dual>(std::span<const Dual>);

}  // namespace s6

ChartedManifold catalog(std::string_view name) {
  if (name == "flat-kahler")
    return flat("flat-kahler", kHermitian, mat2(1, 0, 0, 1), mat2(0, -1, 1, 0));
  if (name == "flat-para-kahler")
    return flat("flat-para-kahler", kParaHermitian, mat2(0, 1, 1, 0), mat2(1, 0, 0, -1));
  if (name == "flat-anti-kahler")
    return flat("flat-anti-kahler", kNorden, mat2(1, 0, 0, -1), mat2(0, -1, 1, 0));
  if (name == "flat-product-riemannian")
    return flat("flat-product-riemannian", kProductRiemannian, mat2(1, 0, 0, 1),
                mat2(1, 0, 0, -1));
  if (name == "s6-nearly-kahler") return make_s6();

  constexpr std::string_view kPullback = "pullback-integrable-";
  if (name.starts_with(kPullback)) {
    const auto kind = kind_from_slug(name.substr(kPullback.size()));
    if (!kind) unknown(name);
    return make_pullback(*kind);
  }

  constexpr std::string_view kRandom = "random-";
  if (name.starts_with(kRandom)) {
    const std::string_view rest = name.substr(kRandom.size());
    const auto dash = rest.rfind('-');
    if (dash == std::string_view::npos) unknown(name);
    const auto kind = kind_from_slug(rest.substr(0, dash));
    const std::string_view digits = rest.substr(dash + 1);
    std::uint64_t seed = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (!kind || digits.empty() || res.ec != std::errc() ||
        res.ptr != digits.data() + digits.size())
      unknown(name);
    return make_random(*kind, seed);
  }
  unknown(name);
}

const std::vector<std::string>& standard_catalog_names() {
  static const std::vector<std::string> names{
      "flat-kahler",
      "flat-para-kahler",
      "flat-anti-kahler",
      "flat-product-riemannian",
      "s6-nearly-kahler",
      "pullback-integrable-hermitian",
      "pullback-integrable-product-riemannian",
      "pullback-integrable-norden",
      "pullback-integrable-para-hermitian",
      "random-hermitian-13",
      "random-product-riemannian-7",
      "random-norden-42",
      "random-para-hermitian-5",
  };
  return names;
}

}  // namespace jmetric
