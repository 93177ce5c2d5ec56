#pragma once

// Integral isometries of the rank-3 lattice of the Hilbert square: the
// three involution generators, the natural automorphism class g*, the
// conjugated involution family, trace classification in SO(2,1), and
// exact fixed-point computation.

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hilbsq/errors.hpp"
#include "hilbsq/lattice.hpp"
#include "hilbsq/quad.hpp"

namespace hilbsq {

using Vec3 = std::array<BigInt, 3>;

// Row-major 3x3 integer matrix acting on column vectors (x, lam, y).
struct Mat3 {
  std::array<BigInt, 9> m{};

  static Mat3 identity() {
    Mat3 out;
    out.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return out;
  }
  static Mat3 from_rows(std::array<std::array<long, 3>, 3> rows) {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.m[3 * i + j] = rows[i][j];
    return out;
  }

  const BigInt& at(int i, int j) const { return m[3 * i + j]; }
  BigInt& at(int i, int j) { return m[3 * i + j]; }

  BigInt trace() const { return m[0] + m[4] + m[8]; }

  BigInt det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  Mat3 transposed() const {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.at(i, j) = at(j, i);
    return out;
  }

  // Adjugate: M * adj(M) = det(M) * I. Inverse of a unimodular matrix.
  Mat3 adjugate() const {
    Mat3 out;
    auto minor = [&](int r0, int r1, int c0, int c1) {
      return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
    };
    out.at(0, 0) = minor(1, 2, 1, 2);
    out.at(0, 1) = -minor(0, 2, 1, 2);
    out.at(0, 2) = minor(0, 1, 1, 2);
    out.at(1, 0) = -minor(1, 2, 0, 2);
    out.at(1, 1) = minor(0, 2, 0, 2);
    out.at(1, 2) = -minor(0, 1, 0, 2);
    out.at(2, 0) = minor(1, 2, 0, 1);
    out.at(2, 1) = -minor(0, 2, 0, 1);
    out.at(2, 2) = minor(0, 1, 0, 1);
    return out;
  }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        BigInt acc = 0;
        for (int k = 0; k < 3; ++k) acc += a.at(i, k) * b.at(k, j);
        out.at(i, j) = acc;
      }
    return out;
  }

  Vec3 apply(const Vec3& v) const {
    Vec3 out;
    for (int i = 0; i < 3; ++i)
      out[i] = at(i, 0) * v[0] + at(i, 1) * v[1] + at(i, 2) * v[2];
    return out;
  }

  HilbClass apply(const HilbClass& c) const {
    const Vec3 v = apply(Vec3{c.x, c.lam, c.y});
    return HilbClass(v[0], v[1], v[2]);
  }

  friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }
  friend bool operator!=(const Mat3& a, const Mat3& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 3; ++i) {
      os << "[" << at(i, 0) << "," << at(i, 1) << "," << at(i, 2) << "]";
      if (i < 2) os << ",";
    }
    os << "]";
    return os.str();
  }
};

inline Mat3 gram_matrix() {
  return Mat3::from_rows({{{4, 0, 2}, {0, -2, 0}, {2, 0, -4}}});
}

inline bool preserves_gram(const Mat3& m) {
  const Mat3 g = gram_matrix();
  return m.transposed() * g * m == g;
}

// True when the matrix keeps the positive cone on its own side, probed on
// the canonical polarization (enough for a Gram isometry).
inline bool preserves_cone(const Mat3& m) {
  const HilbClass h = canonical_polarization();
  return pair(m.apply(h), h) > 0;
}

inline Mat3 power(Mat3 base, long e) {
  if (e < 0) {
    const BigInt d = base.det();  // +-1 for isometries
    Mat3 inv = base.adjugate();
    if (d == -1)
      for (auto& entry : inv.m) entry = -entry;
    base = inv;
    e = -e;
  }
  Mat3 out = Mat3::identity();
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

// A Gram-preserving matrix. Determinant and cone orientation are not part
// of the invariant; consumers that need them check explicitly.
class LatticeIsometry {
 public:
  explicit LatticeIsometry(Mat3 m) : m_(std::move(m)) {
    if (!preserves_gram(m_))
      throw NotAnIsometryError("matrix does not preserve the intersection form: " + m_.str());
  }

  const Mat3& matrix() const { return m_; }
  BigInt det() const { return m_.det(); }
  bool preserves_cone() const { return hilbsq::preserves_cone(m_); }
  HilbClass apply(const HilbClass& c) const { return m_.apply(c); }

  friend LatticeIsometry operator*(const LatticeIsometry& a, const LatticeIsometry& b) {
    return LatticeIsometry(a.m_ * b.m_);
  }
  LatticeIsometry inverse() const {
    return LatticeIsometry(power(m_, -1));
  }
  friend bool operator==(const LatticeIsometry& a, const LatticeIsometry& b) {
    return a.m_ == b.m_;
  }
  friend bool operator!=(const LatticeIsometry& a, const LatticeIsometry& b) {
    return !(a == b);
  }

 private:
  Mat3 m_;
};

// Pullback matrices of the three involutions, in the basis {h1, e, h2}.
inline const std::array<Mat3, 3>& generator_matrices() {
  static const std::array<Mat3, 3> gens = {
      Mat3::from_rows({{{3, 2, 2}, {-4, -3, -2}, {0, 0, -1}}}),
      Mat3::from_rows({{{5, 2, -2}, {-6, -3, 2}, {6, 2, -3}}}),
      Mat3::from_rows({{{27, 4, -16}, {-14, -3, 8}, {42, 6, -25}}})};
  return gens;
}

inline std::array<LatticeIsometry, 3> generators() {
  const auto& g = generator_matrices();
  return {LatticeIsometry(g[0]), LatticeIsometry(g[1]), LatticeIsometry(g[2])};
}

// Pullback of the natural automorphism: the product of the generator
// pullbacks in reversed composition order. Fixes e; multiplies the surface
// part by eta^6.
inline Mat3 g_star_matrix() {
  const auto& g = generator_matrices();
  return g[2] * g[1] * g[0];
}

inline LatticeIsometry g_star() { return LatticeIsometry(g_star_matrix()); }

// Pullback of the n-th involution, n = 3l + k: conjugate the k-th generator
// by the l-th power of g*. The sign of l is pinned by the fixed-point
// pattern: the interior fixed point of the n-th involution must be
// (a_n, -1, b_n) with eta^(2n) = a_n + b_n*eta (checked in the tests).
inline Mat3 iota_n_star_matrix(long n) {
  long k = ((n % 3) + 3) % 3;
  const long l = (n - k) / 3;
  const auto& gens = generator_matrices();
  if (l == 0) return gens[k];
  const Mat3 gl = power(g_star_matrix(), l);
  const Mat3 gl_inv = power(g_star_matrix(), -l);
  return gl * gens[static_cast<int>(k)] * gl_inv;
}

inline LatticeIsometry iota_n_star(long n) { return LatticeIsometry(iota_n_star_matrix(n)); }

enum class IsometryKind { Identity, Elliptic, Parabolic, Hyperbolic };

struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  BigInt so_trace;
  std::optional<long> elliptic_order;      // verified by powering when set
  std::optional<QuadExt> spectral_radius;  // exact value, hyperbolic only
  double spectral_radius_approx = 1.0;
  bool spectral_radius_is_exact = false;
};

// Trace trichotomy transported to SO(2,1): with t = trace(M), the square of
// the corresponding PSL(2,R) trace is t + 1. Elliptic for -1 <= t < 3,
// parabolic for t = 3 (M != I), hyperbolic for t > 3. The spectral radius r
// of a hyperbolic solves r^2 - (t-1)r + 1 = 0.
inline IsometryClass classify(const LatticeIsometry& iso) {
  const Mat3& m = iso.matrix();
  if (m.det() != 1) throw OrientationReversingError();
  if (!iso.preserves_cone()) throw ConeSwappingError();
  IsometryClass out;
  out.so_trace = m.trace();
  if (m == Mat3::identity()) {
    out.kind = IsometryKind::Identity;
    return out;
  }
  if (out.so_trace < -1)
    throw NotAnIsometryError("trace below -1 is impossible in the cone-preserving special orthogonal group");
  if (out.so_trace < 3) {
    out.kind = IsometryKind::Elliptic;
    // rotation angle is pinned by the trace: t = 1 + 2cos(theta)
    long expected = 0;
    if (out.so_trace == -1) expected = 2;
    else if (out.so_trace == 0) expected = 3;
    else if (out.so_trace == 1) expected = 4;
    else if (out.so_trace == 2) expected = 6;
    if (expected != 0 && power(m, expected) == Mat3::identity())
      out.elliptic_order = expected;
    return out;
  }
  if (out.so_trace == 3) {
    out.kind = IsometryKind::Parabolic;
    return out;
  }
  out.kind = IsometryKind::Hyperbolic;
  const BigInt t1 = out.so_trace - 1;
  const Rational disc = Rational(t1 * t1 - 4);
  const auto radical = decompose_sqrt(disc);
  if (radical) {
    const QuadExt root =
        radical->radicand == 1
            ? QuadExt::from_rational(radical->scale)
            : QuadExt(0, radical->scale, radical->radicand);
    out.spectral_radius = (QuadExt::from_rational(Rational(t1)) + root) / QuadExt::from_int(2);
    out.spectral_radius_is_exact = true;
    out.spectral_radius_approx = out.spectral_radius->to_double();
  } else {
    const double t = to_double(t1);
    out.spectral_radius_approx = (t + std::sqrt(t * t - 4.0)) / 2.0;
  }
  return out;
}

namespace detail {

template <class F>
F field_zero() {
  return F{};
}

// Exact null space of a 3x3 matrix over a field (Rational or QuadExt).
template <class F>
std::vector<std::array<F, 3>> kernel_basis(std::array<std::array<F, 3>, 3> m, const F& one) {
  std::array<int, 3> pivot_col = {-1, -1, -1};
  int rank = 0;
  for (int col = 0; col < 3 && rank < 3; ++col) {
    int p = -1;
    for (int r = rank; r < 3; ++r) {
      if (!(m[r][col] == field_zero<F>())) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[p], m[rank]);
    const F pivot = m[rank][col];
    for (int c = 0; c < 3; ++c) m[rank][c] = m[rank][c] / pivot;
    for (int r = 0; r < 3; ++r) {
      if (r == rank) continue;
      const F f = m[r][col];
      if (f == field_zero<F>()) continue;
      for (int c = 0; c < 3; ++c) m[r][c] = m[r][c] - f * m[rank][c];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  std::array<bool, 3> is_pivot = {false, false, false};
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  std::vector<std::array<F, 3>> basis;
  for (int col = 0; col < 3; ++col) {
    if (is_pivot[col]) continue;
    std::array<F, 3> v = {field_zero<F>(), field_zero<F>(), field_zero<F>()};
    v[col] = one;
    for (int r = 0; r < rank; ++r) {
      if (pivot_col[r] >= 0) v[pivot_col[r]] = field_zero<F>() - m[r][col];
    }
    basis.push_back(v);
  }
  return basis;
}

inline HilbClass primitive_integer_point(const std::array<Rational, 3>& v) {
  BigInt lcm = 1;
  for (const auto& c : v) {
    const BigInt den = boost::multiprecision::denominator(c);
    lcm = boost::multiprecision::lcm(lcm, den);
  }
  std::array<BigInt, 3> w;
  BigInt gcd = 0;
  for (int i = 0; i < 3; ++i) {
    const Rational scaled = v[i] * lcm;
    w[i] = boost::multiprecision::numerator(scaled);
    gcd = boost::multiprecision::gcd(gcd, w[i]);
  }
  if (gcd > 1)
    for (auto& c : w) c /= gcd;
  HilbClass p(w[0], w[1], w[2]);
  if (pair(p, canonical_polarization()) < 0) p = HilbClass(-p.x, -p.lam, -p.y);
  return p;
}

}  // namespace detail

struct InteriorFixedPoint {
  HilbClass point;
};

struct BoundaryFixedPair {
  bool exact = false;
  std::array<QuadExt, 3> expanding, contracting;  // filled when exact
  std::array<double, 3> expanding_approx{}, contracting_approx{};
};

struct BoundaryFixedPoint {
  std::array<QuadExt, 3> point;
};

using FixedPointResult = std::variant<InteriorFixedPoint, BoundaryFixedPair, BoundaryFixedPoint>;

namespace detail {

// Eigenvector of m for an exact eigenvalue, normalized so that the last
// nonzero coordinate is 1.
inline std::optional<std::array<QuadExt, 3>> eigenvector(const Mat3& m, const QuadExt& mu) {
  std::array<std::array<QuadExt, 3>, 3> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a[i][j] = QuadExt::from_rational(Rational(m.at(i, j)));
      if (i == j) a[i][j] -= mu;
    }
  auto basis = kernel_basis(a, QuadExt::from_int(1));
  if (basis.size() != 1) return std::nullopt;
  auto v = basis.front();
  for (int i = 2; i >= 0; --i) {
    if (!(v[i] == QuadExt())) {
      const QuadExt scale = v[i];
      for (auto& c : v) c /= scale;
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Fixed points on the hyperbolic plane attached to the lattice: elliptic
// isometries fix one interior class (returned primitive and positively
// oriented), hyperbolic ones fix two boundary rays (expanding eigendirection
// first), parabolic ones a single boundary ray.
inline FixedPointResult fixed_points(const LatticeIsometry& iso) {
  const Mat3& m = iso.matrix();
  if (m == Mat3::identity())
    throw std::invalid_argument("fixed_points: identity fixes everything");
  const IsometryClass cls = classify(iso);
  if (cls.kind == IsometryKind::Elliptic || cls.kind == IsometryKind::Parabolic) {
    std::array<std::array<Rational, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        a[i][j] = Rational(m.at(i, j)) - (i == j ? Rational(1) : Rational(0));
    const auto basis = detail::kernel_basis(a, Rational(1));
    if (basis.size() != 1)
      throw NoFixedVectorError("fixed subspace has unexpected dimension " +
                               std::to_string(basis.size()));
    const HilbClass p = detail::primitive_integer_point(basis.front());
    if (cls.kind == IsometryKind::Elliptic) {
      if (p.square() <= 0)
        throw NoFixedVectorError("elliptic fixed vector is not an interior point");
      return InteriorFixedPoint{p};
    }
    if (p.square() != 0)
      throw NoFixedVectorError("parabolic fixed vector is not a boundary point");
    std::array<QuadExt, 3> q = {QuadExt::from_rational(Rational(p.x)),
                                QuadExt::from_rational(Rational(p.lam)),
                                QuadExt::from_rational(Rational(p.y))};
    return BoundaryFixedPoint{q};
  }

  BoundaryFixedPair out;
  if (cls.spectral_radius_is_exact) {
    const QuadExt r = *cls.spectral_radius;
    const QuadExt r_inv = QuadExt::from_int(1) / r;
    const auto ev_plus = detail::eigenvector(m, r);
    const auto ev_minus = detail::eigenvector(m, r_inv);
    if (ev_plus && ev_minus) {
      out.exact = true;
      out.expanding = *ev_plus;
      out.contracting = *ev_minus;
      for (int i = 0; i < 3; ++i) {
        out.expanding_approx[i] = out.expanding[i].to_double();
        out.contracting_approx[i] = out.contracting[i].to_double();
      }
      return out;
    }
  }
  // float fallback: power iteration on the matrix and its inverse
  auto dominant = [](const Mat3& mm) {
    std::array<double, 3> v = {1.0, 0.5, 0.25};
    std::array<std::array<double, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = to_double(mm.at(i, j));
    for (int it = 0; it < 200; ++it) {
      std::array<double, 3> w{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i] += a[i][j] * v[j];
      double norm = std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2])});
      for (auto& c : w) c /= norm;
      v = w;
    }
    for (int i = 2; i >= 0; --i)
      if (std::abs(v[i]) > 1e-12) {
        const double s = v[i];
        for (auto& c : v) c /= s;
        break;
      }
    return v;
  };
  out.exact = false;
  out.expanding_approx = dominant(m);
  out.contracting_approx = dominant(power(m, -1));
  return out;
}

inline bool is_natural(const LatticeIsometry& iso) {
  return iso.apply(hilb_e()) == hilb_e();
}

// Image of e under a non-natural group element; the e-coefficient must be
// negative and the surface part ample, otherwise the input cannot be
// automorphism-induced.
inline HilbClass nonnatural_shape(const LatticeIsometry& iso) {
  const HilbClass v = iso.apply(hilb_e());
  if (v == hilb_e())
    throw std::invalid_argument("nonnatural_shape: isometry is natural");
  if (v.lam >= 0)
    throw ShapeViolationError("image of e has nonnegative e-coefficient " + v.str());
  if (!is_ample_surface(v.surface_part()))
    throw ShapeViolationError("surface part of the image of e is not ample " + v.str());
  return v;
}

// When m fixes e and acts on span(h1, h2) as multiplication by a golden
// unit u (matrix [[a, b], [b, a+b]] for u = a + b*eta), returns u.
inline std::optional<GoldenInt> golden_unit_action(const Mat3& m) {
  if (m.at(1, 0) != 0 || m.at(1, 2) != 0 || m.at(0, 1) != 0 || m.at(2, 1) != 0 ||
      m.at(1, 1) != 1)
    return std::nullopt;
  const BigInt& a = m.at(0, 0);
  const BigInt& b = m.at(2, 0);
  if (m.at(0, 2) != b || m.at(2, 2) != a + b) return std::nullopt;
  return GoldenInt(a, b);
}

}  // namespace hilbsq
