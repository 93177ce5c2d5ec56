#pragma once

// Hyperbolic geometry of the light cone: exact cosh distances between
// interior classes, normalization of a point triple to the upper half-plane,
// Mobius classification, hyperbolic triangle solving, the three-involution
// trace identity, Fuchsian signatures, and the free-product normal form.

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hilbsq/errors.hpp"
#include "hilbsq/lattice.hpp"
#include "hilbsq/quad.hpp"

namespace hilbsq {

using RatVec3 = std::array<Rational, 3>;

inline Rational pair_rational(const RatVec3& a, const RatVec3& b) {
  return 4 * a[0] * b[0] + 2 * (a[0] * b[2] + a[2] * b[0]) - 4 * a[2] * b[2] -
         2 * a[1] * b[1];
}

// Point of the projectivized light cone, stored as a rational representative
// with positive square on the positive side of the canonical polarization.
class InteriorPoint {
 public:
  explicit InteriorPoint(RatVec3 v) : v_(std::move(v)) {
    static const RatVec3 h = {1, -1, 0};
    if (pair_rational(v_, v_) <= 0)
      throw NotInteriorPointError("representative has nonpositive square");
    if (pair_rational(v_, h) <= 0)
      throw NotInteriorPointError("representative lies on the wrong side of the cone");
  }
  InteriorPoint(const HilbClass& c)
      : InteriorPoint(RatVec3{Rational(c.x), Rational(c.lam), Rational(c.y)}) {}

  const RatVec3& rep() const { return v_; }
  Rational square() const { return pair_rational(v_, v_); }

  friend Rational pairing(const InteriorPoint& a, const InteriorPoint& b) {
    return pair_rational(a.v_, b.v_);
  }

 private:
  RatVec3 v_;
};

// cosh of the hyperbolic distance: (A.B) / (|A| |B|), exact. Equals 1
// exactly on equal projective classes.
inline QuadExt distance_cosh(const InteriorPoint& a, const InteriorPoint& b) {
  const Rational p = pairing(a, b);
  const Rational radicand = a.square() * b.square();
  const auto parts = decompose_sqrt(radicand);
  if (!parts)
    throw std::overflow_error("distance_cosh: radicand exceeds the exact factoring budget");
  // p / (s*sqrt(d)) = (p/(s*d)) * sqrt(d)
  if (parts->radicand == 1) return QuadExt::from_rational(p / parts->scale);
  return QuadExt(0, p / (parts->scale * parts->radicand), parts->radicand);
}

// Element of SL(2,R) acting on the upper half-plane, kept with det = 1.
struct MobiusMap {
  double a = 1, b = 0, c = 0, d = 1;

  MobiusMap() = default;
  MobiusMap(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    normalize();
  }

  void normalize() {
    const double det = a * d - b * c;
    if (!(det > 0))
      throw std::invalid_argument("MobiusMap: determinant must be positive");
    const double s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
  }

  double trace() const { return a + d; }

  friend MobiusMap operator*(const MobiusMap& x, const MobiusMap& y) {
    return MobiusMap(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                     x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
  }

  // action on z = (re, im), im > 0
  std::array<double, 2> apply(double re, double im) const {
    const double dr = c * re + d, di = c * im;
    const double nr = a * re + b, ni = a * im;
    const double den = dr * dr + di * di;
    return {(nr * dr + ni * di) / den, (ni * dr - nr * di) / den};
  }
};

enum class MobiusKind { Identity, Elliptic, Parabolic, Hyperbolic };

inline MobiusKind mobius_classify(const MobiusMap& m, double tol = 1e-9) {
  const bool plus_i = std::abs(m.a - 1) < tol && std::abs(m.d - 1) < tol &&
                      std::abs(m.b) < tol && std::abs(m.c) < tol;
  const bool minus_i = std::abs(m.a + 1) < tol && std::abs(m.d + 1) < tol &&
                       std::abs(m.b) < tol && std::abs(m.c) < tol;
  if (plus_i || minus_i) return MobiusKind::Identity;
  const double t2 = m.trace() * m.trace();
  if (std::abs(t2 - 4.0) <= tol) return MobiusKind::Parabolic;
  return t2 < 4.0 ? MobiusKind::Elliptic : MobiusKind::Hyperbolic;
}

// Half-plane normal form of a noncollinear interior triple: an isometry
// takes P1 to (0,1), P2 to (0,k) with k > 1, and P0 to (b,m) with b > 0.
// T, U, V are the half-turns about the three images. The constants stay in
// one real quadratic field whenever the three cosh distances are rational;
// b itself is a nested radical, so only b^2 is exact.
struct NormalizedTriple {
  bool exact = false;
  QuadExt k, m, b_sq;  // valid when exact
  double k_approx = 0, m_approx = 0, b_approx = 0;
  MobiusMap T, U, V;
  std::array<double, 2> image_p0{}, image_p1{}, image_p2{};
};

inline NormalizedTriple normalize_triple(const InteriorPoint& p0,
                                         const InteriorPoint& p1,
                                         const InteriorPoint& p2) {
  // exact collinearity test: the three representatives span a plane iff the
  // coordinate determinant vanishes
  const RatVec3& u0 = p0.rep();
  const RatVec3& u1 = p1.rep();
  const RatVec3& u2 = p2.rep();
  const Rational det = u0[0] * (u1[1] * u2[2] - u1[2] * u2[1]) -
                       u0[1] * (u1[0] * u2[2] - u1[2] * u2[0]) +
                       u0[2] * (u1[0] * u2[1] - u1[1] * u2[0]);
  if (det == 0)
    throw DegenerateTriangleError("the three points lie on one geodesic (or coincide)");

  const QuadExt c01 = distance_cosh(p0, p1);
  const QuadExt c02 = distance_cosh(p0, p2);
  const QuadExt c12 = distance_cosh(p1, p2);

  NormalizedTriple out;
  if (c01.is_rational() && c02.is_rational() && c12.is_rational()) {
    const Rational r12 = c12.a();
    const auto sinh12 = quad_sqrt(r12 * r12 - 1);
    if (sinh12) {
      const QuadExt k = QuadExt::from_rational(r12) + *sinh12;
      const QuadExt one = QuadExt::from_int(1);
      const QuadExt two = QuadExt::from_int(2);
      const QuadExt m = (k * k - one) /
                        (two * (k * QuadExt::from_rational(c02.a()) -
                                QuadExt::from_rational(c01.a())));
      const QuadExt b_sq =
          two * m * QuadExt::from_rational(c01.a()) - m * m - one;
      if (m.sign() > 0 && b_sq.sign() > 0) {
        out.exact = true;
        out.k = k;
        out.m = m;
        out.b_sq = b_sq;
      }
    }
  }
  const double d01 = c01.to_double(), d02 = c02.to_double(), d12 = c12.to_double();
  const double k = out.exact ? out.k.to_double() : d12 + std::sqrt(d12 * d12 - 1.0);
  const double m = out.exact ? out.m.to_double()
                             : (k * k - 1.0) / (2.0 * (k * d02 - d01));
  const double b_sq = out.exact ? out.b_sq.to_double() : 2.0 * m * d01 - m * m - 1.0;
  if (!(m > 0) || !(b_sq > 0))
    throw DegenerateTriangleError("half-plane normalization failed (degenerate data)");
  const double b = std::sqrt(b_sq);
  out.k_approx = k;
  out.m_approx = m;
  out.b_approx = b;
  out.U = MobiusMap(0, 1, -1, 0);
  out.V = MobiusMap(0, k, -1.0 / k, 0);
  out.T = MobiusMap(b / m, -(b_sq + m * m) / m, 1.0 / m, -b / m);
  out.image_p0 = {b, m};
  out.image_p1 = {0.0, 1.0};
  out.image_p2 = {0.0, k};
  return out;
}

// Triangle measurements: cosh of the sides, the angles (angles[i] opposite
// side i), and lambda = sinh(a) sinh(b) sin(gamma), which the sine rule
// makes independent of the pairing.
struct TriangleData {
  std::array<double, 3> cosh_sides{};
  std::array<double, 3> angles{};
  double lambda = 0;
  std::optional<QuadExt> lambda_exact;
};

namespace detail {

inline TriangleData triangle_from_doubles(double ca, double cb, double cc) {
  if (!(ca >= 1 && cb >= 1 && cc >= 1))
    throw DegenerateTriangleError("cosh of a side is below 1");
  const double sa = std::sqrt(ca * ca - 1.0);
  const double sb = std::sqrt(cb * cb - 1.0);
  const double sc = std::sqrt(cc * cc - 1.0);
  const double lambda_sq = sa * sa * sb * sb - (ca * cb - cc) * (ca * cb - cc);
  if (!(lambda_sq > 0))
    throw DegenerateTriangleError("degenerate triangle (collinear or coincident vertices)");
  TriangleData out;
  out.cosh_sides = {ca, cb, cc};
  out.angles[0] = std::acos((cb * cc - ca) / (sb * sc));
  out.angles[1] = std::acos((ca * cc - cb) / (sa * sc));
  out.angles[2] = std::acos((ca * cb - cc) / (sa * sb));
  out.lambda = std::sqrt(lambda_sq);
  return out;
}

}  // namespace detail

inline TriangleData solve_triangle(double cosh_a, double cosh_b, double cosh_c) {
  return detail::triangle_from_doubles(cosh_a, cosh_b, cosh_c);
}

// Exact-lambda variant for rational cosh data; the angle-free form
// lambda^2 = sinh^2(a) sinh^2(b) - (cosh(a) cosh(b) - cosh(c))^2 avoids any
// transcendental evaluation.
inline TriangleData solve_triangle_exact(const Rational& cosh_a, const Rational& cosh_b,
                                         const Rational& cosh_c) {
  if (cosh_a < 1 || cosh_b < 1 || cosh_c < 1)
    throw DegenerateTriangleError("cosh of a side is below 1");
  const Rational lambda_sq = (cosh_a * cosh_a - 1) * (cosh_b * cosh_b - 1) -
                             (cosh_a * cosh_b - cosh_c) * (cosh_a * cosh_b - cosh_c);
  if (lambda_sq <= 0)
    throw DegenerateTriangleError("degenerate triangle (collinear or coincident vertices)");
  TriangleData out = detail::triangle_from_doubles(
      to_double(cosh_a), to_double(cosh_b), to_double(cosh_c));
  const auto exact = quad_sqrt(lambda_sq);
  if (exact) {
    out.lambda_exact = *exact;
    out.lambda = exact->to_double();
  }
  return out;
}

struct TraceCheckEntry {
  std::string product;
  double trace = 0;
  double residual = 0;
};

struct TraceCheckReport {
  std::array<TraceCheckEntry, 6> entries;
  double max_residual = 0;
  bool pass = false;
};

// The six triple products of three elliptic half-turns all have |trace|
// equal to 2*lambda of the fixed-point triangle.
inline TraceCheckReport beardon_trace_check(const MobiusMap& t, const MobiusMap& u,
                                            const MobiusMap& v, double lambda,
                                            double tol = 1e-9) {
  TraceCheckReport report;
  const std::array<std::pair<std::string, MobiusMap>, 6> products = {
      std::make_pair("TUV", t * u * v), std::make_pair("VTU", v * t * u),
      std::make_pair("UVT", u * v * t), std::make_pair("VUT", v * u * t),
      std::make_pair("TVU", t * v * u), std::make_pair("UTV", u * t * v)};
  for (std::size_t i = 0; i < 6; ++i) {
    report.entries[i].product = products[i].first;
    report.entries[i].trace = products[i].second.trace();
    report.entries[i].residual = std::abs(std::abs(report.entries[i].trace) - 2 * lambda);
    report.max_residual = std::max(report.max_residual, report.entries[i].residual);
  }
  report.pass = report.max_residual <= tol;
  return report;
}

struct FuchsianSignature {
  long genus = 0;
  std::vector<long> elliptic_orders;
  long s = 0;  // parabolic classes
  long t = 0;  // boundary hyperbolic classes

  friend bool operator==(const FuchsianSignature& a, const FuchsianSignature& b) {
    return a.genus == b.genus && a.elliptic_orders == b.elliptic_orders && a.s == b.s &&
           a.t == b.t;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(" << genus << ": ";
    for (std::size_t i = 0; i < elliptic_orders.size(); ++i) {
      if (i) os << ",";
      os << elliptic_orders[i];
    }
    os << "; " << s << "; " << t << ")";
    return os.str();
  }
};

struct ExceptionalMatch {
  std::string family;  // "cos(pi/q)", "cos(2pi/q)", "cos(3pi/q)"
  long q = 0;
  double value = 0;
};

// For lambda < 1 discreteness forces lambda into a short list of cosine
// values; the scan reports the matches and the possible signatures without
// claiming discreteness.
struct ExceptionalScan {
  std::vector<ExceptionalMatch> matches;
  std::vector<std::string> candidate_signatures;
};

using SignatureResult = std::variant<FuchsianSignature, ExceptionalScan>;

namespace detail {

inline SignatureResult signature_from_comparison(int cmp_with_one, double lambda_value) {
  if (cmp_with_one > 0) return FuchsianSignature{0, {2, 2, 2}, 0, 1};
  if (cmp_with_one == 0) return FuchsianSignature{0, {2, 2, 2}, 1, 0};
  ExceptionalScan scan;
  constexpr double tol = 1e-9;
  const double pi = std::acos(-1.0);
  auto probe = [&](const char* family, long mult, long q_min) {
    for (long q = q_min; q <= 200; ++q) {
      const double value = std::cos(mult * pi / static_cast<double>(q));
      if (std::abs(value - lambda_value) <= tol)
        scan.matches.push_back({family, q, value});
    }
  };
  probe("cos(pi/q)", 1, 3);
  probe("cos(2pi/q)", 2, 5);
  probe("cos(3pi/q)", 3, 7);
  for (const auto& m : scan.matches) {
    scan.candidate_signatures.push_back("(0: 2,2,2," + std::to_string(m.q) + "; 0; 0)");
    scan.candidate_signatures.push_back("(0: 2,3," + std::to_string(m.q) + "; 0; 0)");
    scan.candidate_signatures.push_back("(0: 2,4," + std::to_string(m.q) + "; 0; 0)");
  }
  return scan;
}

}  // namespace detail

inline SignatureResult signature_from_lambda(const QuadExt& lambda) {
  if (lambda.sign() <= 0) throw std::invalid_argument("lambda must be positive");
  const QuadExt diff = lambda - QuadExt::from_int(1);
  return detail::signature_from_comparison(diff.sign(), lambda.to_double());
}

inline SignatureResult signature_from_lambda(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  const int cmp = lambda > 1 ? 1 : (lambda < 1 ? -1 : 0);
  return detail::signature_from_comparison(cmp, lambda);
}

struct FreeProductDescription {
  std::vector<long> cyclic_orders;
  long free_rank = 0;

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (long m : cyclic_orders) {
      if (!first) os << " * ";
      os << "Z" << m;
      first = false;
    }
    if (free_rank > 0 || first) {
      if (!first) os << " * ";
      os << "F" << free_rank;
    }
    return os.str();
  }
};

// Boundary-type Fuchsian groups split as free products of their elliptic
// cyclic factors and a free group of rank 2g + s + t - 1.
inline FreeProductDescription free_product_structure(const FuchsianSignature& sig) {
  if (sig.s + sig.t == 0) throw NotBoundaryTypeError();
  FreeProductDescription out;
  out.cyclic_orders = sig.elliptic_orders;
  out.free_rank = 2 * sig.genus + sig.s + sig.t - 1;
  return out;
}

struct TxTraces {
  double t_uv = 0;   // trace of T(UV)^s
  double t_uvu = 0;  // trace of T(UV)^sU
  double t_vu = 0;   // trace of T(VU)^s
  double t_vuv = 0;  // trace of T(VU)^sV
};

// Closed-form traces of the four one-parameter families built from the
// half-turns of the normalized triple.
inline TxTraces tx_trace_family(double b, double m, double k, long s) {
  if (!(m > 0) || !(k > 1) || b == 0)
    throw std::invalid_argument("tx_trace_family requires m > 0, k > 1, b != 0");
  const double ks = std::pow(k, static_cast<double>(s));
  const double b2m2 = b * b + m * m;
  TxTraces out;
  out.t_uv = (b / m) * (ks - 1.0 / ks);
  out.t_uvu = (b2m2 * ks + 1.0 / ks) / m;
  out.t_vu = (b / m) * (1.0 / ks - ks);
  out.t_vuv = (b2m2 / (ks * k) + ks * k) / m;
  return out;
}

struct TxTracesExact {
  QuadExt uv_trace_sq;   // square of trace(T(UV)^s)
  QuadExt uvu_trace;     // trace of T(UV)^sU
  QuadExt vu_trace_sq;   // square of trace(T(VU)^s)
  QuadExt vuv_trace;     // trace of T(VU)^sV
};

// Exact version over the field of the normalized triple; the two families
// whose trace carries a bare factor of b are reported as exact squares.
inline TxTracesExact tx_trace_family_exact(const QuadExt& b_sq, const QuadExt& m,
                                           const QuadExt& k, long s) {
  const QuadExt one = QuadExt::from_int(1);
  QuadExt ks = one;
  for (long i = 0, n = s >= 0 ? s : -s; i < n; ++i) ks *= k;
  if (s < 0) ks = one / ks;
  const QuadExt ks_inv = one / ks;
  const QuadExt b2m2 = b_sq + m * m;
  TxTracesExact out;
  const QuadExt diff = ks - ks_inv;
  out.uv_trace_sq = (b_sq / (m * m)) * diff * diff;
  out.uvu_trace = (b2m2 * ks + ks_inv) / m;
  out.vu_trace_sq = out.uv_trace_sq;
  out.vuv_trace = (b2m2 / (ks * k) + ks * k) / m;
  return out;
}

}  // namespace hilbsq
