#pragma once

// Divisor classes on the rank-2 surface lattice (basis {h1, h2}, Gram
// [[4,2],[2,-4]]) and on the rank-3 lattice of the Hilbert square
// (basis {h1, e, h2}, e^2 = -2), with the cone tests, the k-very-ampleness
// criterion, negative-class enumeration, and the wall-based ampleness
// decision for the Hilbert square.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hilbsq/errors.hpp"
#include "hilbsq/quad.hpp"

namespace hilbsq {

// Class x*h1 + y*h2 on the surface.
struct SurfaceClass {
  BigInt x, y;

  SurfaceClass() = default;
  SurfaceClass(BigInt x_, BigInt y_) : x(std::move(x_)), y(std::move(y_)) {}

  // 4(x^2 + xy - y^2); always divisible by 4, zero only at the origin.
  BigInt square() const { return 4 * (x * x + x * y - y * y); }

  friend bool operator==(const SurfaceClass& a, const SurfaceClass& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const SurfaceClass& a, const SurfaceClass& b) { return !(a == b); }
};

inline BigInt pair_surface(const SurfaceClass& a, const SurfaceClass& b) {
  return 4 * a.x * b.x + 2 * (a.x * b.y + a.y * b.x) - 4 * a.y * b.y;
}

// Class x*h1 + lam*e + y*h2 on the Hilbert square.
struct HilbClass {
  BigInt x, lam, y;

  HilbClass() = default;
  HilbClass(BigInt x_, BigInt lam_, BigInt y_)
      : x(std::move(x_)), lam(std::move(lam_)), y(std::move(y_)) {}

  BigInt square() const {
    return 4 * (x * x + x * y - y * y) - 2 * lam * lam;
  }

  SurfaceClass surface_part() const { return SurfaceClass(x, y); }

  friend bool operator==(const HilbClass& a, const HilbClass& b) {
    return a.x == b.x && a.lam == b.lam && a.y == b.y;
  }
  friend bool operator!=(const HilbClass& a, const HilbClass& b) { return !(a == b); }
  friend bool operator<(const HilbClass& a, const HilbClass& b) {
    return std::tie(a.lam, a.x, a.y) < std::tie(b.lam, b.x, b.y);
  }

  std::string str() const {
    std::ostringstream os;
    os << "(" << x << ", " << lam << ", " << y << ")";
    return os.str();
  }
};

inline BigInt pair(const HilbClass& a, const HilbClass& b) {
  return 4 * a.x * b.x + 2 * (a.x * b.y + a.y * b.x) - 4 * a.y * b.y -
         2 * a.lam * b.lam;
}

inline HilbClass hilb_h1() { return HilbClass(1, 0, 0); }
inline HilbClass hilb_e() { return HilbClass(0, 1, 0); }
inline HilbClass hilb_h2() { return HilbClass(0, 0, 1); }

// Canonical ample reference class h1 - e.
inline HilbClass canonical_polarization() { return HilbClass(1, -1, 0); }

// The ample cone of the surface is its positive cone: x > 0 and square > 0.
// The equivalent slope condition (1-sqrt(5))/2 < y/x < (1+sqrt(5))/2 is
// evaluated independently with exact radical sign tests and must agree.
inline bool is_ample_surface(const SurfaceClass& l) {
  const bool primary = l.x > 0 && l.square() > 0;
  bool by_slope = false;
  if (l.x > 0) {
    const QuadExt lower(Rational(2 * l.y - l.x), Rational(l.x), 5);
    const QuadExt upper(Rational(2 * l.y - l.x), Rational(-l.x), 5);
    by_slope = lower.sign() > 0 && upper.sign() < 0;
  }
  if (primary != by_slope)
    throw std::logic_error("ample cone predicates disagree");
  return primary;
}

// Effective <=> nonzero, square >= 4, and positive pairing with h1. The
// lattice has no 0- or (-2)-classes, so Riemann-Roch leaves no other case.
inline bool is_effective_surface(const SurfaceClass& d) {
  if (d.x == 0 && d.y == 0) return false;
  return d.square() >= 4 && pair_surface(d, SurfaceClass(1, 0)) > 0;
}

// Coordinates of eta^(2n): the degree-4 polarizations D_n. Every one has
// square 4 and is ample, for negative n as well.
inline SurfaceClass dn_divisor(long n) {
  const GoldenInt g = eta_power(2 * n);
  return SurfaceClass(g.a(), g.b());
}

inline HilbClass induced_polarization(const SurfaceClass& l) {
  if (!is_ample_surface(l))
    throw NotAmpleError("induced_polarization requires an ample surface class");
  return HilbClass(l.x, -1, l.y);
}

namespace detail {

inline BigInt ceil_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);  // den > 0
  BigInt q = num / den;
  if (num > q * den) ++q;
  return q;
}

// Rational upper bound for sqrt(r), r >= 0.
inline Rational sqrt_upper(const Rational& r) {
  if (r <= 0) return Rational(0);
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt prod = num * den;
  return Rational(boost::multiprecision::sqrt(prod) + 1, den);
}

inline bool is_perfect_square(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

}  // namespace detail

struct KVeryAmpleness {
  bool value = false;
  std::string certificate;
  std::optional<SurfaceClass> violator;
};

// Numerical k-very-ampleness test: L^2 >= 4k plus absence of an effective D
// with 2D^2 <= L.D <= D^2 + k + 1 <= 2k + 2 (equalities admissible only in
// the L = 2D borderline). Effective classes here have square >= 4, which
// caps violating squares at k + 1 and empties the search for k <= 2.
inline KVeryAmpleness is_k_very_ample(const SurfaceClass& l, long k) {
  if (k < 0) throw std::invalid_argument("is_k_very_ample: k must be >= 0");
  if (!is_ample_surface(l)) throw NotAmpleError("is_k_very_ample requires an ample class");
  const BigInt l2 = l.square();
  KVeryAmpleness out;
  if (l2 < 4 * k) {
    out.value = false;
    std::ostringstream os;
    os << "L^2 = " << l2 << " < 4k = " << 4 * k;
    out.certificate = os.str();
    return out;
  }
  if (k + 1 < 4) {
    out.value = true;
    out.certificate =
        "vacuous: a violating class needs square <= k+1 <= 3, but every "
        "effective class has square >= 4";
    return out;
  }
  // Violating D lies in the positive cone with L.D <= 2k+2; in null-vector
  // coordinates this bounds D's components by multiples of (2k+2)*x_L / L^2.
  const BigInt c = 2 * k + 2;
  const Rational scale = Rational(c * l.x, l2);
  const BigInt u_max = detail::ceil_rational(2 * scale);
  const BigInt v_max = detail::ceil_rational(Rational(13, 4) * scale);
  for (BigInt u = 1; u <= u_max; ++u) {
    for (BigInt v = -v_max; v <= v_max; ++v) {
      const SurfaceClass d(u, v);
      if (!is_effective_surface(d)) continue;
      const BigInt d2 = d.square();
      const BigInt ld = pair_surface(l, d);
      if (!(2 * d2 <= ld && ld <= d2 + k + 1 && d2 + k + 1 <= 2 * k + 2)) continue;
      const bool doubled = (l.x == 2 * d.x && l.y == 2 * d.y);
      if (ld == 2 * d2 && !(doubled && l2 <= 4 * k + 4)) continue;
      if (d2 + k + 1 == 2 * k + 2 && !(doubled && l2 == 4 * k + 4)) continue;
      out.value = false;
      out.violator = d;
      std::ostringstream os;
      os << "effective class (" << d.x << ", " << d.y << ") violates the "
         << "intersection chain: 2D^2 = " << 2 * d2 << " <= L.D = " << ld
         << " <= D^2+k+1 = " << d2 + k + 1;
      out.certificate = os.str();
      return out;
    }
  }
  out.value = true;
  std::ostringstream os;
  os << "no violating effective class with square <= " << k + 1
     << " and L.D <= " << c << " (search exhausted for x <= " << u_max
     << ", |y| <= " << v_max << ")";
  out.certificate = os.str();
  return out;
}

// All classes of the given square with coordinates bounded by `bound`,
// ordered lexicographically on (lam, x, y).
inline std::vector<HilbClass> minus_d_classes(long long dsq, long long bound) {
  if (bound <= 0) throw std::invalid_argument("minus_d_classes: bound must be positive");
  std::vector<HilbClass> out;
  for (long long x = -bound; x <= bound; ++x) {
    for (long long y = -bound; y <= bound; ++y) {
      const long long q4 = 4 * (x * x + x * y - y * y);
      const long long twice_lam_sq = q4 - dsq;
      if (twice_lam_sq < 0 || twice_lam_sq % 2 != 0) continue;
      const long long lam_sq = twice_lam_sq / 2;
      const long long root = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(lam_sq))));
      long long lam = -1;
      for (long long cand = std::max(0LL, root - 2); cand <= root + 2; ++cand) {
        if (cand * cand == lam_sq) {
          lam = cand;
          break;
        }
      }
      if (lam < 0 || lam > bound) continue;
      out.emplace_back(x, lam, y);
      if (lam != 0) out.emplace_back(x, -lam, y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ResidueEntry {
  int x = 0, y = 0, z = 0;
  int square_mod16 = 0;
  bool consistent = false;
};

struct ResidueReport {
  std::vector<ResidueEntry> entries;  // all 64 residue triples mod 4
  bool all_inconsistent = true;
};

// Square -10 is impossible independently of any search bound: modulo 16 the
// quadratic form 4(x^2+xy-y^2) - 2z^2 never attains -10 = 6 (mod 16), as the
// 64 residue triples (x, y, z) mod 4 witness exhaustively.
inline ResidueReport no_minus_ten_certificate() {
  ResidueReport report;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) {
        ResidueEntry e;
        e.x = x;
        e.y = y;
        e.z = z;
        const int q = x * x + x * y - y * y;
        e.square_mod16 = ((4 * q - 2 * z * z) % 16 + 16) % 16;
        e.consistent = (e.square_mod16 == ((-10) % 16 + 16) % 16);
        if (e.consistent) report.all_inconsistent = false;
        report.entries.push_back(e);
      }
  return report;
}

enum class AmpleStatus { Ample, NotAmple, Inconclusive };

struct AmpleDecision {
  AmpleStatus status = AmpleStatus::Inconclusive;
  std::optional<HilbClass> witness;  // violating (-2)-wall, when one exists
  bool nef_boundary = false;         // witness pairs to exactly zero
  BigInt completeness_bound;         // derived coordinate bound for walls
  std::string reason;
};

namespace detail {

// Coordinate bound for a (-2)-class D with H.D > 0 >= C.D. Such a D lies in
// a compact region between the duals of C and H; Cauchy-Schwarz in the
// negative-definite complement of C gives (C.D)^2 < 2((H.C)^2 - H^2 C^2)/H^2
// and from it rational bounds on the pairings with all three basis vectors.
inline BigInt wall_coordinate_bound(const HilbClass& c, const HilbClass& h) {
  const BigInt c2 = c.square();
  const BigInt h2 = h.square();
  const BigInt hc = pair(h, c);
  const BigInt s = hc * hc - h2 * c2;
  if (s <= 0) return 0;  // proportional classes: no wall can separate them
  const Rational a_sq = Rational(2 * s, h2 * c2);
  auto pairing_bound = [&](const HilbClass& v) {
    const BigInt cv = pair(c, v);
    const Rational direct = a_sq * Rational(cv * cv, c2);
    const Rational ortho = (a_sq + 2) * (Rational(cv * cv, c2) - Rational(v.square()));
    return sqrt_upper(direct) + sqrt_upper(ortho);
  };
  const Rational b1 = pairing_bound(hilb_h1());
  const Rational be = pairing_bound(hilb_e());
  const Rational b2 = pairing_bound(hilb_h2());
  const Rational bx = b1 / 5 + b2 / 10;
  const Rational by = b1 / 10 + b2 / 5;
  const Rational blam = be / 2;
  return ceil_rational(std::max({bx, by, blam}));
}

}  // namespace detail

// Wall criterion on the Hilbert square: C is ample iff it pairs positively
// with every class D with H.D > 0 and D^2 >= -2 (square -10 walls cannot
// exist here). For D^2 >= 0 positivity is automatic once C^2 > 0 and
// H.C > 0, so only (-2)-walls are enumerated, with a derived completeness
// bound; classes on the nef boundary are reported NotAmple with a flag.
inline AmpleDecision is_ample_hilb(const HilbClass& c,
                                   const HilbClass& h = canonical_polarization(),
                                   long long wall_bound = 64) {
  if (wall_bound <= 0) throw std::invalid_argument("is_ample_hilb: wall_bound must be positive");
  if (h.square() <= 0 || pair(h, canonical_polarization()) <= 0)
    throw NotAmpleError("reference class is not ample");
  AmpleDecision out;
  if (c.square() <= 0) {
    out.status = AmpleStatus::NotAmple;
    out.reason = "class has nonpositive square";
    return out;
  }
  if (pair(h, c) <= 0) {
    out.status = AmpleStatus::NotAmple;
    out.reason = "class pairs nonpositively with the reference polarization";
    return out;
  }
  out.completeness_bound = detail::wall_coordinate_bound(c, h);
  const long long scan =
      out.completeness_bound <= wall_bound
          ? out.completeness_bound.template convert_to<long long>()
          : wall_bound;
  std::vector<HilbClass> violations;
  for (long long lam = -scan; lam <= scan; ++lam) {
    for (long long x = -scan; x <= scan; ++x) {
      for (long long y = -scan; y <= scan; ++y) {
        const long long q4 = 4 * (x * x + x * y - y * y);
        if (q4 - 2 * lam * lam != -2) continue;
        const HilbClass d(x, lam, y);
        if (pair(h, d) <= 0) continue;
        if (pair(c, d) <= 0) violations.push_back(d);
      }
    }
  }
  if (!violations.empty()) {
    std::sort(violations.begin(), violations.end());
    out.status = AmpleStatus::NotAmple;
    out.witness = violations.front();
    out.nef_boundary = pair(c, *out.witness) == 0;
    out.reason = out.nef_boundary ? "pairs to zero with a (-2)-wall (nef boundary)"
                                  : "pairs negatively with a (-2)-wall";
    return out;
  }
  if (out.completeness_bound <= wall_bound) {
    out.status = AmpleStatus::Ample;
    std::ostringstream os;
    os << "no violating wall; enumeration complete up to coordinate bound "
       << out.completeness_bound;
    out.reason = os.str();
  } else {
    out.status = AmpleStatus::Inconclusive;
    std::ostringstream os;
    os << "derived completeness bound " << out.completeness_bound
       << " exceeds wall_bound " << wall_bound;
    out.reason = os.str();
  }
  return out;
}

}  // namespace hilbsq
