#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt(d)) and in the
// golden-ratio ring Z[eta], eta = (1+sqrt(5))/2. Every comparison is an
// exact sign computation on arbitrary-precision rationals; floating
// point appears only in the clearly named to_double() views.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "hilbsq/errors.hpp"

namespace hilbsq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const BigInt& n) { return n < 0 ? -1 : (n > 0 ? 1 : 0); }
inline int sign_of(const Rational& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.template convert_to<double>(); }

inline bool is_squarefree(std::int64_t d) {
  if (d < 1) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

// a + b*sqrt(d), with a, b exact rationals and d a square-free positive
// integer. Rational values are kept in the canonical form b == 0, d == 1,
// so component-wise equality on (d, a, b) coincides with value equality.
// Arithmetic between two genuinely irrational operands requires the same d;
// mixing radicals is refused rather than widened to a number-field tower.
class QuadExt {
 public:
  QuadExt() : d_(1) {}

  QuadExt(Rational a, Rational b, std::int64_t d)
      : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (!is_squarefree(d_))
      throw std::invalid_argument("QuadExt: d must be a square-free positive integer");
    canonicalize();
  }

  static QuadExt from_rational(Rational a) { return QuadExt(std::move(a), 0, 1); }
  static QuadExt from_int(long a) { return QuadExt(Rational(a), 0, 1); }
  static QuadExt sqrt_of(std::int64_t d) { return QuadExt(0, 1, d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  // Exact sign of the real number a + b*sqrt(d). Opposite-sign components
  // reduce to comparing a^2 with b^2 d.
  int sign() const {
    const int sa = sign_of(a_);
    const int sb = sign_of(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0;  // unreachable for square-free d >= 2, b != 0
    return lhs > rhs ? sa : sb;
  }

  QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }

  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    const std::int64_t d = merged_field(x, y, "+");
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    const std::int64_t d = merged_field(x, y, "-");
    return QuadExt(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    const std::int64_t d = merged_field(x, y, "*");
    return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    const std::int64_t d = merged_field(x, y, "/");
    if (y.is_zero()) throw DivisionByZeroError();
    const Rational den = y.a_ * y.a_ - y.b_ * y.b_ * d;
    // den == 0 would force sqrt(d) rational; impossible in a valid field.
    return QuadExt((x.a_ * y.a_ - x.b_ * y.b_ * d) / den,
                   (x.b_ * y.a_ - x.a_ * y.b_) / den, d);
  }

  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() >= 0; }

  // Lossy view for rendering and float cross-checks only.
  double to_double() const {
    return hilbsq::to_double(a_) + hilbsq::to_double(b_) * std::sqrt(static_cast<double>(d_));
  }

  std::string str() const {
    std::ostringstream os;
    os << a_;
    if (b_ != 0) {
      os << (b_ > 0 ? " + " : " - ");
      Rational ab = b_ < 0 ? Rational(-b_) : b_;
      if (ab != 1) os << ab << "*";
      os << "sqrt(" << d_ << ")";
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

 private:
  void canonicalize() {
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    }
    if (b_ == 0) d_ = 1;
  }

  static std::int64_t merged_field(const QuadExt& x, const QuadExt& y, const char* op) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) {
      throw MixedFieldError(std::string("QuadExt: operands of '") + op +
                            "' live in different fields (d=" + std::to_string(x.d_) +
                            " vs d=" + std::to_string(y.d_) + ")");
    }
    return x.d_;
  }

  Rational a_, b_;
  std::int64_t d_;
};

// scale * sqrt(radicand) with radicand square-free (1 means the root is rational).
struct RadicalParts {
  Rational scale;
  std::int64_t radicand = 1;
};

// Write a nonnegative rational as s^2 * d with d square-free, i.e.
// sqrt(r) = s*sqrt(d). Returns nullopt when the square-free part cannot be
// extracted within the trial-division budget (huge semiprime radicands);
// callers then fall back to floats.
inline std::optional<RadicalParts> decompose_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return RadicalParts{Rational(0), 1};
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt n = num * den;  // sqrt(num/den) = sqrt(num*den)/den
  BigInt square = 1;
  BigInt radicand = 1;
  constexpr std::int64_t kTrialBudget = 2'000'000;
  for (BigInt p = 2; p * p <= n; ++p) {
    if (p > kTrialBudget) return std::nullopt;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) radicand *= p;
  }
  radicand *= n;  // leftover cofactor is 1 or prime
  if (radicand > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return RadicalParts{Rational(square, den), radicand.template convert_to<std::int64_t>()};
}

// Exact square root of a nonnegative rational as a QuadExt, when representable.
inline std::optional<QuadExt> quad_sqrt(const Rational& r) {
  auto parts = decompose_sqrt(r);
  if (!parts) return std::nullopt;
  if (parts->radicand == 1) return QuadExt::from_rational(parts->scale);
  return QuadExt(0, parts->scale, parts->radicand);
}

// a + b*eta in Z[eta], eta = (1+sqrt(5))/2; multiplication closes through
// eta^2 = eta + 1 and norm(a + b*eta) = a^2 + ab - b^2 is multiplicative.
class GoldenInt {
 public:
  GoldenInt() = default;
  GoldenInt(BigInt a, BigInt b) : a_(std::move(a)), b_(std::move(b)) {}

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }

  BigInt norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }

  QuadExt to_quad() const {
    return QuadExt(Rational(a_) + Rational(b_) / 2, Rational(b_) / 2, 5);
  }

  GoldenInt operator-() const { return GoldenInt(-a_, -b_); }

  friend GoldenInt operator+(const GoldenInt& x, const GoldenInt& y) {
    return GoldenInt(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend GoldenInt operator-(const GoldenInt& x, const GoldenInt& y) {
    return GoldenInt(x.a_ - y.a_, x.b_ - y.b_);
  }
  friend GoldenInt operator*(const GoldenInt& x, const GoldenInt& y) {
    return GoldenInt(x.a_ * y.a_ + x.b_ * y.b_,
                     x.a_ * y.b_ + x.b_ * y.a_ + x.b_ * y.b_);
  }
  GoldenInt& operator*=(const GoldenInt& y) { return *this = *this * y; }

  friend bool operator==(const GoldenInt& x, const GoldenInt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const GoldenInt& x, const GoldenInt& y) { return !(x == y); }

  std::string str() const {
    std::ostringstream os;
    os << a_ << (b_ < 0 ? " - " : " + ") << boost::multiprecision::abs(b_) << "*eta";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const GoldenInt& g) { return os << g.str(); }

 private:
  BigInt a_, b_;
};

inline GoldenInt golden_one() { return GoldenInt(1, 0); }
inline GoldenInt golden_eta() { return GoldenInt(0, 1); }
inline GoldenInt golden_eta_inverse() { return GoldenInt(-1, 1); }  // eta^-1 = eta - 1

// eta^n = F(n)*eta + F(n-1) with the Fibonacci sequence extended to
// negative indices; norm(eta^n) = (-1)^n.
inline GoldenInt eta_power(long n) {
  GoldenInt result = golden_one();
  const GoldenInt step = n >= 0 ? golden_eta() : golden_eta_inverse();
  for (long i = 0, todo = n >= 0 ? n : -n; i < todo; ++i) result *= step;
  return result;
}

struct UnitLog {
  int sign = 1;  // +1 or -1
  long n = 0;    // u = sign * eta^n
};

// Inverse of eta_power on the unit group of Z[eta]: peels off factors of
// eta until the value reaches +-1. Returns nullopt when norm(u) is not +-1.
inline std::optional<UnitLog> unit_log(const GoldenInt& u) {
  const BigInt nrm = u.norm();
  if (nrm != 1 && nrm != -1) return std::nullopt;
  UnitLog out;
  GoldenInt v = u;
  if (v.to_quad().sign() < 0) {
    out.sign = -1;
    v = -v;
  }
  const QuadExt one = QuadExt::from_int(1);
  while (v != golden_one()) {
    if (v.to_quad() > one) {
      v *= golden_eta_inverse();
      ++out.n;
    } else {
      v *= golden_eta();
      --out.n;
    }
  }
  return out;
}

}  // namespace hilbsq
