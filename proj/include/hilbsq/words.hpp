#pragma once

// The free product Z2 * Z2 * Z2 on the three involutions as reduced words,
// evaluation to lattice isometries, and the inverse problem: a descent on
// the e-coefficient that rewrites any automorphism-induced isometry as a
// word in the generators, or rejects it.

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hilbsq/errors.hpp"
#include "hilbsq/isometry.hpp"
#include "hilbsq/lattice.hpp"
#include "hilbsq/quad.hpp"

namespace hilbsq {

// Letter sequence over {0, 1, 2} with no two adjacent letters equal; the
// normal form of the free product on three involutions. The word
// (k_1, ..., k_r) denotes the composition iota_{k_1} o ... o iota_{k_r}.
class ReducedWord {
 public:
  ReducedWord() = default;

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  // Involutions invert by reversal.
  ReducedWord inverse() const {
    ReducedWord out;
    out.letters_.assign(letters_.rbegin(), letters_.rend());
    return out;
  }

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator!=(const ReducedWord& a, const ReducedWord& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) os << ",";
      os << letters_[i];
    }
    os << "]";
    return os.str();
  }

  friend ReducedWord reduce(const std::vector<int>& letters);

 private:
  std::vector<int> letters_;
};

// Stack cancellation of adjacent equal letters; confluent, so the result
// does not depend on cancellation order.
inline ReducedWord reduce(const std::vector<int>& letters) {
  ReducedWord out;
  for (int l : letters) {
    if (l < 0 || l > 2)
      throw BadLetterError("letter " + std::to_string(l) + " is not in {0,1,2}");
    if (!out.letters_.empty() && out.letters_.back() == l)
      out.letters_.pop_back();
    else
      out.letters_.push_back(l);
  }
  return out;
}

// Pullback of the composition: contravariant, so the matrices multiply in
// reversed letter order.
inline Mat3 evaluate_matrix(const ReducedWord& w) {
  const auto& gens = generator_matrices();
  Mat3 out = Mat3::identity();
  for (int l : w.letters()) out = gens[l] * out;
  return out;
}

inline LatticeIsometry evaluate(const ReducedWord& w) {
  return LatticeIsometry(evaluate_matrix(w));
}

// Letters of g^t (g = iota_0 o iota_1 o iota_2).
inline std::vector<int> g_power_letters(long t) {
  std::vector<int> out;
  for (long i = 0; i < (t >= 0 ? t : -t); ++i) {
    if (t >= 0) {
      out.insert(out.end(), {0, 1, 2});
    } else {
      out.insert(out.end(), {2, 1, 0});
    }
  }
  return out;
}

// Letters of the n-th involution, n = 3l + k: conjugate of iota_k by g^l,
// unfolded so that evaluate(iota_letters(n)) equals iota_n_star(n).
inline std::vector<int> iota_letters(long n) {
  long k = ((n % 3) + 3) % 3;
  const long l = (n - k) / 3;
  std::vector<int> out = g_power_letters(-l);
  out.push_back(static_cast<int>(k));
  const auto tail = g_power_letters(l);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

// For m fixing e: the power n with m = (g*)^n, read off from the golden
// unit acting on the surface part. Rejects units that are not +eta^(6n).
inline std::optional<long> natural_power_detect(const Mat3& m) {
  const auto unit = golden_unit_action(m);
  if (!unit) return std::nullopt;
  const auto lg = unit_log(*unit);
  if (!lg || lg->sign != 1 || lg->n % 6 != 0) return std::nullopt;
  const long n = lg->n / 6;
  if (power(g_star_matrix(), n) != m) return std::nullopt;
  return n;
}

struct DescentStep {
  BigInt lambda;  // e-coefficient of M*e before the step
  long k = 0;     // chosen generator index
  long l = 0;     // chosen conjugating power: the step applies iota_{3l+k}*
};

enum class DecomposeStatus { Ok, NotInGroup, BoundExceeded };

struct Decomposition {
  DecomposeStatus status = DecomposeStatus::NotInGroup;
  ReducedWord word;               // valid when status == Ok
  std::vector<DescentStep> steps; // per-iteration descent trace
  long natural_tail = 0;          // trailing power of g
  BigInt initial_lambda;          // 0 when the input is natural
  std::string reason;             // failure detail
};

namespace detail {

// e-coefficient of iota_k* u, read from the middle row of the generator.
inline BigInt step_lambda(int k, const Vec3& u) {
  const Mat3& m = generator_matrices()[k];
  return m.at(1, 0) * u[0] + m.at(1, 1) * u[1] + m.at(1, 2) * u[2];
}

struct ScanChoice {
  bool found = false;
  BigInt value;
  long k = 0;
  long l = 0;
};

// Argmax of the e-coefficient of iota_{3l+k}* v over k in {0,1,2} and
// |l| <= l_max, admitting only strict improvement over `current`. Along
// each of the six (k, sign) branches the value is C + B*eta^(-6l) +
// A*eta^(6l) with A, B <= 0 for group members, so once a branch's next
// gain cannot exceed the running best it is provably finished; the scan
// stops when all branches are finished or l_max is reached. Ties keep the
// earliest candidate in (|l|, k, +l before -l) order, so the cutoff does
// not change the selection.
inline ScanChoice scan_step(const Vec3& v, const BigInt& current, long l_max) {
  const Mat3 g = g_star_matrix();
  const Mat3 g_inv = power(g, -1);
  ScanChoice best;
  BigInt best_value = current;
  auto consider = [&](const BigInt& val, long k, long l) {
    if (val > best_value) {
      best_value = val;
      best.found = true;
      best.value = val;
      best.k = k;
      best.l = l;
    }
  };

  struct Branch {
    BigInt prev;
    bool alive = true;
  };
  Branch branch[3][2];  // [k][0]: l > 0, [k][1]: l < 0

  for (int k = 0; k < 3; ++k) {
    const BigInt val = step_lambda(k, v);
    consider(val, k, 0);
    branch[k][0].prev = val;
    branch[k][1].prev = val;
  }

  Vec3 u_pos = v;  // g*^(-labs) v, used for l = +labs
  Vec3 u_neg = v;  // g*^(+labs) v, used for l = -labs
  for (long labs = 1; labs <= l_max; ++labs) {
    bool any_alive = false;
    u_pos = g_inv.apply(u_pos);
    u_neg = g.apply(u_neg);
    for (int k = 0; k < 3; ++k) {
      for (int dir = 0; dir < 2; ++dir) {
        Branch& br = branch[k][dir];
        if (!br.alive) continue;
        const BigInt val = step_lambda(k, dir == 0 ? u_pos : u_neg);
        consider(val, k, dir == 0 ? labs : -labs);
        const BigInt delta = val - br.prev;
        BigInt ceiling = val;
        if (delta > 0) ceiling += delta;  // remaining rise is below one more delta
        if (ceiling <= best_value) br.alive = false;
        br.prev = val;
        any_alive = any_alive || br.alive;
      }
    }
    if (!any_alive) break;
  }
  return best;
}

}  // namespace detail

// Descent on the e-coefficient: while M does not fix e, validate the
// non-natural shape (negative e-coefficient, ample surface part), apply the
// conjugated involution that maximally raises the e-coefficient, and repeat;
// a natural remainder must be a power of g. The emitted word is fully
// unfolded into generator letters and reduced, and always evaluates back to
// the input.
inline Decomposition decompose(const LatticeIsometry& iso, long l_max = 64) {
  if (l_max <= 0) throw std::invalid_argument("decompose: l_max must be positive");
  Decomposition out;
  if (iso.det() != 1) {
    out.reason = "determinant is -1; the group consists of determinant-1 isometries";
    return out;
  }
  if (!iso.preserves_cone()) {
    out.reason = "isometry swaps the positive cone";
    return out;
  }

  Mat3 m = iso.matrix();
  const Vec3 e = {0, 1, 0};
  std::vector<long> chosen;  // applied involution indices, in application order
  bool first = true;
  while (true) {
    const Vec3 v = m.apply(e);
    if (v[0] == 0 && v[1] == 1 && v[2] == 0) break;
    if (v[1] >= 0) {
      out.reason = "image of e has nonnegative e-coefficient but is not e: (" +
                   v[0].str() + ", " + v[1].str() + ", " + v[2].str() + ")";
      return out;
    }
    if (!is_ample_surface(SurfaceClass(v[0], v[2]))) {
      out.reason = "surface part of the image of e is not ample: (" + v[0].str() +
                   ", " + v[2].str() + ")";
      return out;
    }
    if (first) {
      out.initial_lambda = v[1];
      first = false;
    }
    const auto choice = detail::scan_step(v, v[1], l_max);
    if (!choice.found) {
      out.status = DecomposeStatus::BoundExceeded;
      out.reason = "no conjugated involution within |l| <= " + std::to_string(l_max) +
                   " raises the e-coefficient";
      return out;
    }
    out.steps.push_back(DescentStep{v[1], choice.k, choice.l});
    const long n = 3 * choice.l + choice.k;
    m = iota_n_star_matrix(n) * m;
    if (out.steps.size() > 4 && BigInt(out.steps.size()) > -out.initial_lambda + 2)
      throw std::logic_error("descent failed to terminate within the lambda bound");
    chosen.push_back(n);
  }

  const auto tail = natural_power_detect(m);
  if (!tail) {
    out.reason = "remainder fixes e but is not a power of g";
    return out;
  }
  out.natural_tail = *tail;

  std::vector<int> letters = g_power_letters(*tail);
  for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
    const auto expansion = iota_letters(*it);
    letters.insert(letters.end(), expansion.begin(), expansion.end());
  }
  out.word = reduce(letters);
  if (evaluate_matrix(out.word) != iso.matrix())
    throw std::logic_error("decompose postcondition failed: word does not evaluate back");
  out.status = DecomposeStatus::Ok;
  return out;
}

inline bool is_member(const LatticeIsometry& iso, long l_max = 64) {
  return decompose(iso, l_max).status == DecomposeStatus::Ok;
}

struct RelationReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Checks that the generator product realizes g*, that the conjugated
// involutions match their unfolded words, and that every one is an
// involution.
inline RelationReport verify_relations(long l_range) {
  RelationReport report;
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.failures.push_back(msg);
  };
  if (evaluate_matrix(reduce({0, 1, 2})) != g_star_matrix())
    fail("the word [0,1,2] does not evaluate to g*");
  for (long l = -l_range; l <= l_range; ++l) {
    for (long k = 0; k < 3; ++k) {
      const long n = 3 * l + k;
      const Mat3 direct = iota_n_star_matrix(n);
      const Mat3 via_word = evaluate_matrix(reduce(iota_letters(n)));
      if (direct != via_word)
        fail("involution " + std::to_string(n) + " differs from its unfolded word");
      if (direct * direct != Mat3::identity())
        fail("involution " + std::to_string(n) + " does not square to the identity");
    }
  }
  return report;
}

// Uniformly random reduced word of exactly the given length; deterministic
// per seed (raw modular draws, no distribution adapters).
inline ReducedWord random_word(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> letters;
  letters.reserve(length);
  int prev = -1;
  for (std::size_t i = 0; i < length; ++i) {
    int letter;
    if (prev < 0) {
      letter = static_cast<int>(rng() % 3);
    } else {
      const int pick = static_cast<int>(rng() % 2);
      int options[2];
      int idx = 0;
      for (int c = 0; c < 3; ++c)
        if (c != prev) options[idx++] = c;
      letter = options[pick];
    }
    letters.push_back(letter);
    prev = letter;
  }
  return reduce(letters);
}

}  // namespace hilbsq
