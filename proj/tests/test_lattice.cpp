#include <catch_amalgamated.hpp>

#include <array>
#include <random>

#include "hilbsq/lattice.hpp"

using namespace hilbsq;

namespace {

// Independent pairing oracle: v^T G w with the Gram matrix written out.
BigInt gram_oracle(const HilbClass& a, const HilbClass& b) {
  const std::array<std::array<long, 3>, 3> g = {{{4, 0, 2}, {0, -2, 0}, {2, 0, -4}}};
  const std::array<BigInt, 3> va = {a.x, a.lam, a.y};
  const std::array<BigInt, 3> vb = {b.x, b.lam, b.y};
  BigInt acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += va[i] * g[i][j] * vb[j];
  return acc;
}

}  // namespace

TEST_CASE("pairing matches the Gram matrix") {
  CHECK(pair(hilb_h1(), hilb_h1()) == 4);
  CHECK(pair(hilb_e(), hilb_e()) == -2);
  CHECK(pair(hilb_h2(), hilb_h2()) == -4);
  CHECK(pair(hilb_h1(), hilb_h2()) == 2);
  CHECK(pair(HilbClass(1, -1, 1), HilbClass(2, -1, 3)) == 4);
  CHECK(gram_oracle(HilbClass(1, -1, 1), HilbClass(2, -1, 3)) == 4);

  std::mt19937_64 rng(7);
  auto rnd = [&]() { return static_cast<long>(rng() % 21) - 10; };
  for (int i = 0; i < 500; ++i) {
    const HilbClass a(rnd(), rnd(), rnd());
    const HilbClass b(rnd(), rnd(), rnd());
    const HilbClass c(rnd(), rnd(), rnd());
    const long s = rnd(), t = rnd();
    CHECK(pair(a, b) == pair(b, a));
    CHECK(pair(a, b) == gram_oracle(a, b));
    const HilbClass combo(s * a.x + t * b.x, s * a.lam + t * b.lam, s * a.y + t * b.y);
    CHECK(pair(combo, c) == s * pair(a, c) + t * pair(b, c));
    CHECK(pair(a, a) == a.square());
    CHECK(a.square() % 2 == 0);
    CHECK(SurfaceClass(a.x, a.y).square() % 4 == 0);
  }
}

TEST_CASE("surface ample cone") {
  CHECK(is_ample_surface(SurfaceClass(1, 0)));
  CHECK(is_ample_surface(SurfaceClass(1, 1)));
  CHECK_FALSE(is_ample_surface(SurfaceClass(1, 2)));   // square -4
  CHECK_FALSE(is_ample_surface(SurfaceClass(-1, 0)));  // wrong side
  CHECK_FALSE(is_ample_surface(SurfaceClass(0, 0)));
}

TEST_CASE("surface effectivity") {
  CHECK(is_effective_surface(SurfaceClass(1, 0)));
  CHECK_FALSE(is_effective_surface(SurfaceClass(0, 1)));    // square -4
  CHECK_FALSE(is_effective_surface(SurfaceClass(-2, -1)));  // negative h1-degree
  CHECK_FALSE(is_effective_surface(SurfaceClass(0, 0)));
}

TEST_CASE("degree-4 polarizations") {
  CHECK(dn_divisor(0) == SurfaceClass(1, 0));
  CHECK(dn_divisor(1) == SurfaceClass(1, 1));
  CHECK(dn_divisor(2) == SurfaceClass(2, 3));
  for (long n = -5; n <= 5; ++n) {
    CHECK(dn_divisor(n).square() == 4);
    CHECK(is_ample_surface(dn_divisor(n)));
  }
}

TEST_CASE("induced polarization on the Hilbert square") {
  CHECK(induced_polarization(SurfaceClass(1, 0)) == HilbClass(1, -1, 0));
  CHECK(induced_polarization(SurfaceClass(1, 1)) == HilbClass(1, -1, 1));
  CHECK(induced_polarization(SurfaceClass(2, 3)) == HilbClass(2, -1, 3));
  CHECK(induced_polarization(SurfaceClass(1, 0)).square() == 2);
  CHECK_THROWS_AS(induced_polarization(SurfaceClass(0, 1)), NotAmpleError);
}

TEST_CASE("k-very-ampleness") {
  CHECK(is_k_very_ample(SurfaceClass(1, 0), 1).value);
  CHECK_FALSE(is_k_very_ample(SurfaceClass(1, 0), 2).value);  // 4 < 8
  CHECK(is_k_very_ample(SurfaceClass(2, 0), 2).value);
  CHECK_THROWS_AS(is_k_very_ample(SurfaceClass(1, 2), 1), NotAmpleError);

  // 0-very ample (globally generated) for every ample class in a window
  for (long x = 1; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) {
      const SurfaceClass l(x, y);
      if (!(l.x > 0 && l.square() > 0)) continue;
      CHECK(is_k_very_ample(l, 0).value);
    }

  // large k exercises the finite search path
  const auto big = is_k_very_ample(SurfaceClass(3, 1), 7);
  CHECK(big.value);  // L^2 = 44 >= 28 and the chain admits no violator
}

TEST_CASE("negative class enumeration") {
  CHECK(minus_d_classes(-10, 50).empty());

  const auto walls_small = minus_d_classes(-2, 1);
  REQUIRE(walls_small.size() == 2);
  CHECK(walls_small[0] == HilbClass(0, -1, 0));
  CHECK(walls_small[1] == HilbClass(0, 1, 0));

  const auto zero = minus_d_classes(0, 50);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == HilbClass(0, 0, 0));

  // independent brute-force cross-check at a small bound
  const auto walls = minus_d_classes(-2, 3);
  std::vector<HilbClass> oracle;
  for (long x = -3; x <= 3; ++x)
    for (long lam = -3; lam <= 3; ++lam)
      for (long y = -3; y <= 3; ++y)
        if (HilbClass(x, lam, y).square() == -2) oracle.emplace_back(x, lam, y);
  std::sort(oracle.begin(), oracle.end());
  CHECK(walls == oracle);
  REQUIRE(walls.size() == 10);
  CHECK(walls[4] == HilbClass(0, -1, 0));
}

TEST_CASE("square minus ten is impossible modulo 16") {
  const auto report = no_minus_ten_certificate();
  CHECK(report.entries.size() == 64);
  CHECK(report.all_inconsistent);
  for (const auto& e : report.entries) CHECK_FALSE(e.consistent);
}

TEST_CASE("no nonzero isotropic vectors: parity descent") {
  // A primitive solution of 2(x^2+xy-y^2) = lam^2 is impossible:
  // x, y not both even forces x^2+xy-y^2 odd, so lam^2 = 2 (mod 4);
  // x, y both even with lam odd is just as impossible. Squares mod 4
  // are only 0 or 1.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int q = x * x + x * y - y * y;
      if (x == 0 && y == 0) continue;
      CHECK((q % 2 + 2) % 2 == 1);
    }
  for (int lam = 0; lam < 4; ++lam) {
    const int sq = (lam * lam) % 4;
    CHECK((sq == 0 || sq == 1));
  }
  for (long bound : {50L, 100L, 200L}) {
    const auto sols = minus_d_classes(0, bound);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0] == HilbClass(0, 0, 0));
  }
}

TEST_CASE("ampleness on the Hilbert square") {
  CHECK(is_ample_hilb(HilbClass(1, -1, 0)).status == AmpleStatus::Ample);
  CHECK(is_ample_hilb(HilbClass(1, -1, 1)).status == AmpleStatus::Ample);
  CHECK(is_ample_hilb(HilbClass(2, -1, 3)).status == AmpleStatus::Ample);

  const auto boundary = is_ample_hilb(HilbClass(1, 0, 0));
  CHECK(boundary.status == AmpleStatus::NotAmple);
  REQUIRE(boundary.witness.has_value());
  CHECK(*boundary.witness == HilbClass(0, 1, 0));
  CHECK(boundary.nef_boundary);

  const auto neg = is_ample_hilb(HilbClass(0, 1, 0));
  CHECK(neg.status == AmpleStatus::NotAmple);
  CHECK_FALSE(neg.witness.has_value());

  for (const auto& l : {SurfaceClass(1, 0), SurfaceClass(1, 1), SurfaceClass(2, 1),
                        SurfaceClass(2, 3)}) {
    CHECK(is_ample_hilb(induced_polarization(l)).status == AmpleStatus::Ample);
  }

  // tiny wall_bound turns a positive answer into an honest Inconclusive
  const auto squeezed = is_ample_hilb(HilbClass(2, -1, 3), canonical_polarization(), 2);
  CHECK(squeezed.status == AmpleStatus::Inconclusive);

  CHECK_THROWS_AS(is_ample_hilb(HilbClass(1, -1, 0), HilbClass(0, 1, 0)), NotAmpleError);
}
