#include <catch_amalgamated.hpp>

#include <vector>

#include "hilbsq/isometry.hpp"

using namespace hilbsq;

TEST_CASE("generator matrices are the pinned involutions") {
  const auto& g = generator_matrices();
  CHECK(g[0] == Mat3::from_rows({{{3, 2, 2}, {-4, -3, -2}, {0, 0, -1}}}));
  CHECK(g[1] == Mat3::from_rows({{{5, 2, -2}, {-6, -3, 2}, {6, 2, -3}}}));
  CHECK(g[2] == Mat3::from_rows({{{27, 4, -16}, {-14, -3, 8}, {42, 6, -25}}}));
  for (const auto& m : g) {
    CHECK(m * m == Mat3::identity());
    CHECK(preserves_gram(m));
    CHECK(m.det() == 1);
    CHECK(preserves_cone(m));
  }
  // independent determinant expansion for the middle generator
  const Mat3& m = g[1];
  const BigInt det_oracle =
      m.at(0, 0) * m.at(1, 1) * m.at(2, 2) + m.at(0, 1) * m.at(1, 2) * m.at(2, 0) +
      m.at(0, 2) * m.at(1, 0) * m.at(2, 1) - m.at(0, 2) * m.at(1, 1) * m.at(2, 0) -
      m.at(0, 0) * m.at(1, 2) * m.at(2, 1) - m.at(0, 1) * m.at(1, 0) * m.at(2, 2);
  CHECK(det_oracle == 1);
}

TEST_CASE("g* is the displayed product and acts by eta^6") {
  const Mat3 g = g_star_matrix();
  CHECK(g == Mat3::from_rows({{{5, 0, 8}, {0, 1, 0}, {8, 0, 13}}}));
  CHECK(g.apply(HilbClass(0, 1, 0)) == HilbClass(0, 1, 0));

  const auto unit = golden_unit_action(g);
  REQUIRE(unit.has_value());
  CHECK(*unit == eta_power(6));
  CHECK(*unit == GoldenInt(5, 8));

  const IsometryClass cls = classify(g_star());
  CHECK(cls.kind == IsometryKind::Hyperbolic);
  CHECK(cls.so_trace == 19);
  REQUIRE(cls.spectral_radius_is_exact);
  CHECK(*cls.spectral_radius == QuadExt(9, 4, 5));
  CHECK(*cls.spectral_radius == eta_power(6).to_quad());
}

TEST_CASE("classification of generators and identity") {
  const auto cls0 = classify(generators()[0]);
  CHECK(cls0.kind == IsometryKind::Elliptic);
  CHECK(cls0.so_trace == -1);
  REQUIRE(cls0.elliptic_order.has_value());
  CHECK(*cls0.elliptic_order == 2);

  CHECK(classify(LatticeIsometry(Mat3::identity())).kind == IsometryKind::Identity);

  // orientation and cone guards
  const Mat3 galois = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {0, 0, -1}}});
  REQUIRE(preserves_gram(galois));
  CHECK_THROWS_AS(classify(LatticeIsometry(galois)), OrientationReversingError);

  Mat3 swapped = galois;
  for (auto& e : swapped.m) e = -e;
  REQUIRE(preserves_gram(swapped));
  REQUIRE(swapped.det() == 1);
  CHECK_THROWS_AS(classify(LatticeIsometry(swapped)), ConeSwappingError);

  CHECK_THROWS_AS(LatticeIsometry(Mat3::from_rows({{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}})),
                  NotAnIsometryError);
}

TEST_CASE("fixed points of the generators") {
  const auto gens = generators();
  const HilbClass expected[3] = {HilbClass(1, -1, 0), HilbClass(1, -1, 1),
                                 HilbClass(2, -1, 3)};
  for (int k = 0; k < 3; ++k) {
    const auto fp = fixed_points(gens[k]);
    REQUIRE(std::holds_alternative<InteriorFixedPoint>(fp));
    const HilbClass p = std::get<InteriorFixedPoint>(fp).point;
    CHECK(p == expected[k]);
    CHECK(p.square() == 2);
  }
}

TEST_CASE("boundary fixed points of g*") {
  const auto fp = fixed_points(g_star());
  REQUIRE(std::holds_alternative<BoundaryFixedPair>(fp));
  const auto& pair_fp = std::get<BoundaryFixedPair>(fp);
  REQUIRE(pair_fp.exact);
  const QuadExt half(Rational(1, 2), 0, 1);
  CHECK(pair_fp.expanding[0] == QuadExt(Rational(-1, 2), Rational(1, 2), 5));
  CHECK(pair_fp.expanding[1] == QuadExt());
  CHECK(pair_fp.expanding[2] == QuadExt::from_int(1));
  CHECK(pair_fp.contracting[0] == QuadExt(Rational(-1, 2), Rational(-1, 2), 5));
  CHECK(pair_fp.contracting[1] == QuadExt());
  CHECK(pair_fp.contracting[2] == QuadExt::from_int(1));
}

TEST_CASE("conjugated involution family") {
  const auto& gens = generator_matrices();
  for (long n = 0; n < 3; ++n) CHECK(iota_n_star_matrix(n) == gens[n]);

  // fixed point of the n-th involution carries the coordinates of eta^(2n)
  for (long n = -6; n <= 6; ++n) {
    const LatticeIsometry iota = iota_n_star(n);
    CHECK(iota.matrix() * iota.matrix() == Mat3::identity());
    CHECK(preserves_gram(iota.matrix()));
    const auto fp = fixed_points(iota);
    REQUIRE(std::holds_alternative<InteriorFixedPoint>(fp));
    const HilbClass p = std::get<InteriorFixedPoint>(fp).point;
    const SurfaceClass dn = dn_divisor(n);
    CHECK(p == HilbClass(dn.x, -1, dn.y));
  }
  CHECK(std::get<InteriorFixedPoint>(fixed_points(iota_n_star(3))).point ==
        HilbClass(5, -1, 8));

  // conjugation relation with the pinned sign of l
  for (long l = -3; l <= 3; ++l)
    for (long k = 0; k < 3; ++k) {
      const Mat3 lhs = iota_n_star_matrix(3 * l + k);
      const Mat3 rhs = power(g_star_matrix(), l) * gens[k] * power(g_star_matrix(), -l);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("naturality detection") {
  CHECK(is_natural(g_star()));
  CHECK(is_natural(LatticeIsometry(Mat3::identity())));
  CHECK_FALSE(is_natural(generators()[0]));

  const HilbClass shape = nonnatural_shape(generators()[0]);
  CHECK(shape == HilbClass(2, -3, 0));
  CHECK(shape.lam < 0);
  CHECK(is_ample_surface(shape.surface_part()));

  // a Gram isometry that fixes e but acts by eta^2 is not of the natural
  // shape family; golden_unit_action still reads off the unit
  const Mat3 eta2 = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {1, 0, 2}}});
  REQUIRE(preserves_gram(eta2));
  const auto unit = golden_unit_action(eta2);
  REQUIRE(unit.has_value());
  CHECK(*unit == eta_power(2));
}

TEST_CASE("no parabolic among small-entry isometries") {
  // enumerate all Gram isometries with entries bounded by 6 column by column
  std::vector<Vec3> sq4, sqm2, sqm4;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b)
      for (long c = -6; c <= 6; ++c) {
        const HilbClass v(a, b, c);
        const BigInt s = v.square();
        if (s == 4) sq4.push_back({a, b, c});
        if (s == -2) sqm2.push_back({a, b, c});
        if (s == -4) sqm4.push_back({a, b, c});
      }
  auto pairing = [](const Vec3& u, const Vec3& v) {
    return pair(HilbClass(u[0], u[1], u[2]), HilbClass(v[0], v[1], v[2]));
  };
  int found = 0;
  for (const auto& c0 : sq4)
    for (const auto& c1 : sqm2) {
      if (pairing(c0, c1) != 0) continue;
      for (const auto& c2 : sqm4) {
        if (pairing(c0, c2) != 2 || pairing(c1, c2) != 0) continue;
        Mat3 m;
        for (int i = 0; i < 3; ++i) {
          m.at(i, 0) = c0[i];
          m.at(i, 1) = c1[i];
          m.at(i, 2) = c2[i];
        }
        REQUIRE(preserves_gram(m));
        ++found;
        if (m.det() != 1 || !preserves_cone(m)) continue;
        const auto cls = classify(LatticeIsometry(m));
        CHECK(cls.kind != IsometryKind::Parabolic);
        CHECK(cls.so_trace >= -1);
      }
    }
  CHECK(found > 0);
}
