#pragma once

// The full verification suite: every numbered check pins the key matrices,
// fixed points, hyperbolic constants, group relations, non-existence
// certificates, the word-problem round trip, ampleness decisions, and the
// renderer, each as one named pass/fail entry.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "hilbsq/hyperbolic.hpp"
#include "hilbsq/isometry.hpp"
#include "hilbsq/lattice.hpp"
#include "hilbsq/quad.hpp"
#include "hilbsq/render.hpp"
#include "hilbsq/words.hpp"

namespace hilbsq {

struct VerifyOptions {
  long long search_bound = 100;    // brute-force bound for square -10 classes
  long long isotropy_bound = 200;  // brute-force bound for isotropic classes
  long l_max = 64;                 // descent conjugation bound
  std::uint64_t seed = 1;          // base seed for the word sample
  long word_count = 10000;
  long word_max_len = 12;
  // test hook: replaces the pinned generator triple inside the fidelity
  // check only, to exercise the failure reporting path
  std::optional<std::array<Mat3, 3>> generator_override;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass = true;
};

namespace verify_detail {

struct Harness {
  VerifyReport report;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    report.all_pass = report.all_pass && r.pass;
    report.checks.push_back(std::move(r));
  }
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

}  // namespace verify_detail

inline VerifyReport run_verification(const VerifyOptions& opts = {}) {
  using verify_detail::require;
  verify_detail::Harness h;

  h.run("generators", [&]() {
    const std::array<Mat3, 3> pinned = {
        Mat3::from_rows({{{3, 2, 2}, {-4, -3, -2}, {0, 0, -1}}}),
        Mat3::from_rows({{{5, 2, -2}, {-6, -3, 2}, {6, 2, -3}}}),
        Mat3::from_rows({{{27, 4, -16}, {-14, -3, 8}, {42, 6, -25}}})};
    const std::array<Mat3, 3>& gens =
        opts.generator_override ? *opts.generator_override : generator_matrices();
    for (int k = 0; k < 3; ++k) {
      require(gens[k] == pinned[k], "generator " + std::to_string(k) + " differs from its pinned matrix");
      require(gens[k] * gens[k] == Mat3::identity(),
              "generator " + std::to_string(k) + " is not an involution");
      require(preserves_gram(gens[k]),
              "generator " + std::to_string(k) + " does not preserve the form");
    }
    return "three involutions match, square to I, preserve the form";
  });

  h.run("g-star", [&]() {
    const Mat3 g = g_star_matrix();
    require(g == Mat3::from_rows({{{5, 0, 8}, {0, 1, 0}, {8, 0, 13}}}),
            "generator product differs from the pinned matrix");
    require(g.apply(HilbClass(0, 1, 0)) == HilbClass(0, 1, 0), "g* must fix e");
    const auto unit = golden_unit_action(g);
    require(unit.has_value() && *unit == eta_power(6),
            "surface action of g* is not multiplication by eta^6");
    const auto cls = classify(g_star());
    require(cls.kind == IsometryKind::Hyperbolic && cls.so_trace == 19,
            "g* must be hyperbolic with trace 19");
    require(cls.spectral_radius_is_exact && *cls.spectral_radius == QuadExt(9, 4, 5),
            "spectral radius must be exactly 9 + 4 sqrt(5)");
    require(*cls.spectral_radius == eta_power(6).to_quad(),
            "spectral radius must equal eta^6");
    require((*cls.spectral_radius - QuadExt::from_int(1)).sign() > 0,
            "spectral radius must exceed 1 (positive entropy)");
    return "g* = [[5,0,8],[0,1,0],[8,0,13]], fixes e, acts by eta^6, spectral radius 9+4sqrt(5)";
  });

  h.run("fixed-points", [&]() {
    const auto gens = generators();
    const HilbClass expected[3] = {HilbClass(1, -1, 0), HilbClass(1, -1, 1),
                                   HilbClass(2, -1, 3)};
    for (int k = 0; k < 3; ++k) {
      const auto fp = fixed_points(gens[k]);
      require(std::holds_alternative<InteriorFixedPoint>(fp),
              "generator fixed point is not interior");
      const HilbClass p = std::get<InteriorFixedPoint>(fp).point;
      require(p == expected[k], "fixed point " + std::to_string(k) + " is not " +
                                    expected[k].str() + " (got " + p.str() + ")");
      require(p.square() == 2, "fixed point must have square 2");
      require(is_ample_hilb(p).status == AmpleStatus::Ample, "fixed point must be ample");
    }
    return "fixed points (1,-1,0), (1,-1,1), (2,-1,3); square 2; ample";
  });

  h.run("boundary-fixed-points", [&]() {
    const auto fp = fixed_points(g_star());
    require(std::holds_alternative<BoundaryFixedPair>(fp), "g* must fix a boundary pair");
    const auto& bp = std::get<BoundaryFixedPair>(fp);
    require(bp.exact, "boundary fixed points must be exact");
    require(bp.expanding[0] == QuadExt(Rational(-1, 2), Rational(1, 2), 5) &&
                bp.expanding[1] == QuadExt() && bp.expanding[2] == QuadExt::from_int(1),
            "expanding fixed point must be ((-1+sqrt(5))/2, 0, 1)");
    require(bp.contracting[0] == QuadExt(Rational(-1, 2), Rational(-1, 2), 5) &&
                bp.contracting[1] == QuadExt() && bp.contracting[2] == QuadExt::from_int(1),
            "contracting fixed point must be (-(1+sqrt(5))/2, 0, 1)");
    return "boundary fixed points ((-1+sqrt(5))/2,0,1) and (-(1+sqrt(5))/2,0,1), exact";
  });

  h.run("relations", [&]() {
    const auto rep = verify_relations(3);
    require(rep.ok, rep.failures.empty() ? "relation check failed" : rep.failures.front());
    const auto fp = fixed_points(iota_n_star(3));
    require(std::holds_alternative<InteriorFixedPoint>(fp) &&
                std::get<InteriorFixedPoint>(fp).point == HilbClass(5, -1, 8),
            "third involution must fix (5,-1,8)");
    const SurfaceClass d3 = dn_divisor(3);
    require(d3.x == 5 && d3.y == 8, "eta^6 coordinates must be (5,8)");
    return "word [0,1,2] evaluates to g*; conjugation family matches for |l| <= 3; "
           "third involution fixes (5,-1,8)";
  });

  h.run("minus-ten-and-isotropy", [&]() {
    require(minus_d_classes(-10, opts.search_bound).empty(),
            "found a square -10 class within the search bound");
    const auto residues = no_minus_ten_certificate();
    require(residues.entries.size() == 64 && residues.all_inconsistent,
            "residue table admits a square -10 class");
    const auto isotropic = minus_d_classes(0, opts.isotropy_bound);
    require(isotropic.size() == 1 && isotropic[0] == HilbClass(0, 0, 0),
            "found a nonzero isotropic class");
    std::ostringstream os;
    os << "no square -10 class up to " << opts.search_bound
       << "; all 64 residue triples inconsistent; no nonzero isotropic class up to "
       << opts.isotropy_bound;
    return os.str();
  });

  h.run("triangle-chain", [&]() {
    const InteriorPoint p0{HilbClass(1, -1, 0)}, p1{HilbClass(1, -1, 1)},
        p2{HilbClass(2, -1, 3)};
    require(distance_cosh(p0, p1) == QuadExt::from_int(2), "cosh d(P0,P1) must be 2");
    require(distance_cosh(p1, p2) == QuadExt::from_int(2), "cosh d(P1,P2) must be 2");
    require(distance_cosh(p0, p2) == QuadExt::from_int(6), "cosh d(P0,P2) must be 6");
    const auto n = normalize_triple(p0, p1, p2);
    require(n.exact, "normalization must stay exact");
    require(n.k == QuadExt(2, 1, 3), "k must be 2 + sqrt(3)");
    require(n.m == QuadExt(Rational(3, 4), Rational(-1, 4), 3), "m must be (3 - sqrt(3))/4");
    require(n.b_sq == QuadExt(Rational(5, 4), Rational(-5, 8), 3),
            "b^2 must be 5(2 - sqrt(3))/8");
    const auto tri = solve_triangle_exact(2, 2, 6);
    require(tri.lambda_exact.has_value() && *tri.lambda_exact == QuadExt(0, 1, 5),
            "lambda must be exactly sqrt(5)");
    const auto traces = beardon_trace_check(n.T, n.U, n.V, std::sqrt(5.0));
    require(traces.pass, "a triple-product trace misses 2*lambda beyond 1e-9");
    const auto& g = generator_matrices();
    const Mat3 prods[6] = {g[0] * g[1] * g[2], g[2] * g[0] * g[1], g[1] * g[2] * g[0],
                           g[2] * g[1] * g[0], g[0] * g[2] * g[1], g[1] * g[0] * g[2]};
    for (const auto& p : prods)
      require(p.trace() == 19, "a triple product has trace different from 19");
    require(BigInt(19 + 1) == BigInt(20), "trace bridge 19 + 1 = (2 sqrt(5))^2");
    return "cosh distances (2,2,6); k = 2+sqrt(3), m = (3-sqrt(3))/4, b^2 = 5(2-sqrt(3))/8; "
           "lambda = sqrt(5); six traces 2*sqrt(5); six orderings have trace 19 = (2sqrt5)^2 - 1";
  });

  h.run("signature-chain", [&]() {
    const QuadExt lambda(0, 1, 5);
    require((lambda - QuadExt::from_int(1)).sign() > 0, "lambda must exceed 1");
    const auto sig = signature_from_lambda(lambda);
    require(std::holds_alternative<FuchsianSignature>(sig), "signature must be determined");
    const auto& s = std::get<FuchsianSignature>(sig);
    require(s == FuchsianSignature{0, {2, 2, 2}, 0, 1}, "signature must be (0: 2,2,2; 0; 1)");
    const auto fp = free_product_structure(s);
    require(fp.cyclic_orders == std::vector<long>({2, 2, 2}) && fp.free_rank == 0,
            "free product must be Z2 * Z2 * Z2 with trivial free part");
    return "lambda = sqrt(5) > 1 => signature (0: 2,2,2; 0; 1) => " + fp.str() +
           " with free rank 0";
  });

  h.run("trace-families", [&]() {
    const InteriorPoint p0{HilbClass(1, -1, 0)}, p1{HilbClass(1, -1, 1)},
        p2{HilbClass(2, -1, 3)};
    const auto n = normalize_triple(p0, p1, p2);
    const auto e0 = tx_trace_family_exact(n.b_sq, n.m, n.k, 0);
    require(e0.uvu_trace == QuadExt::from_int(4), "trace(TU) must be exactly 4");
    const auto e1 = tx_trace_family_exact(n.b_sq, n.m, n.k, 1);
    require(e1.vu_trace_sq == QuadExt::from_int(20), "trace(TVU)^2 must be exactly 20");
    for (long s = -6; s <= 6; ++s) {
      const auto t = tx_trace_family(n.b_approx, n.m_approx, n.k_approx, s);
      require(std::abs(t.t_uvu) > 2.0 + 1e-9, "T(UV)^sU fails hyperbolicity");
      require(std::abs(t.t_vuv) > 2.0 + 1e-9, "T(VU)^sV fails hyperbolicity");
      if (s != 0) {
        require(std::abs(t.t_uv) > 2.0 + 1e-9, "T(UV)^s fails hyperbolicity");
        require(std::abs(t.t_vu) > 2.0 + 1e-9, "T(VU)^s fails hyperbolicity");
      }
    }
    const Mat3 m01 = generator_matrices()[0] * generator_matrices()[1];
    require(m01.trace() == 15, "trace of the 01 product must be 15");
    require(std::abs(tx_trace_family(n.b_approx, n.m_approx, n.k_approx, 0).t_uvu -
                     std::sqrt(15.0 + 1.0)) < 1e-9,
            "SO trace 15 must map to half-plane trace 4");
    return "trace(TU) = 4 exactly; trace(TVU)^2 = 20 exactly; all families hyperbolic "
           "for |s| <= 6; SO/half-plane trace bridge 15 <-> 4";
  });

  h.run("word-problem", [&]() {
    long checked = 0;
    for (long i = 0; i < opts.word_count; ++i) {
      const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(i);
      const ReducedWord w =
          random_word(static_cast<std::size_t>(seed % (opts.word_max_len + 1)), seed);
      const auto d = decompose(evaluate(w), opts.l_max);
      require(d.status == DecomposeStatus::Ok,
              "round trip rejected a group element (seed " + std::to_string(seed) + ")");
      require(d.word == w, "round trip returned a different word (seed " +
                               std::to_string(seed) + ")");
      for (std::size_t j = 1; j < d.steps.size(); ++j)
        require(d.steps[j].lambda > d.steps[j - 1].lambda, "descent failed to be strict");
      if (!d.steps.empty())
        require(BigInt(d.steps.size()) <= -d.initial_lambda,
                "descent exceeded the lambda iteration bound");
      ++checked;
    }
    const Mat3 galois = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {0, 0, -1}}});
    require(decompose(LatticeIsometry(galois), opts.l_max).status ==
                DecomposeStatus::NotInGroup,
            "determinant -1 input must be rejected");
    Mat3 swapped = galois;
    for (auto& e : swapped.m) e = -e;
    require(decompose(LatticeIsometry(swapped), opts.l_max).status ==
                DecomposeStatus::NotInGroup,
            "cone-swapping input must be rejected");
    const Mat3 eta2 = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {1, 0, 2}}});
    require(decompose(LatticeIsometry(eta2), opts.l_max).status ==
                DecomposeStatus::NotInGroup,
            "eta^2-action natural input must be rejected");
    std::ostringstream os;
    os << checked << " random reduced words round-trip with strict descent; "
       << "det -1, cone-swapping, and eta^2-action inputs rejected";
    return os.str();
  });

  h.run("ampleness", [&]() {
    for (const auto& c : {HilbClass(1, -1, 0), HilbClass(1, -1, 1), HilbClass(2, -1, 3)})
      require(is_ample_hilb(c).status == AmpleStatus::Ample, c.str() + " must be ample");
    const auto boundary = is_ample_hilb(HilbClass(1, 0, 0));
    require(boundary.status == AmpleStatus::NotAmple && boundary.nef_boundary &&
                boundary.witness && *boundary.witness == HilbClass(0, 1, 0),
            "(1,0,0) must sit on the nef boundary with witness e");
    require(is_ample_hilb(HilbClass(0, 1, 0)).status == AmpleStatus::NotAmple,
            "e must not be ample");
    require(is_k_very_ample(SurfaceClass(1, 0), 1).value, "(1,0) must be 1-very ample");
    require(!is_k_very_ample(SurfaceClass(1, 0), 2).value, "(1,0) must not be 2-very ample");
    require(is_k_very_ample(SurfaceClass(2, 0), 2).value, "(2,0) must be 2-very ample");
    return "(1,-1,0), (1,-1,1), (2,-1,3) ample; (1,0,0) nef-boundary with witness e; "
           "e not ample; k-very-ample triple as expected";
  });

  h.run("render", [&]() {
    const DiskScene scene = default_scene();
    const std::string svg1 = render_svg(scene);
    const std::string svg2 = render_svg(scene);
    require(svg1 == svg2, "two renders of the same scene differ");
    // read the emitted points back and re-measure the hyperbolic distances
    std::vector<DiskPoint> pts;
    const std::regex pt_re("<circle class=\"pt\" cx=\"([-0-9.]+)\" cy=\"([-0-9.]+)\"");
    for (auto it = std::sregex_iterator(svg1.begin(), svg1.end(), pt_re);
         it != std::sregex_iterator(); ++it) {
      pts.push_back(DiskPoint{std::stod((*it)[1]), -std::stod((*it)[2])});
    }
    require(pts.size() == 3, "scene must contain exactly three labeled points");
    const double expected[3] = {2.0, 6.0, 2.0};  // (P0,P1), (P0,P2), (P1,P2)
    int idx = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double measured = disk_cosh_distance(pts[i], pts[j]);
        require(std::abs(measured - expected[idx]) < 1e-6,
                "rendered distance differs from the exact value");
        ++idx;
      }
    return "SVG renders byte-identically; the three point distances re-measure to "
           "cosh = 2, 2, 6 within 1e-6";
  });

  return h.report;
}

}  // namespace hilbsq
