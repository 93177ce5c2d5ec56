#include <catch_amalgamated.hpp>

#include <functional>
#include <vector>

#include "hilbsq/words.hpp"

using namespace hilbsq;

TEST_CASE("word reduction") {
  CHECK(reduce({0, 0}).empty());
  CHECK(reduce({0, 1, 1, 0, 2}) == reduce({2}));
  CHECK(reduce({0, 1, 2}).letters() == std::vector<int>({0, 1, 2}));
  CHECK(reduce({1, 2, 2, 1, 0, 0}).empty());
  CHECK_THROWS_AS(reduce({0, 5}), BadLetterError);
  CHECK_THROWS_AS(reduce({-1}), BadLetterError);
}

TEST_CASE("evaluation") {
  CHECK(evaluate_matrix(reduce({0})) == generator_matrices()[0]);
  CHECK(evaluate_matrix(reduce({0, 1, 2})) == g_star_matrix());
  const Mat3 m = evaluate_matrix(reduce({1, 0}));
  CHECK(m == generator_matrices()[0] * generator_matrices()[1]);
  CHECK(m.trace() == 15);
  CHECK(evaluate_matrix(ReducedWord()) == Mat3::identity());
}

TEST_CASE("evaluation is a contravariant homomorphism") {
  std::vector<int> u_plus_v;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const ReducedWord u = random_word(seed % 7, seed);
    const ReducedWord v = random_word((seed + 3) % 9, seed * 77 + 1);
    u_plus_v = u.letters();
    u_plus_v.insert(u_plus_v.end(), v.letters().begin(), v.letters().end());
    CHECK(evaluate_matrix(reduce(u_plus_v)) ==
          evaluate_matrix(v) * evaluate_matrix(u));
  }
}

TEST_CASE("natural power detection") {
  CHECK(natural_power_detect(Mat3::identity()) == 0);
  CHECK(natural_power_detect(power(g_star_matrix(), 3)) == 3);
  CHECK(natural_power_detect(power(g_star_matrix(), -2)) == -2);

  // fixes e, acts by eta^2: not a power of g
  const Mat3 eta2 = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {1, 0, 2}}});
  CHECK_FALSE(natural_power_detect(eta2).has_value());
  // fixes e, Galois flip on the surface part: not even a unit action
  const Mat3 galois = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {0, 0, -1}}});
  CHECK_FALSE(natural_power_detect(galois).has_value());
}

TEST_CASE("decompose single generators and the identity") {
  for (int k = 0; k < 3; ++k) {
    const auto d = decompose(generators()[k]);
    REQUIRE(d.status == DecomposeStatus::Ok);
    CHECK(d.word.letters() == std::vector<int>({k}));
    CHECK(d.steps.size() == 1);
  }
  const auto id = decompose(LatticeIsometry(Mat3::identity()));
  REQUIRE(id.status == DecomposeStatus::Ok);
  CHECK(id.word.empty());
  CHECK(id.natural_tail == 0);

  const auto g = decompose(g_star());
  REQUIRE(g.status == DecomposeStatus::Ok);
  CHECK(g.word.letters() == std::vector<int>({0, 1, 2}));
  CHECK(g.natural_tail == 1);
}

TEST_CASE("decompose rejects what is not in the group") {
  const Mat3 galois = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {0, 0, -1}}});
  const auto d1 = decompose(LatticeIsometry(galois));
  CHECK(d1.status == DecomposeStatus::NotInGroup);  // determinant -1

  Mat3 swapped = galois;
  for (auto& e : swapped.m) e = -e;
  const auto d2 = decompose(LatticeIsometry(swapped));
  CHECK(d2.status == DecomposeStatus::NotInGroup);  // cone swap

  const Mat3 eta2 = Mat3::from_rows({{{1, 0, 1}, {0, 1, 0}, {1, 0, 2}}});
  const auto d3 = decompose(LatticeIsometry(eta2));
  CHECK(d3.status == DecomposeStatus::NotInGroup);  // eta^2 action on the surface part
}

TEST_CASE("round trip on random reduced words with descent invariants") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const ReducedWord w = random_word(seed % 13, 1000 + seed);
    const auto d = decompose(evaluate(w));
    REQUIRE(d.status == DecomposeStatus::Ok);
    CHECK(d.word == w);
    // strict descent and the lambda iteration bound
    for (std::size_t i = 1; i < d.steps.size(); ++i)
      CHECK(d.steps[i].lambda > d.steps[i - 1].lambda);
    if (!d.steps.empty()) {
      CHECK(d.initial_lambda == d.steps.front().lambda);
      CHECK(BigInt(d.steps.size()) <= -d.initial_lambda);
    }
  }
}

TEST_CASE("naturality across all short words") {
  // evaluate(w) fixes e exactly when w is a power of [0,1,2] or its inverse
  std::vector<std::vector<int>> words;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& w) {
    words.push_back(w);
    if (w.size() == 9) return;
    for (int k = 0; k < 3; ++k) {
      if (!w.empty() && w.back() == k) continue;
      w.push_back(k);
      grow(w);
      w.pop_back();
    }
  };
  std::vector<int> start;
  grow(start);
  CHECK(words.size() == 1534);  // 1 + 3*(2^9 - 1)
  const Vec3 e = {0, 1, 0};
  int natural_count = 0;
  for (const auto& letters : words) {
    const ReducedWord w = reduce(letters);
    REQUIRE(w.letters() == letters);
    const bool fixes_e = evaluate_matrix(w).apply(e) == e;
    bool is_g_power = letters.size() % 3 == 0;
    if (is_g_power) {
      for (std::size_t i = 0; i < letters.size(); ++i) {
        const int forward = static_cast<int>(i % 3);
        const int backward = 2 - forward;
        if (letters[i] != (letters[0] == 0 ? forward : backward)) is_g_power = false;
      }
      if (!letters.empty() && letters[0] != 0 && letters[0] != 2) is_g_power = false;
    }
    CHECK(fixes_e == is_g_power);
    natural_count += fixes_e;
  }
  CHECK(natural_count == 7);  // identity and g^{+-1}, g^{+-2}, g^{+-3}
}

TEST_CASE("order-two elements have trace -1") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ReducedWord u = random_word(seed % 6, 31 * seed + 5);
    for (int k = 0; k < 3; ++k) {
      std::vector<int> conj = u.letters();
      conj.push_back(k);
      const auto inv = u.inverse().letters();
      conj.insert(conj.end(), inv.begin(), inv.end());
      const Mat3 m = evaluate_matrix(reduce(conj));
      CHECK(m * m == Mat3::identity());
      CHECK(m.trace() == -1);
    }
  }
}

TEST_CASE("gram preservation along random words") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const ReducedWord w = random_word(seed % 13, 555 + seed);
    CHECK(preserves_gram(evaluate_matrix(w)));
  }
}

TEST_CASE("relation report") {
  const auto report = verify_relations(3);
  CHECK(report.ok);
  CHECK(report.failures.empty());
}

TEST_CASE("random word generator") {
  CHECK(random_word(0, 99).empty());
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto w = random_word(12, seed);
    CHECK(w.size() == 12);
    for (std::size_t i = 1; i < w.letters().size(); ++i)
      CHECK(w.letters()[i] != w.letters()[i - 1]);
  }
  // deterministic per seed; golden value pinned
  CHECK(random_word(7, 42) == random_word(7, 42));
  CHECK(random_word(5, 42).letters() == std::vector<int>({0, 1, 0, 1, 2}));
}

TEST_CASE("bound exhaustion is distinguished and retryable") {
  const auto tight = decompose(iota_n_star(15), 2);
  CHECK(tight.status == DecomposeStatus::BoundExceeded);
  const auto wide = decompose(iota_n_star(15), 64);
  REQUIRE(wide.status == DecomposeStatus::Ok);
  CHECK(evaluate_matrix(wide.word) == iota_n_star_matrix(15));
  CHECK(is_member(iota_n_star(-21)));
  CHECK_FALSE(is_member(iota_n_star(-21), 2));
}
