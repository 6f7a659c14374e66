#include "doctest.h"

#include "h10/buchi.hpp"
#include "oracles.hpp"

#include <set>

using namespace h10;
using namespace h10::buchi;

namespace {
Poly P(const PrimeField& F, std::vector<std::int64_t> c) { return Poly::from_ints(F, c); }
}  // namespace

TEST_CASE("buchi_generate") {
  const PrimeField F17(17);
  const auto s0 = buchi_generate(Poly(F17), 0, 5);
  CHECK(s0.valid);
  std::vector<Poly> want;
  for (std::int64_t c : {1, 4, 9, 16, 8}) want.push_back(Poly::constant(F17, c));
  CHECK(s0.terms == want);

  const auto s1 = buchi_generate(Poly::t(F17), 0, 6);
  CHECK(s1.terms[0] == P(F17, {1, 2, 1}));
  CHECK(s1.valid);
  CHECK(buchi_generate(Poly::t(F17), 1, 17).valid);
}

TEST_CASE("second differences hold symbolically") {
  auto rng = testing::seeded_rng("buchi.generate", 41);
  for (std::uint64_t p : {17, 19, 23}) {
    const PrimeField F(p);
    for (unsigned r = 0; r <= 1; ++r)
      for (int i = 0; i < 10; ++i) {
        const Poly v = testing::random_poly(rng, F, 3);
        const auto seq = buchi_generate(v, r, 17);
        REQUIRE(seq.terms.size() == 17);
        REQUIRE(seq.valid);
        // Each term is a square with root (n + v)^((p^r + 1)/2).
        const Poly base = v + Poly::constant(F, 3);
        const auto root = square_root_poly(seq.terms[2]);
        REQUIRE(root.has_value());
        const Poly closed = pow(base, (r == 0 ? 2 : p + 1) / 2);
        REQUIRE((*root == closed || *root == -closed));
      }
  }
  CHECK_FALSE(second_differences_hold({Poly::constant(PrimeField(17), 1), Poly::constant(PrimeField(17), 4),
                                       Poly::constant(PrimeField(17), 10)}));
}

TEST_CASE("ge_p_check") {
  const PrimeField F2(2), F3(3), F5(5);
  const Poly t2 = Poly::t(F2), t3 = Poly::t(F3);
  CHECK(ge_p_check(t2 * t2, t2) == 1u);
  const Poly f = P(F5, {1, 3, 2});
  CHECK(ge_p_check(f, f) == 0u);
  CHECK(ge_p_check(t3 * t3 * t3, t3) == 1u);
  CHECK_FALSE(ge_p_check(t2 * t2 * t2, t2).has_value());
  CHECK_FALSE(ge_p_check(t3, t3 * t3 * t3).has_value());
  CHECK_FALSE(ge_p_check(Poly::constant(F5, 2), Poly::constant(F5, 3)).has_value());
}

TEST_CASE("ge_p_check composes along Frobenius chains") {
  auto rng = testing::seeded_rng("buchi.ge_p", 42);
  for (std::uint64_t p : {2, 3, 5}) {
    const PrimeField F(p);
    for (int i = 0; i < 50; ++i) {
      Poly h = testing::random_poly(rng, F, 2);
      if (h.is_constant()) h = h + Poly::t(F);
      for (unsigned a = 0; a <= 1; ++a)
        for (unsigned b = 0; b <= 1; ++b) {
          const Poly g = frob_pow(h, a), f = frob_pow(g, b);
          REQUIRE(ge_p_check(g, h) == a);
          REQUIRE(ge_p_check(f, g) == b);
          REQUIRE(ge_p_check(f, h) == a + b);
        }
    }
  }
}

TEST_CASE("square_root_poly") {
  const PrimeField F17(17);
  CHECK(square_root_poly(P(F17, {1, 2, 1})) == P(F17, {1, 1}));
  CHECK_FALSE(square_root_poly(Poly::t(F17)).has_value());
  CHECK_THROWS_AS(square_root_poly(Poly::t(PrimeField(2))), std::invalid_argument);
}

TEST_CASE("match_family recovers generated parameters") {
  auto rng = testing::seeded_rng("buchi.match", 43);
  const PrimeField F17(17);
  for (unsigned r = 0; r <= 1; ++r)
    for (int i = 0; i < 100; ++i) {
      Poly v = testing::random_poly(rng, F17, 2);
      if (v.is_constant()) v = v + Poly::t(F17);
      const auto seq = buchi_generate(v, r, 17);
      REQUIRE(classify_seed(seq.terms[0], seq.terms[1], 17) == SeedVerdict::retained);
      const auto m = match_family(seq.terms[0], seq.terms[1]);
      REQUIRE(m.has_value());
      REQUIRE(m->r == r);
      REQUIRE(buchi_generate(m->v, m->r, 17).terms == seq.terms);
    }
  // (1, 4) extends to n^2: constant, all squares mod 17.
  CHECK(classify_seed(Poly::constant(F17, 1), Poly::constant(F17, 4), 17) == SeedVerdict::constant);
  CHECK(classify_seed(Poly::t(F17), Poly::constant(F17, 4), 17) == SeedVerdict::rejected);
}

TEST_CASE("search oracle at d = 0 keeps only constant families") {
  const auto rep = buchi_search_oracle(17, 0);
  CHECK(rep.distinct_squares == 9);
  CHECK(rep.retained.empty());
  CHECK(rep.constant_families > 0);
  CHECK_THROWS_AS(buchi_search_oracle(17, 3), InfeasibleSearch);
}

TEST_CASE("search oracle at d = 1 finds exactly the degree-one families") {
  const PrimeField F17(17);
  const auto rep = buchi_search_oracle(17, 1, 17, 2);
  CHECK(rep.distinct_squares == 145);
  CHECK(rep.seed_pairs == 145 * 145);
  CHECK(rep.flagged() == 0);
  std::set<std::pair<Poly, Poly>> expected;
  for (std::int64_t a = 0; a < 17; ++a)
    for (std::int64_t b = 1; b < 17; ++b) {
      const auto seq = buchi_generate(P(F17, {a, b}), 0, 2);
      expected.emplace(seq.terms[0], seq.terms[1]);
    }
  std::set<std::pair<Poly, Poly>> got;
  for (const auto& f : rep.retained) {
    got.emplace(f.u1, f.u2);
    REQUIRE(f.match.has_value());
    REQUIRE(f.match->r == 0);
    REQUIRE(f.match->v.degree() == Degree{1});
  }
  CHECK(got == expected);
  CHECK(rep.retained.size() == 272);
  CHECK(buchi_search_oracle(17, 1, 17, 1).retained.size() == rep.retained.size());
}
