#include "doctest.h"

#include "h10/pell.hpp"
#include "oracles.hpp"

using namespace h10;
using namespace h10::pell;

namespace {
Poly P(const PrimeField& F, std::vector<std::int64_t> c) { return Poly::from_ints(F, c); }
}  // namespace

TEST_CASE("pell_pair small indices") {
  const PrimeField F5(5), F2(2);
  auto p0 = pell_pair(0, F5);
  CHECK(p0.x == Poly::constant(F5, 1));
  CHECK(p0.y.is_zero());
  auto p1 = pell_pair(1, F5);
  CHECK(p1.x == Poly::t(F5));
  CHECK(p1.y == Poly::constant(F5, 1));

  auto z2 = pell_pair_z(2);
  CHECK(to_string(z2.x) == "2*t^2 - 1");
  CHECK(to_string(z2.y) == "2*t");

  auto c3 = pell_pair(3, F2, CharMode::two);
  CHECK(c3.x == Poly::t(F2));
  CHECK(c3.y == P(F2, {1, 0, 1}));

  CHECK_THROWS_AS(pell_pair(1, F2, CharMode::odd), std::invalid_argument);
  CHECK_THROWS_AS(pell_pair(1, F5, CharMode::two), std::invalid_argument);
}

TEST_CASE("recurrence agrees with the binomial closed form over Z") {
  for (std::int64_t n = -20; n <= 20; ++n) {
    const auto [x, y] = testing::pell_closed_form(n);
    const auto pr = pell_pair_z(n);
    REQUIRE(pr.x == x);
    REQUIRE(pr.y == y);
  }
}

TEST_CASE("integer pairs reduce to the F_p pairs") {
  for (std::uint64_t p : {3, 5, 7, 17, 19}) {
    const PrimeField F(p);
    for (std::int64_t n = -20; n <= 20; ++n) {
      const auto z = pell_pair_z(n);
      const auto f = pell_pair(n, F);
      REQUIRE(reduce(z.x, F) == f.x);
      REQUIRE(reduce(z.y, F) == f.y);
    }
  }
}

TEST_CASE("pell_verify") {
  const PrimeField F5(5);
  CHECK(pell_verify(Poly::constant(F5, 1), Poly(F5), CharMode::odd));
  CHECK_FALSE(pell_verify(Poly::t(F5), Poly::t(F5), CharMode::odd));
  for (std::uint64_t p : {3, 5, 7, 17}) {
    const PrimeField F(p);
    for (std::int64_t n = -50; n <= 50; ++n) {
      const auto pr = pell_pair(n, F);
      REQUIRE(pell_verify(pr.x, pr.y, CharMode::odd));
      REQUIRE(pell_verify(-pr.x, pr.y, CharMode::odd));
    }
  }
  const PrimeField F2(2);
  for (std::int64_t n = -40; n <= 40; ++n) {
    const auto pr = pell_pair(n, F2, CharMode::two);
    REQUIRE(pell_verify(pr.x, pr.y, CharMode::two));
  }
}

TEST_CASE("pell_add") {
  const PrimeField F5(5);
  const auto p1 = pell_pair(1, F5);
  CHECK(pell_add(p1, p1) == pell_pair(2, F5));
  for (std::int64_t n = -6; n <= 6; ++n) {
    const auto pn = pell_pair(n, F5);
    CHECK(pell_add(pn, pell_pair(0, F5)) == pn);
    CHECK(pell_add(pn, pell_pair(-n, F5)) == pell_pair(0, F5));
  }
  const PrimeField F2(2);
  for (std::int64_t m = -5; m <= 5; ++m)
    for (std::int64_t n = -5; n <= 5; ++n)
      REQUIRE(pell_add(pell_pair(m, F2, CharMode::two), pell_pair(n, F2, CharMode::two)) ==
              pell_pair(m + n, F2, CharMode::two));
  CHECK_THROWS_AS(pell_add(p1, pell_pair(1, F2, CharMode::two)), std::invalid_argument);
}

TEST_CASE("pell_index_recognize") {
  const PrimeField F5(5), F17(17), F2(2);
  CHECK(pell_index_recognize(Poly::t(F5), Poly::constant(F5, 1)) == 1);
  CHECK(pell_index_recognize(Poly::constant(F5, 1), Poly(F5)) == 0);
  CHECK_FALSE(pell_index_recognize(-Poly::t(F5), Poly::constant(F5, 1)).has_value());
  CHECK_THROWS_AS(pell_index_recognize(Poly::t(F5), Poly::t(F5)), std::invalid_argument);
  for (std::int64_t n = -50; n <= 50; ++n) {
    const auto pr = pell_pair(n, F17);
    REQUIRE(pell_index_recognize(pr.x, pr.y) == n);
    if (n != 0) REQUIRE_FALSE(pell_index_recognize(-pr.x, pr.y).has_value());
  }
  for (std::int64_t n = -20; n <= 20; ++n) {
    const auto pr = pell_pair(n, F2, CharMode::two);
    REQUIRE(pell_index_recognize(pr.x, pr.y, CharMode::two) == n);
  }
}

TEST_CASE("pell_enumerate_oracle small cases") {
  const PrimeField F3(3), F5(5), F2(2);
  SUBCASE("p=3, D=1") {
    const auto r = pell_enumerate_oracle(3, 1);
    std::set<Solution> want;
    for (std::int64_t n = -2; n <= 2; ++n) {
      const auto pr = pell_pair(n, F3);
      want.emplace(pr.x, pr.y);
      want.emplace(-pr.x, pr.y);
    }
    CHECK(r.found == want);
    CHECK(r.found.count({P(F3, {-1, 0, 2}), P(F3, {0, 2})}) == 1);
    CHECK(r.matches());
  }
  SUBCASE("p=5, D=0") {
    const auto r = pell_enumerate_oracle(5, 0);
    const std::set<Solution> want{{P(F5, {1}), Poly(F5)},           {P(F5, {-1}), Poly(F5)},
                                  {P(F5, {0, 1}), P(F5, {1})},      {P(F5, {0, -1}), P(F5, {1})},
                                  {P(F5, {0, 1}), P(F5, {-1})},     {P(F5, {0, -1}), P(F5, {-1})}};
    CHECK(r.found == want);
    CHECK(r.matches());
  }
  SUBCASE("p=2, D=2, characteristic 2") {
    const auto r = pell_enumerate_oracle(2, 2, CharMode::two);
    std::set<Solution> want;
    for (std::int64_t n = -3; n <= 3; ++n) {
      const auto pr = pell_pair(n, F2, CharMode::two);
      want.emplace(pr.x, pr.y);
    }
    CHECK(r.found == want);
    CHECK(r.matches());
  }
  SUBCASE("workers do not change the result") {
    CHECK(pell_enumerate_oracle(7, 2, CharMode::odd, 3).found == pell_enumerate_oracle(7, 2).found);
  }
  SUBCASE("feasibility guard") {
    CHECK_THROWS_AS(pell_enumerate_oracle(17, 6), InfeasibleBound);
  }
}

TEST_CASE("Pell identities at small scale") {
  for (std::uint64_t p : {3, 5, 7}) {
    const PrimeField F(p);
    const Poly t = Poly::t(F), one = Poly::constant(F, 1);
    for (std::int64_t m = -8; m <= 8; ++m) {
      const auto pm = pell_pair(m, F);
      CHECK(pm.x.degree() == Degree(static_cast<std::size_t>(std::abs(m))));
      if (m != 0) CHECK(pm.y.degree() == Degree(static_cast<std::size_t>(std::abs(m)) - 1));
      CHECK(pm.x.eval(1) == 1);
      for (std::int64_t n = -8; n <= 8; ++n) {
        const bool m_divides_n = m == 0 ? n == 0 : n % m == 0;
        CHECK(divides(pm.y, pell_pair(n, F).y) == m_divides_n);
      }
    }
  }
}
