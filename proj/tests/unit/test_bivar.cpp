#include "doctest.h"

#include "h10/bivar.hpp"
#include "oracles.hpp"

using namespace h10;
using namespace h10::bivar;

namespace {

BiTrunc random_bitrunc(std::mt19937_64& rng, const PrimeField& F, unsigned D, unsigned max_deg) {
  std::uniform_int_distribution<std::uint64_t> coef(0, F.characteristic() - 1);
  BiTrunc f(F, D);
  for (unsigned d = 0; d <= max_deg; ++d)
    for (unsigned m = 0; m <= d; ++m) f.set_raw(m, d - m, coef(rng));
  return f;
}

/// Direct evaluation at a point of F_p^2.
std::uint64_t eval_at(const BiTrunc& f, std::uint64_t a, std::uint64_t b) {
  const PrimeField& F = f.field();
  std::uint64_t acc = 0;
  for (unsigned d = 0; d <= f.bound(); ++d)
    for (unsigned m = 0; m <= d; ++m)
      acc = F.add(acc, F.mul(f.coeff(m, d - m), F.mul(F.pow(a, m), F.pow(b, d - m))));
  return acc;
}

}  // namespace

TEST_CASE("collapse_M examples") {
  const PrimeField F5(5);
  CHECK(collapse_M(tu_minus_one(F5, 4)).is_zero());
  CHECK(to_string(collapse_M(parse_bitrunc("t^2*u", F5, 4))) == "{1: 1} @ p=5 trivial");
  CHECK(to_string(collapse_M(parse_bitrunc("t^2 + u^2", F5, 4))) == "{-2: 1, 2: 1} @ p=5 trivial");
  const auto m = collapse_M(parse_bitrunc("1", F5, 3));
  CHECK(m.n_min() == -3);
  CHECK(m.n_max() == 3);
}

TEST_CASE("collapse_M is multiplicative on fully determined products") {
  auto rng = testing::seeded_rng("bivar.morphism", 31);
  for (std::uint64_t p : {2, 5, 7}) {
    const PrimeField F(p);
    for (int i = 0; i < 100; ++i) {
      const unsigned D = 8;
      const auto f = random_bitrunc(rng, F, D, 4), g = random_bitrunc(rng, F, D, 4);
      const auto lhs = collapse_M(f * g);
      const auto rhs = valued::series_mul(collapse_M(f), collapse_M(g));
      for (std::int64_t d = -8; d <= 8; ++d) REQUIRE(lhs.coefficient(d) == rhs.coefficient(d));
    }
  }
}

TEST_CASE("kernel_factor examples") {
  const PrimeField F5(5);
  const auto k1 = kernel_factor(tu_minus_one(F5, 4));
  CHECK(to_string(k1.F) == "1");
  CHECK(k1.exact());
  const auto k2 = kernel_factor(parse_bitrunc("t^2*u^2 - 1", F5, 6));
  CHECK(to_string(k2.F) == "t*u + 1");
  const auto k3 = kernel_factor(parse_bitrunc("t^2*u - t", F5, 5));
  CHECK(to_string(k3.F) == "t");
  CHECK_THROWS_AS(kernel_factor(parse_bitrunc("t*u", F5, 4)), std::domain_error);
}

TEST_CASE("kernel_factor at the truncation edge") {
  const PrimeField F5(5);
  // The top term of each diagonal fits exactly at D = 4.
  const auto k = kernel_factor(parse_bitrunc("t^2*u^2 - 1", F5, 4));
  CHECK(k.exact());
  CHECK(k.F.bound() == 2);
  // At D = 3 the t^2u^2 term is cut off and the collapse no longer vanishes.
  CHECK_THROWS_AS(kernel_factor(parse_bitrunc("t^2*u^2 - 1", F5, 3)), std::domain_error);
  CHECK_THROWS_AS(kernel_factor(BiTrunc(F5, 1)), std::domain_error);
}

TEST_CASE("kernel_factor roundtrip on random multiples of tu - 1") {
  auto rng = testing::seeded_rng("bivar.kernel", 32);
  for (std::uint64_t p : {2, 3, 5}) {
    const PrimeField F(p);
    for (int i = 0; i < 200; ++i) {
      const unsigned D = 8;
      const auto r = random_bitrunc(rng, F, D, D - 2);
      const auto f = tu_minus_one(F, D) * r;
      const auto k = kernel_factor(f);
      REQUIRE(k.exact());
      REQUIRE(k.F == r.truncate(D - 2));
      BiTrunc lifted(F, D);
      for (unsigned d = 0; d <= D - 2; ++d)
        for (unsigned m = 0; m <= d; ++m) lifted.set_raw(m, d - m, k.F.coeff(m, d - m));
      REQUIRE(tu_minus_one(F, D) * lifted == f);
    }
  }
}

TEST_CASE("delta substitutions") {
  const PrimeField F5(5), F2(2);
  CHECK(to_string(delta_subst(parse_bitrunc("t^2 - u^2 - 1", F5, 4), CharMode::odd), "z", "w") == "z*w + 4");
  CHECK(to_string(delta_subst(parse_bitrunc("u^2 + t*u + 1", F2, 4), CharMode::two), "z", "w") == "z*w + 1");
  CHECK_THROWS_AS(delta_subst(parse_bitrunc("t", F2, 2), CharMode::odd), std::invalid_argument);
  CHECK_THROWS_AS(delta_subst(parse_bitrunc("t", F5, 2), CharMode::two), std::invalid_argument);
}

TEST_CASE("delta and its inverse on random series") {
  auto rng = testing::seeded_rng("bivar.delta", 33);
  for (unsigned D : {6u, 8u}) {
    for (std::uint64_t p : {3, 5, 17}) {
      const PrimeField F(p);
      const auto half = F.inv(2);
      for (int i = 0; i < 50; ++i) {
        const auto f = random_bitrunc(rng, F, D, D);
        const auto g = delta_subst(f, CharMode::odd);
        REQUIRE(delta_inv(g, CharMode::odd) == f);
        REQUIRE(delta_subst(delta_inv(f, CharMode::odd), CharMode::odd) == f);
        for (std::uint64_t z = 0; z < std::min<std::uint64_t>(p, 5); ++z)
          for (std::uint64_t w = 0; w < std::min<std::uint64_t>(p, 5); ++w)
            REQUIRE(eval_at(g, z, w) == eval_at(f, F.mul(half, F.add(z, w)), F.mul(half, F.sub(z, w))));
        // u -> -u before the substitution is z <-> w after it.
        REQUIRE(delta_subst(negate_second(f), CharMode::odd) == swap_vars(g));
      }
    }
    const PrimeField F2(2);
    for (int i = 0; i < 50; ++i) {
      const auto f = random_bitrunc(rng, F2, D, D);
      REQUIRE(delta_inv(delta_subst(f, CharMode::two), CharMode::two) == f);
      REQUIRE(delta_subst(delta_inv(f, CharMode::two), CharMode::two) == f);
    }
  }
}

TEST_CASE("bivariate text format") {
  const PrimeField F7(7);
  const auto f = parse_bitrunc("3*t^2*u - u + 2", F7, 5);
  CHECK(to_string(f) == "3*t^2*u + 6*u + 2");
  CHECK(parse_bitrunc(to_string(f), F7, 5) == f);
  CHECK(to_string(BiTrunc(F7, 3)) == "0");
  CHECK(parse_bitrunc("t^4 + t", F7, 2) == parse_bitrunc("t", F7, 2));
}
