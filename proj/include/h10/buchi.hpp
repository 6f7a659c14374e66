#pragma once

// Sequences of squares with constant second difference 2, the Frobenius-power
// relation f = g^(p^r), and an exhaustive search over small seeds.

#include "h10/poly.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace h10::buchi {

struct BuchiSeq {
  std::vector<Poly> terms;  // u_1 .. u_M
  bool valid = false;       // second differences verified
};

/// True when u_{n+2} - 2u_{n+1} + u_n = 2 for every consecutive triple.
bool second_differences_hold(const std::vector<Poly>& u);

/// u_n = (n + v)^(p^r + 1) for n = 1..M.
BuchiSeq buchi_generate(const Poly& v, unsigned r, unsigned M);

/// Least r with f = g^(p^r), if any.
std::optional<unsigned> ge_p_check(const Poly& f, const Poly& g);

/// s with s^2 = u (leading coefficient in 1..(p-1)/2), for odd p.
std::optional<Poly> square_root_poly(const Poly& u);

/// Parameters (v, r) with u_n = (n + v)^(p^r + 1) for the sequence starting
/// u_1, u_2, read off from the roots of Z^2 - A Z + B where u_n = n^2 + A n + B.
struct FamilyMatch {
  Poly v;
  unsigned r;
};
std::optional<FamilyMatch> match_family(const Poly& u1, const Poly& u2);

class InfeasibleSearch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RetainedFamily {
  Poly u1, u2;
  std::optional<FamilyMatch> match;  // nullopt: flagged for review
};

struct SearchReport {
  std::uint64_t p = 0;
  unsigned d = 0;
  unsigned length = 0;
  std::uint64_t distinct_squares = 0;
  std::uint64_t seed_pairs = 0;
  std::uint64_t constant_families = 0;
  std::vector<RetainedFamily> retained;
  std::uint64_t matched() const;
  std::uint64_t flagged() const;
};

/// Every seed u_1 = s_1^2, u_2 = s_2^2 with deg s_i <= d over F_p, extended by
/// the recurrence to `length` terms; families of squares that are not all
/// constant are retained and matched against (n + v)^(p^r + 1).
SearchReport buchi_search_oracle(std::uint64_t p, unsigned d, unsigned length = 17, unsigned workers = 1);

/// Retention test for one seed pair (used by the oracle and for positive controls).
enum class SeedVerdict { rejected, constant, retained };
SeedVerdict classify_seed(const Poly& u1, const Poly& u2, unsigned length);

std::string to_string(const SearchReport& r);

}  // namespace h10::buchi
