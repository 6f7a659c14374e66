#pragma once

// Polynomial solutions of the Pell equations
//   X^2 - (t^2-1) Y^2 = 1          (characteristic != 2)
//   X^2 + t X Y + Y^2 = 1          (characteristic 2)
// indexed by n in Z, together with index recognition and a brute-force
// enumeration oracle over F_p[t].

#include "h10/poly.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace h10::pell {

template <class Ring>
struct BasicPellPair {
  std::int64_t n;
  BasicPoly<Ring> x;
  BasicPoly<Ring> y;
  CharMode mode;

  bool operator==(const BasicPellPair&) const = default;
};

using PellPair = BasicPellPair<PrimeField>;
using ZPellPair = BasicPellPair<Integers>;

/// Raised when an oracle bound exceeds its feasibility guard.
class InfeasibleBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Steps through (x_n, y_n) for n = 0, 1, 2, ... (or downwards) by
/// multiplying with the fundamental unit. Each step costs O(n).
///
/// Characteristic != 2: (x + y*s)(t + s) with s^2 = t^2 - 1 gives
///   x' = t*x + (t^2-1)*y,  y' = x + t*y.
/// Characteristic 2: alpha^2 = t*alpha + 1, so (x + y*alpha)*alpha gives
///   x' = y,  y' = x + t*y,
/// and alpha^-1 = t + alpha gives the downward step x' = t*x + y, y' = x.
template <class Ring>
class PellStepper {
 public:
  PellStepper(Ring ring, CharMode mode, bool downward = false);

  const BasicPellPair<Ring>& current() const { return cur_; }
  void advance();

 private:
  Ring ring_;
  bool downward_;
  BasicPoly<Ring> t_;
  BasicPoly<Ring> t2m1_;
  BasicPellPair<Ring> cur_;
};

void check_mode(std::uint64_t p, CharMode mode);

PellPair pell_pair(std::int64_t n, const PrimeField& F, CharMode mode = CharMode::odd);
/// Integer-coefficient pair (characteristic 0, mode odd).
ZPellPair pell_pair_z(std::int64_t n);

/// Exact check of the defining equation for the mode.
template <class Ring>
bool pell_verify(const BasicPoly<Ring>& x, const BasicPoly<Ring>& y, CharMode mode) {
  const Ring& R = x.ring();
  const auto one = BasicPoly<Ring>::constant(R, 1);
  const auto t = BasicPoly<Ring>::t(R);
  if (mode == CharMode::odd) {
    const auto t2m1 = t * t - one;
    return x * x - t2m1 * y * y == one;
  }
  return x * x + t * x * y + y * y == one;
}

/// Addition law x_{m+n} = x_m x_n + (t^2-1) y_m y_n, y_{m+n} = x_m y_n + x_n y_m.
PellPair pell_add(const PellPair& a, const PellPair& b);

/// The n with (x, y) = (x_n, y_n); nullopt when (x, y) = (-x_n, y_n) with
/// -x_n != x_n. Throws std::invalid_argument when (x, y) is not a solution.
std::optional<std::int64_t> pell_index_recognize(const Poly& x, const Poly& y, CharMode mode = CharMode::odd);

using Solution = std::pair<Poly, Poly>;

struct OracleResult {
  std::set<Solution> found;     ///< brute-force solutions with deg y <= D
  std::set<Solution> expected;  ///< {(+-x_n, y_n)} (char 2: {(x_n, y_n)}) with deg y_n <= D
  std::uint64_t candidates = 0;
  bool matches() const { return found == expected; }
};

/// Largest candidate count the oracle accepts (p^(D+1) y-polynomials).
inline constexpr std::uint64_t oracle_feasibility_limit = 10'000'000;

/// Enumerate every y in F_p[t] with deg y <= D and solve for x. The y-sweep
/// is split over `workers` threads and merged as sets.
OracleResult pell_enumerate_oracle(std::uint64_t p, unsigned D, CharMode mode = CharMode::odd, unsigned workers = 1);

}  // namespace h10::pell
