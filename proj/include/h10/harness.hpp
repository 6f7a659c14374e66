#pragma once

// Witnesses for the formula families, ground-truth relations to check them
// against, and end-to-end verification of translated sentences.

#include "h10/formula.hpp"
#include "h10/interp.hpp"
#include "h10/poly.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace h10::harness {

using formula::Assignment;
using formula::Formula;
using ZEnv = formula::Env<std::int64_t>;

/// Values for a family's parameters and bound variables, ready for
/// check_sat on the family's body.
struct Witness {
  std::string family;
  std::uint64_t p = 0;
  Assignment values;
};

class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// nu(f) for f != 0, from t^a (t-1)^b G and two Bezout identities.
Witness synth_nu(const Poly& f);
/// beta'(g^(p^r), g): u_n = (n-1+g)^(p^r+1), z = g^(p^r-1).
Witness synth_beta_prime(const Poly& g, unsigned r);
/// beta(g^(p^r), g) with u = t^(p^r), v = (t^2-1)^((p^r-1)/2). Odd p.
Witness synth_beta(const Poly& g, unsigned r);
/// phi(t^(p^r)). Odd p.
Witness synth_phi_F(unsigned r, const PrimeField& F);
/// psi(t^k) through h = t^(p^r), for 1 <= k <= p^r. Odd p.
Witness synth_psi(std::uint64_t k, unsigned r, const PrimeField& F);
/// phi_L*(x_n, y_n) with z = (x_n - 1)/(t - 1).
Witness synth_theta(std::int64_t n, const PrimeField& F);

/// f = t^(p^r) for some r >= 0.
bool in_F(const Poly& f);
/// f = t^k for some k >= 1.
bool in_P(const Poly& f);
/// f = g^(p^r) for some r >= 0.
bool ge_p(const Poly& f, const Poly& g);
/// n with (x, y) = (x_n, y_n). Throws std::invalid_argument otherwise.
std::int64_t theta_decode(const Poly& x, const Poly& y);
bool z_divides(std::int64_t n, std::int64_t m);
/// n |^p m: m = +-p^r n for some r >= 0.
bool z_pdivides(std::uint64_t p, std::int64_t n, std::int64_t m);

/// (Z; 0, 1, +, |, |^p, !=) with |* read as |^p.
formula::Model<std::int64_t> z_model(std::uint64_t p);
/// (Z; 0, 1, +, |, |_p, T): n |_p m when n |^p m or m |^p n, T(n) when |n| >= 2.
formula::Model<std::int64_t> zd_model(std::uint64_t p);

/// Target-side witness source for an interpretation over F_p[t].
struct Synthesizer {
  std::uint64_t p = 0;
  unsigned dim = 0;
  /// Coordinates of an integer.
  std::function<std::vector<Poly>(std::int64_t)> encode;
  /// Integer represented by coordinates, if any.
  std::function<std::optional<std::int64_t>(const std::vector<Poly>&)> decode;
  /// Values of the bound variables of a symbol formula (names as in the
  /// formula) for given parameter values; nullopt when none is known.
  std::function<std::optional<Assignment>(const std::string& symbol, const std::vector<Poly>& args)> bound;
};

/// For the Pell interpretation: encode n as (x_n, y_n).
Synthesizer phi_synthesizer(std::uint64_t p);

/// Encode `values`, synthesize the bound variables of I's formula for
/// `symbol` and check the formula. False when synthesis fails.
bool check_instance(const interp::Interpretation& I, const Synthesizer& s, const std::string& symbol,
                    const std::vector<std::int64_t>& values);

/// Witness for a guard sentence over F_p: empty when the guard has no
/// quantifiers and holds, inverses for the sums z + ... + z = 1.
std::optional<Assignment> guard_witness(const Formula& guard, std::uint64_t p);

/// For a dispatched interpretation: the first branch whose guard has a
/// witness over F_p, or branch `force` regardless of its guard.
Synthesizer dispatch_synthesizer(const std::vector<interp::Branch>& branches, const std::vector<Synthesizer>& synths,
                                 std::uint64_t p, std::optional<std::size_t> force = std::nullopt);

/// For compose_traced(I1, I2) where I1 has dimension 1 and its formulas have
/// no bound variables: decode the I2 tuples to middle-structure values and
/// replay the per-symbol traces with the I2 synthesizer.
Synthesizer composite_synthesizer(const interp::Composite& c, const Synthesizer& inner,
                                  formula::Model<std::int64_t> middle);

struct InstanceOutcome {
  std::string prefix;
  std::string symbol;
  bool synthesized = false;
  std::string note;
};

struct TraceWitness {
  Assignment values;
  std::vector<InstanceOutcome> outcomes;
};

/// Assign coordinates to every binding whose source value is known
/// (parameters and bound variables from `source_values`, constants and
/// intermediates by evaluation in `source_model`), then synthesize each
/// instance's bound variables from its evaluated arguments.
TraceWitness witness_for_trace(const interp::Trace& trace, const ZEnv& source_values,
                               const formula::Model<std::int64_t>& source_model, const Synthesizer& s);

struct ClauseResult {
  std::string label;
  bool pass = false;
  std::string note;
};

struct E2EReport {
  std::uint64_t p = 0;
  std::string sentence;
  std::string translated;
  bool source_holds = false;
  std::string source_note;
  std::vector<ClauseResult> clauses;
  bool target_holds = false;
  std::string target_note;
  bool passed() const { return source_holds && target_holds; }
};

/// Translate, synthesize a target witness from the integer witness, and
/// check every instance and the whole sentence.
E2EReport e2e_verify(const interp::Interpretation& I, const Synthesizer& s,
                     const formula::Model<std::int64_t>& source_model, const Formula& sentence, const ZEnv& witness);
/// Through the Pell interpretation over F_p[t].
E2EReport e2e_verify(const Formula& sentence, const ZEnv& witness, std::uint64_t p);

/// Clause lines and a closing "#RESULT e2e ..." line.
std::string to_string(const E2EReport& r);

/// Bounded-degree converse checks.
struct SweepReport {
  std::string label;
  std::uint64_t assignments = 0;
  std::uint64_t satisfied = 0;
  std::uint64_t violations = 0;
};

/// All a, b of degree <= max_deg with c chosen to satisfy nu's matrix when
/// possible; a violation is a satisfying assignment with f = 0.
SweepReport sweep_nu(const Poly& f, unsigned max_deg);
/// All y of degree <= max_deg with both roots x of x^2 = 1 + (t^2-1)y^2 and
/// z = (x-1)/(t-1); a violation is a satisfying assignment theta cannot decode.
/// Odd p.
SweepReport sweep_lstar(const PrimeField& F, unsigned max_deg);

}  // namespace h10::harness
