#pragma once

// Two-variable power series over F_p truncated at total degree D, the
// collapse map f(t,u) -> f(t, 1/t), division by (tu - 1), and the linear
// substitutions relating t^2 - u^2 - 1 (or u^2 + tu + 1 in characteristic 2)
// to zw - 1.

#include "h10/poly.hpp"
#include "h10/valued.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace h10::bivar {

/// sum c_mn t^m u^n over 0 <= m + n <= D. Variable names only matter for printing.
class BiTrunc {
 public:
  BiTrunc(PrimeField field, unsigned D);

  const PrimeField& field() const { return field_; }
  unsigned bound() const { return D_; }

  std::uint64_t coeff(unsigned m, unsigned n) const;
  void set(unsigned m, unsigned n, std::int64_t c);
  void set_raw(unsigned m, unsigned n, std::uint64_t c);
  bool is_zero() const;
  /// Same coefficients, cut down to total degree D' <= D.
  BiTrunc truncate(unsigned D) const;

  BiTrunc operator+(const BiTrunc& o) const;
  BiTrunc operator-(const BiTrunc& o) const;
  BiTrunc operator-() const;
  /// Product truncated at the common bound.
  BiTrunc operator*(const BiTrunc& o) const;
  bool operator==(const BiTrunc&) const = default;

 private:
  std::size_t index(unsigned m, unsigned n) const;
  void require_same(const BiTrunc& o) const;

  PrimeField field_;
  unsigned D_;
  std::vector<std::uint64_t> c_;
};

/// The series tu - 1 at bound D.
BiTrunc tu_minus_one(const PrimeField& F, unsigned D);

/// f(t, 1/t): trivial-valuation Laurent series on [-D, D] with a_d = sum_{m-n=d} c_mn.
valued::LaurentTrunc collapse_M(const BiTrunc& f);

struct KernelFactor {
  BiTrunc F;  // bound D - 2
  /// Indices (m, n) with m + n in {D-1, D} whose recursion value gamma_mn is
  /// nonzero; each one is a term of f the truncated F cannot account for.
  std::vector<std::pair<unsigned, unsigned>> boundary;
  bool exact() const { return boundary.empty(); }
};

/// F with f = (tu - 1) F, from gamma_mn = gamma_{m-1,n-1} - c_mn.
/// Throws std::domain_error unless collapse_M(f) vanishes.
KernelFactor kernel_factor(const BiTrunc& f);

/// t -> (z+w)/2, u -> (z-w)/2 (odd mode); t -> z+w, u -> z (characteristic 2).
BiTrunc delta_subst(const BiTrunc& f, CharMode mode);
/// z -> t+u, w -> t-u (odd mode); z -> u, w -> t+u (characteristic 2).
BiTrunc delta_inv(const BiTrunc& g, CharMode mode);

/// u -> -u.
BiTrunc negate_second(const BiTrunc& f);
/// Exchange the two variables.
BiTrunc swap_vars(const BiTrunc& f);

BiTrunc parse_bitrunc(std::string_view text, const PrimeField& F, unsigned D, const std::string& v1 = "t",
                      const std::string& v2 = "u");
std::string to_string(const BiTrunc& f, std::string_view v1 = "t", std::string_view v2 = "u");

}  // namespace h10::bivar
