#pragma once

// Truncated Laurent series whose coefficients live in F_p[[q]] (known modulo
// q^Q), their Newton polygons, and the norm-one monomial test.
//
// Polygons use the additive convention N_h(s) = min_n (v(c_n) + n*s): the
// lower convex hull of the points (n, v(c_n)). With |x| = p^-v(x) this is
// the max-log polygon pi_h through pi_h(x) = -N_h(-x / log p) * log p, so
// additivity under products and the reflection rule carry over unchanged.

#include "h10/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace h10::valued {

/// How coefficients are valued. `trivial` recovers F_p[t] (v in {0, inf}),
/// stored with precision 1 so that a coefficient is exactly its residue.
enum class ValuationMode { q_adic, trivial };

class PreconditionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element of F_p[[q]] known modulo q^Q.
class ValCoeff {
 public:
  ValCoeff(Poly series, unsigned precision);

  const Poly& series() const { return series_; }
  unsigned precision() const { return precision_; }
  /// q-adic order; nullopt (+infinity) when the coefficient is zero at precision.
  std::optional<unsigned> valuation() const;
  bool is_zero() const { return series_.is_zero(); }

  ValCoeff operator+(const ValCoeff& o) const;
  ValCoeff operator-(const ValCoeff& o) const;
  ValCoeff operator*(const ValCoeff& o) const;
  bool operator==(const ValCoeff&) const = default;

 private:
  Poly series_;
  unsigned precision_;
};

/// A Laurent series sum c_n t^n truncated to the window [n_min, n_max].
/// Exponents inside the window without an entry are exact zeros; an entry
/// whose residue is 0 is a zero only up to precision (q-adic mode).
class LaurentTrunc {
 public:
  LaurentTrunc(PrimeField field, unsigned precision, ValuationMode mode, std::int64_t n_min, std::int64_t n_max);

  /// Trivial-valuation series from a polynomial in t.
  static LaurentTrunc from_poly(const Poly& f);
  static LaurentTrunc one(const PrimeField& field, unsigned precision, ValuationMode mode = ValuationMode::q_adic);

  const PrimeField& field() const { return field_; }
  unsigned precision() const { return precision_; }
  ValuationMode mode() const { return mode_; }
  std::int64_t n_min() const { return n_min_; }
  std::int64_t n_max() const { return n_max_; }
  const std::map<std::int64_t, ValCoeff>& entries() const { return coeffs_; }

  /// Set the coefficient of t^n (given as a polynomial in q); widens the window if needed.
  void set(std::int64_t n, const Poly& series_in_q);
  ValCoeff coefficient(std::int64_t n) const;
  /// True when every coefficient is zero (exactly or at precision).
  bool is_zero() const;

  bool operator==(const LaurentTrunc&) const = default;

 private:
  void set_coeff(std::int64_t n, ValCoeff c);
  friend LaurentTrunc series_mul(const LaurentTrunc&, const LaurentTrunc&);
  friend LaurentTrunc series_add(const LaurentTrunc&, const LaurentTrunc&);
  friend LaurentTrunc reflect(const LaurentTrunc&);

  PrimeField field_;
  unsigned precision_;
  ValuationMode mode_;
  std::int64_t n_min_;
  std::int64_t n_max_;
  std::map<std::int64_t, ValCoeff> coeffs_;
};

/// Product as Laurent polynomials; the window is [a_min+b_min, a_max+b_max].
LaurentTrunc series_mul(const LaurentTrunc& h, const LaurentTrunc& g);
LaurentTrunc series_add(const LaurentTrunc& h, const LaurentTrunc& g);
/// h(1/t).
LaurentTrunc reflect(const LaurentTrunc& h);

struct Vertex {
  std::int64_t n;
  std::int64_t v;
  bool operator==(const Vertex&) const = default;
};

class NewtonPolygon {
 public:
  NewtonPolygon() = default;
  /// Lower convex hull of arbitrary points (duplicates in n keep the lowest v).
  static NewtonPolygon hull(std::vector<Vertex> points);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  /// Exponents of precision-zero coefficients that might lie below the hull.
  const std::vector<std::int64_t>& flagged() const { return flagged_; }
  bool is_point() const { return vertices_.size() == 1; }

  /// N(s) = min over vertices of v + n*s.
  std::int64_t evaluate(std::int64_t s) const;
  /// Value of the hull at exponent n (as num/den), nullopt outside its span.
  std::optional<std::pair<std::int64_t, std::int64_t>> height_at(std::int64_t n) const;

  bool operator==(const NewtonPolygon& o) const { return vertices_ == o.vertices_; }

 private:
  friend NewtonPolygon newton_polygon(const LaurentTrunc&);
  std::vector<Vertex> vertices_;
  std::vector<std::int64_t> flagged_;
};

NewtonPolygon newton_polygon(const LaurentTrunc& h);
/// Pointwise sum of the piecewise-linear functions (Minkowski sum of hulls).
NewtonPolygon polygon_sum(const NewtonPolygon& a, const NewtonPolygon& b);
/// The polygon of h(1/t): N(s) -> N(-s).
NewtonPolygon reflect(const NewtonPolygon& a);
/// N(-s) == -N(s) for every sampled s.
bool is_odd(const NewtonPolygon& a, const std::vector<std::int64_t>& samples);

struct Monomial {
  int sign;
  std::int64_t n;
};

/// For h with h(t) * h(1/t) = 1 to precision, returns (sign, n) with h = sign * t^n.
/// Throws PreconditionViolated when the product is not 1, Inconclusive when the
/// truncation cannot certify a monomial.
Monomial norm_one_monomial(const LaurentTrunc& h);

/// sum_{n=1}^{n_max} q^(n^2) t^n.
LaurentTrunc theta_series(std::uint64_t p, std::int64_t n_max, unsigned precision);

/// "{n: coeff_in_q, ...} @ p=5 Q=20" (or "@ p=5 trivial").
LaurentTrunc parse_series(std::string_view text);
std::string to_string(const LaurentTrunc& h);
/// "(n,v) (n,v) ..."
std::string to_string(const NewtonPolygon& a);

}  // namespace h10::valued
