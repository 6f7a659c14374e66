#pragma once

// Dense univariate polynomials over a coefficient ring (PrimeField or
// Integers), with the operations the Pell, Buchi and witness code consume.

#include "h10/ring.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace h10 {

/// Polynomial degree. The zero polynomial has degree minus infinity, which
/// compares below every finite degree and absorbs addition.
class Degree {
 public:
  constexpr Degree() = default;  // minus infinity
  constexpr explicit Degree(std::size_t d) : d_(d) {}

  static constexpr Degree minus_infinity() { return Degree{}; }

  constexpr bool is_minus_infinity() const { return !d_.has_value(); }
  std::size_t value() const {
    if (!d_) throw std::domain_error("degree of the zero polynomial is minus infinity");
    return *d_;
  }

  constexpr auto operator<=>(const Degree&) const = default;
  constexpr bool operator==(const Degree&) const = default;

  friend constexpr Degree operator+(Degree a, Degree b) {
    if (!a.d_ || !b.d_) return Degree{};
    return Degree{*a.d_ + *b.d_};
  }

 private:
  std::optional<std::size_t> d_;
};

std::ostream& operator<<(std::ostream& os, const Degree& d);

template <class Ring>
class BasicPoly {
 public:
  using value_type = typename Ring::value_type;

  explicit BasicPoly(Ring ring) : ring_(std::move(ring)) {}
  BasicPoly(Ring ring, std::vector<value_type> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    normalize();
  }

  /// Coefficients given as machine integers, reduced into the ring.
  static BasicPoly from_ints(const Ring& ring, const std::vector<std::int64_t>& coeffs) {
    std::vector<value_type> c;
    c.reserve(coeffs.size());
    for (auto v : coeffs) c.push_back(ring.from_int(v));
    return BasicPoly(ring, std::move(c));
  }
  static BasicPoly constant(const Ring& ring, std::int64_t c) { return from_ints(ring, {c}); }
  static BasicPoly monomial(const Ring& ring, value_type c, std::size_t k) {
    std::vector<value_type> v(k + 1, ring.zero());
    v[k] = std::move(c);
    return BasicPoly(ring, std::move(v));
  }
  /// The variable t.
  static BasicPoly t(const Ring& ring) { return monomial(ring, ring.one(), 1); }

  const Ring& ring() const { return ring_; }
  const std::vector<value_type>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Degree degree() const { return coeffs_.empty() ? Degree{} : Degree{coeffs_.size() - 1}; }
  bool is_constant() const { return coeffs_.size() <= 1; }

  value_type coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : ring_.zero(); }
  value_type lead() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == ring_.one(); }

  value_type eval(const value_type& x) const {
    value_type acc = ring_.zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = ring_.add(ring_.mul(acc, x), *it);
    return acc;
  }

  BasicPoly operator-() const {
    BasicPoly r(ring_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.push_back(ring_.neg(c));
    return r;
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    require_same_ring(o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), ring_.zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = ring_.add(coeffs_[i], o.coeffs_[i]);
    trim();
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    require_same_ring(o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), ring_.zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = ring_.sub(coeffs_[i], o.coeffs_[i]);
    trim();
    return *this;
  }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    a.require_same_ring(b);
    if (a.is_zero() || b.is_zero()) return BasicPoly(a.ring_);
    const Ring& R = a.ring_;
    std::vector<value_type> out(a.coeffs_.size() + b.coeffs_.size() - 1, R.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (R.is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        out[i + j] = R.add(out[i + j], R.mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    return BasicPoly(R, std::move(out));
  }

  BasicPoly scale(const value_type& c) const {
    std::vector<value_type> out;
    out.reserve(coeffs_.size());
    for (const auto& x : coeffs_) out.push_back(ring_.mul(x, c));
    return BasicPoly(ring_, std::move(out));
  }

  /// Multiply by t^k.
  BasicPoly shift_up(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<value_type> out(k, ring_.zero());
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return BasicPoly(ring_, std::move(out));
  }

  /// Keep the terms of degree below n.
  BasicPoly truncate(std::size_t n) const {
    if (coeffs_.size() <= n) return *this;
    return BasicPoly(ring_, std::vector<value_type>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// Lowest index with a nonzero coefficient (the t-adic order); nullopt for zero.
  std::optional<std::size_t> order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!ring_.is_zero(coeffs_[i])) return i;
    return std::nullopt;
  }

  bool operator==(const BasicPoly& o) const { return ring_ == o.ring_ && coeffs_ == o.coeffs_; }

  /// Total order for use in ordered containers: by degree, then by
  /// coefficients from the top down.
  friend std::strong_ordering operator<=>(const BasicPoly& a, const BasicPoly& b) {
    if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
    for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
      if (a.coeffs_[i] < b.coeffs_[i]) return std::strong_ordering::less;
      if (b.coeffs_[i] < a.coeffs_[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    for (auto& c : coeffs_) c = ring_.reduce(c);
    trim();
  }
  void trim() {
    while (!coeffs_.empty() && ring_.is_zero(coeffs_.back())) coeffs_.pop_back();
  }
  void require_same_ring(const BasicPoly& o) const {
    if (!(ring_ == o.ring_)) {
      throw std::invalid_argument("polynomial operands over different coefficient rings (" +
                                  std::to_string(ring_.characteristic()) + " vs " +
                                  std::to_string(o.ring_.characteristic()) + ")");
    }
  }

  Ring ring_;
  std::vector<value_type> coeffs_;
};

using Poly = BasicPoly<PrimeField>;
using ZPoly = BasicPoly<Integers>;

template <class Ring>
struct DivRem {
  BasicPoly<Ring> quotient;
  BasicPoly<Ring> remainder;
};

/// a = b*q + r with deg r < deg b. Over Z the divisor must have unit
/// leading coefficient.
template <class Ring>
DivRem<Ring> divrem(const BasicPoly<Ring>& a, const BasicPoly<Ring>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (!(a.ring() == b.ring())) throw std::invalid_argument("divrem: operands over different coefficient rings");
  const Ring& R = a.ring();
  if (!R.is_unit(b.lead())) throw std::domain_error("divrem: divisor leading coefficient is not a unit");
  const auto inv_lead = R.inv(b.lead());
  std::vector<typename Ring::value_type> rem = a.coeffs();
  const std::size_t db = b.coeffs().size() - 1;
  if (rem.size() <= db) return {BasicPoly<Ring>(R), a};
  std::vector<typename Ring::value_type> quot(rem.size() - db, R.zero());
  for (std::size_t k = rem.size(); k-- > db;) {
    const auto c = R.mul(rem[k], inv_lead);
    quot[k - db] = c;
    if (R.is_zero(c)) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = R.sub(rem[k - db + j], R.mul(c, b.coeffs()[j]));
  }
  rem.resize(db);
  return {BasicPoly<Ring>(R, std::move(quot)), BasicPoly<Ring>(R, std::move(rem))};
}

/// True iff d divides n. Zero divides only zero.
template <class Ring>
bool divides(const BasicPoly<Ring>& d, const BasicPoly<Ring>& n) {
  if (d.is_zero()) return n.is_zero();
  return divrem(n, d).remainder.is_zero();
}

/// Exact quotient n / d; throws if d does not divide n.
template <class Ring>
BasicPoly<Ring> exact_div(const BasicPoly<Ring>& n, const BasicPoly<Ring>& d) {
  auto [q, r] = divrem(n, d);
  if (!r.is_zero()) throw std::domain_error("exact_div: divisor does not divide dividend");
  return q;
}

template <class Ring>
BasicPoly<Ring> pow(BasicPoly<Ring> base, std::uint64_t e) {
  BasicPoly<Ring> result = BasicPoly<Ring>::constant(base.ring(), 1);
  while (e != 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

/// f(g(t)) by Horner's rule.
template <class Ring>
BasicPoly<Ring> compose(const BasicPoly<Ring>& f, const BasicPoly<Ring>& g) {
  BasicPoly<Ring> acc(f.ring());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = acc * g + BasicPoly<Ring>::monomial(f.ring(), *it, 0);
  }
  return acc;
}

/// f(t+1).
template <class Ring>
BasicPoly<Ring> shift(const BasicPoly<Ring>& f) {
  return compose(f, BasicPoly<Ring>::from_ints(f.ring(), {1, 1}));
}

struct ExtGcd {
  Poly g;
  Poly u;
  Poly v;
};

/// Monic g = gcd(a, b) with a*u + b*v = g. Both zero is an error.
ExtGcd extgcd(const Poly& a, const Poly& b);

/// f^(p^r) over F_p: coefficients are fixed by Frobenius, exponents scale by p^r.
Poly frob_pow(const Poly& f, unsigned r);

/// Square root with a normalized leading coefficient (the residue in
/// [1, (p-1)/2]), or nullopt when f is not a square. Odd p only.
std::optional<Poly> sqrt_poly(const Poly& f);

/// Square root of an element of F_p (odd p), the smaller of the two roots.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, const PrimeField& F);

/// Reduce an integer polynomial modulo p.
Poly reduce(const ZPoly& f, const PrimeField& F);

/// Symbolic rendering in descending degree, e.g. "4*t^3 + 2*t".
std::string to_string(const Poly& f, std::string_view var = "t");
std::string to_string(const ZPoly& f, std::string_view var = "t");

/// Parse either a coefficient list "[c0,c1,...]" (ascending) or a symbolic
/// sum of monomials such as "2*t^2 - t + 1".
Poly parse_poly(std::string_view text, const PrimeField& F, std::string_view var = "t");
ZPoly parse_zpoly(std::string_view text, std::string_view var = "t");

inline std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const ZPoly& f) { return os << to_string(f); }

}  // namespace h10
