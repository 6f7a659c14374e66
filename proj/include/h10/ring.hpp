#pragma once

// Coefficient rings for the dense polynomial type: prime fields and the
// rational integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace h10 {

using BigInt = boost::multiprecision::cpp_int;

/// Characteristic mode shared by the Pell and bivariate modules: the
/// X^2 - (t^2-1)Y^2 = 1 branch (any characteristic but 2) or the
/// X^2 + tXY + Y^2 = 1 branch (characteristic 2).
enum class CharMode { odd, two };

bool is_prime(std::uint64_t n);

/// The prime field F_p. Residues are stored as integers in [0, p); p is
/// limited to 32 bits so that products fit in 64 bits.
class PrimeField {
 public:
  using value_type = std::uint64_t;
  static constexpr bool is_field = true;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t characteristic() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const;
  value_type from_big(const BigInt& v) const;
  value_type reduce(value_type v) const { return v % p_; }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
  value_type pow(value_type a, std::uint64_t e) const;
  value_type inv(value_type a) const;
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a != 0; }

  std::string to_string(value_type a) const { return std::to_string(a); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

/// The ring Z with arbitrary precision.
class Integers {
 public:
  using value_type = BigInt;
  static constexpr bool is_field = false;

  std::uint64_t characteristic() const { return 0; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return v; }
  value_type from_big(const BigInt& v) const { return v; }
  const value_type& reduce(const value_type& v) const { return v; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const;
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }

  std::string to_string(const value_type& a) const { return a.str(); }

  bool operator==(const Integers&) const = default;
};

/// A single element of F_p carrying its modulus.
class FieldElem {
 public:
  FieldElem(std::int64_t value, std::uint64_t modulus);

  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return modulus_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;

  bool operator==(const FieldElem&) const = default;

 private:
  FieldElem(std::uint64_t residue, std::uint64_t modulus, bool /*reduced*/)
      : residue_(residue), modulus_(modulus) {}
  void require_same(const FieldElem& o) const;

  std::uint64_t residue_;
  std::uint64_t modulus_;
};

}  // namespace h10
