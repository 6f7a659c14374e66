#include "h10/ring.hpp"

namespace h10 {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p > 0xFFFFFFFFull) throw std::invalid_argument("PrimeField: modulus exceeds 32 bits");
  if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
}

PrimeField::value_type PrimeField::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::from_big(const BigInt& v) const {
  BigInt r = v % p_;
  if (r < 0) r += p_;
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t e) const {
  value_type result = 1 % p_;
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

Integers::value_type Integers::inv(const value_type& a) const {
  if (!is_unit(a)) throw std::domain_error("Integers: " + a.str() + " is not a unit");
  return a;
}

FieldElem::FieldElem(std::int64_t value, std::uint64_t modulus)
    : residue_(PrimeField(modulus).from_int(value)), modulus_(modulus) {}

void FieldElem::require_same(const FieldElem& o) const {
  if (modulus_ != o.modulus_) {
    throw std::invalid_argument("FieldElem: mixed moduli " + std::to_string(modulus_) + " and " +
                                std::to_string(o.modulus_));
  }
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  require_same(o);
  return {(residue_ + o.residue_) % modulus_, modulus_, true};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  require_same(o);
  return {(residue_ + modulus_ - o.residue_) % modulus_, modulus_, true};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  require_same(o);
  return {(residue_ * o.residue_) % modulus_, modulus_, true};
}

FieldElem FieldElem::operator-() const { return {(modulus_ - residue_) % modulus_, modulus_, true}; }

FieldElem FieldElem::inverse() const {
  if (residue_ == 0) throw std::domain_error("FieldElem: inverse of zero");
  std::uint64_t result = 1, base = residue_, e = modulus_ - 2;
  while (e != 0) {
    if (e & 1) result = result * base % modulus_;
    base = base * base % modulus_;
    e >>= 1;
  }
  return {result, modulus_, true};
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  require_same(o);
  return *this * o.inverse();
}

}  // namespace h10
