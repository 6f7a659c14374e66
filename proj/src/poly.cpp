#include "h10/poly.hpp"

#include "h10/detail/expr.hpp"

#include <cctype>
#include <sstream>

namespace h10 {

std::ostream& operator<<(std::ostream& os, const Degree& d) {
  if (d.is_minus_infinity()) return os << "-inf";
  return os << d.value();
}

ExtGcd extgcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("extgcd: both operands are zero");
  if (!(a.ring() == b.ring())) throw std::invalid_argument("extgcd: operands over different fields");
  const PrimeField& F = a.ring();
  Poly r0 = a, r1 = b;
  Poly u0 = Poly::constant(F, 1), u1(F);
  Poly v0(F), v1 = Poly::constant(F, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly u2 = u0 - q * u1;
    Poly v2 = v0 - q * v1;
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  const auto inv = F.inv(r0.lead());
  return {r0.scale(inv), u0.scale(inv), v0.scale(inv)};
}

Poly frob_pow(const Poly& f, unsigned r) {
  std::uint64_t q = 1;
  const std::uint64_t p = f.ring().characteristic();
  for (unsigned i = 0; i < r; ++i) {
    if (q > (std::uint64_t{1} << 40) / p) throw std::overflow_error("frob_pow: p^r too large");
    q *= p;
  }
  if (f.is_zero()) return f;
  std::vector<std::uint64_t> out((f.coeffs().size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) out[i * q] = f.coeffs()[i];
  return Poly(f.ring(), std::move(out));
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, const PrimeField& F) {
  const std::uint64_t p = F.characteristic();
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (F.pow(a, (p - 1) / 2) != 1) return std::nullopt;
  // Tonelli-Shanks.
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (F.pow(z, (p - 1) / 2) != p - 1) ++z;
  std::uint64_t m = s, c = F.pow(z, q), t = F.pow(a, q), r = F.pow(a, (q + 1) / 2);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = F.mul(tt, tt);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = F.mul(b, b);
    m = i;
    c = F.mul(b, b);
    t = F.mul(t, c);
    r = F.mul(r, b);
  }
  return std::min(r, p - r);
}

std::optional<Poly> sqrt_poly(const Poly& f) {
  const PrimeField& F = f.ring();
  if (F.characteristic() == 2) throw std::domain_error("sqrt_poly: characteristic 2 is not supported");
  if (f.is_zero()) return f;
  const std::size_t d = f.degree().value();
  if (d % 2 != 0) return std::nullopt;
  const auto lead_root = sqrt_mod(f.lead(), F);
  if (!lead_root) return std::nullopt;
  const std::size_t k = d / 2;
  std::vector<std::uint64_t> s(k + 1, 0);
  s[k] = *lead_root;
  const auto inv_two_lead = F.inv(F.mul(2, s[k]));
  for (std::size_t i = k; i-- > 0;) {
    // coefficient of t^(k+i) in s^2, excluding the 2*s_k*s_i term
    std::uint64_t acc = 0;
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::size_t l = k + i - j;
      if (l <= i || l > k) continue;
      acc = F.add(acc, F.mul(s[j], s[l]));
    }
    s[i] = F.mul(F.sub(f.coeff(k + i), acc), inv_two_lead);
  }
  Poly root(F, std::move(s));
  if (!(root * root == f)) return std::nullopt;
  return root;
}

Poly reduce(const ZPoly& f, const PrimeField& F) {
  std::vector<std::uint64_t> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(F.from_big(c));
  return Poly(F, std::move(out));
}

namespace {

template <class Ring>
std::string render(const BasicPoly<Ring>& f, std::string_view var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const auto& c = f.coeffs()[i];
    if (f.ring().is_zero(c)) continue;
    BigInt mag;
    bool negative = false;
    if constexpr (Ring::is_field) {
      mag = c;
    } else {
      negative = c < 0;
      mag = negative ? BigInt(-c) : c;
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<BigInt> parse_coeff_text(std::string_view text, std::string_view var) {
  text = trim(text);
  std::vector<BigInt> out;
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("polynomial list must end with ']'");
    std::string_view body = trim(text.substr(1, text.size() - 2));
    if (body.empty()) return out;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = body.find(',', start);
      std::string item(trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start)));
      try {
        out.emplace_back(item);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad coefficient '" + item + "' in polynomial list");
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  const auto sparse = detail::parse_expr(text, {std::string(var)});
  for (const auto& [e, c] : sparse) {
    if (out.size() <= e[0]) out.resize(e[0] + 1, 0);
    out[e[0]] += c;
  }
  return out;
}

}  // namespace

std::string to_string(const Poly& f, std::string_view var) { return render(f, var); }
std::string to_string(const ZPoly& f, std::string_view var) { return render(f, var); }

Poly parse_poly(std::string_view text, const PrimeField& F, std::string_view var) {
  std::vector<std::uint64_t> c;
  for (const auto& v : parse_coeff_text(text, var)) c.push_back(F.from_big(v));
  return Poly(F, std::move(c));
}

ZPoly parse_zpoly(std::string_view text, std::string_view var) {
  return ZPoly(Integers{}, parse_coeff_text(text, var));
}

}  // namespace h10
