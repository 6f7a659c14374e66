#include "h10/bivar.hpp"

#include "h10/detail/expr.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace h10::bivar {

BiTrunc::BiTrunc(PrimeField field, unsigned D)
    : field_(field), D_(D), c_(static_cast<std::size_t>(D + 1) * (D + 2) / 2, 0) {}

std::size_t BiTrunc::index(unsigned m, unsigned n) const {
  if (m + n > D_) throw std::out_of_range("BiTrunc: index beyond total degree bound");
  // Degree-d block starts after all lower degrees; inside it, order by m.
  const std::size_t d = m + n;
  return d * (d + 1) / 2 + m;
}

std::uint64_t BiTrunc::coeff(unsigned m, unsigned n) const { return m + n > D_ ? 0 : c_[index(m, n)]; }

void BiTrunc::set(unsigned m, unsigned n, std::int64_t c) { c_[index(m, n)] = field_.from_int(c); }

void BiTrunc::set_raw(unsigned m, unsigned n, std::uint64_t c) { c_[index(m, n)] = field_.reduce(c); }

bool BiTrunc::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t x) { return x == 0; });
}

BiTrunc BiTrunc::truncate(unsigned D) const {
  if (D > D_) throw std::invalid_argument("BiTrunc::truncate: cannot raise the bound");
  BiTrunc out(field_, D);
  std::copy_n(c_.begin(), out.c_.size(), out.c_.begin());
  return out;
}

void BiTrunc::require_same(const BiTrunc& o) const {
  if (!(field_ == o.field_) || D_ != o.D_) throw std::invalid_argument("BiTrunc: mismatched field or bound");
}

BiTrunc BiTrunc::operator+(const BiTrunc& o) const {
  require_same(o);
  BiTrunc out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = field_.add(c_[i], o.c_[i]);
  return out;
}

BiTrunc BiTrunc::operator-(const BiTrunc& o) const {
  require_same(o);
  BiTrunc out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = field_.sub(c_[i], o.c_[i]);
  return out;
}

BiTrunc BiTrunc::operator-() const {
  BiTrunc out = *this;
  for (auto& x : out.c_) x = field_.neg(x);
  return out;
}

BiTrunc BiTrunc::operator*(const BiTrunc& o) const {
  require_same(o);
  BiTrunc out(field_, D_);
  for (unsigned d1 = 0; d1 <= D_; ++d1)
    for (unsigned m1 = 0; m1 <= d1; ++m1) {
      const auto a = coeff(m1, d1 - m1);
      if (a == 0) continue;
      for (unsigned d2 = 0; d1 + d2 <= D_; ++d2)
        for (unsigned m2 = 0; m2 <= d2; ++m2) {
          const auto b = o.coeff(m2, d2 - m2);
          if (b == 0) continue;
          auto& slot = out.c_[out.index(m1 + m2, d1 + d2 - m1 - m2)];
          slot = field_.add(slot, field_.mul(a, b));
        }
    }
  return out;
}

BiTrunc tu_minus_one(const PrimeField& F, unsigned D) {
  BiTrunc f(F, D);
  f.set(0, 0, -1);
  if (D >= 2) f.set(1, 1, 1);
  return f;
}

valued::LaurentTrunc collapse_M(const BiTrunc& f) {
  const auto D = static_cast<std::int64_t>(f.bound());
  const PrimeField& F = f.field();
  valued::LaurentTrunc out(F, 1, valued::ValuationMode::trivial, -D, D);
  for (std::int64_t d = -D; d <= D; ++d) {
    std::uint64_t sum = 0;
    // m - n = d, m + n <= D
    for (std::int64_t n = std::max<std::int64_t>(0, -d); 2 * n + d <= D; ++n)
      sum = F.add(sum, f.coeff(static_cast<unsigned>(n + d), static_cast<unsigned>(n)));
    if (sum != 0) out.set(d, Poly(F, {sum}));
  }
  return out;
}

KernelFactor kernel_factor(const BiTrunc& f) {
  if (!collapse_M(f).is_zero()) throw std::domain_error("kernel_factor: f(t, 1/t) != 0");
  const unsigned D = f.bound();
  if (D < 2) throw std::domain_error("kernel_factor: total degree bound must be at least 2");
  const PrimeField& Fd = f.field();
  BiTrunc gamma(Fd, D);
  for (unsigned d = 0; d <= D; ++d)
    for (unsigned m = 0; m <= d; ++m) {
      const unsigned n = d - m;
      const std::uint64_t prev = (m > 0 && n > 0) ? gamma.coeff(m - 1, n - 1) : 0;
      gamma.set_raw(m, n, Fd.sub(prev, f.coeff(m, n)));
    }
  KernelFactor out{gamma.truncate(D - 2), {}};
  for (unsigned d = D - 1; d <= D; ++d)
    for (unsigned m = 0; m <= d; ++m)
      if (gamma.coeff(m, d - m) != 0) out.boundary.emplace_back(m, d - m);
  return out;
}

namespace {

/// f(a z + b w, c z + d w), exact since the substitution is homogeneous linear.
BiTrunc linear_subst(const BiTrunc& f, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const PrimeField& F = f.field();
  const unsigned D = f.bound();
  BiTrunc lt(F, D), lu(F, D), one(F, D);
  one.set(0, 0, 1);
  if (D >= 1) {
    lt.set_raw(1, 0, a);
    lt.set_raw(0, 1, b);
    lu.set_raw(1, 0, c);
    lu.set_raw(0, 1, d);
  }
  std::vector<BiTrunc> pt{one}, pu{one};
  for (unsigned k = 1; k <= D; ++k) {
    pt.push_back(pt.back() * lt);
    pu.push_back(pu.back() * lu);
  }
  BiTrunc out(F, D);
  for (unsigned deg = 0; deg <= D; ++deg)
    for (unsigned m = 0; m <= deg; ++m) {
      const auto cm = f.coeff(m, deg - m);
      if (cm == 0) continue;
      BiTrunc term = pt[m] * pu[deg - m];
      BiTrunc scaled(F, D);
      for (unsigned e = 0; e <= D; ++e)
        for (unsigned i = 0; i <= e; ++i) scaled.set_raw(i, e - i, F.mul(cm, term.coeff(i, e - i)));
      out = out + scaled;
    }
  return out;
}

void check_mode(const PrimeField& F, CharMode mode) {
  if (mode == CharMode::odd && F.characteristic() == 2) {
    throw std::invalid_argument("delta: the (z+w)/2 rule needs odd characteristic");
  }
  if (mode == CharMode::two && F.characteristic() != 2) {
    throw std::invalid_argument("delta: the characteristic-2 rule needs p = 2");
  }
}

}  // namespace

BiTrunc delta_subst(const BiTrunc& f, CharMode mode) {
  const PrimeField& F = f.field();
  check_mode(F, mode);
  if (mode == CharMode::two) return linear_subst(f, 1, 1, 1, 0);
  const auto half = F.inv(2);
  return linear_subst(f, half, half, half, F.neg(half));
}

BiTrunc delta_inv(const BiTrunc& g, CharMode mode) {
  const PrimeField& F = g.field();
  check_mode(F, mode);
  if (mode == CharMode::two) return linear_subst(g, 0, 1, 1, 1);
  return linear_subst(g, 1, 1, 1, F.neg(1));
}

BiTrunc negate_second(const BiTrunc& f) {
  BiTrunc out = f;
  for (unsigned d = 0; d <= f.bound(); ++d)
    for (unsigned n = 1; n <= d; n += 2) out.set_raw(d - n, n, f.field().neg(f.coeff(d - n, n)));
  return out;
}

BiTrunc swap_vars(const BiTrunc& f) {
  BiTrunc out(f.field(), f.bound());
  for (unsigned d = 0; d <= f.bound(); ++d)
    for (unsigned m = 0; m <= d; ++m) out.set_raw(d - m, m, f.coeff(m, d - m));
  return out;
}

BiTrunc parse_bitrunc(std::string_view text, const PrimeField& F, unsigned D, const std::string& v1,
                      const std::string& v2) {
  BiTrunc out(F, D);
  for (const auto& [exps, c] : detail::parse_expr(text, {v1, v2})) {
    const unsigned m = exps[0], n = exps[1];
    if (m + n > D) continue;
    out.set_raw(m, n, F.add(out.coeff(m, n), F.from_big(c)));
  }
  return out;
}

std::string to_string(const BiTrunc& f, std::string_view v1, std::string_view v2) {
  std::ostringstream out;
  bool first = true;
  auto var = [&](std::string_view v, unsigned e, bool& wrote) {
    if (e == 0) return;
    if (wrote) out << '*';
    out << v;
    if (e > 1) out << '^' << e;
    wrote = true;
  };
  for (unsigned d = f.bound() + 1; d-- > 0;)
    for (unsigned m = d + 1; m-- > 0;) {
      const auto c = f.coeff(m, d - m);
      if (c == 0) continue;
      if (!first) out << " + ";
      first = false;
      bool wrote = false;
      if (c != 1 || d == 0) {
        out << c;
        wrote = true;
      }
      var(v1, m, wrote);
      var(v2, d - m, wrote);
    }
  if (first) out << '0';
  return out.str();
}

}  // namespace h10::bivar
