#include "h10/buchi.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace h10::buchi {

bool second_differences_hold(const std::vector<Poly>& u) {
  for (std::size_t n = 0; n + 2 < u.size(); ++n) {
    const Poly two = Poly::constant(u[n].ring(), 2);
    if (!(u[n + 2] - u[n + 1] - u[n + 1] + u[n] == two)) return false;
  }
  return true;
}

BuchiSeq buchi_generate(const Poly& v, unsigned r, unsigned M) {
  const PrimeField& F = v.ring();
  BuchiSeq seq;
  seq.terms.reserve(M);
  for (unsigned n = 1; n <= M; ++n) {
    const Poly base = v + Poly::constant(F, n);
    // (n+v)^(p^r) * (n+v), the first factor by Frobenius.
    seq.terms.push_back(frob_pow(base, r) * base);
  }
  seq.valid = second_differences_hold(seq.terms);
  return seq;
}

std::optional<unsigned> ge_p_check(const Poly& f, const Poly& g) {
  if (f == g) return 0u;
  if (g.is_constant() || f.degree() < g.degree()) return std::nullopt;  // constants are Frobenius-fixed
  Poly h = g;
  for (unsigned r = 1;; ++r) {
    h = frob_pow(h, 1);
    if (f.degree() < h.degree()) return std::nullopt;
    if (h == f) return r;
  }
}

std::optional<Poly> square_root_poly(const Poly& u) {
  if (u.ring().characteristic() == 2) throw std::invalid_argument("square_root_poly: needs odd p");
  return sqrt_poly(u);
}

std::optional<FamilyMatch> match_family(const Poly& u1, const Poly& u2) {
  const PrimeField& F = u1.ring();
  if (F.characteristic() == 2) throw std::invalid_argument("match_family: needs odd p");
  const Poly A = u2 - u1 - Poly::constant(F, 3);
  const Poly B = u1 + u1 - u2 + Poly::constant(F, 2);
  const Poly disc = A * A - Poly::constant(F, 4) * B;
  const auto s = sqrt_poly(disc);
  if (!s) return std::nullopt;
  const auto half = Poly::constant(F, static_cast<std::int64_t>(F.inv(2)));
  const Poly r1 = half * (A + *s), r2 = half * (A - *s);
  std::optional<FamilyMatch> best;
  for (const auto& [v, w] : {std::pair{r1, r2}, std::pair{r2, r1}}) {
    if (auto r = ge_p_check(w, v)) {
      if (!best || *r < best->r) best = FamilyMatch{v, *r};
    }
  }
  if (!best) return std::nullopt;
  // The recurrence fixes the tail, so agreement on u_1, u_2 is agreement everywhere.
  const auto gen = buchi_generate(best->v, best->r, 2);
  if (!(gen.terms[0] == u1) || !(gen.terms[1] == u2)) return std::nullopt;
  return best;
}

SeedVerdict classify_seed(const Poly& u1, const Poly& u2, unsigned length) {
  const Poly two = Poly::constant(u1.ring(), 2);
  Poly a = u1, b = u2;
  bool nonconstant = !a.is_constant() || !b.is_constant();
  if (!square_root_poly(a) || !square_root_poly(b)) return SeedVerdict::rejected;
  for (unsigned n = 3; n <= length; ++n) {
    Poly c = b + b - a + two;
    if (!square_root_poly(c)) return SeedVerdict::rejected;
    nonconstant = nonconstant || !c.is_constant();
    a = std::move(b);
    b = std::move(c);
  }
  return nonconstant ? SeedVerdict::retained : SeedVerdict::constant;
}

std::uint64_t SearchReport::matched() const {
  return static_cast<std::uint64_t>(
      std::count_if(retained.begin(), retained.end(), [](const RetainedFamily& f) { return f.match.has_value(); }));
}

std::uint64_t SearchReport::flagged() const { return retained.size() - matched(); }

SearchReport buchi_search_oracle(std::uint64_t p, unsigned d, unsigned length, unsigned workers) {
  if (d > 2) throw InfeasibleSearch("buchi oracle: seed degree d = " + std::to_string(d) + " exceeds 2");
  if (p == 2) throw std::invalid_argument("buchi oracle: needs odd p");
  const PrimeField F(p);
  std::uint64_t count = 1;
  for (unsigned i = 0; i <= d; ++i) count *= p;

  std::set<Poly> squares;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint64_t> c(d + 1);
    std::uint64_t k = idx;
    for (auto& x : c) {
      x = k % p;
      k /= p;
    }
    const Poly s(F, std::move(c));
    squares.insert(s * s);
  }
  const std::vector<Poly> sq(squares.begin(), squares.end());

  SearchReport report;
  report.p = p;
  report.d = d;
  report.length = length;
  report.distinct_squares = sq.size();
  report.seed_pairs = sq.size() * sq.size();

  workers = std::max(1u, workers);
  struct Partial {
    std::uint64_t constant = 0;
    std::vector<RetainedFamily> retained;
  };
  std::vector<Partial> parts(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < sq.size(); i += workers)
          for (const Poly& u2 : sq) {
            switch (classify_seed(sq[i], u2, length)) {
              case SeedVerdict::rejected:
                break;
              case SeedVerdict::constant:
                ++parts[w].constant;
                break;
              case SeedVerdict::retained:
                parts[w].retained.push_back({sq[i], u2, match_family(sq[i], u2)});
                break;
            }
          }
      });
    }
  }
  for (auto& part : parts) {
    report.constant_families += part.constant;
    for (auto& f : part.retained) report.retained.push_back(std::move(f));
  }
  std::sort(report.retained.begin(), report.retained.end(), [](const RetainedFamily& a, const RetainedFamily& b) {
    return std::tie(a.u1, a.u2) < std::tie(b.u1, b.u2);
  });
  return report;
}

std::string to_string(const SearchReport& r) {
  std::ostringstream out;
  out << "p=" << r.p << " d=" << r.d << " length=" << r.length << '\n';
  out << "distinct squares: " << r.distinct_squares << '\n';
  out << "seed pairs: " << r.seed_pairs << '\n';
  out << "constant families: " << r.constant_families << '\n';
  out << "retained families: " << r.retained.size() << '\n';
  out << "matched: " << r.matched() << '\n';
  out << "flagged for review: " << r.flagged() << '\n';
  for (const auto& f : r.retained) {
    out << "  u1 = " << to_string(f.u1) << ", u2 = " << to_string(f.u2);
    if (f.match) out << " -> v = " << to_string(f.match->v) << ", r = " << f.match->r;
    else out << " -> unmatched";
    out << '\n';
  }
  return out.str();
}

}  // namespace h10::buchi
