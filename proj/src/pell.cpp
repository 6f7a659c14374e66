#include "h10/pell.hpp"

#include <bit>
#include <thread>
#include <vector>

namespace h10::pell {

void check_mode(std::uint64_t p, CharMode mode) {
  if (mode == CharMode::two && p != 2) {
    throw std::invalid_argument("characteristic-2 Pell mode requires p = 2, got p = " + std::to_string(p));
  }
  if (mode == CharMode::odd && p == 2) {
    throw std::invalid_argument("p = 2 requires the characteristic-2 Pell mode");
  }
}

template <class Ring>
PellStepper<Ring>::PellStepper(Ring ring, CharMode mode, bool downward)
    : ring_(ring),
      downward_(downward),
      t_(BasicPoly<Ring>::t(ring)),
      t2m1_(BasicPoly<Ring>::from_ints(ring, {-1, 0, 1})),
      cur_{0, BasicPoly<Ring>::constant(ring, 1), BasicPoly<Ring>(ring), mode} {
  check_mode(ring.characteristic(), mode);
}

template <class Ring>
void PellStepper<Ring>::advance() {
  auto& [n, x, y, mode] = cur_;
  if (mode == CharMode::odd) {
    if (!downward_) {
      BasicPoly<Ring> nx = t_ * x + t2m1_ * y;
      y = x + t_ * y;
      x = std::move(nx);
    } else {
      BasicPoly<Ring> nx = t_ * x - t2m1_ * y;
      y = t_ * y - x;
      x = std::move(nx);
    }
  } else {
    if (!downward_) {
      BasicPoly<Ring> ny = x + t_ * y;
      x = std::move(y);
      y = std::move(ny);
    } else {
      BasicPoly<Ring> nx = t_ * x + y;
      y = std::move(x);
      x = std::move(nx);
    }
  }
  n += downward_ ? -1 : 1;
}

template class PellStepper<PrimeField>;
template class PellStepper<Integers>;

namespace {

template <class Ring>
BasicPellPair<Ring> generate(std::int64_t n, const Ring& ring, CharMode mode) {
  PellStepper<Ring> s(ring, mode, n < 0);
  const std::uint64_t steps = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  for (std::uint64_t i = 0; i < steps; ++i) s.advance();
  return s.current();
}

}  // namespace

PellPair pell_pair(std::int64_t n, const PrimeField& F, CharMode mode) { return generate(n, F, mode); }

ZPellPair pell_pair_z(std::int64_t n) { return generate(n, Integers{}, CharMode::odd); }

PellPair pell_add(const PellPair& a, const PellPair& b) {
  if (a.mode != b.mode) throw std::invalid_argument("pell_add: mode mismatch");
  if (!(a.x.ring() == b.x.ring())) throw std::invalid_argument("pell_add: characteristic mismatch");
  const PrimeField& F = a.x.ring();
  const Poly t = Poly::t(F);
  if (a.mode == CharMode::odd) {
    const Poly t2m1 = Poly::from_ints(F, {-1, 0, 1});
    return {a.n + b.n, a.x * b.x + t2m1 * a.y * b.y, a.x * b.y + b.x * a.y, a.mode};
  }
  // alpha^2 = t*alpha + 1
  const Poly yy = a.y * b.y;
  return {a.n + b.n, a.x * b.x + yy, a.x * b.y + b.x * a.y + t * yy, a.mode};
}

std::optional<std::int64_t> pell_index_recognize(const Poly& x, const Poly& y, CharMode mode) {
  const PrimeField& F = x.ring();
  check_mode(F.characteristic(), mode);
  if (!pell_verify(x, y, mode)) throw std::invalid_argument("pell_index_recognize: input is not a Pell solution");
  if (mode == CharMode::odd) {
    // x_n(1) = 1 for every n; -x_n(1) = -1 differs since p is odd.
    if (x.eval(1) != 1) return std::nullopt;
    const auto k = static_cast<std::int64_t>(x.degree().value());
    const PellPair pos = pell_pair(k, F, mode);
    if (y == pos.y) return k;
    if (y == -pos.y) return -k;
    throw std::logic_error("pell_index_recognize: solution outside the (x_n, y_n) family");
  }
  if (y.is_zero()) return 0;
  const auto k = static_cast<std::int64_t>(y.degree().value()) + 1;
  for (std::int64_t n : {k, -k}) {
    const PellPair cand = pell_pair(n, F, mode);
    if (cand.x == x && cand.y == y) return n;
  }
  throw std::logic_error("pell_index_recognize: solution outside the (x_n, y_n) family");
}

namespace {

Poly poly_from_index(std::uint64_t idx, const PrimeField& F, unsigned D) {
  const std::uint64_t p = F.characteristic();
  std::vector<std::uint64_t> c(D + 1);
  for (unsigned i = 0; i <= D; ++i) {
    c[i] = idx % p;
    idx /= p;
  }
  return Poly(F, std::move(c));
}

std::uint64_t bits_of(const Poly& f) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    if (f.coeffs()[i] != 0) m |= std::uint64_t{1} << i;
  return m;
}

Poly poly_from_bits(std::uint64_t m, const PrimeField& F) {
  std::vector<std::uint64_t> c;
  for (unsigned i = 0; m >> i; ++i) c.push_back((m >> i) & 1);
  return Poly(F, std::move(c));
}

/// All X in F_2[t] with X^2 + b X = c and deg X <= bound, by Gaussian
/// elimination on the F_2-linear map X -> X^2 + bX.
std::vector<Poly> solve_char2_quadratic(const Poly& b, const Poly& c, unsigned bound) {
  const PrimeField& F = b.ring();
  const unsigned cols = bound + 1;
  std::vector<std::uint64_t> column(cols);
  for (unsigned i = 0; i < cols; ++i) {
    const Poly ti = Poly::monomial(F, 1, i);
    column[i] = bits_of(ti * ti + b * ti);
  }
  const std::uint64_t target = bits_of(c);
  // Row-major augmented system: row r holds bit i = column[i] bit r; bit 63 = rhs.
  const unsigned rows = 64;
  std::vector<std::uint64_t> row(rows, 0);
  for (unsigned r = 0; r < rows - 1; ++r) {
    for (unsigned i = 0; i < cols; ++i)
      if ((column[i] >> r) & 1) row[r] |= std::uint64_t{1} << i;
    if ((target >> r) & 1) row[r] |= std::uint64_t{1} << 63;
  }
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  unsigned rank = 0;
  for (unsigned col = 0; col < cols && rank < rows; ++col) {
    unsigned sel = rank;
    while (sel < rows && !((row[sel] >> col) & 1)) ++sel;
    if (sel == rows) continue;
    std::swap(row[sel], row[rank]);
    for (unsigned r = 0; r < rows; ++r)
      if (r != rank && ((row[r] >> col) & 1)) row[r] ^= row[rank];
    pivot_col_of_row.push_back(static_cast<int>(col));
    is_pivot[col] = true;
    ++rank;
  }
  for (unsigned r = rank; r < rows; ++r)
    if (row[r] >> 63) return {};  // inconsistent
  std::vector<unsigned> free_cols;
  for (unsigned col = 0; col < cols; ++col)
    if (!is_pivot[col]) free_cols.push_back(col);
  std::vector<Poly> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_cols.size()); ++mask) {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < free_cols.size(); ++k)
      if ((mask >> k) & 1) x |= std::uint64_t{1} << free_cols[k];
    for (unsigned r = 0; r < rank; ++r) {
      const auto pc = static_cast<unsigned>(pivot_col_of_row[r]);
      std::uint64_t v = row[r] >> 63;
      const std::uint64_t others = row[r] & ~(std::uint64_t{1} << pc) & ((std::uint64_t{1} << 63) - 1);
      v ^= static_cast<std::uint64_t>(std::popcount(others & x) & 1);
      if (v) x |= std::uint64_t{1} << pc;
    }
    out.push_back(poly_from_bits(x, F));
  }
  return out;
}

void sweep(std::uint64_t begin, std::uint64_t end, const PrimeField& F, unsigned D, CharMode mode,
           std::set<Solution>& found) {
  const Poly one = Poly::constant(F, 1);
  const Poly t = Poly::t(F);
  const Poly t2m1 = Poly::from_ints(F, {-1, 0, 1});
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const Poly y = poly_from_index(idx, F, D);
    if (mode == CharMode::odd) {
      const Poly w = one + t2m1 * y * y;
      if (auto s = sqrt_poly(w)) {
        found.emplace(*s, y);
        found.emplace(-*s, y);
      }
    } else {
      for (Poly& x : solve_char2_quadratic(t * y, y * y + one, D + 1)) {
        if (pell_verify(x, y, mode)) found.emplace(std::move(x), y);
      }
    }
  }
}

}  // namespace

OracleResult pell_enumerate_oracle(std::uint64_t p, unsigned D, CharMode mode, unsigned workers) {
  const PrimeField F(p);
  check_mode(p, mode);
  std::uint64_t count = 1;
  for (unsigned i = 0; i <= D; ++i) {
    if (count > oracle_feasibility_limit / p) {
      throw InfeasibleBound("Pell oracle: p^(D+1) = " + std::to_string(p) + "^" + std::to_string(D + 1) +
                            " exceeds the feasibility limit " + std::to_string(oracle_feasibility_limit));
    }
    count *= p;
  }
  if (mode == CharMode::two && 2 * D + 3 > 63) throw InfeasibleBound("Pell oracle: char-2 degree bound exceeds 30");

  OracleResult result;
  result.candidates = count;
  workers = std::max(1u, workers);
  std::vector<std::set<Solution>> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t b = count * w / workers, e = count * (w + 1) / workers;
      pool.emplace_back([&, w, b, e] { sweep(b, e, F, D, mode, partial[w]); });
    }
  }
  for (auto& s : partial) result.found.merge(s);

  const auto max_n = static_cast<std::int64_t>(D) + 1;
  for (std::int64_t n = -max_n; n <= max_n; ++n) {
    const PellPair pr = pell_pair(n, F, mode);
    result.expected.emplace(pr.x, pr.y);
    if (mode == CharMode::odd) result.expected.emplace(-pr.x, pr.y);
  }
  return result;
}

}  // namespace h10::pell
