#include "h10/valued.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace h10::valued {

namespace {

Poly trunc_q(const Poly& f, unsigned precision) { return f.truncate(precision); }

void require_compatible(const LaurentTrunc& a, const LaurentTrunc& b, const char* op) {
  if (!(a.field() == b.field()) || a.precision() != b.precision() || a.mode() != b.mode()) {
    throw std::invalid_argument(std::string(op) + ": incompatible series parameters");
  }
}

}  // namespace

ValCoeff::ValCoeff(Poly series, unsigned precision)
    : series_(trunc_q(series, precision)), precision_(precision) {
  if (precision == 0) throw std::invalid_argument("ValCoeff: precision must be positive");
}

std::optional<unsigned> ValCoeff::valuation() const {
  if (series_.is_zero()) return std::nullopt;
  return static_cast<unsigned>(*series_.order());
}

ValCoeff ValCoeff::operator+(const ValCoeff& o) const { return {series_ + o.series_, std::min(precision_, o.precision_)}; }

ValCoeff ValCoeff::operator-(const ValCoeff& o) const { return {series_ - o.series_, std::min(precision_, o.precision_)}; }

ValCoeff ValCoeff::operator*(const ValCoeff& o) const {
  const unsigned prec = std::min(precision_, o.precision_);
  return {(series_ * o.series_).truncate(prec), prec};
}

LaurentTrunc::LaurentTrunc(PrimeField field, unsigned precision, ValuationMode mode, std::int64_t n_min,
                           std::int64_t n_max)
    : field_(field),
      precision_(mode == ValuationMode::trivial ? 1 : precision),
      mode_(mode),
      n_min_(n_min),
      n_max_(n_max) {
  if (n_min > n_max) throw std::invalid_argument("LaurentTrunc: empty window");
  if (precision_ == 0) throw std::invalid_argument("LaurentTrunc: precision must be positive");
}

LaurentTrunc LaurentTrunc::from_poly(const Poly& f) {
  const auto top = f.is_zero() ? 0 : static_cast<std::int64_t>(f.degree().value());
  LaurentTrunc h(f.ring(), 1, ValuationMode::trivial, 0, top);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    h.set(static_cast<std::int64_t>(i), Poly::constant(f.ring(), static_cast<std::int64_t>(f.coeffs()[i])));
  return h;
}

LaurentTrunc LaurentTrunc::one(const PrimeField& field, unsigned precision, ValuationMode mode) {
  LaurentTrunc h(field, precision, mode, 0, 0);
  h.set(0, Poly::constant(field, 1));
  return h;
}

void LaurentTrunc::set_coeff(std::int64_t n, ValCoeff c) {
  n_min_ = std::min(n_min_, n);
  n_max_ = std::max(n_max_, n);
  if (mode_ == ValuationMode::trivial && c.is_zero()) {
    coeffs_.erase(n);
    return;
  }
  coeffs_.insert_or_assign(n, std::move(c));
}

void LaurentTrunc::set(std::int64_t n, const Poly& series_in_q) {
  if (!(series_in_q.ring() == field_)) throw std::invalid_argument("LaurentTrunc::set: wrong coefficient field");
  set_coeff(n, ValCoeff(series_in_q, precision_));
}

ValCoeff LaurentTrunc::coefficient(std::int64_t n) const {
  if (auto it = coeffs_.find(n); it != coeffs_.end()) return it->second;
  return {Poly(field_), precision_};
}

bool LaurentTrunc::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

LaurentTrunc series_mul(const LaurentTrunc& h, const LaurentTrunc& g) {
  require_compatible(h, g, "series_mul");
  LaurentTrunc out(h.field_, h.precision_, h.mode_, h.n_min_ + g.n_min_, h.n_max_ + g.n_max_);
  std::map<std::int64_t, ValCoeff> acc;
  for (const auto& [a, ca] : h.coeffs_) {
    for (const auto& [b, cb] : g.coeffs_) {
      const ValCoeff term = ca * cb;
      auto [it, fresh] = acc.try_emplace(a + b, term);
      if (!fresh) it->second = it->second + term;
    }
  }
  for (auto& [n, c] : acc) out.set_coeff(n, std::move(c));
  return out;
}

LaurentTrunc series_add(const LaurentTrunc& h, const LaurentTrunc& g) {
  require_compatible(h, g, "series_add");
  LaurentTrunc out = h;
  out.n_min_ = std::min(h.n_min_, g.n_min_);
  out.n_max_ = std::max(h.n_max_, g.n_max_);
  for (const auto& [n, c] : g.coeffs_) out.set_coeff(n, out.coefficient(n) + c);
  return out;
}

LaurentTrunc reflect(const LaurentTrunc& h) {
  LaurentTrunc out(h.field_, h.precision_, h.mode_, -h.n_max_, -h.n_min_);
  for (const auto& [n, c] : h.coeffs_) out.coeffs_.emplace(-n, c);
  return out;
}

NewtonPolygon NewtonPolygon::hull(std::vector<Vertex> points) {
  std::sort(points.begin(), points.end(), [](const Vertex& a, const Vertex& b) {
    return a.n != b.n ? a.n < b.n : a.v < b.v;
  });
  points.erase(std::unique(points.begin(), points.end(), [](const Vertex& a, const Vertex& b) { return a.n == b.n; }),
               points.end());
  NewtonPolygon out;
  auto& hv = out.vertices_;
  for (const Vertex& c : points) {
    // Drop the middle point unless the slopes strictly increase.
    while (hv.size() >= 2) {
      const Vertex& a = hv[hv.size() - 2];
      const Vertex& b = hv.back();
      const __int128 lhs = static_cast<__int128>(b.v - a.v) * (c.n - b.n);
      const __int128 rhs = static_cast<__int128>(c.v - b.v) * (b.n - a.n);
      if (lhs >= rhs) hv.pop_back();
      else break;
    }
    hv.push_back(c);
  }
  return out;
}

std::int64_t NewtonPolygon::evaluate(std::int64_t s) const {
  if (vertices_.empty()) throw std::domain_error("NewtonPolygon::evaluate: empty polygon");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& [n, v] : vertices_) best = std::min(best, v + n * s);
  return best;
}

std::optional<std::pair<std::int64_t, std::int64_t>> NewtonPolygon::height_at(std::int64_t n) const {
  if (vertices_.empty() || n < vertices_.front().n || n > vertices_.back().n) return std::nullopt;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].n == n) return std::pair{vertices_[i].v, std::int64_t{1}};
    if (vertices_[i].n > n) {
      const Vertex& a = vertices_[i - 1];
      const Vertex& b = vertices_[i];
      const std::int64_t den = b.n - a.n;
      return std::pair{a.v * den + (b.v - a.v) * (n - a.n), den};
    }
  }
  return std::nullopt;
}

NewtonPolygon newton_polygon(const LaurentTrunc& h) {
  std::vector<Vertex> pts;
  std::vector<std::int64_t> precision_zeros;
  for (const auto& [n, c] : h.entries()) {
    if (auto v = c.valuation()) pts.push_back({n, static_cast<std::int64_t>(*v)});
    else precision_zeros.push_back(n);
  }
  if (pts.empty()) throw std::domain_error("newton_polygon: all-zero input");
  NewtonPolygon out = NewtonPolygon::hull(std::move(pts));
  // A precision-zero has true valuation >= Q; it can only matter where the hull is above Q.
  const auto Q = static_cast<std::int64_t>(h.precision());
  for (std::int64_t n : precision_zeros) {
    const auto height = out.height_at(n);
    if (!height || height->first > Q * height->second) out.flagged_.push_back(n);
  }
  return out;
}

NewtonPolygon polygon_sum(const NewtonPolygon& a, const NewtonPolygon& b) {
  if (a.vertices().empty()) return b;
  if (b.vertices().empty()) return a;
  struct Edge {
    std::int64_t dn, dv;
  };
  std::vector<Edge> edges;
  for (const auto* poly : {&a, &b}) {
    const auto& v = poly->vertices();
    for (std::size_t i = 1; i < v.size(); ++i) edges.push_back({v[i].n - v[i - 1].n, v[i].v - v[i - 1].v});
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return static_cast<__int128>(x.dv) * y.dn < static_cast<__int128>(y.dv) * x.dn;
  });
  std::vector<Vertex> pts{{a.vertices().front().n + b.vertices().front().n,
                           a.vertices().front().v + b.vertices().front().v}};
  for (const Edge& e : edges) pts.push_back({pts.back().n + e.dn, pts.back().v + e.dv});
  return NewtonPolygon::hull(std::move(pts));
}

NewtonPolygon reflect(const NewtonPolygon& a) {
  std::vector<Vertex> pts;
  for (const auto& [n, v] : a.vertices()) pts.push_back({-n, v});
  return NewtonPolygon::hull(std::move(pts));
}

bool is_odd(const NewtonPolygon& a, const std::vector<std::int64_t>& samples) {
  return std::all_of(samples.begin(), samples.end(), [&](std::int64_t s) { return a.evaluate(-s) == -a.evaluate(s); });
}

Monomial norm_one_monomial(const LaurentTrunc& h) {
  const auto Q = h.precision();
  const LaurentTrunc prod = series_mul(h, reflect(h));
  for (const auto& [n, c] : prod.entries()) {
    const Poly expect = Poly::constant(h.field(), n == 0 ? 1 : 0);
    if (!(c.series() == expect)) throw PreconditionViolated("norm_one_monomial: h(t)*h(1/t) != 1");
  }
  if (prod.coefficient(0).series() != Poly::constant(h.field(), 1)) {
    throw PreconditionViolated("norm_one_monomial: h(t)*h(1/t) != 1");
  }
  const std::string inconclusive = "norm_one_monomial: inconclusive at precision Q=" + std::to_string(Q);
  const NewtonPolygon poly = newton_polygon(h);
  // A convex function that is also odd is linear: a single vertex at height 0.
  if (!poly.flagged().empty() || !is_odd(poly, {-3, -2, -1, 0, 1, 2, 3}) || !poly.is_point() ||
      poly.vertices().front().v != 0) {
    throw Inconclusive(inconclusive);
  }
  const std::int64_t n = poly.vertices().front().n;
  for (const auto& [m, c] : h.entries()) {
    if (m != n && !c.is_zero()) throw Inconclusive(inconclusive);
  }
  const PrimeField& F = h.field();
  const Poly c = h.coefficient(n).series();
  if (c == Poly::constant(F, 1)) return {1, n};
  if (c == Poly::constant(F, -1)) return {-1, n};
  throw Inconclusive(inconclusive);
}

LaurentTrunc theta_series(std::uint64_t p, std::int64_t n_max, unsigned precision) {
  const PrimeField F(p);
  if (n_max <= 0) return LaurentTrunc(F, precision, ValuationMode::q_adic, 0, 0);
  LaurentTrunc h(F, precision, ValuationMode::q_adic, 1, n_max);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto e = static_cast<std::size_t>(n * n);
    h.set(n, e < precision ? Poly::monomial(F, 1, e) : Poly(F));
  }
  return h;
}

LaurentTrunc parse_series(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) throw std::invalid_argument("series: missing '@ p=.. Q=..' suffix");
  std::string params(text.substr(at + 1));
  std::uint64_t p = 0;
  unsigned Q = 0;
  bool trivial = false;
  {
    std::istringstream in(params);
    std::string tok;
    while (in >> tok) {
      if (tok.rfind("p=", 0) == 0) p = std::stoull(tok.substr(2));
      else if (tok.rfind("Q=", 0) == 0) Q = static_cast<unsigned>(std::stoul(tok.substr(2)));
      else if (tok == "trivial") trivial = true;
      else throw std::invalid_argument("series: unknown parameter '" + tok + "'");
    }
  }
  if (p == 0) throw std::invalid_argument("series: missing p=");
  if (!trivial && Q == 0) throw std::invalid_argument("series: missing Q= (or 'trivial')");
  const PrimeField F(p);

  std::string body(text.substr(0, at));
  const auto lb = body.find('{'), rb = body.rfind('}');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
    throw std::invalid_argument("series: expected '{n: coeff, ...}'");
  }
  body = body.substr(lb + 1, rb - lb - 1);
  std::vector<std::pair<std::int64_t, Poly>> terms;
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = body.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.find_first_not_of(" \t\n") == std::string::npos) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("series: entry '" + item + "' lacks ':'");
    const std::int64_t n = std::stoll(item.substr(0, colon));
    terms.emplace_back(n, parse_poly(item.substr(colon + 1), F, "q"));
  }
  const ValuationMode mode = trivial ? ValuationMode::trivial : ValuationMode::q_adic;
  if (terms.empty()) return LaurentTrunc(F, trivial ? 1 : Q, mode, 0, 0);
  auto [lo, hi] = std::minmax_element(terms.begin(), terms.end(), [](auto& a, auto& b) { return a.first < b.first; });
  LaurentTrunc h(F, trivial ? 1 : Q, mode, lo->first, hi->first);
  for (auto& [n, c] : terms) {
    if (trivial && !c.is_constant()) throw std::invalid_argument("series: trivial mode takes constant coefficients");
    h.set(n, c);
  }
  return h;
}

std::string to_string(const LaurentTrunc& h) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [n, c] : h.entries()) {
    if (!first) out << ", ";
    first = false;
    out << n << ": " << to_string(c.series(), "q");
  }
  out << "} @ p=" << h.field().characteristic();
  if (h.mode() == ValuationMode::trivial) out << " trivial";
  else out << " Q=" << h.precision();
  return out.str();
}

std::string to_string(const NewtonPolygon& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.vertices().size(); ++i) {
    if (i) out << ' ';
    out << '(' << a.vertices()[i].n << ',' << a.vertices()[i].v << ')';
  }
  return out.str();
}

}  // namespace h10::valued
