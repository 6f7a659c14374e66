#include "h10/harness.hpp"

#include "h10/buchi.hpp"
#include "h10/families.hpp"
#include "h10/pell.hpp"

#include <sstream>

namespace h10::harness {

namespace {

Poly tpoly(const PrimeField& F) { return Poly::t(F); }
Poly one(const PrimeField& F) { return Poly::constant(F, 1); }

std::uint64_t p_power(std::uint64_t p, unsigned r) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) {
    if (q > (std::uint64_t{1} << 40) / p) throw SynthesisError("p^r too large");
    q *= p;
  }
  return q;
}

void require_odd(const PrimeField& F, const char* what) {
  if (F.characteristic() == 2) throw SynthesisError(std::string(what) + ": needs odd p");
}

// (x - 1)/(t - 1) when exact.
std::optional<Poly> pair_quotient(const Poly& x) {
  const PrimeField& F = x.ring();
  auto [q, r] = divrem(x - one(F), tpoly(F) - one(F));
  if (!r.is_zero()) return std::nullopt;
  return q;
}

// Copy the entries of `w` other than `skip`, with `pfx` prepended.
void merge_bound(Assignment& out, const Assignment& w, const std::vector<std::string>& skip, const std::string& pfx) {
  for (const auto& [k, v] : w)
    if (std::find(skip.begin(), skip.end(), k) == skip.end()) out.insert_or_assign(pfx + k, v);
}

Witness make(std::string family, const PrimeField& F) {
  Witness w;
  w.family = std::move(family);
  w.p = F.characteristic();
  return w;
}

}  // namespace

Witness synth_nu(const Poly& f) {
  if (f.is_zero()) throw SynthesisError("nu: f = 0 has no witness");
  const PrimeField& F = f.ring();
  const Poly t = tpoly(F), tm1 = t - one(F);
  Poly gamma = f;
  std::size_t alpha = 0, beta = 0;
  while (divides(t, gamma)) gamma = exact_div(gamma, t), ++alpha;
  while (divides(tm1, gamma)) gamma = exact_div(gamma, tm1), ++beta;
  const Poly Fp = pow(tm1, beta) * gamma;
  const Poly G = pow(t, alpha) * gamma;
  const auto e1 = extgcd(t, Fp);   // t u + F v = 1
  const auto e2 = extgcd(tm1, G);  // (t-1) s + G r = 1
  Witness w = make("nu", F);
  w.values.insert_or_assign("f", f);
  w.values.insert_or_assign("a", -e1.u);
  w.values.insert_or_assign("b", -e2.u);
  w.values.insert_or_assign("c", gamma * e1.v * e2.v);
  return w;
}

Witness synth_beta_prime(const Poly& g, unsigned r) {
  const PrimeField& F = g.ring();
  const std::uint64_t q = p_power(F.characteristic(), r);
  Witness w = make("beta'", F);
  const Poly f = frob_pow(g, r);
  w.values.insert_or_assign("x", f);
  w.values.insert_or_assign("y", g);
  for (int n = 1; n <= 17; ++n) {
    const Poly base = g + Poly::constant(F, n - 1);
    w.values.insert_or_assign("u" + std::to_string(n), frob_pow(base, r) * base);
  }
  Poly z = one(F);
  if (q > 1) z = g.is_zero() ? Poly(F) : exact_div(f, g);
  w.values.insert_or_assign("z", z);
  return w;
}

Witness synth_beta(const Poly& g, unsigned r) {
  const PrimeField& F = g.ring();
  require_odd(F, "beta");
  const std::uint64_t q = p_power(F.characteristic(), r);
  const Poly t = tpoly(F);
  Witness w = make("beta", F);
  w.values.insert_or_assign("x", frob_pow(g, r));
  w.values.insert_or_assign("y", g);
  w.values.insert_or_assign("u", frob_pow(t, r));
  w.values.insert_or_assign("v", pow(t * t - one(F), (q - 1) / 2));
  merge_bound(w.values, synth_beta_prime(t, r).values, {"x", "y"}, interp::prefix::beta_outer);
  merge_bound(w.values, synth_beta_prime(t * g, r).values, {"x", "y"}, interp::prefix::beta_scaled);
  merge_bound(w.values, synth_beta_prime(g, r).values, {"x", "y"}, interp::prefix::beta_plain);
  return w;
}

Witness synth_phi_F(unsigned r, const PrimeField& F) {
  require_odd(F, "phi");
  const std::uint64_t q = p_power(F.characteristic(), r);
  const Poly t = tpoly(F);
  const Poly f = frob_pow(t, r);
  Witness w = make("phi", F);
  w.values.insert_or_assign("f", f);
  w.values.insert_or_assign("y", pow(t * t - one(F), (q - 1) / 2));
  w.values.insert_or_assign("h", exact_div(f - one(F), t - one(F)));
  w.values.insert_or_assign("u", f + one(F));
  w.values.insert_or_assign("v", pow(t * t + t + t, (q - 1) / 2));  // y_(p^r) at t+1
  w.values.insert_or_assign("g", Poly::monomial(F, 1, q - 1));
  return w;
}

Witness synth_psi(std::uint64_t k, unsigned r, const PrimeField& F) {
  const std::uint64_t q = p_power(F.characteristic(), r);
  if (k < 1 || k > q) throw SynthesisError("psi: need 1 <= k <= p^r");
  const Poly t = tpoly(F);
  const Poly f = Poly::monomial(F, 1, k);
  Witness w = make("psi", F);
  w.values.insert_or_assign("f", f);
  w.values.insert_or_assign("h", Poly::monomial(F, 1, q));
  merge_bound(w.values, synth_phi_F(r, F).values, {"f"}, interp::prefix::psi_phi);
  w.values.insert_or_assign("w1", Poly::monomial(F, 1, q - k));
  w.values.insert_or_assign("w2", Poly::monomial(F, 1, k - 1));
  w.values.insert_or_assign("w3", exact_div(f - one(F), t - one(F)));
  return w;
}

Witness synth_theta(std::int64_t n, const PrimeField& F) {
  require_odd(F, "theta");
  const auto pp = pell::pell_pair(n, F);
  Witness w = make("phi_L*", F);
  w.values.insert_or_assign("x", pp.x);
  w.values.insert_or_assign("y", pp.y);
  w.values.insert_or_assign("z", *pair_quotient(pp.x));
  return w;
}

bool in_F(const Poly& f) {
  if (!f.is_monic() || f.degree().is_minus_infinity()) return false;
  const std::size_t d = f.degree().value();
  if (!(f == Poly::monomial(f.ring(), 1, d))) return false;
  std::size_t m = d;
  const std::uint64_t p = f.ring().characteristic();
  while (m > 1 && m % p == 0) m /= p;
  return m == 1;
}

bool in_P(const Poly& f) {
  if (!f.is_monic()) return false;
  const std::size_t d = f.degree().value();
  return d >= 1 && f == Poly::monomial(f.ring(), 1, d);
}

bool ge_p(const Poly& f, const Poly& g) { return buchi::ge_p_check(f, g).has_value(); }

std::int64_t theta_decode(const Poly& x, const Poly& y) {
  const auto n = pell::pell_index_recognize(x, y);
  if (!n) throw std::invalid_argument("theta_decode: (-x_n, y_n) is not in the domain");
  return *n;
}

bool z_divides(std::int64_t n, std::int64_t m) { return n == 0 ? m == 0 : m % n == 0; }

bool z_pdivides(std::uint64_t p, std::int64_t n, std::int64_t m) {
  if (n == 0) return m == 0;
  if (m % n != 0) return false;
  std::int64_t q = m / n;
  if (q < 0) q = -q;
  const auto P = static_cast<std::int64_t>(p);
  while (q % P == 0) q /= P;
  return q == 1;
}

formula::Model<std::int64_t> z_model(std::uint64_t p) {
  formula::Model<std::int64_t> m;
  m.apply = [](const std::string& s, const std::vector<std::int64_t>& a) -> std::int64_t {
    if (s == "0") return 0;
    if (s == "1") return 1;
    if (s == "+") return a[0] + a[1];
    throw formula::EvalError("no interpretation for function '" + s + "' in Z");
  };
  using Args = std::vector<std::int64_t>;
  m.relations["="] = [](const Args& a) { return a[0] == a[1]; };
  m.relations["!="] = [](const Args& a) { return a[0] != a[1]; };
  m.relations["|"] = [](const Args& a) { return z_divides(a[0], a[1]); };
  m.relations["|*"] = [p](const Args& a) { return z_pdivides(p, a[0], a[1]); };
  return m;
}

formula::Model<std::int64_t> zd_model(std::uint64_t p) {
  auto m = z_model(p);
  using Args = std::vector<std::int64_t>;
  m.relations.erase("|*");
  m.relations.erase("!=");
  m.relations["|_p"] = [p](const Args& a) { return z_pdivides(p, a[0], a[1]) || z_pdivides(p, a[1], a[0]); };
  m.relations["T"] = [](const Args& a) { return a[0] != 0 && a[0] != 1 && a[0] != -1; };
  return m;
}

Synthesizer phi_synthesizer(std::uint64_t p) {
  const PrimeField F(p);
  Synthesizer s;
  s.p = p;
  s.dim = 2;
  s.encode = [F](std::int64_t n) {
    const auto pp = pell::pell_pair(n, F);
    return std::vector<Poly>{pp.x, pp.y};
  };
  s.decode = [](const std::vector<Poly>& c) -> std::optional<std::int64_t> {
    try {
      return pell::pell_index_recognize(c.at(0), c.at(1));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  };
  s.bound = [F](const std::string& symbol, const std::vector<Poly>& a) -> std::optional<Assignment> {
    Assignment out;
    auto pair = [&](const Poly& x, const std::string& pfx) {
      auto z = pair_quotient(x);
      if (!z) return false;
      out.insert_or_assign(pfx + "z", *z);
      return true;
    };
    if (symbol == interp::domain_symbol) {
      if (!pair(a[0], "")) return std::nullopt;
      return out;
    }
    if (symbol == "0" || symbol == "1") return out;
    if (!pair(a[0], interp::prefix::first_pair) || !pair(a[2], interp::prefix::second_pair)) return std::nullopt;
    if (symbol == "+" || symbol == "=") return out;
    const Poly &x = a[0], &y = a[1], &u = a[2], &v = a[3];
    if (symbol == "|") {
      if (y.is_zero()) {
        if (!v.is_zero()) return std::nullopt;
        out.insert_or_assign("z", Poly(F));
        return out;
      }
      auto [q, r] = divrem(v, y);
      if (!r.is_zero()) return std::nullopt;
      out.insert_or_assign("z", q);
      return out;
    }
    if (symbol == "|*") {
      const auto r = buchi::ge_p_check(u, x);
      if (!r) return std::nullopt;
      merge_bound(out, synth_beta(x, *r).values, {"x", "y"}, interp::prefix::star);
      return out;
    }
    if (symbol == "!=") {
      if (!(x == u)) merge_bound(out, synth_nu(x - u).values, {"f"}, interp::prefix::neq_x);
      else if (!(y == v)) merge_bound(out, synth_nu(y - v).values, {"f"}, interp::prefix::neq_y);
      else return std::nullopt;
      return out;
    }
    return std::nullopt;
  };
  return s;
}

bool check_instance(const interp::Interpretation& I, const Synthesizer& s, const std::string& symbol,
                    const std::vector<std::int64_t>& values) {
  const auto& def = I.formula_for(symbol);
  std::vector<Poly> args;
  for (auto n : values)
    for (auto& c : s.encode(n)) args.push_back(std::move(c));
  if (args.size() != def.params.size()) throw std::invalid_argument("check_instance: wrong number of values");
  std::optional<Assignment> w;
  try {
    w = s.bound(symbol, args);
  } catch (const SynthesisError&) {
    return false;
  }
  if (!w) return false;
  for (std::size_t i = 0; i < args.size(); ++i) w->insert_or_assign(def.params[i], args[i]);
  try {
    return formula::check_sat(def.body, *w, s.p);
  } catch (const formula::EvalError&) {
    return false;
  }
}

namespace {

// Number of leaves of z + (z + ...) when every leaf is the variable z.
std::optional<std::uint64_t> sum_count(const formula::Term& t, const std::string& z) {
  if (t.is_var()) return t.name() == z ? std::optional<std::uint64_t>(1) : std::nullopt;
  if (t.name() != "+" || t.args().size() != 2) return std::nullopt;
  auto a = sum_count(t.args()[0], z), b = sum_count(t.args()[1], z);
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

}  // namespace

std::optional<Assignment> guard_witness(const Formula& guard, std::uint64_t p) {
  const PrimeField F(p);
  const auto pre = formula::prenex(guard);
  Assignment w;
  if (!pre.bound.empty()) {
    std::vector<Formula> atoms;
    if (pre.matrix.kind() == Formula::Kind::atom) atoms.push_back(pre.matrix);
    else if (pre.matrix.kind() == Formula::Kind::conj) atoms = pre.matrix.parts();
    for (const auto& a : atoms) {
      if (a.kind() != Formula::Kind::atom || a.relation() != "=" || !(a.args()[1] == formula::C("1"))) continue;
      for (const auto& z : pre.bound) {
        auto k = sum_count(a.args()[0], z);
        if (!k) continue;
        const auto km = F.from_int(static_cast<std::int64_t>(*k % p));
        if (km == 0) return std::nullopt;
        w.insert_or_assign(z, Poly::constant(F, static_cast<std::int64_t>(F.inv(km))));
      }
    }
  }
  try {
    if (formula::check_sat(guard, w, p)) return w;
  } catch (const formula::EvalError&) {
  }
  return std::nullopt;
}

Synthesizer dispatch_synthesizer(const std::vector<interp::Branch>& branches, const std::vector<Synthesizer>& synths,
                                 std::uint64_t p, std::optional<std::size_t> force) {
  if (branches.size() != synths.size()) throw std::invalid_argument("dispatch_synthesizer: one synthesizer per branch");
  std::size_t chosen = branches.size();
  Assignment gw;
  if (force) {
    chosen = *force;
    gw = guard_witness(branches.at(chosen).guard, p).value_or(Assignment{});
  } else {
    for (std::size_t i = 0; i < branches.size(); ++i)
      if (auto w = guard_witness(branches[i].guard, p)) {
        chosen = i;
        gw = *w;
        break;
      }
  }
  unsigned D = 0;
  for (const auto& b : branches) D = std::max(D, b.interp.dim);
  Synthesizer s;
  s.p = p;
  s.dim = D;
  if (chosen == branches.size()) {
    s.encode = [](std::int64_t) -> std::vector<Poly> { throw SynthesisError("dispatch: no guard holds"); };
    s.decode = [](const std::vector<Poly>&) -> std::optional<std::int64_t> { return std::nullopt; };
    s.bound = [](const std::string&, const std::vector<Poly>&) -> std::optional<Assignment> { return std::nullopt; };
    return s;
  }
  const Synthesizer inner = synths[chosen];
  const unsigned d = branches[chosen].interp.dim;
  const std::string gp = interp::guard_prefix(chosen), bp = interp::branch_prefix(chosen);
  s.encode = [inner, D](std::int64_t n) {
    auto c = inner.encode(n);
    const Poly first = c.at(0);
    c.resize(D, first);
    return c;
  };
  auto shrink = [d, D](const std::vector<Poly>& a) {
    std::vector<Poly> out;
    for (std::size_t slot = 0; slot * D < a.size(); ++slot)
      for (unsigned c = 0; c < d; ++c) out.push_back(a[slot * D + c]);
    return out;
  };
  s.decode = [inner, shrink](const std::vector<Poly>& c) { return inner.decode(shrink(c)); };
  s.bound = [inner, shrink, gw, gp, bp](const std::string& symbol,
                                        const std::vector<Poly>& a) -> std::optional<Assignment> {
    auto w = inner.bound(symbol, shrink(a));
    if (!w) return std::nullopt;
    Assignment out;
    merge_bound(out, gw, {}, gp);
    merge_bound(out, *w, {}, bp);
    return out;
  };
  return s;
}

Synthesizer composite_synthesizer(const interp::Composite& c, const Synthesizer& inner,
                                  formula::Model<std::int64_t> middle) {
  const auto& I = c.result;
  const unsigned d2 = inner.dim;
  if (I.dim != d2) throw std::invalid_argument("composite_synthesizer: outer interpretation must have dimension 1");
  Synthesizer s;
  s.p = inner.p;
  s.dim = I.dim;
  s.encode = inner.encode;
  s.decode = inner.decode;
  s.bound = [c, inner, middle, d2](const std::string& symbol, const std::vector<Poly>& a) -> std::optional<Assignment> {
    const interp::Trace& tr = symbol == interp::domain_symbol ? c.domain_trace : c.traces.at(symbol);
    ZEnv env;
    std::size_t slot = 0;
    for (const auto& b : tr.bindings) {
      if (b.kind != interp::Binding::Kind::param) continue;
      const std::vector<Poly> block(a.begin() + static_cast<std::ptrdiff_t>(slot * d2),
                                    a.begin() + static_cast<std::ptrdiff_t>((slot + 1) * d2));
      const auto n = inner.decode(block);
      if (!n) return std::nullopt;
      env.insert_or_assign(b.source.name(), *n);
      ++slot;
    }
    // Instances without a witness sit in disjuncts that fail; check_sat skips those.
    auto tw = witness_for_trace(tr, env, middle, inner);
    for (const auto& b : tr.bindings)
      if (b.kind == interp::Binding::Kind::param)
        for (const auto& x : b.coords) tw.values.erase(x);
    return tw.values;
  };
  return s;
}

TraceWitness witness_for_trace(const interp::Trace& trace, const ZEnv& source_values,
                               const formula::Model<std::int64_t>& source_model, const Synthesizer& s) {
  TraceWitness out;
  for (const auto& b : trace.bindings) {
    std::optional<std::int64_t> n;
    if (b.source.is_var()) {
      auto it = source_values.find(b.source.name());
      if (it != source_values.end()) n = it->second;
    } else {
      try {
        n = formula::eval_term(b.source, source_values, source_model);
      } catch (const formula::EvalError&) {
      }
    }
    if (!n) continue;
    const auto c = s.encode(*n);
    for (std::size_t j = 0; j < b.coords.size(); ++j) out.values.insert_or_assign(b.coords[j], c.at(j));
  }
  const auto model = formula::poly_model(s.p);
  for (const auto& inst : trace.instances) {
    InstanceOutcome o{inst.prefix, inst.symbol, false, ""};
    std::vector<Poly> args;
    try {
      for (const auto& t : inst.args) args.push_back(formula::eval_term(t, out.values, model));
    } catch (const formula::EvalError& e) {
      o.note = std::string("arguments unknown: ") + e.what();
      out.outcomes.push_back(std::move(o));
      continue;
    }
    std::optional<Assignment> w;
    try {
      w = s.bound(inst.symbol, args);
    } catch (const std::exception& e) {
      o.note = e.what();
    }
    if (w) {
      for (const auto& [k, v] : *w) out.values.insert_or_assign(inst.prefix + k, v);
      o.synthesized = true;
    } else if (o.note.empty()) {
      o.note = "no witness for these arguments";
    }
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

E2EReport e2e_verify(const interp::Interpretation& I, const Synthesizer& s,
                     const formula::Model<std::int64_t>& source_model, const Formula& sentence, const ZEnv& witness) {
  E2EReport r;
  r.p = s.p;
  r.sentence = formula::to_string(sentence);
  try {
    r.source_holds = formula::check_sat(sentence, witness, source_model);
    if (!r.source_holds) r.source_note = "false in the integer structure under the given witness";
  } catch (const formula::EvalError& e) {
    r.source_note = e.what();
  }
  interp::Trace tr;
  const Formula out = interp::translate(I, sentence, &tr);
  r.translated = formula::to_string(out);
  const auto tw = witness_for_trace(tr, witness, source_model, s);
  for (std::size_t i = 0; i < tr.instances.size(); ++i) {
    const auto& inst = tr.instances[i];
    std::string label = inst.prefix + " " + (inst.symbol == interp::domain_symbol ? "domain" : inst.symbol) + "(";
    for (std::size_t j = 0; j < inst.args.size(); ++j) label += (j ? ", " : "") + formula::to_string(inst.args[j]);
    label += ")";
    ClauseResult c{label, false, tw.outcomes[i].note};
    try {
      c.pass = formula::check_sat(inst.formula, tw.values, s.p);
      if (!c.pass && c.note.empty()) c.note = "witness does not satisfy the clause";
    } catch (const formula::EvalError& e) {
      if (c.note.empty()) c.note = e.what();
    }
    r.clauses.push_back(std::move(c));
  }
  try {
    r.target_holds = formula::check_sat(out, tw.values, s.p);
    if (!r.target_holds) r.target_note = "translated sentence not satisfied by the synthesized witness";
  } catch (const formula::EvalError& e) {
    r.target_note = e.what();
  }
  return r;
}

E2EReport e2e_verify(const Formula& sentence, const ZEnv& witness, std::uint64_t p) {
  return e2e_verify(interp::interp_phi(), phi_synthesizer(p), z_model(p), sentence, witness);
}

std::string to_string(const E2EReport& r) {
  std::ostringstream out;
  out << "sentence: " << r.sentence << '\n';
  out << "source: " << (r.source_holds ? "true" : "false");
  if (!r.source_note.empty()) out << " (" << r.source_note << ")";
  out << '\n';
  std::size_t passed = 0;
  for (const auto& c : r.clauses) {
    passed += c.pass;
    out << (c.pass ? "PASS " : "FAIL ") << c.label;
    if (!c.pass && !c.note.empty()) out << "  -- " << c.note;
    out << '\n';
  }
  out << "#RESULT e2e p=" << r.p << " clauses=" << passed << "/" << r.clauses.size()
      << " source=" << (r.source_holds ? "true" : "false") << " target=" << (r.target_holds ? "sat" : "unsat")
      << " status=" << (r.passed() ? "pass" : "fail") << '\n';
  return out.str();
}

namespace {

Poly poly_from_index(std::uint64_t idx, const PrimeField& F, unsigned max_deg) {
  const std::uint64_t p = F.characteristic();
  std::vector<std::uint64_t> c(max_deg + 1);
  for (auto& x : c) {
    x = idx % p;
    idx /= p;
  }
  return Poly(F, std::move(c));
}

std::uint64_t count_polys(std::uint64_t p, unsigned max_deg) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i <= max_deg; ++i) n *= p;
  return n;
}

}  // namespace

SweepReport sweep_nu(const Poly& f, unsigned max_deg) {
  const PrimeField& F = f.ring();
  const Poly t = tpoly(F), tm1 = t - one(F);
  const auto matrix = formula::prenex(interp::nu().body).matrix;
  const auto model = formula::poly_model(F.characteristic());
  SweepReport r;
  r.label = "nu, f = " + to_string(f) + ", deg a, b <= " + std::to_string(max_deg) + " (bounded-degree sweep)";
  const std::uint64_t n = count_polys(F.characteristic(), max_deg);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Poly a = poly_from_index(i, F, max_deg);
    const Poly left = t * a + one(F);
    for (std::uint64_t j = 0; j < n; ++j) {
      const Poly b = poly_from_index(j, F, max_deg);
      const Poly lhs = left * (tm1 * b + one(F));
      Poly c(F);
      if (!f.is_zero()) {
        auto [q, rem] = divrem(lhs, f);
        if (rem.is_zero()) c = q;
      }
      ++r.assignments;
      const Assignment env{{"f", f}, {"a", a}, {"b", b}, {"c", c}};
      if (formula::eval_qf(matrix, env, model)) {
        ++r.satisfied;
        if (f.is_zero()) ++r.violations;
      }
    }
  }
  return r;
}

SweepReport sweep_lstar(const PrimeField& F, unsigned max_deg) {
  require_odd(F, "sweep_lstar");
  const Poly t = tpoly(F);
  const Poly D = t * t - one(F);
  const auto matrix = formula::prenex(interp::phi_Lstar().body).matrix;
  const auto model = formula::poly_model(F.characteristic());
  SweepReport r;
  r.label = "phi_L*, deg y <= " + std::to_string(max_deg) + ", x and z solved (bounded-degree sweep)";
  const std::uint64_t n = count_polys(F.characteristic(), max_deg);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Poly y = poly_from_index(i, F, max_deg);
    const auto s = sqrt_poly(one(F) + D * y * y);
    if (!s) continue;
    for (const Poly& x : {*s, -*s}) {
      auto z = pair_quotient(x);
      ++r.assignments;
      if (!z) continue;
      const Assignment env{{"x", x}, {"y", y}, {"z", *z}};
      if (!formula::eval_qf(matrix, env, model)) continue;
      ++r.satisfied;
      try {
        const auto k = theta_decode(x, y);
        const auto pp = pell::pell_pair(k, F);
        if (!(pp.x == x) || !(pp.y == y)) ++r.violations;
      } catch (const std::exception&) {
        ++r.violations;
      }
    }
  }
  return r;
}

}  // namespace h10::harness
