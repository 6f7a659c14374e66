#include "h10/interp.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace h10::interp {

using formula::conjoin;
using formula::disjoin;
using formula::exists_if;
using formula::free_vars;

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_names(a, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      for (const Term& a : f.args()) collect_names(a, out);
      break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
      for (const Formula& g : f.parts()) collect_names(g, out);
      break;
    case Formula::Kind::exists:
      out.insert(f.bound().begin(), f.bound().end());
      collect_names(f.body(), out);
      break;
  }
}

bool has_prefix(const std::set<std::string>& names, const std::string& p) {
  auto it = names.lower_bound(p);
  return it != names.end() && it->compare(0, p.size(), p) == 0;
}

std::vector<std::string> coords_of(const std::string& base, unsigned dim) {
  if (dim == 1) return {base};
  std::vector<std::string> out;
  for (unsigned j = 1; j <= dim; ++j) out.push_back(base + "_" + std::to_string(j));
  return out;
}

std::vector<Term> as_terms(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(Term::var(n));
  return out;
}

// Right-hand sides when the formula is out_j = term_j(inputs) for each output coordinate.
std::optional<std::vector<Term>> graph_terms(const Definition& d, unsigned dim) {
  if (d.params.size() < dim) return std::nullopt;
  const std::vector<std::string> outs(d.params.end() - dim, d.params.end());
  const std::set<std::string> ins(d.params.begin(), d.params.end() - dim);
  std::vector<Formula> atoms;
  if (d.body.kind() == Formula::Kind::atom) atoms.push_back(d.body);
  else if (d.body.kind() == Formula::Kind::conj) atoms = d.body.parts();
  else return std::nullopt;
  if (atoms.size() != dim) return std::nullopt;
  std::vector<Term> rhs;
  for (unsigned j = 0; j < dim; ++j) {
    const Formula& a = atoms[j];
    if (a.kind() != Formula::Kind::atom || a.relation() != "=" || a.args().size() != 2) return std::nullopt;
    if (!a.args()[0].is_var() || a.args()[0].name() != outs[j]) return std::nullopt;
    for (const auto& v : free_vars(a.args()[1]))
      if (!ins.count(v)) return std::nullopt;
    rhs.push_back(a.args()[1]);
  }
  return rhs;
}

class Translator {
 public:
  using Scope = std::map<std::string, std::vector<Term>>;

  Translator(const Interpretation& I, std::set<std::string> reserved) : I_(I), reserved_(std::move(reserved)) {
    for (const auto& [s, d] : I.symbols)
      if (I.source.functions.count(s)) graphs_.emplace(s, graph_terms(d, I.dim));
  }

  std::vector<std::string> bind(const std::string& v, Binding::Kind kind) {
    std::string base = v;
    while (bases_.count(base)) base += "'";
    bases_.insert(base);
    auto cs = coords_of(base, I_.dim);
    trace_.bindings.push_back({kind, Term::var(v), cs});
    return cs;
  }

  Formula instance(const std::string& symbol, std::vector<Term> args) {
    const Definition& d = I_.formula_for(symbol);
    if (args.size() != d.params.size())
      throw std::invalid_argument("formula for '" + symbol + "' takes " + std::to_string(d.params.size()) +
                                  " parameters, got " + std::to_string(args.size()));
    std::string pfx;
    do pfx = "i" + std::to_string(++instances_) + ".";
    while (has_prefix(reserved_, pfx));
    std::map<std::string, Term> m;
    for (std::size_t i = 0; i < args.size(); ++i) m.emplace(d.params[i], args[i]);
    Formula g = formula::instantiate(d.body, m, pfx);
    trace_.instances.push_back({pfx, symbol, std::move(args), g});
    return g;
  }

  Formula go(const Formula& f, const Scope& scope) {
    switch (f.kind()) {
      case Formula::Kind::atom:
        return atom(f, scope);
      case Formula::Kind::conj:
      case Formula::Kind::disj: {
        std::vector<Formula> parts;
        for (const Formula& g : f.parts()) parts.push_back(go(g, scope));
        return f.kind() == Formula::Kind::conj ? conjoin(parts) : disjoin(parts);
      }
      case Formula::Kind::exists: {
        Scope inner = scope;
        std::vector<std::string> vars;
        std::vector<Formula> parts;
        for (const auto& v : f.bound()) {
          auto cs = bind(v, Binding::Kind::bound);
          inner[v] = as_terms(cs);
          vars.insert(vars.end(), cs.begin(), cs.end());
          parts.push_back(instance(domain_symbol, as_terms(cs)));
        }
        parts.push_back(go(f.body(), inner));
        return exists_if(vars, conjoin(parts));
      }
    }
    return f;
  }

  Formula close(const Formula& body) {
    std::vector<Formula> parts = const_parts_;
    parts.push_back(body);
    return exists_if(const_vars_, conjoin(parts));
  }

  Trace& trace() { return trace_; }

 private:
  Formula atom(const Formula& f, const Scope& scope) {
    const auto& args = f.args();
    if (f.relation() == "=" && args.size() == 2) {
      for (int k = 0; k < 2; ++k) {
        const Term& a = args[k];
        const Term& b = args[1 - k];
        if (a.is_var() && !b.is_var() && b.args().empty() && I_.source.is_constant(b.name()))
          return instance(b.name(), lookup(a.name(), scope));
      }
    }
    std::vector<std::string> vars;
    std::vector<Formula> parts;
    std::vector<Term> flat;
    for (const Term& a : args) {
      auto tup = flatten(a, scope, vars, parts);
      flat.insert(flat.end(), tup.begin(), tup.end());
    }
    parts.push_back(instance(f.relation(), std::move(flat)));
    return exists_if(vars, conjoin(parts));
  }

  std::vector<Term> lookup(const std::string& v, const Scope& scope) const {
    auto it = scope.find(v);
    if (it == scope.end()) throw std::invalid_argument("translate: free variable '" + v + "'");
    return it->second;
  }

  std::string fresh(const std::string& stem, unsigned& counter) {
    for (;;) {
      std::string b = stem + std::to_string(++counter);
      if (!bases_.count(b) && !has_prefix(reserved_, b)) {
        bases_.insert(b);
        return b;
      }
    }
  }

  std::vector<Term> flatten(const Term& t, const Scope& scope, std::vector<std::string>& vars,
                            std::vector<Formula>& parts) {
    if (t.is_var()) return lookup(t.name(), scope);
    if (!I_.source.functions.count(t.name()))
      throw std::invalid_argument("translate: unknown function '" + t.name() + "'");
    std::vector<Term> in;
    for (const Term& a : t.args()) {
      auto tup = flatten(a, scope, vars, parts);
      in.insert(in.end(), tup.begin(), tup.end());
    }
    auto g = graphs_.find(t.name());
    if (g != graphs_.end() && g->second) {
      const Definition& d = I_.formula_for(t.name());
      std::map<std::string, Term> m;
      for (std::size_t i = 0; i < in.size(); ++i) m.emplace(d.params[i], in[i]);
      std::vector<Term> out;
      for (const Term& r : *g->second) out.push_back(formula::substitute(r, m));
      return out;
    }
    if (t.args().empty()) {
      auto it = consts_.find(t.name());
      if (it != consts_.end()) return it->second;
      auto cs = coords_of(fresh("c", constants_), I_.dim);
      trace_.bindings.push_back({Binding::Kind::constant, t, cs});
      const_vars_.insert(const_vars_.end(), cs.begin(), cs.end());
      const_parts_.push_back(instance(domain_symbol, as_terms(cs)));
      const_parts_.push_back(instance(t.name(), as_terms(cs)));
      return consts_[t.name()] = as_terms(cs);
    }
    auto cs = coords_of(fresh("w", intermediates_), I_.dim);
    trace_.bindings.push_back({Binding::Kind::intermediate, t, cs});
    vars.insert(vars.end(), cs.begin(), cs.end());
    parts.push_back(instance(domain_symbol, as_terms(cs)));
    for (auto& c : as_terms(cs)) in.push_back(std::move(c));
    parts.push_back(instance(t.name(), std::move(in)));
    return as_terms(cs);
  }

  const Interpretation& I_;
  std::set<std::string> reserved_;
  std::set<std::string> bases_;
  std::map<std::string, std::optional<std::vector<Term>>> graphs_;
  std::map<std::string, std::vector<Term>> consts_;
  std::vector<std::string> const_vars_;
  std::vector<Formula> const_parts_;
  unsigned instances_ = 0, constants_ = 0, intermediates_ = 0;
  Trace trace_;
};

Term rename_term(const Term& t, const std::map<std::string, std::string>& ren) {
  if (t.is_var()) {
    auto it = ren.find(t.name());
    return it == ren.end() ? t : Term::var(it->second);
  }
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(rename_term(a, ren));
  return Term::app(t.name(), std::move(args));
}

Formula canon(const Formula& f, std::map<std::string, std::string> ren, unsigned& counter) {
  switch (f.kind()) {
    case Formula::Kind::atom: {
      std::vector<Term> args;
      for (const Term& a : f.args()) args.push_back(rename_term(a, ren));
      return Formula::atom(f.relation(), std::move(args));
    }
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
      std::vector<Formula> parts;
      for (const Formula& g : f.parts()) parts.push_back(canon(g, ren, counter));
      return f.kind() == Formula::Kind::conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Formula::Kind::exists: {
      std::vector<std::string> vars;
      for (const auto& v : f.bound()) {
        vars.push_back("#b" + std::to_string(counter++));
        ren[v] = vars.back();
      }
      return Formula::exists(std::move(vars), canon(f.body(), ren, counter));
    }
  }
  return f;
}

}  // namespace

Definition canonical(const Definition& d) {
  std::map<std::string, std::string> ren;
  Definition out;
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    out.params.push_back("#p" + std::to_string(i));
    ren[d.params[i]] = out.params.back();
  }
  unsigned counter = 0;
  out.body = canon(d.body, ren, counter);
  return out;
}

bool alpha_equivalent(const Definition& a, const Definition& b) { return canonical(a) == canonical(b); }

const Definition& Interpretation::formula_for(const std::string& symbol) const {
  if (symbol == domain_symbol) return domain;
  auto it = symbols.find(symbol);
  if (it == symbols.end()) throw std::invalid_argument("interpretation has no formula for '" + symbol + "'");
  return it->second;
}

unsigned Interpretation::slots(const std::string& symbol) const {
  if (symbol == domain_symbol) return 1;
  if (auto it = source.functions.find(symbol); it != source.functions.end()) return it->second + 1;
  if (auto it = source.relations.find(symbol); it != source.relations.end()) return it->second;
  throw std::invalid_argument("'" + symbol + "' is not a symbol of " + source.name);
}

void Interpretation::validate() const {
  if (dim == 0) throw std::invalid_argument("interpretation dimension must be positive");
  auto check = [&](const std::string& symbol, const Definition& d) {
    const std::size_t want = static_cast<std::size_t>(slots(symbol)) * dim;
    if (d.params.size() != want)
      throw std::invalid_argument("formula for '" + symbol + "' has " + std::to_string(d.params.size()) +
                                  " parameters, expected " + std::to_string(want));
    const std::set<std::string> ps(d.params.begin(), d.params.end());
    if (ps.size() != d.params.size()) throw std::invalid_argument("formula for '" + symbol + "' repeats a parameter");
    for (const auto& v : free_vars(d.body))
      if (!ps.count(v)) throw std::invalid_argument("formula for '" + symbol + "' has free variable '" + v + "'");
    formula::check_lang(d.body, target);
  };
  check(domain_symbol, domain);
  for (const auto& [s, ar] : source.functions) check(s, formula_for(s));
  for (const auto& [s, ar] : source.relations) check(s, formula_for(s));
  for (const auto& [s, d] : symbols)
    if (!source.functions.count(s) && !source.relations.count(s))
      throw std::invalid_argument("formula for '" + s + "', which is not a symbol of " + source.name);
}

Translation translate_open(const Interpretation& I, const Definition& d) {
  std::set<std::string> reserved(d.params.begin(), d.params.end());
  collect_names(d.body, reserved);
  Translator tr(I, std::move(reserved));
  Translator::Scope scope;
  std::vector<std::string> params;
  std::vector<Formula> parts;
  for (const auto& p : d.params) {
    auto cs = tr.bind(p, Binding::Kind::param);
    scope[p] = as_terms(cs);
    params.insert(params.end(), cs.begin(), cs.end());
    parts.push_back(tr.instance(domain_symbol, as_terms(cs)));
  }
  parts.push_back(tr.go(d.body, scope));
  Formula body = tr.close(conjoin(parts));
  return {{std::move(params), std::move(body)}, std::move(tr.trace())};
}

Formula translate(const Interpretation& I, const Formula& sentence, Trace* trace) {
  if (!formula::is_closed(sentence)) throw std::invalid_argument("translate: sentence has free variables");
  formula::check_lang(sentence, I.source);
  auto t = translate_open(I, {{}, sentence});
  if (trace) *trace = std::move(t.trace);
  return t.result.body;
}

Composite compose_traced(const Interpretation& I1, const Interpretation& I2) {
  if (!(I1.target == I2.source))
    throw std::invalid_argument("compose: " + I1.target.name + " is not the source language " + I2.source.name);
  Composite c;
  c.result.source = I1.source;
  c.result.target = I2.target;
  c.result.dim = I1.dim * I2.dim;
  auto dom = translate_open(I2, I1.domain);
  c.result.domain = std::move(dom.result);
  c.domain_trace = std::move(dom.trace);
  for (const auto& [s, d] : I1.symbols) {
    auto t = translate_open(I2, d);
    c.result.symbols.emplace(s, std::move(t.result));
    c.traces.emplace(s, std::move(t.trace));
  }
  return c;
}

Interpretation compose(const Interpretation& I1, const Interpretation& I2) { return compose_traced(I1, I2).result; }

std::string guard_prefix(std::size_t i) { return "g" + std::to_string(i) + "."; }
std::string branch_prefix(std::size_t i) { return "br" + std::to_string(i) + "."; }

Interpretation dispatch(const std::vector<Branch>& branches) {
  if (branches.empty()) throw std::invalid_argument("dispatch: no branches");
  const Interpretation& first = branches.front().interp;
  unsigned D = 0;
  for (const auto& b : branches) {
    if (!(b.interp.source == first.source) || !(b.interp.target == first.target))
      throw std::invalid_argument("dispatch: branches disagree on languages");
    if (!formula::is_closed(b.guard)) throw std::invalid_argument("dispatch: guard is not a sentence");
    D = std::max(D, b.interp.dim);
  }
  auto build = [&](const std::string& symbol) {
    const unsigned slots = first.slots(symbol);
    Definition out;
    for (unsigned i = 1; i <= slots * D; ++i) out.params.push_back("x" + std::to_string(i));
    std::vector<Formula> alts;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const Interpretation& I = branches[i].interp;
      const Definition& d = I.formula_for(symbol);
      std::map<std::string, Term> args;
      for (unsigned s = 0; s < slots; ++s)
        for (unsigned c = 0; c < I.dim; ++c) args.emplace(d.params[s * I.dim + c], Term::var(out.params[s * D + c]));
      std::vector<Formula> parts{formula::rename_bound(branches[i].guard, guard_prefix(i)),
                                 formula::instantiate(d.body, args, branch_prefix(i))};
      for (unsigned s = 0; s < slots; ++s)
        for (unsigned c = I.dim; c < D; ++c)
          parts.push_back(formula::eq(Term::var(out.params[s * D + c]), Term::var(out.params[s * D])));
      alts.push_back(conjoin(parts));
    }
    out.body = disjoin(alts);
    return out;
  };
  Interpretation r;
  r.source = first.source;
  r.target = first.target;
  r.dim = D;
  r.domain = build(domain_symbol);
  for (const auto& [s, d] : first.symbols) r.symbols.emplace(s, build(s));
  return r;
}

Interpretation identity_interp(const Lang& lang) {
  Interpretation I;
  I.source = lang;
  I.target = lang;
  I.dim = 1;
  I.domain = {{"x"}, Formula::truth()};
  for (const auto& [s, ar] : lang.functions) {
    Definition d;
    std::vector<Term> args;
    for (unsigned i = 1; i <= ar; ++i) {
      d.params.push_back("x" + std::to_string(i));
      args.push_back(Term::var(d.params.back()));
    }
    d.params.push_back("y");
    d.body = formula::eq(Term::var("y"), Term::app(s, std::move(args)));
    I.symbols.emplace(s, std::move(d));
  }
  for (const auto& [s, ar] : lang.relations) {
    Definition d;
    std::vector<Term> args;
    for (unsigned i = 1; i <= ar; ++i) {
      d.params.push_back("x" + std::to_string(i));
      args.push_back(Term::var(d.params.back()));
    }
    d.body = Formula::atom(s, std::move(args));
    I.symbols.emplace(s, std::move(d));
  }
  return I;
}

Lang lang_by_name(const std::string& name) {
  if (name == "L_ring") return formula::L_ring();
  if (name == "L_t") return formula::L_t();
  if (name == "L*" || name == "L_star") return formula::L_star();
  if (name == "L_D") return formula::L_D();
  throw std::invalid_argument("unknown language '" + name + "'");
}

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string file_stem(const std::string& symbol) {
  static const std::map<std::string, std::string> names = {
      {"0", "zero"}, {"1", "one"}, {"+", "plus"}, {"*", "times"}, {"-", "minus"}, {"=", "eq"}, {"!=", "neq"},
      {"|", "div"},  {"|*", "divstar"}, {"|_p", "div_p"}, {"t", "t"}, {"T", "T"}};
  if (auto it = names.find(symbol); it != names.end()) return it->second;
  std::string out = "sym";
  for (unsigned char c : symbol) out += std::isalnum(c) ? std::string(1, static_cast<char>(c)) : std::to_string(c);
  return out;
}

}  // namespace

Interpretation load_bundle(const std::filesystem::path& manifest) {
  const auto j = nlohmann::json::parse(read_file(manifest));
  const auto dir = manifest.parent_path();
  Interpretation I;
  I.source = lang_by_name(j.at("source").get<std::string>());
  I.target = lang_by_name(j.at("target").get<std::string>());
  I.dim = j.at("dim").get<unsigned>();
  auto entry = [&](const nlohmann::json& e) {
    Definition d;
    d.params = e.at("params").get<std::vector<std::string>>();
    const std::string text = e.contains("formula") ? e.at("formula").get<std::string>()
                                                   : read_file(dir / e.at("file").get<std::string>());
    d.body = formula::parse(text, I.target);
    return d;
  };
  I.domain = entry(j.at("domain"));
  for (const auto& [s, e] : j.at("symbols").items()) I.symbols.emplace(s, entry(e));
  I.validate();
  return I;
}

void save_bundle(const Interpretation& I, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json j;
  j["source"] = I.source.name;
  j["target"] = I.target.name;
  j["dim"] = I.dim;
  auto write = [&](const std::string& stem, const Definition& d) {
    const std::string file = stem + ".sexp";
    std::ofstream(dir / file) << formula::to_pretty_string(d.body) << '\n';
    return nlohmann::ordered_json{{"params", d.params}, {"file", file}};
  };
  j["domain"] = write("domain", I.domain);
  j["symbols"] = nlohmann::ordered_json::object();
  for (const auto& [s, d] : I.symbols) j["symbols"][s] = write(file_stem(s), d);
  std::ofstream(dir / "manifest.json") << j.dump(2) << '\n';
}

}  // namespace h10::interp
