#include "h10/formula.hpp"

#include "h10/buchi.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace h10::formula {

bool Lang::is_constant(const std::string& s) const {
  auto it = functions.find(s);
  return it != functions.end() && it->second == 0;
}

Lang L_ring() { return {"L_ring", {{"0", 0}, {"1", 0}, {"+", 2}, {"*", 2}, {"-", 2}}, {{"=", 2}}}; }

Lang L_t() {
  Lang l = L_ring();
  l.name = "L_t";
  l.functions["t"] = 0;
  return l;
}

Lang L_star() { return {"L*", {{"0", 0}, {"1", 0}, {"+", 2}}, {{"=", 2}, {"|", 2}, {"|*", 2}, {"!=", 2}}}; }

Lang L_D() { return {"L_D", {{"0", 0}, {"1", 0}, {"+", 2}}, {{"=", 2}, {"|", 2}, {"|_p", 2}, {"T", 1}}}; }

Term Term::var(std::string name) {
  Term t;
  t.is_var_ = true;
  t.name_ = std::move(name);
  return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  Term t;
  t.is_var_ = false;
  t.name_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

struct Formula::Node {
  Kind kind;
  std::string relation;
  std::vector<Term> args;
  std::vector<Formula> parts;
  std::vector<std::string> bound;
};

Formula Formula::atom(std::string relation, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(relation), std::move(args), {}, {}}));
}

Formula Formula::conj(std::vector<Formula> parts) {
  return Formula(std::make_shared<const Node>(Node{Kind::conj, {}, {}, std::move(parts), {}}));
}

Formula Formula::disj(std::vector<Formula> parts) {
  return Formula(std::make_shared<const Node>(Node{Kind::disj, {}, {}, std::move(parts), {}}));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) throw std::invalid_argument("exists: no variables");
  return Formula(std::make_shared<const Node>(Node{Kind::exists, {}, {}, {std::move(body)}, std::move(vars)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::relation() const { return node_->relation; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const std::vector<Formula>& Formula::parts() const { return node_->parts; }
const std::vector<std::string>& Formula::bound() const { return node_->bound; }
const Formula& Formula::body() const { return node_->parts.front(); }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  return node_->kind == o.node_->kind && node_->relation == o.node_->relation && node_->args == o.node_->args &&
         node_->bound == o.node_->bound && node_->parts == o.node_->parts;
}

ParseError::ParseError(const std::string& what, std::size_t offset, std::size_t line, std::size_t column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      offset_(offset),
      line_(line),
      column_(column) {}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  });
}

bool is_keyword(std::string_view s) { return s == "and" || s == "or" || s == "exists" || s == "rel"; }

class Reader {
 public:
  Reader(std::string_view text, const Lang& lang) : text_(text), lang_(lang) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  Formula formula() {
    expect_open("formula");
    const std::size_t head_pos = pos_;
    const std::string head = symbol("formula head");
    if (head == "and" || head == "or") {
      std::vector<Formula> parts;
      while (!peek_close()) parts.push_back(formula());
      close();
      return head == "and" ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    if (head == "exists") {
      expect_open("variable list");
      std::vector<std::string> vars;
      while (!peek_close()) {
        const std::size_t vpos = pos_;
        std::string v = symbol("variable");
        if (!is_identifier(v) || is_keyword(v) || lang_.functions.count(v)) fail("'" + v + "' is not a variable name", vpos);
        vars.push_back(std::move(v));
      }
      close();
      if (vars.empty()) fail("exists needs at least one variable", head_pos);
      Formula body = formula();
      close();
      return Formula::exists(std::move(vars), std::move(body));
    }
    std::string relation = head;
    if (head == "rel") {
      skip();
      if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted relation symbol", pos_);
      relation = quoted();
    }
    auto it = lang_.relations.find(relation);
    if (it == lang_.relations.end()) fail("unknown relation '" + relation + "' in " + lang_.name, head_pos);
    std::vector<Term> args;
    while (!peek_close()) args.push_back(term());
    close();
    if (args.size() != it->second) {
      fail("relation '" + relation + "' takes " + std::to_string(it->second) + " arguments, got " +
               std::to_string(args.size()),
           head_pos);
    }
    return Formula::atom(std::move(relation), std::move(args));
  }

  Term term() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      const std::string f = symbol("function symbol");
      auto it = lang_.functions.find(f);
      if (it == lang_.functions.end()) fail("unknown function '" + f + "' in " + lang_.name, start);
      std::vector<Term> args;
      while (!peek_close()) args.push_back(term());
      close();
      if (args.size() != it->second) {
        fail("function '" + f + "' takes " + std::to_string(it->second) + " arguments, got " +
                 std::to_string(args.size()),
             start);
      }
      return Term::app(f, std::move(args));
    }
    const std::string s = symbol("term");
    if (auto it = lang_.functions.find(s); it != lang_.functions.end()) {
      if (it->second != 0) fail("function '" + s + "' used without arguments", start);
      return Term::app(s);
    }
    if (!is_identifier(s) || is_keyword(s)) fail("unknown symbol '" + s + "' in " + lang_.name, start);
    return Term::var(s);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, at, line, col);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect_open(const char* what) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != '(') fail(std::string("expected '(' to start ") + what, pos_);
    ++pos_;
  }

  bool peek_close() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input", pos_);
    return text_[pos_] == ')';
  }

  void close() {
    if (!peek_close()) fail("expected ')'", pos_);
    ++pos_;
  }

  std::string symbol(const char* what) {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';' || c == '"') break;
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected ") + what, start);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    const std::size_t start = pos_++;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') out += text_[pos_++];
    if (pos_ >= text_.size()) fail("unterminated string", start);
    ++pos_;
    return out;
  }

  std::string_view text_;
  const Lang& lang_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text, const Lang& lang) {
  Reader r(text, lang);
  Formula f = r.formula();
  if (!r.at_end()) throw std::invalid_argument("parse: trailing input after formula");
  return f;
}

Term parse_term(std::string_view text, const Lang& lang) {
  Reader r(text, lang);
  Term t = r.term();
  if (!r.at_end()) throw std::invalid_argument("parse_term: trailing input after term");
  return t;
}

std::vector<Formula> parse_corpus(std::string_view text, const Lang& lang) {
  Reader r(text, lang);
  std::vector<Formula> out;
  while (!r.at_end()) out.push_back(r.formula());
  return out;
}

std::string to_string(const Term& t) {
  if (t.is_var() || t.args().empty()) return t.name();
  std::string s = "(" + t.name();
  for (const Term& a : t.args()) s += " " + to_string(a);
  return s + ")";
}

namespace {

void render(const Formula& f, std::string& out, int indent) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (pretty) out += "\n" + std::string(static_cast<std::size_t>(2 * level), ' ');
    else out += ' ';
  };
  switch (f.kind()) {
    case Formula::Kind::atom:
      out += "(" + f.relation();
      for (const Term& a : f.args()) out += " " + to_string(a);
      out += ")";
      return;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
      out += f.kind() == Formula::Kind::conj ? "(and" : "(or";
      for (const Formula& g : f.parts()) {
        newline(indent + 1);
        render(g, out, pretty ? indent + 1 : -1);
      }
      out += ")";
      return;
    case Formula::Kind::exists:
      out += "(exists (";
      for (std::size_t i = 0; i < f.bound().size(); ++i) out += (i ? " " : "") + f.bound()[i];
      out += ")";
      newline(indent + 1);
      render(f.body(), out, pretty ? indent + 1 : -1);
      out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  render(f, out, -1);
  return out;
}

std::string to_pretty_string(const Formula& f) {
  std::string out;
  render(f, out, 0);
  return out;
}

namespace {

void check_term(const Term& t, const Lang& lang) {
  if (t.is_var()) {
    if (lang.functions.count(t.name())) throw std::invalid_argument("variable shadows symbol '" + t.name() + "'");
    return;
  }
  auto it = lang.functions.find(t.name());
  if (it == lang.functions.end()) throw std::invalid_argument("unknown function '" + t.name() + "' in " + lang.name);
  if (it->second != t.args().size()) throw std::invalid_argument("arity mismatch for '" + t.name() + "'");
  for (const Term& a : t.args()) check_term(a, lang);
}

}  // namespace

void check_lang(const Formula& f, const Lang& lang) {
  switch (f.kind()) {
    case Formula::Kind::atom: {
      auto it = lang.relations.find(f.relation());
      if (it == lang.relations.end()) {
        throw std::invalid_argument("unknown relation '" + f.relation() + "' in " + lang.name);
      }
      if (it->second != f.args().size()) throw std::invalid_argument("arity mismatch for '" + f.relation() + "'");
      for (const Term& a : f.args()) check_term(a, lang);
      return;
    }
    case Formula::Kind::conj:
    case Formula::Kind::disj:
      for (const Formula& g : f.parts()) check_lang(g, lang);
      return;
    case Formula::Kind::exists:
      check_lang(f.body(), lang);
      return;
  }
}

std::set<std::string> free_vars(const Term& t) {
  if (t.is_var()) return {t.name()};
  std::set<std::string> out;
  for (const Term& a : t.args()) out.merge(free_vars(a));
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind()) {
    case Formula::Kind::atom:
      for (const Term& a : f.args()) out.merge(free_vars(a));
      break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
      for (const Formula& g : f.parts()) out.merge(free_vars(g));
      break;
    case Formula::Kind::exists:
      out = free_vars(f.body());
      for (const auto& v : f.bound()) out.erase(v);
      break;
  }
  return out;
}

std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind()) {
    case Formula::Kind::atom:
      break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
      for (const Formula& g : f.parts()) out.merge(bound_vars(g));
      break;
    case Formula::Kind::exists:
      out = bound_vars(f.body());
      out.insert(f.bound().begin(), f.bound().end());
      break;
  }
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

std::size_t atom_count(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return 1;
    case Formula::Kind::exists:
      return atom_count(f.body());
    default: {
      std::size_t n = 0;
      for (const Formula& g : f.parts()) n += atom_count(g);
      return n;
    }
  }
}

Term substitute(const Term& t, const std::map<std::string, Term>& s) {
  if (t.is_var()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute(a, s));
  return Term::app(t.name(), std::move(args));
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& s) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::atom: {
      std::vector<Term> args;
      for (const Term& a : f.args()) args.push_back(substitute(a, s));
      return Formula::atom(f.relation(), std::move(args));
    }
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
      std::vector<Formula> parts;
      for (const Formula& g : f.parts()) parts.push_back(substitute(g, s));
      return f.kind() == Formula::Kind::conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Formula::Kind::exists: {
      std::map<std::string, Term> inner = s;
      for (const auto& v : f.bound()) inner.erase(v);
      const std::set<std::string> body_free = free_vars(f.body());
      std::set<std::string> incoming;
      for (const auto& [name, term] : inner)
        if (body_free.count(name)) incoming.merge(free_vars(term));
      // Rename bound variables that would capture a substituted term's variable.
      std::vector<std::string> vars = f.bound();
      std::set<std::string> taken = incoming;
      taken.merge(free_vars(f.body()));
      taken.merge(bound_vars(f.body()));
      for (const auto& [name, term] : inner) taken.insert(name);
      for (auto& v : vars) {
        if (!incoming.count(v)) continue;
        std::string fresh = v;
        while (taken.count(fresh) || std::find(vars.begin(), vars.end(), fresh) != vars.end()) fresh += "'";
        taken.insert(fresh);
        inner.emplace(v, Term::var(fresh));
        v = fresh;
      }
      return Formula::exists(std::move(vars), substitute(f.body(), inner));
    }
  }
  return f;
}

Formula rename_bound(const Formula& f, const std::string& prefix) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return f;
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
      std::vector<Formula> parts;
      for (const Formula& g : f.parts()) parts.push_back(rename_bound(g, prefix));
      return f.kind() == Formula::Kind::conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Formula::Kind::exists: {
      Formula body = rename_bound(f.body(), prefix);
      std::map<std::string, Term> ren;
      std::vector<std::string> vars;
      for (const auto& v : f.bound()) {
        vars.push_back(prefix + v);
        ren.emplace(v, Term::var(prefix + v));
      }
      return Formula::exists(std::move(vars), substitute(body, ren));
    }
  }
  return f;
}

Formula instantiate(const Formula& f, const std::map<std::string, Term>& args, const std::string& prefix) {
  return substitute(rename_bound(f, prefix), args);
}

namespace {

Formula join(const std::vector<Formula>& parts, Formula::Kind kind) {
  std::vector<Formula> flat;
  for (const Formula& g : parts) {
    if (g.kind() == kind) flat.insert(flat.end(), g.parts().begin(), g.parts().end());
    else flat.push_back(g);
  }
  if (flat.size() == 1) return flat.front();
  return kind == Formula::Kind::conj ? Formula::conj(std::move(flat)) : Formula::disj(std::move(flat));
}

}  // namespace

Formula conjoin(const std::vector<Formula>& parts) { return join(parts, Formula::Kind::conj); }
Formula disjoin(const std::vector<Formula>& parts) { return join(parts, Formula::Kind::disj); }

Formula exists_if(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  return Formula::exists(std::move(vars), std::move(body));
}

namespace {

Formula strip(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& seen) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return f;
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
      std::vector<Formula> parts;
      for (const Formula& g : f.parts()) parts.push_back(strip(g, bound, seen));
      return f.kind() == Formula::Kind::conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Formula::Kind::exists:
      for (const auto& v : f.bound()) {
        if (!seen.insert(v).second) throw std::invalid_argument("prenex: bound variable '" + v + "' reused");
        bound.push_back(v);
      }
      return strip(f.body(), bound, seen);
  }
  return f;
}

}  // namespace

Prenex prenex(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> seen = free_vars(f);
  Formula m = strip(f, bound, seen);
  return {std::move(bound), std::move(m)};
}

Term V(const std::string& name) { return Term::var(name); }
Term C(const std::string& symbol) { return Term::app(symbol); }
Term add(Term a, Term b) { return Term::app("+", {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return Term::app("*", {std::move(a), std::move(b)}); }
Term sub(Term a, Term b) { return Term::app("-", {std::move(a), std::move(b)}); }

Term repeat_sum(const Term& a, unsigned k) {
  if (k == 0) throw std::invalid_argument("repeat_sum: needs at least one copy");
  Term acc = a;
  for (unsigned i = 1; i < k; ++i) acc = add(a, acc);
  return acc;
}

Formula eq(Term a, Term b) { return Formula::atom("=", {std::move(a), std::move(b)}); }
Formula rel(const std::string& r, std::vector<Term> args) { return Formula::atom(r, std::move(args)); }

Model<Poly> poly_model(std::uint64_t p) {
  const PrimeField F(p);
  Model<Poly> m;
  m.apply = [F](const std::string& s, const std::vector<Poly>& a) -> Poly {
    if (s == "0") return Poly(F);
    if (s == "1") return Poly::constant(F, 1);
    if (s == "t") return Poly::t(F);
    if (s == "+") return a[0] + a[1];
    if (s == "*") return a[0] * a[1];
    if (s == "-") return a[0] - a[1];
    throw EvalError("no interpretation for function '" + s + "' in F_p[t]");
  };
  m.relations["="] = [](const std::vector<Poly>& a) { return a[0] == a[1]; };
  m.relations["!="] = [](const std::vector<Poly>& a) { return !(a[0] == a[1]); };
  m.relations["|"] = [](const std::vector<Poly>& a) { return a[0].is_zero() ? a[1].is_zero() : divides(a[0], a[1]); };
  m.relations["|*"] = [](const std::vector<Poly>& a) { return buchi::ge_p_check(a[1], a[0]).has_value(); };
  return m;
}

bool eval_qf(const Formula& matrix, const Assignment& a, std::uint64_t p) { return eval_qf(matrix, a, poly_model(p)); }

bool check_sat(const Formula& f, const Assignment& witness, std::uint64_t p) {
  return check_sat(f, witness, poly_model(p));
}

Assignment parse_assignment(std::string_view text, const PrimeField& F) {
  Assignment out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eqpos = line.find('=');
    if (eqpos == std::string::npos) throw std::invalid_argument("assignment line " + std::to_string(lineno) + ": expected 'var = poly'");
    std::string var = line.substr(0, eqpos);
    var.erase(0, var.find_first_not_of(" \t"));
    var.erase(var.find_last_not_of(" \t") + 1);
    if (!is_identifier(var)) throw std::invalid_argument("assignment line " + std::to_string(lineno) + ": bad variable '" + var + "'");
    out.insert_or_assign(var, parse_poly(line.substr(eqpos + 1), F));
  }
  return out;
}

std::string to_string(const Assignment& a) {
  std::string out;
  for (const auto& [v, f] : a) out += v + " = " + to_string(f) + "\n";
  return out;
}

}  // namespace h10::formula
