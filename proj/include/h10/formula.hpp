#pragma once

// Positive-existential first-order formulas: languages, terms, formulas,
// an s-expression reader and printer, and evaluation in a model.
//
// Grammar (one formula per top-level s-expression, ';' starts a comment):
//   formula := (and formula*) | (or formula*) | (exists (var+) formula)
//            | (REL term*) | (rel "REL" term*)
//   term    := var | CONST | (FUN term*)

#include "h10/poly.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace h10::formula {

struct Lang {
  std::string name;
  std::map<std::string, unsigned> functions;  // constants have arity 0
  std::map<std::string, unsigned> relations;

  bool is_constant(const std::string& s) const;
  bool operator==(const Lang&) const = default;
};

/// {0, 1, +, *, -; =}. Binary "-" is a definitional extension (x - y = z iff x = y + z).
Lang L_ring();
/// L_ring plus the constant t.
Lang L_t();
/// {0, 1, +; =, |, |*, !=}.
Lang L_star();
/// {0, 1, +; =, |, |_p, T}.
Lang L_D();

class Term {
 public:
  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args = {});

  bool is_var() const { return is_var_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }
  bool operator==(const Term&) const = default;

 private:
  bool is_var_ = true;
  std::string name_;
  std::vector<Term> args_;
};

class Formula {
 public:
  enum class Kind { atom, conj, disj, exists };

  static Formula atom(std::string relation, std::vector<Term> args);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula exists(std::vector<std::string> vars, Formula body);
  static Formula truth() { return conj({}); }
  static Formula falsity() { return disj({}); }

  Kind kind() const;
  const std::string& relation() const;            // atom
  const std::vector<Term>& args() const;          // atom
  const std::vector<Formula>& parts() const;      // conj, disj
  const std::vector<std::string>& bound() const;  // exists
  const Formula& body() const;                    // exists

  bool operator==(const Formula& o) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line, std::size_t column);
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t offset_, line_, column_;
};

Formula parse(std::string_view text, const Lang& lang);
Term parse_term(std::string_view text, const Lang& lang);
/// Every top-level formula in the text.
std::vector<Formula> parse_corpus(std::string_view text, const Lang& lang);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);
/// Indented rendering of the same syntax.
std::string to_pretty_string(const Formula& f);

/// Throws std::invalid_argument on unknown symbols or arity mismatches.
void check_lang(const Formula& f, const Lang& lang);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
/// Names bound anywhere in f.
std::set<std::string> bound_vars(const Formula& f);
bool is_closed(const Formula& f);
/// Number of atoms.
std::size_t atom_count(const Formula& f);

/// Capture-avoiding substitution of free variables.
Term substitute(const Term& t, const std::map<std::string, Term>& s);
Formula substitute(const Formula& f, const std::map<std::string, Term>& s);
/// Prefix every bound variable with `prefix`.
Formula rename_bound(const Formula& f, const std::string& prefix);
/// Bound variables prefixed, then free parameters replaced by the given terms.
Formula instantiate(const Formula& f, const std::map<std::string, Term>& args, const std::string& prefix);

/// n-ary conjunction / disjunction, flattening nested nodes of the same kind.
Formula conjoin(const std::vector<Formula>& parts);
Formula disjoin(const std::vector<Formula>& parts);
/// exists(vars, body), or body when vars is empty.
Formula exists_if(std::vector<std::string> vars, Formula body);

/// Strip the existential prefix (including quantifiers nested under and/or)
/// by collecting all bound variables; the matrix is quantifier-free.
struct Prenex {
  std::vector<std::string> bound;
  Formula matrix;
};
Prenex prenex(const Formula& f);

// Term builders.
Term V(const std::string& name);
Term C(const std::string& symbol);
Term add(Term a, Term b);
Term mul(Term a, Term b);
Term sub(Term a, Term b);
/// a + a + ... + a (k >= 1 copies), nested to the right.
Term repeat_sum(const Term& a, unsigned k);
Formula eq(Term a, Term b);
Formula rel(const std::string& r, std::vector<Term> args);

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bound variable missing from the witness.
class IncompleteWitness : public EvalError {
 public:
  using EvalError::EvalError;
};

template <class Value>
struct Model {
  std::function<Value(const std::string&, const std::vector<Value>&)> apply;
  std::map<std::string, std::function<bool(const std::vector<Value>&)>> relations;
};

template <class Value>
using Env = std::map<std::string, Value>;

template <class Value>
Value eval_term(const Term& t, const Env<Value>& env, const Model<Value>& m) {
  if (t.is_var()) {
    auto it = env.find(t.name());
    if (it == env.end()) throw EvalError("unassigned variable '" + t.name() + "'");
    return it->second;
  }
  std::vector<Value> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(eval_term(a, env, m));
  return m.apply(t.name(), args);
}

template <class Value>
bool eval_atom(const Formula& f, const Env<Value>& env, const Model<Value>& m) {
  auto it = m.relations.find(f.relation());
  if (it == m.relations.end()) throw EvalError("relation '" + f.relation() + "' has no semantics");
  std::vector<Value> args;
  for (const Term& a : f.args()) args.push_back(eval_term(a, env, m));
  return it->second(args);
}

template <class Value>
bool eval_qf(const Formula& f, const Env<Value>& env, const Model<Value>& m) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return eval_atom(f, env, m);
    case Formula::Kind::conj:
      for (const Formula& g : f.parts())
        if (!eval_qf(g, env, m)) return false;
      return true;
    case Formula::Kind::disj:
      for (const Formula& g : f.parts())
        if (eval_qf(g, env, m)) return true;
      return false;
    case Formula::Kind::exists:
      throw EvalError("eval_qf: formula has a quantifier");
  }
  return false;
}

/// Truth of f with each existential variable read from the witness. Free
/// variables must be in `env`. A branch of a disjunction whose witness is
/// missing counts as false; if no branch holds and one was missing, the
/// IncompleteWitness is rethrown.
template <class Value>
bool check_sat(const Formula& f, const Env<Value>& env, const Model<Value>& m) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return eval_atom(f, env, m);
    case Formula::Kind::conj:
      for (const Formula& g : f.parts())
        if (!check_sat(g, env, m)) return false;
      return true;
    case Formula::Kind::disj: {
      std::optional<IncompleteWitness> missing;
      for (const Formula& g : f.parts()) {
        try {
          if (check_sat(g, env, m)) return true;
        } catch (const IncompleteWitness& e) {
          if (!missing) missing = e;
        }
      }
      if (missing) throw *missing;
      return false;
    }
    case Formula::Kind::exists:
      for (const auto& v : f.bound())
        if (!env.count(v)) throw IncompleteWitness("witness lacks bound variable '" + v + "'");
      return check_sat(f.body(), env, m);
  }
  return false;
}

/// F_p[t]: symbols 0, 1, t, +, *, - and relations =, |, !=, |* (x |* y iff y = x^(p^r)).
Model<Poly> poly_model(std::uint64_t p);

using Assignment = Env<Poly>;
bool eval_qf(const Formula& matrix, const Assignment& a, std::uint64_t p);
bool check_sat(const Formula& f, const Assignment& witness, std::uint64_t p);

/// "var = poly" lines ('#' or ';' comments) into an assignment over F_p.
Assignment parse_assignment(std::string_view text, const PrimeField& F);
std::string to_string(const Assignment& a);

}  // namespace h10::formula
