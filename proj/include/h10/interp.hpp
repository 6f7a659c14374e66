#pragma once

// Interpretations of one first-order language in another, and translation of
// positive-existential formulas along them.
//
// An interpretation of dimension d represents each source element by a
// d-tuple of target elements satisfying the domain formula, and each source
// symbol by a target formula on tuples:
//   constant        d parameters
//   n-ary function  (n+1)*d parameters, the value tuple last
//   n-ary relation  n*d parameters

#include "h10/formula.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace h10::interp {

using formula::Formula;
using formula::Lang;
using formula::Term;

/// A formula read as a relation on its ordered parameters.
struct Definition {
  std::vector<std::string> params;
  Formula body = Formula::truth();

  bool operator==(const Definition&) const = default;
};

/// Parameters renamed #p0, #p1, ... and bound variables #b0, #b1, ... in
/// order of occurrence; two definitions are equal up to renaming exactly
/// when their canonical forms are equal.
Definition canonical(const Definition& d);
bool alpha_equivalent(const Definition& a, const Definition& b);

/// Symbol name used for the domain formula in traces and synthesizers.
inline const std::string domain_symbol = "@domain";

struct Interpretation {
  Lang source;
  Lang target;
  unsigned dim = 1;
  Definition domain;
  std::map<std::string, Definition> symbols;

  /// Every source symbol has a formula with the right parameter count and
  /// no other free variables, and only target symbols occur.
  /// Throws std::invalid_argument.
  void validate() const;
  /// The domain formula for domain_symbol.
  const Definition& formula_for(const std::string& symbol) const;
  /// Number of element slots of a symbol: n for relations, n+1 for functions.
  unsigned slots(const std::string& symbol) const;
};

/// One instantiated symbol formula in a translation.
struct Instance {
  std::string prefix;      // bound variables of the symbol formula carry this prefix
  std::string symbol;      // source symbol, or domain_symbol
  std::vector<Term> args;  // target terms for the parameters
  Formula formula;         // the instantiated formula as it occurs in the output
};

/// A source element and the target coordinates representing it.
struct Binding {
  enum class Kind { param, bound, constant, intermediate };
  Kind kind;
  Term source;  // the variable, constant or application it stands for
  std::vector<std::string> coords;
};

struct Trace {
  std::vector<Binding> bindings;
  std::vector<Instance> instances;
};

struct Translation {
  Definition result;
  Trace trace;
};

/// Translate a source formula with free parameters. Each parameter and each
/// bound variable v becomes coordinates v_1..v_d (just v when d = 1)
/// relativized by the domain formula. Applications are flattened
/// innermost-first into fresh intermediates w<k> constrained by the symbol's
/// graph, unless the symbol's formula is an explicit graph y = term(x), in
/// which case the term is substituted. Constants that are not explicit
/// graphs are shared by all atoms through a tuple c<k> quantified at the top.
/// An atom v = c becomes the constant's formula on v. Symbol formula
/// instances get bound-variable prefixes i<k>.
/// Throws std::invalid_argument on free variables outside the parameters or
/// on symbols the interpretation lacks.
Translation translate_open(const Interpretation& I, const Definition& d);

/// Closed sentence to closed sentence.
Formula translate(const Interpretation& I, const Formula& sentence, Trace* trace = nullptr);

/// I1 followed by I2, with dimension I1.dim * I2.dim. Throws
/// std::invalid_argument when I1.target differs from I2.source.
struct Composite {
  Interpretation result;
  Trace domain_trace;
  std::map<std::string, Trace> traces;  // per symbol, from translate_open
};
Composite compose_traced(const Interpretation& I1, const Interpretation& I2);
Interpretation compose(const Interpretation& I1, const Interpretation& I2);

/// A guarded alternative: guard is a target sentence.
struct Branch {
  Formula guard;
  Interpretation interp;
};

/// Prefixes used by dispatch for branch i: guard bound variables and the
/// branch formula's bound variables.
std::string guard_prefix(std::size_t i);
std::string branch_prefix(std::size_t i);

/// Every symbol formula becomes the disjunction over branches of
/// guard_i and the branch formula, on tuples padded to the largest
/// dimension (padding coordinates equal the first coordinate). Parameters
/// are x1, x2, ... Throws std::invalid_argument on an empty list or
/// mismatched languages.
Interpretation dispatch(const std::vector<Branch>& branches);

/// dim 1, domain true, each symbol read as itself.
Interpretation identity_interp(const Lang& lang);

/// Language by name: L_ring, L_t, L*, L_D.
Lang lang_by_name(const std::string& name);

/// Bundle directory: manifest.json with source, target, dim, and for the
/// domain and every symbol a parameter list and a formula file.
Interpretation load_bundle(const std::filesystem::path& manifest);
void save_bundle(const Interpretation& I, const std::filesystem::path& dir);

}  // namespace h10::interp
