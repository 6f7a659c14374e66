#include "h10/families.hpp"

namespace h10::interp {

using formula::add;
using formula::C;
using formula::conjoin;
using formula::disjoin;
using formula::eq;
using formula::instantiate;
using formula::mul;
using formula::rel;
using formula::sub;
using formula::V;

namespace {

Term one() { return C("1"); }
Term t() { return C("t"); }
Term t2m1() { return sub(mul(t(), t()), one()); }

// x^2 - D y^2 = 1
Formula pell(Term x, Term y, Term D) { return eq(sub(mul(x, x), mul(D, mul(y, y))), one()); }

Formula apply(const Definition& d, std::vector<Term> args, const std::string& pfx) {
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < d.params.size(); ++i) m.emplace(d.params[i], std::move(args[i]));
  return instantiate(d.body, m, pfx);
}

Formula both_pairs() {
  const Definition c = phi_Lstar();
  return conjoin({apply(c, {V("x"), V("y")}, prefix::first_pair), apply(c, {V("u"), V("v")}, prefix::second_pair)});
}

// a | b as exists w, b = a w
Formula divides(Term a, Term b, const std::string& w) { return Formula::exists({w}, eq(std::move(b), mul(std::move(a), V(w)))); }

bool prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Definition phi_Lstar() {
  return {{"x", "y"},
          Formula::exists({"z"}, conjoin({pell(V("x"), V("y"), t2m1()), eq(V("x"), add(one(), mul(sub(t(), one()), V("z"))))}))};
}

Definition phi_zero() { return {{"x", "y"}, conjoin({eq(V("x"), one()), eq(V("y"), C("0"))})}; }

Definition phi_one() { return {{"x", "y"}, conjoin({eq(V("x"), t()), eq(V("y"), one())})}; }

Definition phi_plus() {
  return {{"x", "y", "u", "v", "f", "g"},
          conjoin({both_pairs(), eq(V("f"), add(mul(V("x"), V("u")), mul(t2m1(), mul(V("y"), V("v"))))),
                   eq(V("g"), add(mul(V("x"), V("v")), mul(V("y"), V("u"))))})};
}

Definition phi_div() {
  return {{"x", "y", "u", "v"}, Formula::exists({"z"}, conjoin({both_pairs(), eq(V("v"), mul(V("y"), V("z")))}))};
}

Definition phi_divstar() {
  return {{"x", "y", "u", "v"}, conjoin({both_pairs(), apply(beta(), {V("u"), V("x")}, prefix::star)})};
}

Definition phi_eq() {
  return {{"x", "y", "u", "v"}, conjoin({both_pairs(), eq(V("x"), V("u")), eq(V("y"), V("v"))})};
}

Definition phi_neq() {
  const Definition n = nu();
  return {{"x", "y", "u", "v"},
          conjoin({both_pairs(), disjoin({apply(n, {sub(V("x"), V("u"))}, prefix::neq_x),
                                          apply(n, {sub(V("y"), V("v"))}, prefix::neq_y)})})};
}

Definition nu() {
  const Term lhs = mul(add(mul(t(), V("a")), one()), add(mul(sub(t(), one()), V("b")), one()));
  return {{"f"}, Formula::exists({"a", "b", "c"}, eq(lhs, mul(V("f"), V("c"))))};
}

Definition beta_prime() {
  auto u = [](int n) { return V("u" + std::to_string(n)); };
  std::vector<std::string> vars;
  for (int n = 1; n <= 17; ++n) vars.push_back("u" + std::to_string(n));
  vars.push_back("z");
  std::vector<Formula> parts;
  for (int n = 1; n <= 15; ++n) parts.push_back(eq(add(sub(u(n + 2), add(u(n + 1), u(n + 1))), u(n)), add(one(), one())));
  parts.push_back(eq(mul(V("x"), V("y")), u(1)));
  parts.push_back(eq(add(V("x"), V("y")), sub(sub(u(2), u(1)), one())));
  parts.push_back(eq(V("x"), mul(V("y"), V("z"))));
  return {{"x", "y"}, Formula::exists(vars, conjoin(parts))};
}

Definition beta() {
  const Definition bp = beta_prime();
  return {{"x", "y"},
          Formula::exists({"u", "v"}, conjoin({pell(V("u"), V("v"), t2m1()), apply(bp, {V("u"), t()}, prefix::beta_outer),
                                              apply(bp, {mul(V("u"), V("x")), mul(t(), V("y"))}, prefix::beta_scaled),
                                              apply(bp, {V("x"), V("y")}, prefix::beta_plain)}))};
}

Definition phi_F() {
  const Term s = add(t(), one());
  return {{"f"},
          Formula::exists({"y", "h", "u", "v", "g"},
                          conjoin({pell(V("f"), V("y"), t2m1()), eq(V("f"), add(one(), mul(sub(t(), one()), V("h")))),
                                   pell(V("u"), V("v"), sub(mul(s, s), one())), eq(V("u"), add(one(), mul(t(), V("g")))),
                                   eq(V("u"), add(V("f"), one()))}))};
}

Definition psi() {
  return {{"f"},
          Formula::exists({"h"}, conjoin({apply(phi_F(), {V("h")}, prefix::psi_phi), divides(V("f"), V("h"), "w1"),
                                         divides(t(), V("f"), "w2"), divides(sub(t(), one()), sub(V("f"), one()), "w3")}))};
}

Formula kappa(std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("kappa: p must be positive");
  return eq(formula::repeat_sum(one(), static_cast<unsigned>(p)), C("0"));
}

Formula kappa_ge(std::uint64_t p) {
  std::vector<std::string> vars;
  std::vector<Formula> parts;
  for (std::uint64_t q = 2; q < p; ++q) {
    if (!prime(q)) continue;
    const std::string z = "z" + std::to_string(q);
    vars.push_back(z);
    parts.push_back(eq(formula::repeat_sum(V(z), static_cast<unsigned>(q)), one()));
  }
  return formula::exists_if(vars, conjoin(parts));
}

Definition div_p() { return {{"x", "y"}, disjoin({rel("|*", {V("x"), V("y")}), rel("|*", {V("y"), V("x")})})}; }

Definition t_rel() {
  return {{"x"}, conjoin({rel("!=", {add(V("x"), one()), C("0")}), rel("!=", {V("x"), C("0")}), rel("!=", {V("x"), one()})})};
}

Interpretation interp_phi() {
  Interpretation I;
  I.source = formula::L_star();
  I.target = formula::L_t();
  I.dim = 2;
  I.domain = phi_Lstar();
  I.symbols = {{"0", phi_zero()}, {"1", phi_one()},  {"+", phi_plus()},  {"|", phi_div()},
               {"|*", phi_divstar()}, {"=", phi_eq()}, {"!=", phi_neq()}};
  return I;
}

Interpretation interp_d() {
  Interpretation I;
  I.source = formula::L_D();
  I.target = formula::L_star();
  I.dim = 1;
  I.domain = {{"x"}, Formula::truth()};
  I.symbols = {{"0", {{"x"}, eq(V("x"), C("0"))}},
               {"1", {{"x"}, eq(V("x"), one())}},
               {"+", {{"x", "y", "z"}, eq(V("z"), add(V("x"), V("y")))}},
               {"=", {{"x", "y"}, eq(V("x"), V("y"))}},
               {"|", {{"x", "y"}, rel("|", {V("x"), V("y")})}},
               {"|_p", div_p()},
               {"T", t_rel()}};
  return I;
}

std::map<std::string, Definition> formula_library() {
  return {{"phi_L*", phi_Lstar()},  {"phi_0", phi_zero()},      {"phi_1", phi_one()},  {"phi_+", phi_plus()},
          {"phi_|", phi_div()},     {"phi_|*", phi_divstar()},  {"phi_=", phi_eq()},   {"phi_!=", phi_neq()},
          {"nu", nu()},             {"beta'", beta_prime()},    {"beta", beta()},      {"phi", phi_F()},
          {"psi", psi()},           {"kappa_3", {{}, kappa(3)}}, {"kappa_>=17", {{}, kappa_ge(17)}},
          {"|_p", div_p()},         {"T", t_rel()}};
}

}  // namespace h10::interp
