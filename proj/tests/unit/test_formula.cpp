#include "doctest.h"

#include "h10/formula.hpp"
#include "oracles.hpp"

using namespace h10;
using namespace h10::formula;

TEST_CASE("parse examples") {
  const auto f = parse("(exists (y) (= (* y y) (+ 1 1)))", L_ring());
  CHECK(f.kind() == Formula::Kind::exists);
  CHECK(f.bound() == std::vector<std::string>{"y"});
  CHECK(f.body().relation() == "=");
  CHECK(is_closed(f));

  const auto g = parse(R"((and (= x 1) (rel "|" x h)))", L_star());
  REQUIRE(g.kind() == Formula::Kind::conj);
  CHECK(g.parts().size() == 2);
  CHECK(g.parts()[1].relation() == "|");
  CHECK(g == parse("(and (= x 1) (| x h))", L_star()));
  CHECK(free_vars(g) == std::set<std::string>{"h", "x"});
  CHECK(to_string(g) == "(and (= x 1) (| x h))");

  const auto corpus = parse_corpus("; two formulas\n(= 1 1)\n(or (= x 0) ; trailing\n (= x 1))\n", L_ring());
  CHECK(corpus.size() == 2);
  CHECK(to_string(corpus[1]) == "(or (= x 0) (= x 1))");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("(and (= x 1)\n  (< x 2))", L_ring());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 4);
  }
  CHECK_THROWS_AS(parse("(= x)", L_ring()), ParseError);
  CHECK_THROWS_AS(parse("(= (+ x) 1)", L_ring()), ParseError);
  CHECK_THROWS_AS(parse("(= (* x x) 1)", L_star()), ParseError);
  CHECK_THROWS_AS(parse("(= x 1", L_ring()), ParseError);
  CHECK_THROWS_AS(parse("(exists () (= x 1))", L_ring()), ParseError);
  CHECK_THROWS_AS(parse("(exists (t) (= t 1))", L_t()), ParseError);
  CHECK_THROWS_AS(parse("(= 2 1)", L_ring()), ParseError);
  CHECK_THROWS(parse("(= x 1) (= x 0)", L_ring()));
}

TEST_CASE("t is a constant in L_t and a variable elsewhere") {
  CHECK(parse("(= t 1)", L_t()).args()[0] == C("t"));
  CHECK(parse("(= t 1)", L_ring()).args()[0] == V("t"));
}

TEST_CASE("eval_qf examples") {
  const std::uint64_t p = 5;
  const PrimeField F(p);
  Assignment a{{"x", parse_poly("t + 1", F)}, {"y", parse_poly("t^2 + 2*t + 1", F)}};
  CHECK(eval_qf(parse("(= (* x x) y)", L_t()), a, p));

  // t - 1 | f - 1 with f = t^3: divisibility as an existential over the quotient.
  const auto div = parse("(exists (w) (= (- f 1) (* (- t 1) w)))", L_t());
  Assignment b{{"f", parse_poly("t^3", F)}, {"w", parse_poly("t^2 + t + 1", F)}};
  CHECK(check_sat(div, b, p));
  b.insert_or_assign("w", parse_poly("t^2 + t", F));
  CHECK_FALSE(check_sat(div, b, p));
  CHECK(eval_qf(rel("|", {sub(C("t"), C("1")), sub(V("f"), C("1"))}), b, p));

  CHECK_THROWS_AS(eval_qf(parse("(= x z)", L_t()), a, p), EvalError);
  CHECK_THROWS_AS(eval_qf(div, b, p), EvalError);
  CHECK_THROWS_AS(check_sat(div, Assignment{{"f", Poly(F)}}, p), IncompleteWitness);
}

TEST_CASE("relation semantics over F_p[t]") {
  const PrimeField F(3);
  const Assignment a{{"x", parse_poly("t + 1", F)}, {"y", parse_poly("t^9 + 1", F)}, {"z", Poly(F)}};
  CHECK(eval_qf(parse("(|* x y)", L_star()), a, 3));
  CHECK_FALSE(eval_qf(parse("(|* y x)", L_star()), a, 3));
  CHECK(eval_qf(parse("(| x y)", L_star()), a, 3));
  CHECK(eval_qf(parse("(| x z)", L_star()), a, 3));
  CHECK_FALSE(eval_qf(parse("(| z x)", L_star()), a, 3));
  CHECK(eval_qf(parse("(!= x y)", L_star()), a, 3));
}

TEST_CASE("kappa sentences") {
  const auto kappa5 = parse("(= (+ 1 (+ 1 (+ 1 (+ 1 1)))) 0)", L_t());
  CHECK(check_sat(kappa5, {}, 5));
  CHECK_FALSE(check_sat(kappa5, {}, 7));
  CHECK(to_string(eq(repeat_sum(C("1"), 3), C("0"))) == "(= (+ 1 (+ 1 1)) 0)");
}

TEST_CASE("substitute, free_vars, conjoin") {
  const auto f = parse("(= x 1)", L_t());
  CHECK(to_string(substitute(f, {{"x", C("t")}})) == "(= t 1)");

  // Capture avoidance: the bound y is renamed before x := y is pushed in.
  const auto g = parse("(exists (y) (= x (+ y 1)))", L_ring());
  const auto gs = substitute(g, {{"x", V("y")}});
  CHECK(free_vars(gs) == std::set<std::string>{"y"});
  CHECK(to_string(gs) == "(exists (y') (= y (+ y' 1)))");
  // Bound occurrences are untouched.
  CHECK(substitute(g, {{"y", C("0")}}) == g);

  CHECK(conjoin({}) == Formula::truth());
  CHECK(to_string(conjoin({})) == "(and)");
  CHECK(conjoin({f}) == f);
  CHECK(to_string(conjoin({conjoin({f, f}), f})) == "(and (= x 1) (= x 1) (= x 1))");
  CHECK(to_string(disjoin({f, disjoin({f, f})})) == "(or (= x 1) (= x 1) (= x 1))");
  CHECK(check_sat(Formula::truth(), Assignment{}, 5));
  CHECK_FALSE(check_sat(Formula::falsity(), Assignment{}, 5));
}

TEST_CASE("rename_bound, instantiate, prenex") {
  const auto f = parse("(and (exists (z) (= x (* z y))) (exists (w) (= w x)))", L_ring());
  const auto g = instantiate(f, {{"x", V("a")}, {"y", C("1")}}, "i0.");
  CHECK(to_string(g) == "(and (exists (i0.z) (= a (* i0.z 1))) (exists (i0.w) (= i0.w a)))");
  const auto pr = prenex(g);
  CHECK(pr.bound == std::vector<std::string>{"i0.z", "i0.w"});
  CHECK(bound_vars(g) == std::set<std::string>{"i0.w", "i0.z"});
  CHECK(atom_count(g) == 2);
  CHECK_THROWS(prenex(parse("(and (exists (z) (= z 1)) (exists (z) (= z 0)))", L_ring())));
}

TEST_CASE("disjunctions tolerate missing witnesses in losing branches") {
  const std::uint64_t p = 5;
  const PrimeField F(p);
  const auto f = parse("(or (exists (a) (= x (* a a))) (exists (b) (= x (+ b 1))))", L_t());
  CHECK(check_sat(f, Assignment{{"x", parse_poly("t", F)}, {"b", parse_poly("t - 1", F)}}, p));
  CHECK_THROWS_AS(check_sat(f, Assignment{{"x", parse_poly("t", F)}, {"b", Poly(F)}}, p), IncompleteWitness);
}

TEST_CASE("printer and parser roundtrip on random formulas") {
  auto rng = testing::seeded_rng("formula.roundtrip", 51);
  const Lang L = L_t();
  std::uniform_int_distribution<int> pick(0, 9);
  std::function<Term(int)> rand_term = [&](int depth) -> Term {
    const int k = pick(rng);
    if (depth == 0 || k < 4) {
      static const char* leaves[] = {"0", "1", "t", "x", "y", "z.1"};
      const std::string s = leaves[pick(rng) % 6];
      return L.is_constant(s) ? C(s) : V(s);
    }
    static const char* ops[] = {"+", "*", "-"};
    return Term::app(ops[k % 3], {rand_term(depth - 1), rand_term(depth - 1)});
  };
  std::function<Formula(int)> rand_formula = [&](int depth) -> Formula {
    const int k = pick(rng);
    if (depth == 0 || k < 4) return eq(rand_term(2), rand_term(2));
    std::vector<Formula> parts;
    for (int i = 0; i <= k % 3; ++i) parts.push_back(rand_formula(depth - 1));
    if (k < 6) return Formula::conj(parts);
    if (k < 8) return Formula::disj(parts);
    return Formula::exists({"x", "w"}, parts.front());
  };
  for (int i = 0; i < 300; ++i) {
    const Formula f = rand_formula(4);
    REQUIRE(parse(to_string(f), L) == f);
    REQUIRE(parse(to_pretty_string(f), L) == f);
  }
}

TEST_CASE("eval_qf agrees with a truth-table evaluation") {
  auto rng = testing::seeded_rng("formula.truth_table", 52);
  const PrimeField F(5);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int trial = 0; trial < 500; ++trial) {
    // Atoms a_i : (= x_i 1); truth tables as 64-bit masks over the 6 atom values.
    const int atoms = 6;
    std::vector<std::uint64_t> atom_mask(atoms);
    for (int i = 0; i < atoms; ++i)
      for (unsigned row = 0; row < 64; ++row)
        if ((row >> i) & 1) atom_mask[i] |= std::uint64_t{1} << row;
    std::function<std::pair<Formula, std::uint64_t>(int)> build = [&](int depth) {
      const int k = pick(rng);
      if (depth == 0 || k < 3) {
        const int i = pick(rng) % atoms;
        return std::pair{eq(V("x" + std::to_string(i)), C("1")), atom_mask[i]};
      }
      const bool is_and = k % 2 == 0;
      std::vector<Formula> parts;
      std::uint64_t mask = is_and ? ~std::uint64_t{0} : 0;
      for (int j = 0; j < 1 + k % 3; ++j) {
        auto [g, m] = build(depth - 1);
        parts.push_back(g);
        mask = is_and ? (mask & m) : (mask | m);
      }
      return std::pair{is_and ? Formula::conj(parts) : Formula::disj(parts), mask};
    };
    auto [f, mask] = build(4);
    Assignment a;
    unsigned row = 0;
    for (int i = 0; i < atoms; ++i) {
      const bool truth = pick(rng) % 2 == 0;
      a.insert_or_assign("x" + std::to_string(i), truth ? Poly::constant(F, 1) : Poly::t(F));
      if (truth) row |= 1u << i;
    }
    REQUIRE(eval_qf(f, a, 5) == (((mask >> row) & 1) != 0));
  }
}

TEST_CASE("formula kinds are exactly atom, and, or, exists") {
  // Every constructor, and every kind it can produce.
  const auto atom = Formula::atom("=", {V("x"), C("0")});
  const std::vector<Formula> built{atom, Formula::conj({atom}), Formula::disj({atom}), Formula::exists({"x"}, atom),
                                   Formula::truth(), Formula::falsity(), conjoin({atom, atom}), disjoin({atom, atom}),
                                   exists_if({}, atom), eq(C("0"), C("1")), rel("|", {V("a"), V("b")})};
  for (const auto& f : built) {
    const auto k = f.kind();
    CHECK((k == Formula::Kind::atom || k == Formula::Kind::conj || k == Formula::Kind::disj ||
           k == Formula::Kind::exists));
  }
  CHECK(static_cast<int>(Formula::Kind::exists) == 3);
  for (const char* bad : {"(not (= x 1))", "(forall (x) (= x 1))", "(implies (= x 1) (= x 0))"})
    CHECK_THROWS_AS(parse(bad, L_ring()), ParseError);
}

TEST_CASE("assignment text format") {
  const PrimeField F(17);
  const auto a = parse_assignment("# witness\nx = t^2 + 1\ni0.z = 3*t ; note\n\n", F);
  CHECK(a.size() == 2);
  CHECK(a.at("i0.z") == parse_poly("3*t", F));
  CHECK(to_string(a) == "i0.z = 3*t\nx = t^2 + 1\n");
  CHECK_THROWS(parse_assignment("x t", F));
  CHECK_THROWS(parse_assignment("1x = t", F));
}
