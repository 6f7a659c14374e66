#include "doctest.h"

#include "h10/families.hpp"
#include "h10/interp.hpp"
#include "oracles.hpp"

#include <filesystem>

using namespace h10;
using namespace h10::formula;
using namespace h10::interp;

namespace {

std::size_t count_kind(const Trace& tr, Binding::Kind k) {
  std::size_t n = 0;
  for (const auto& b : tr.bindings) n += b.kind == k;
  return n;
}

bool reparses(const Formula& f, const Lang& lang) { return parse(to_string(f), lang) == f; }

// L_t -> L_t of dimension 2: a |-> (a, 0).
Interpretation paired_lt() {
  Interpretation I;
  I.source = L_t();
  I.target = L_t();
  I.dim = 2;
  I.domain = {{"x1", "x2"}, eq(V("x2"), C("0"))};
  for (const auto& [s, ar] : I.source.functions) {
    Definition d;
    std::vector<Term> args;
    for (unsigned i = 0; i < ar; ++i) {
      d.params.push_back("a" + std::to_string(i));
      d.params.push_back("b" + std::to_string(i));
      args.push_back(V("a" + std::to_string(i)));
    }
    d.params.push_back("y1");
    d.params.push_back("y2");
    d.body = conjoin({eq(V("y1"), Term::app(s, args)), eq(V("y2"), C("0"))});
    I.symbols.emplace(s, d);
  }
  I.symbols.emplace("=", Definition{{"a1", "b1", "a2", "b2"}, eq(V("a1"), V("a2"))});
  return I;
}

}  // namespace

TEST_CASE("library formulas have the displayed shapes") {
  const auto L = phi_Lstar();
  CHECK(L.params == std::vector<std::string>{"x", "y"});
  REQUIRE(L.body.kind() == Formula::Kind::exists);
  CHECK(L.body.bound() == std::vector<std::string>{"z"});
  CHECK(atom_count(L.body) == 2);

  const auto b = beta();
  const auto bv = bound_vars(b.body);
  for (const char* p : {"b1.", "b2.", "b3."}) {
    CHECK(bv.count(std::string(p) + "u1"));
    CHECK(bv.count(std::string(p) + "u17"));
    CHECK(bv.count(std::string(p) + "z"));
  }
  // one Pell atom plus three copies of 15 recurrences and 3 side conditions
  CHECK(atom_count(b.body) == 1 + 3 * 18);
  CHECK(bv.size() == 2 + 3 * 18);

  CHECK(to_string(kappa(3)) == "(= (+ 1 (+ 1 1)) 0)");
  CHECK(free_vars(phi_plus().body) == std::set<std::string>{"f", "g", "u", "v", "x", "y"});
  CHECK(to_string(nu().body) == "(exists (a b c) (= (* (+ (* t a) 1) (+ (* (- t 1) b) 1)) (* f c)))");
  CHECK(to_string(div_p().body) == "(or (|* x y) (|* y x))");
  CHECK(to_string(t_rel().body) == "(and (!= (+ x 1) 0) (!= x 0) (!= x 1))");
  CHECK(to_string(kappa_ge(7)) == "(exists (z2 z3 z5) (and (= (+ z2 z2) 1) (= (+ z3 (+ z3 z3)) 1) (= (+ z5 (+ z5 (+ z5 (+ z5 z5)))) 1)))");
  CHECK(kappa_ge(2) == Formula::truth());

  const auto ps = psi();
  const auto pv = bound_vars(ps.body);
  for (const char* v : {"h", "w1", "w2", "w3", "ph.y", "ph.h", "ph.u", "ph.v", "ph.g"}) CHECK(pv.count(v));
}

TEST_CASE("every library formula is closed over its parameters and reparses") {
  for (const auto& [name, d] : formula_library()) {
    CAPTURE(name);
    const std::set<std::string> ps(d.params.begin(), d.params.end());
    for (const auto& v : free_vars(d.body)) CHECK(ps.count(v));
    const Lang lang = (name == "|_p" || name == "T") ? L_star() : L_t();
    CHECK_NOTHROW(check_lang(d.body, lang));
    CHECK(reparses(d.body, lang));
    CHECK_NOTHROW(prenex(d.body));
  }
}

TEST_CASE("characteristic guards") {
  const PrimeField F17(17), F5(5);
  CHECK(check_sat(kappa(5), {}, 5));
  CHECK_FALSE(check_sat(kappa(5), {}, 7));
  CHECK(check_sat(kappa(17), {}, 17));
  CHECK_FALSE(check_sat(kappa(17), {}, 19));

  Assignment z;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13}) z.insert_or_assign("z" + std::to_string(q), Poly::constant(F17, static_cast<std::int64_t>(F17.inv(q))));
  CHECK(check_sat(kappa_ge(17), z, 17));
  // Over F_5[t] the conjunct 5 z5 = 1 fails for every z5.
  auto rng = testing::seeded_rng("interp.kappa_ge", 7);
  for (int i = 0; i < 50; ++i) {
    Assignment w;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13}) w.insert_or_assign("z" + std::to_string(q), testing::random_poly(rng, F5, 3));
    CHECK_FALSE(check_sat(kappa_ge(17), w, 5));
  }
}

TEST_CASE("interpretations validate") {
  CHECK_NOTHROW(interp_phi().validate());
  CHECK_NOTHROW(interp_d().validate());
  for (const Lang& l : {L_ring(), L_t(), L_star(), L_D()}) CHECK_NOTHROW(identity_interp(l).validate());
  CHECK_NOTHROW(paired_lt().validate());

  auto bad = interp_phi();
  bad.symbols.erase("|*");
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = interp_phi();
  bad.symbols.at("+").params.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = interp_phi();
  bad.symbols.at("=").body = eq(V("q"), V("x"));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("translation of a constant equation") {
  Trace tr;
  const auto out = translate(interp_phi(), parse("(exists (n) (= n 0))", L_star()), &tr);
  CHECK(to_string(out) ==
        "(exists (n_1 n_2) (and (exists (i1.z) (and (= (- (* n_1 n_1) (* (- (* t t) 1) (* n_2 n_2))) 1) "
        "(= n_1 (+ 1 (* (- t 1) i1.z))))) (= n_1 1) (= n_2 0)))");
  CHECK(is_closed(out));
  REQUIRE(tr.bindings.size() == 1);
  CHECK(tr.bindings[0].coords == std::vector<std::string>{"n_1", "n_2"});
  REQUIRE(tr.instances.size() == 2);
  CHECK(tr.instances[0].symbol == domain_symbol);
  CHECK(tr.instances[1].symbol == "0");

  const PrimeField F(17);
  Assignment w{{"n_1", Poly::constant(F, 1)}, {"n_2", Poly(F)}, {"i1.z", Poly(F)}};
  CHECK(check_sat(out, w, 17));
  w.insert_or_assign("i1.z", Poly::constant(F, 1));
  CHECK_FALSE(check_sat(out, w, 17));
}

TEST_CASE("nested terms introduce one intermediate per application") {
  Trace tr;
  const auto out = translate(interp_phi(), parse("(exists (n) (| (+ (+ 1 1) 1) n))", L_star()), &tr);
  CHECK(count_kind(tr, Binding::Kind::intermediate) == 2);
  CHECK(count_kind(tr, Binding::Kind::constant) == 0);  // 1 is an explicit graph (t, 1)
  CHECK(is_closed(out));
  CHECK(bound_vars(out).count("w1_1"));
  CHECK(bound_vars(out).count("w2_2"));
  // innermost first: w1 = 1 + 1, w2 = w1 + 1
  std::vector<std::string> order;
  for (const auto& b : tr.bindings)
    if (b.kind == Binding::Kind::intermediate) order.push_back(to_string(b.source));
  CHECK(order == std::vector<std::string>{"(+ 1 1)", "(+ (+ 1 1) 1)"});

  // Constants without explicit graphs are shared through one top-level tuple.
  auto I = interp_phi();
  I.symbols.at("1").body = conjoin({eq(V("x"), C("t")), eq(V("y"), C("1")), eq(C("1"), C("1"))});
  Trace tr2;
  const auto out2 = translate(I, parse("(exists (n) (and (= n (+ 1 1)) (!= n 1)))", L_star()), &tr2);
  CHECK(count_kind(tr2, Binding::Kind::constant) == 1);
  REQUIRE(out2.kind() == Formula::Kind::exists);
  CHECK(out2.bound() == std::vector<std::string>{"c1_1", "c1_2"});
}

TEST_CASE("translate rejects open sentences and missing symbols") {
  CHECK_THROWS_AS(translate(interp_phi(), parse("(= n 0)", L_star()), nullptr), std::invalid_argument);
  auto I = interp_phi();
  I.symbols.erase("!=");
  CHECK_THROWS_AS(translate(I, parse("(exists (n) (!= n 0))", L_star())), std::invalid_argument);
  CHECK_THROWS(translate(interp_phi(), parse("(exists (n) (T n))", L_D())));
}

TEST_CASE("translations of a sentence corpus are closed and reparse") {
  const char* corpus = R"(
    (exists (n) (= n 0))
    (exists (n) (= (+ 1 1) n))
    (exists (n) (and (| 1 n) (!= n 0)))
    (exists (n m) (and (|* n m) (!= m n)))
    (exists (a b) (or (= (+ a b) 1) (| a (+ b (+ b 1)))))
    (exists (x) (and (exists (y) (= (+ x y) 0)) (exists (y) (!= y x))))
  )";
  for (const auto& s : parse_corpus(corpus, L_star())) {
    CAPTURE(to_string(s));
    Trace tr;
    const auto out = translate(interp_phi(), s, &tr);
    CHECK(free_vars(out).empty());
    CHECK_NOTHROW(check_lang(out, L_t()));
    CHECK(reparses(out, L_t()));
    CHECK_NOTHROW(prenex(out));
    // deterministic
    CHECK(to_string(translate(interp_phi(), s)) == to_string(out));
  }
}

TEST_CASE("instance prefixes avoid names already in the input") {
  auto I = identity_interp(L_t());
  I.symbols.at("=").body = Formula::exists({"k"}, eq(V("x1"), add(V("x2"), mul(C("0"), V("k")))));
  const auto s = parse("(exists (i1.k i2) (= i1.k i2))", L_t());
  Trace tr;
  const auto out = translate(I, s, &tr);
  const auto bv = bound_vars(out);
  CHECK(bv.count("i1.k"));
  CHECK(bv.count("i2"));
  CHECK(bv.size() == 3);
  CHECK_NOTHROW(prenex(out));
}

TEST_CASE("composition with the identity is neutral") {
  const auto I = interp_phi();
  const auto C1 = compose(I, identity_interp(L_t()));
  CHECK(C1.dim == 2);
  CHECK(C1.domain == I.domain);
  for (const auto& [s, d] : I.symbols) {
    CAPTURE(s);
    CHECK(alpha_equivalent(C1.symbols.at(s), d));
  }
  const auto C2 = compose(identity_interp(L_star()), I);
  CHECK(C2.dim == 2);
  for (const auto& [s, d] : I.symbols) {
    CAPTURE(s);
    CHECK_NOTHROW(check_lang(C2.symbols.at(s).body, L_t()));
    CHECK(C2.symbols.at(s).params.size() == d.params.size());
  }
}

TEST_CASE("composing the L_D reduction with the Pell interpretation") {
  const auto C = compose(interp_d(), interp_phi());
  CHECK(C.source == L_D());
  CHECK(C.target == L_t());
  CHECK(C.dim == 2);
  CHECK_NOTHROW(C.validate());
  CHECK(C.symbols.at("T").params.size() == 2);
  CHECK(C.symbols.at("|_p").params.size() == 4);
  CHECK(C.symbols.at("+").params.size() == 6);
  CHECK_THROWS_AS(compose(interp_phi(), interp_d()), std::invalid_argument);

  const auto s = parse("(exists (n) (and (T n) (|_p n (+ n n))))", L_D());
  const auto out = translate(C, s);
  CHECK(is_closed(out));
  CHECK_NOTHROW(check_lang(out, L_t()));
}

TEST_CASE("dispatch") {
  const auto I = interp_phi();
  const auto single = dispatch({{Formula::truth(), I}});
  CHECK(single.dim == 2);
  CHECK(alpha_equivalent(single.domain, I.domain));
  for (const auto& [s, d] : I.symbols) {
    CAPTURE(s);
    CHECK(alpha_equivalent(single.symbols.at(s), d));
  }

  const auto two = dispatch({{kappa(5), I}, {kappa(7), I}});
  CHECK_NOTHROW(two.validate());
  REQUIRE(two.domain.body.kind() == Formula::Kind::disj);
  CHECK(two.domain.body.parts().size() == 2);
  CHECK(bound_vars(two.domain.body) == std::set<std::string>{"br0.z", "br1.z"});

  // Guards with bound variables keep them apart from the branch formulas.
  const auto ge = dispatch({{kappa(5), I}, {kappa_ge(17), I}});
  CHECK(bound_vars(ge.domain.body).count("g1.z13"));

  // Padding a dimension-1 branch to dimension 2.
  const auto padded = dispatch({{kappa(3), identity_interp(L_t())}, {kappa(5), paired_lt()}});
  CHECK(padded.dim == 2);
  CHECK_NOTHROW(padded.validate());
  const auto& alt0 = padded.symbols.at("=").body.parts()[0];
  CHECK(to_string(alt0) == "(and (= (+ 1 (+ 1 1)) 0) (= x1 x3) (= x2 x1) (= x4 x3))");

  CHECK_THROWS_AS(dispatch({}), std::invalid_argument);
  CHECK_THROWS_AS(dispatch({{kappa(5), I}, {kappa(7), interp_d()}}), std::invalid_argument);
  CHECK_THROWS_AS(dispatch({{eq(V("q"), C("0")), I}}), std::invalid_argument);
}

TEST_CASE("bundle files roundtrip") {
  const auto dir = std::filesystem::temp_directory_path() / "h10_bundle_test";
  std::filesystem::remove_all(dir);
  for (const auto& I : {interp_phi(), interp_d(), compose(interp_d(), interp_phi())}) {
    save_bundle(I, dir);
    const auto J = load_bundle(dir / "manifest.json");
    CHECK(J.source == I.source);
    CHECK(J.target == I.target);
    CHECK(J.dim == I.dim);
    CHECK(J.domain == I.domain);
    CHECK(J.symbols == I.symbols);
    std::filesystem::remove_all(dir);
  }
  CHECK_THROWS(load_bundle(dir / "missing.json"));
}

TEST_CASE("canonical forms") {
  const Definition a{{"x"}, Formula::exists({"z"}, eq(V("x"), V("z")))};
  const Definition b{{"y"}, Formula::exists({"w"}, eq(V("y"), V("w")))};
  const Definition c{{"y"}, Formula::exists({"w"}, eq(V("w"), V("y")))};
  CHECK(alpha_equivalent(a, b));
  CHECK_FALSE(alpha_equivalent(a, c));
}
