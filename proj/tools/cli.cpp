#include "cli.hpp"

#include "CLI11.hpp"

#include "h10/bivar.hpp"
#include "h10/buchi.hpp"
#include "h10/families.hpp"
#include "h10/formula.hpp"
#include "h10/harness.hpp"
#include "h10/interp.hpp"
#include "h10/pell.hpp"
#include "h10/valued.hpp"

#include <algorithm>
#include <fstream>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

namespace h10::cli {

namespace {

using formula::Formula;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* verdict(bool b) { return b ? "pass" : "fail"; }

// "n=2, m=-3" or one pair per line.
harness::ZEnv parse_int_witness(const std::string& text) {
  harness::ZEnv env;
  std::string item;
  std::string flat = text;
  std::replace(flat.begin(), flat.end(), '\n', ',');
  std::istringstream in(flat);
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("witness entry '" + item + "': expected var=integer");
    std::string var = item.substr(0, eq), val = item.substr(eq + 1);
    var.erase(0, var.find_first_not_of(" \t"));
    var.erase(var.find_last_not_of(" \t\r") + 1);
    try {
      env.insert_or_assign(var, std::stoll(val));
    } catch (const std::exception&) {
      throw UsageError("witness entry '" + item + "': expected var=integer");
    }
  }
  return env;
}

interp::Interpretation interpretation_by_name(const std::string& name) {
  if (name == "phi") return interp::interp_phi();
  if (name == "d") return interp::interp_d();
  if (name == "d+phi") return interp::compose(interp::interp_d(), interp::interp_phi());
  std::filesystem::path path(name);
  if (std::filesystem::is_directory(path)) path /= "manifest.json";
  if (!std::filesystem::exists(path)) throw UsageError("no interpretation bundle at '" + name + "'");
  return interp::load_bundle(path);
}

void print_witness(std::ostream& out, const harness::Witness& w) {
  out << "family " << w.family << " over F_" << w.p << "[t]\n";
  out << formula::to_string(w.values);
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  int status = ok;
  std::vector<std::shared_ptr<void>> storage;

  // Option storage that lives as long as the parse.
  template <class T>
  T& hold(T init = T{}) {
    auto p = std::make_shared<T>(std::move(init));
    storage.push_back(p);
    return *p;
  }
};

void add_pell(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* pell = app.add_subcommand("pell", "Pell solution pairs (x_n, y_n)");
  pell->require_subcommand(1);

  auto* gen = pell->add_subcommand("gen", "print (x_n, y_n)");
  auto& n = ctx.hold<std::int64_t>(0);
  auto& p = ctx.hold<std::uint64_t>(0);
  auto& char2 = ctx.hold<bool>(false);
  gen->add_option("-n", n, "index")->required();
  gen->add_option("-p", p, "characteristic")->required();
  gen->add_flag("--char2", char2, "characteristic-2 equation X^2 + tXY + Y^2 = 1");
  gen->callback([&] {
    action = [&] {
      const PrimeField F(p);
      const auto pp = pell::pell_pair(n, F, char2 ? CharMode::two : CharMode::odd);
      ctx.out << "x = " << to_string(pp.x) << ", y = " << to_string(pp.y) << '\n';
    };
  });

  auto* verify = pell->add_subcommand("verify", "check a pair against the Pell equation and recognize its index");
  auto& xs = ctx.hold<std::string>();
  auto& ys = ctx.hold<std::string>();
  auto& vp = ctx.hold<std::uint64_t>(0);
  auto& vchar2 = ctx.hold<bool>(false);
  verify->add_option("-x", xs, "polynomial")->required();
  verify->add_option("-y", ys, "polynomial")->required();
  verify->add_option("-p", vp, "characteristic")->required();
  verify->add_flag("--char2", vchar2, "characteristic-2 equation");
  verify->callback([&] {
    action = [&] {
      const PrimeField F(vp);
      const auto mode = vchar2 ? CharMode::two : CharMode::odd;
      const Poly x = parse_poly(xs, F), y = parse_poly(ys, F);
      const bool on = pell::pell_verify(x, y, mode);
      ctx.out << "on curve: " << (on ? "yes" : "no") << '\n';
      if (on) {
        const auto idx = pell::pell_index_recognize(x, y, mode);
        if (idx) ctx.out << "index: " << *idx << '\n';
        else ctx.out << "index: none (negated x)\n";
      }
      ctx.out << "#RESULT pell verify status=" << verdict(on) << '\n';
      ctx.status = on ? ok : falsified;
    };
  });

  auto* oracle = pell->add_subcommand("oracle", "enumerate all solutions with deg y <= D and compare");
  auto& op = ctx.hold<std::uint64_t>(0);
  auto& D = ctx.hold<unsigned>(0);
  auto& workers = ctx.hold<unsigned>(1);
  auto& ochar2 = ctx.hold<bool>(false);
  oracle->add_option("-p", op, "characteristic")->required();
  oracle->add_option("-D", D, "degree bound for y")->required();
  oracle->add_option("--workers", workers, "threads");
  oracle->add_flag("--char2", ochar2, "characteristic-2 equation");
  oracle->callback([&] {
    action = [&] {
      const auto r = pell::pell_enumerate_oracle(op, D, ochar2 ? CharMode::two : CharMode::odd, workers);
      for (const auto& [x, y] : r.found) ctx.out << "(" << to_string(x) << ", " << to_string(y) << ")\n";
      ctx.out << "#RESULT pell oracle p=" << op << " D=" << D << " candidates=" << r.candidates
              << " found=" << r.found.size() << " expected=" << r.expected.size() << " status=" << verdict(r.matches())
              << '\n';
      ctx.status = r.matches() ? ok : falsified;
    };
  });
}

void add_newton(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("newton", "Newton polygon of a truncated series");
  auto& series = ctx.hold<std::string>();
  auto& theta_n = ctx.hold<std::int64_t>(0);
  auto& p = ctx.hold<std::uint64_t>(5);
  auto& Q = ctx.hold<unsigned>(64);
  auto* s = cmd->add_option("--series", series, "{n: coeff_in_q, ...} @ p=P Q=Q");
  auto* th = cmd->add_option("--theta", theta_n, "use sum_{n<=N} q^(n^2) t^n");
  cmd->add_option("-p", p, "characteristic for --theta");
  cmd->add_option("-Q", Q, "q-adic precision for --theta");
  s->excludes(th);
  cmd->callback([&, s, th] {
    action = [&, s, th] {
      if (!*s && !*th) throw UsageError("newton: give --series or --theta");
      const auto h = *s ? valued::parse_series(series) : valued::theta_series(p, theta_n, Q);
      const auto poly = valued::newton_polygon(h);
      ctx.out << "series: " << valued::to_string(h) << '\n';
      ctx.out << "hull: " << valued::to_string(poly) << '\n';
      if (!poly.flagged().empty()) {
        ctx.out << "flagged:";
        for (auto n : poly.flagged()) ctx.out << ' ' << n;
        ctx.out << '\n';
      }
      ctx.out << "#RESULT newton vertices=" << poly.vertices().size() << " flagged=" << poly.flagged().size() << '\n';
    };
  });
}

void add_bivar(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("bivar", "two-variable truncated series: collapse, kernel factor, substitution");
  auto& text = ctx.hold<std::string>();
  auto& p = ctx.hold<std::uint64_t>(0);
  auto& D = ctx.hold<unsigned>(0);
  auto& char2 = ctx.hold<bool>(false);
  cmd->add_option("-f", text, "series in t and u")->required();
  cmd->add_option("-p", p, "characteristic")->required();
  cmd->add_option("-D", D, "total-degree bound")->required();
  cmd->add_flag("--char2", char2, "characteristic-2 substitution");
  cmd->callback([&] {
    action = [&] {
      const PrimeField F(p);
      const auto f = bivar::parse_bitrunc(text, F, D);
      const auto m = bivar::collapse_M(f);
      ctx.out << "f = " << bivar::to_string(f) << '\n';
      ctx.out << "M(f) = " << valued::to_string(m) << '\n';
      const auto mode = char2 ? CharMode::two : CharMode::odd;
      ctx.out << "delta(f) = " << bivar::to_string(bivar::delta_subst(f, mode), "z", "w") << '\n';
      if (!m.is_zero()) {
        ctx.out << "#RESULT bivar collapse=nonzero\n";
        ctx.status = falsified;
        return;
      }
      const auto k = bivar::kernel_factor(f);
      ctx.out << "F = " << bivar::to_string(k.F) << '\n';
      for (const auto& [i, j] : k.boundary) ctx.out << "boundary term t^" << i << "*u^" << j << '\n';
      ctx.out << "#RESULT bivar collapse=zero kernel=" << (k.exact() ? "exact" : "boundary") << '\n';
    };
  });
}

void add_buchi(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("buchi", "sequences of squares with second difference 2");
  cmd->require_subcommand(1);

  auto* gen = cmd->add_subcommand("gen", "u_n = (n + v)^(p^r + 1)");
  auto& v = ctx.hold<std::string>();
  auto& r = ctx.hold<unsigned>(0);
  auto& M = ctx.hold<unsigned>(17);
  auto& p = ctx.hold<std::uint64_t>(0);
  gen->add_option("-v", v, "polynomial")->required();
  gen->add_option("-r", r, "Frobenius exponent")->required();
  gen->add_option("-M", M, "number of terms");
  gen->add_option("-p", p, "characteristic")->required();
  gen->callback([&] {
    action = [&] {
      const auto s = buchi::buchi_generate(parse_poly(v, PrimeField(p)), r, M);
      for (std::size_t i = 0; i < s.terms.size(); ++i) ctx.out << "u" << i + 1 << " = " << to_string(s.terms[i]) << '\n';
      ctx.out << "#RESULT buchi gen terms=" << s.terms.size() << " status=" << verdict(s.valid) << '\n';
      ctx.status = s.valid ? ok : falsified;
    };
  });

  auto* oracle = cmd->add_subcommand("oracle", "exhaustive search over seeds u1 = s1^2, u2 = s2^2");
  auto& d = ctx.hold<unsigned>(1);
  auto& workers = ctx.hold<unsigned>(1);
  auto& length = ctx.hold<unsigned>(17);
  auto& op = ctx.hold<std::uint64_t>(17);
  oracle->add_option("-d", d, "degree bound for s1, s2")->required();
  oracle->add_option("-p", op, "characteristic");
  oracle->add_option("--length", length, "sequence length");
  oracle->add_option("--workers", workers, "threads");
  oracle->callback([&] {
    action = [&] {
      const auto rep = buchi::buchi_search_oracle(op, d, length, workers);
      ctx.out << buchi::to_string(rep);
      ctx.out << "#RESULT buchi oracle p=" << rep.p << " d=" << rep.d << " retained=" << rep.retained.size()
              << " matched=" << rep.matched() << " flagged=" << rep.flagged()
              << " status=" << verdict(rep.flagged() == 0) << '\n';
      ctx.status = rep.flagged() == 0 ? ok : falsified;
    };
  });
}

void add_compile(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("compile", "translate a sentence along an interpretation");
  auto& bundle = ctx.hold<std::string>();
  auto& sentence = ctx.hold<std::string>();
  auto& pretty = ctx.hold<bool>(false);
  cmd->add_option("--interp", bundle, "bundle directory or manifest, or one of phi, d, d+phi")->required();
  cmd->add_option("--sentence", sentence, "sentence file")->required();
  cmd->add_flag("--pretty", pretty, "indented output");
  cmd->callback([&] {
    action = [&] {
      const auto I = interpretation_by_name(bundle);
      const auto phi = formula::parse(read_file(sentence), I.source);
      const auto out = interp::translate(I, phi);
      ctx.out << (pretty ? formula::to_pretty_string(out) : formula::to_string(out)) << '\n';
    };
  });
}

void add_check(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("check", "evaluate formulas over F_p[t] under a witness");
  auto& file = ctx.hold<std::string>();
  auto& witness = ctx.hold<std::string>();
  auto& lang = ctx.hold<std::string>("L_t");
  auto& p = ctx.hold<std::uint64_t>(0);
  cmd->add_option("--formula", file, "formula file (one or more formulas)")->required();
  cmd->add_option("--witness", witness, "file of 'var = poly' lines");
  cmd->add_option("-p", p, "characteristic")->required();
  cmd->add_option("--lang", lang, "language of the formulas");
  cmd->callback([&] {
    action = [&] {
      const PrimeField F(p);
      const auto fs = formula::parse_corpus(read_file(file), interp::lang_by_name(lang));
      const auto w = witness.empty() ? formula::Assignment{} : formula::parse_assignment(read_file(witness), F);
      std::size_t held = 0;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        bool h = false;
        std::string note;
        try {
          h = formula::check_sat(fs[i], w, p);
        } catch (const formula::EvalError& e) {
          note = e.what();
        }
        held += h;
        ctx.out << (h ? "true " : "false") << " #" << i + 1;
        if (!note.empty()) ctx.out << "  -- " << note;
        ctx.out << '\n';
      }
      const bool all = held == fs.size();
      ctx.out << "#RESULT check p=" << p << " true=" << held << "/" << fs.size() << " status=" << verdict(all) << '\n';
      ctx.status = all ? ok : falsified;
    };
  });
}

void add_synth(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("synth", "witness for a formula family, checked against the family");
  auto& family = ctx.hold<std::string>();
  auto& f = ctx.hold<std::string>();
  auto& g = ctx.hold<std::string>();
  auto& p = ctx.hold<std::uint64_t>(0);
  auto& k = ctx.hold<std::uint64_t>(1);
  auto& r = ctx.hold<unsigned>(1);
  auto& n = ctx.hold<std::int64_t>(0);
  cmd->add_option("--family", family, "nu, beta, phi, psi or theta")
      ->required()
      ->check(CLI::IsMember({"nu", "beta", "phi", "psi", "theta"}));
  cmd->add_option("-p", p, "characteristic")->required();
  cmd->add_option("-f", f, "argument of nu");
  cmd->add_option("-g", g, "argument of beta (witness for beta(g^(p^r), g))");
  cmd->add_option("-r", r, "Frobenius exponent for beta, phi, psi");
  cmd->add_option("-k", k, "exponent for psi (f = t^k)");
  cmd->add_option("-n", n, "index for theta");
  cmd->callback([&] {
    action = [&] {
      const PrimeField F(p);
      harness::Witness w;
      interp::Definition def;
      if (family == "nu") {
        if (f.empty()) throw UsageError("synth nu: give -f");
        w = harness::synth_nu(parse_poly(f, F));
        def = interp::nu();
      } else if (family == "beta") {
        if (g.empty()) throw UsageError("synth beta: give -g");
        w = harness::synth_beta(parse_poly(g, F), r);
        def = interp::beta();
      } else if (family == "phi") {
        w = harness::synth_phi_F(r, F);
        def = interp::phi_F();
      } else if (family == "psi") {
        w = harness::synth_psi(k, r, F);
        def = interp::psi();
      } else {
        w = harness::synth_theta(n, F);
        def = interp::phi_Lstar();
      }
      print_witness(ctx.out, w);
      const bool h = formula::check_sat(def.body, w.values, p);
      ctx.out << "#RESULT synth family=" << family << " p=" << p << " status=" << verdict(h) << '\n';
      ctx.status = h ? ok : falsified;
    };
  });
}

int e2e_print(Context& ctx, const harness::E2EReport& r, bool pretty, const Formula* translated) {
  if (pretty && translated) ctx.out << "translated:\n" << formula::to_pretty_string(*translated) << '\n';
  else ctx.out << "translated: " << r.translated << '\n';
  ctx.out << harness::to_string(r);
  return r.passed() ? ok : falsified;
}

void add_e2e(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("e2e", "translate, synthesize a witness from integers, and verify");
  auto& sentence = ctx.hold<std::string>();
  auto& witness = ctx.hold<std::string>();
  auto& lang = ctx.hold<std::string>("L*");
  auto& p = ctx.hold<std::uint64_t>(0);
  cmd->add_option("--sentence", sentence, "sentence file")->required();
  cmd->add_option("--witness", witness, "integer values, e.g. \"n=2, m=3\"")->required();
  cmd->add_option("-p", p, "characteristic")->required();
  cmd->add_option("--lang", lang, "L* (through the Pell interpretation) or L_D (composed with it)")
      ->check(CLI::IsMember({"L*", "L_D"}));
  cmd->callback([&] {
    action = [&] {
      const auto env = parse_int_witness(witness);
      if (lang == "L*") {
        const auto phi = formula::parse(read_file(sentence), formula::L_star());
        ctx.status = e2e_print(ctx, harness::e2e_verify(phi, env, p), false, nullptr);
        return;
      }
      const auto phi = formula::parse(read_file(sentence), formula::L_D());
      const auto c = interp::compose_traced(interp::interp_d(), interp::interp_phi());
      const auto s = harness::composite_synthesizer(c, harness::phi_synthesizer(p), harness::z_model(p));
      ctx.status = e2e_print(ctx, harness::e2e_verify(c.result, s, harness::zd_model(p), phi, env), false, nullptr);
    };
  });
}

void add_oracle(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("oracle", "bounded-degree converse sweeps for nu and phi_L*");
  cmd->require_subcommand(1);
  auto& p = ctx.hold<std::uint64_t>(0);
  auto& deg = ctx.hold<unsigned>(2);
  auto& f = ctx.hold<std::string>();
  auto report = [&](const harness::SweepReport& r) {
    ctx.out << r.label << '\n';
    ctx.out << "#RESULT oracle assignments=" << r.assignments << " satisfied=" << r.satisfied
            << " violations=" << r.violations << " status=" << verdict(r.violations == 0) << '\n';
    ctx.status = r.violations == 0 ? ok : falsified;
  };
  auto guard = [&](unsigned factor) {
    double n = 1;
    for (unsigned i = 0; i <= deg; ++i) n *= static_cast<double>(p);
    if (std::pow(n, factor) > 1e8)
      throw pell::InfeasibleBound("oracle: p^((deg+1)*" + std::to_string(factor) + ") exceeds 1e8 assignments");
  };
  auto* nu = cmd->add_subcommand("nu", "all a, b of bounded degree for nu(f)");
  nu->add_option("-p", p, "characteristic")->required();
  nu->add_option("-f", f, "polynomial")->required();
  nu->add_option("--deg", deg, "degree bound for a, b");
  nu->callback([&, report, guard] {
    action = [&, report, guard] {
      guard(2);
      report(harness::sweep_nu(parse_poly(f, PrimeField(p)), deg));
    };
  });
  auto* ls = cmd->add_subcommand("lstar", "all y of bounded degree for phi_L*");
  ls->add_option("-p", p, "characteristic")->required();
  ls->add_option("--deg", deg, "degree bound for y");
  ls->callback([&, report, guard] {
    action = [&, report, guard] {
      guard(1);
      report(harness::sweep_lstar(PrimeField(p), deg));
    };
  });
}

void add_demo(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("demo", "the sentence exists n, 1 + 1 = n, end to end over F_17[t]");
  auto& p = ctx.hold<std::uint64_t>(17);
  cmd->add_option("-p", p, "characteristic");
  cmd->callback([&] {
    action = [&] {
      const auto phi = formula::parse("(exists (n) (= (+ 1 1) n))", formula::L_star());
      ctx.out << "source over L*: " << formula::to_string(phi) << "  with n = 2\n";
      const auto translated = interp::translate(interp::interp_phi(), phi);
      ctx.status = e2e_print(ctx, harness::e2e_verify(phi, {{"n", 2}}, p), true, &translated);
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err, ok, {}};
  std::function<void()> action;
  CLI::App app{"Pell interpretations, formula families and witness checking over F_p[t]", "h10"};
  app.require_subcommand(1);
  add_pell(app, ctx, action);
  add_newton(app, ctx, action);
  add_bivar(app, ctx, action);
  add_buchi(app, ctx, action);
  add_compile(app, ctx, action);
  add_check(app, ctx, action);
  add_synth(app, ctx, action);
  add_e2e(app, ctx, action);
  add_oracle(app, ctx, action);
  add_demo(app, ctx, action);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return usage;
  }
  if (!action) {
    err << app.help();
    return usage;
  }
  try {
    action();
  } catch (const pell::InfeasibleBound& e) {
    err << "infeasible: " << e.what() << '\n';
    out << "#RESULT infeasible\n";
    return infeasible;
  } catch (const buchi::InfeasibleSearch& e) {
    err << "infeasible: " << e.what() << '\n';
    out << "#RESULT infeasible\n";
    return infeasible;
  } catch (const harness::SynthesisError& e) {
    err << "no witness: " << e.what() << '\n';
    out << "#RESULT status=fail\n";
    return falsified;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return ctx.status;
}

}  // namespace h10::cli
