// Command-line front end.  Every subcommand prints line-delimited records
// (json mode) or flat key=value lines (text mode), always ending with a
// summary record, and maps outcomes onto four exit codes: 0 definite
// positive, 1 definite negative, 2 inconclusive, 3 usage error.
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "henselkit/lifting.hpp"
#include "henselkit/localglobal.hpp"
#include "henselkit/milnor.hpp"
#include "henselkit/pointfinder.hpp"
#include "henselkit/selftest.hpp"
#include "henselkit/serialize.hpp"

using namespace henselkit;

namespace {

struct reporter {
  bool as_json = true;

  void emit(const json& rec) {
    if (as_json) {
      std::cout << rec.dump() << "\n";
    } else {
      std::string line;
      for (auto it = rec.begin(); it != rec.end(); ++it) {
        if (!line.empty()) line += "  ";
        line += it.key() + "=" +
                (it->is_string() ? it->get<std::string>() : it->dump());
      }
      std::cout << line << "\n";
    }
    std::cout.flush(); // long searches stay observable record by record
  }
};

int exit_for(const std::exception& e) {
  if (auto* he = dynamic_cast<const error*>(&e)) {
    const std::string& c = he->code();
    if (c == "budget-exceeded" || c == "search-budget-exceeded" ||
        c == "precision-exhausted" || c == "precision-too-low")
      return 2;
    if (c == "infeasible" || c == "refused-non-member" || c == "not-smooth-enough")
      return 1;
    return 3;
  }
  return 3;
}

xrat parse_xrat(const std::string& s) {
  return s == "inf" ? xrat::infinity() : xrat(parse_rat(s));
}

// --- wire helpers for the symbol calculus -----------------------------------

monomial_elem monomial_from_json(const json& j) {
  monomial_elem e;
  e.exps = j.at("exps").get<std::vector<long>>();
  if (j.contains("constant")) e.constant_tag = j.at("constant").get<std::string>();
  if (j.contains("principal_unit")) e.principal_unit = j.at("principal_unit").get<bool>();
  return e;
}

json monomial_to_json(const monomial_elem& e) {
  return json{{"exps", e.exps},
              {"constant", e.constant_tag},
              {"principal_unit", e.principal_unit}};
}

std::vector<unit_class_mod_d> classes_from_json(const json& arr, unsigned d) {
  std::vector<unit_class_mod_d> out;
  for (const json& row : arr) {
    unit_class_mod_d v;
    v.d = d;
    for (const json& e : row) {
      long raw = e.get<long>() % long(d);
      v.vec.push_back(unsigned((raw + long(d)) % long(d)));
    }
    out.push_back(v);
  }
  return out;
}

json wedge_to_json(const wedge_class& w) {
  json coords = json::array();
  for (const auto& [S, c] : w.coords) coords.push_back(json::array({S, c}));
  return json{{"d", w.d}, {"m", w.m}, {"j", w.j}, {"coords", coords}};
}

wedge_class wedge_from_json(const json& j) {
  wedge_class w;
  w.d = j.at("d").get<unsigned>();
  w.m = j.at("m").get<unsigned>();
  w.j = j.at("j").get<unsigned>();
  for (const json& pr : j.at("coords")) {
    std::vector<unsigned> S = pr.at(0).get<std::vector<unsigned>>();
    if (S.size() != w.j) throw parse_error("coordinate index set must have j entries");
    for (size_t i = 0; i < S.size(); ++i) {
      if (S[i] >= w.m) throw parse_error("axis index " + std::to_string(S[i]) + " out of range");
      if (i && S[i - 1] >= S[i]) throw parse_error("axis indices must be strictly increasing");
    }
    unsigned c = pr.at(1).get<unsigned>() % w.d;
    if (c) w.coords[S] = c;
  }
  return w;
}

monic_laurent_poly laurent_poly_from_json(const json& j) {
  monic_laurent_poly f;
  f.degree = j.at("degree").get<unsigned>();
  for (const json& pr : j.at("lower"))
    f.lower[pr.at(0).get<unsigned>()] = monomial_from_json(pr.at(1));
  return f;
}

json decomposition_to_json(const norm_decomposition& dec, bool verified) {
  json factors = json::array();
  for (const norm_factor& f : dec.factors) {
    factors.push_back(
        json{{"pair", json::array({f.alpha, f.beta})},
             {"extension",
              "adjoin " + std::to_string(dec.target.d) + "-th root of " +
                  monomial_str(f.ext_u)},
             {"ext_u", monomial_to_json(f.ext_u)},
             {"exponent", f.exponent},
             {"class_upstairs", wedge_to_json(f.over_ext)}});
  }
  json ucl = json::array();
  for (const unit_class_mod_d& u : dec.u_inputs) ucl.push_back(u.vec);
  return json{{"record", "decomposition"},
              {"case",
               dec.tag == norm_decomposition::case_kind::dependent ? "dependent"
                                                                   : "independent"},
              {"target", wedge_to_json(dec.target)},
              {"delta", dec.delta},
              {"witness", dec.witness},
              {"u_classes", ucl},
              {"factors", factors},
              {"verified", verified}};
}

// --- handlers ---------------------------------------------------------------

int run_lift(const std::string& system_path, const std::string& point_path,
             const std::string& precision, reporter& rep) {
  poly_system F = system_from_json(load_json_file(system_path));
  std::vector<puiseux_series> x = point_from_json(load_json_file(point_path));
  lift_options lo;
  lo.target = parse_xrat(precision);
  lift_result res = smooth_lift(F, x, lo);
  for (const xrat& r : res.residual_trace)
    rep.emit(json{{"record", "step"}, {"residual", r.str()}});
  rep.emit(json{{"record", "summary"},
                {"point", point_to_json(res.point)},
                {"minor", json{{"rows", res.minor.rows}, {"cols", res.minor.cols}}},
                {"minor_val", rat_str(res.minor_val)},
                {"initial_residual", rat_str(res.initial_residual)}});
  return 0;
}

int run_solve(const std::string& form_path, const std::string& system_path,
              const std::string& precision, const std::string& nu_max, long q_cap,
              unsigned long long budget, reporter& rep) {
  if (form_path.empty() == system_path.empty())
    throw parse_error("pass exactly one of --form and --system");
  if (!form_path.empty()) {
    series_poly f = poly_from_json(load_json_file(form_path));
    laurent_point_options lo;
    lo.target = parse_xrat(precision);
    lo.q_cap = q_cap;
    if (budget) lo.budget = budget;
    laurent_point_report r = point_over_laurent(f, lo);
    rep.emit(json{{"record", "summary"},
                  {"verdict", r.verdict},
                  {"q", r.q},
                  {"checked", r.checked},
                  {"point", point_to_json(r.point)},
                  {"note", r.note}});
    if (r.verdict == "found") return 0;
    return r.verdict == "no-residue-point" ? 1 : 2;
  }
  poly_system F = system_from_json(load_json_file(system_path));
  solve_options so;
  so.target = parse_xrat(precision);
  so.nu_max = ceil_long(parse_rat(nu_max));
  so.q_cap = q_cap;
  if (budget) so.budget = budget;
  solve_report r = solve_in_R_infty(F, so);
  json summary{{"record", "summary"},
               {"verdict", r.verdict},
               {"nu", r.nu},
               {"q", r.q},
               {"checked", r.checked},
               {"point", point_to_json(r.point)},
               {"note", r.note}};
  if (r.constants) {
    summary["constants"] = json{{"M", rat_str(r.constants->M)},
                                {"gamma", r.constants->gamma},
                                {"sigma", rat_str(r.constants->sigma)}};
  }
  rep.emit(summary);
  if (r.verdict == "solved") return 0;
  return r.verdict == "no-solution-mod-nu" ? 1 : 2;
}

int run_certify(const std::string& system_path, long N, long c, long s, long q,
                long samples, unsigned long long seed, reporter& rep) {
  poly_system F = system_from_json(load_json_file(system_path));
  certify_options co;
  if (samples) co.samples = samples;
  co.seed = seed;
  certify_report r = certify_triple(F, {N, c, s, q}, co);
  for (const certify_sample& smp : r.samples)
    rep.emit(json{{"record", "sample"},
                  {"index", smp.index},
                  {"outcome", smp.outcome},
                  {"nu", smp.nu},
                  {"x", smp.x},
                  {"note", smp.note}});
  json summary{{"record", "summary"}, {"verdict", r.verdict}};
  if (r.witness) {
    summary["witness"] = json{{"x", r.witness->x},
                              {"nu", r.witness->nu},
                              {"note", r.witness->note}};
  }
  rep.emit(summary);
  if (r.verdict == "pass") return 0;
  return r.verdict == "counterexample" ? 1 : 2;
}

struct wedge_opts {
  unsigned d = 2;
  std::string classes;
};

int run_wedge(const wedge_opts& o, reporter& rep) {
  std::vector<unit_class_mod_d> vs = classes_from_json(json::parse(o.classes), o.d);
  wedge_class w = wedge(vs);
  rep.emit(json{{"record", "summary"},
                {"class", wedge_to_json(w)},
                {"zero", w.is_zero()}});
  return 0;
}

struct norm_opts {
  std::string u;
  std::string cls;
};

int run_norm(const norm_opts& o, reporter& rep) {
  kummer_ext ext{monomial_from_json(json::parse(o.u))};
  wedge_class x = wedge_from_json(json::parse(o.cls));
  wedge_class down = kummer_norm_class(ext, x);
  rep.emit(json{{"record", "summary"},
                {"class", wedge_to_json(down)},
                {"zero", down.is_zero()}});
  return 0;
}

struct ramif_opts {
  std::string input;
  unsigned d = 2;
  bool assume = false;
};

int run_ramif(const ramif_opts& o, reporter& rep) {
  monic_laurent_poly f = laurent_poly_from_json(load_json_file(o.input));
  ramif_certificate cert = lemma51_certify(f, o.d, o.assume);
  bool ok = cert.verdict == ramif_verdict::certified;
  rep.emit(json{{"record", "summary"},
                {"verdict", ok ? "certified" : "refuted"},
                {"constant_class", cert.f0_class.vec},
                {"slope_established", cert.slope_established},
                {"note", cert.note}});
  return ok ? 0 : 1;
}

struct witness_opts {
  unsigned d = 2;
  unsigned m_plus_1 = 1;
  std::string u_classes;
  std::string c_classes;
};

int run_witness(const witness_opts& o, reporter& rep) {
  std::vector<unit_class_mod_d> us = classes_from_json(json::parse(o.u_classes), o.d);
  std::vector<unit_class_mod_d> cs = classes_from_json(json::parse(o.c_classes), o.d);
  norm_decomposition dec = thm54_witness(o.d, o.m_plus_1, us, cs);
  bool ok = expand_and_verify(dec);
  rep.emit(decomposition_to_json(dec, ok));
  rep.emit(json{{"record", "summary"},
                {"case",
                 dec.tag == norm_decomposition::case_kind::dependent ? "dependent"
                                                                     : "independent"},
                {"verified", ok}});
  return ok ? 0 : 2;
}

int run_conic_decide(const rat& a, const rat& b, const rat& x, reporter& rep) {
  conic C{a, b};
  for (const place& v : ramified_places(a, b))
    rep.emit(json{{"record", "place"},
                  {"place", place_str(v)},
                  {"conic_solvable", conic_local_solvable(C, v)},
                  {"local_member", local_norm_membership(x, C, v)}});
  bool member = global_membership_decide(x, C);
  rep.emit(json{{"record", "summary"}, {"member", member}});
  return member ? 0 : 1;
}

int run_conic_witness(const rat& a, const rat& b, const rat& x, long bound,
                      reporter& rep) {
  conic C{a, b};
  witness_options wo;
  if (bound) wo.bound = bound;
  std::optional<norm_witness> w = witness_search(x, C, wo);
  if (!w) {
    rep.emit(json{{"record", "summary"},
                  {"found", false},
                  {"note", "enumeration bound reached"}});
    return 2;
  }
  json factors = json::array();
  for (const norm_witness::factor& f : w->factors)
    factors.push_back(json{{"d", f.d.get_str()}, {"y", rat_str(f.y)}});
  bool ok = verify_witness(*w, C);
  rep.emit(json{{"record", "witness"}, {"x", rat_str(w->x)}, {"factors", factors}});
  rep.emit(json{{"record", "summary"}, {"found", true}, {"verified", ok}});
  return ok ? 0 : 2;
}

int run_selftest(const std::string& scope, unsigned long long seed, reporter& rep) {
  std::vector<criterion_result> res = run_acceptance(scope, seed);
  long passed = 0;
  for (const criterion_result& c : res) {
    rep.emit(json{{"record", "criterion"},
                  {"id", c.id},
                  {"title", c.title},
                  {"pass", c.pass},
                  {"detail", c.detail}});
    if (c.pass) ++passed;
  }
  rep.emit(json{{"record", "summary"},
                {"total", long(res.size())},
                {"passed", passed}});
  return passed == long(res.size()) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lifting, point finding and norm certificates for "
               "truncated Puiseux coefficients"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned long long seed = 1;
  long workers = 1;
  std::string format = "json";
  app.add_option("--seed", seed, "seed driving every randomized component");
  app.add_option("--workers", workers,
                 "worker pool size; results merge deterministically (this build "
                 "runs the pool sequentially)");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::function<int(reporter&)> chosen;

  // lift
  std::string lift_system, lift_point, lift_prec = "16";
  {
    CLI::App* cmd = app.add_subcommand(
        "lift", "Newton-lift an approximate solution of a square-enough system");
    cmd->add_option("--system", lift_system, "system file (json)")->required();
    cmd->add_option("--point", lift_point, "starting point file (json)")->required();
    cmd->add_option("--precision", lift_prec, "target vanishing precision");
    cmd->callback([&] {
      chosen = [&](reporter& rep) {
        return run_lift(lift_system, lift_point, lift_prec, rep);
      };
    });
  }

  // solve-hypersurface
  std::string sol_form, sol_system, sol_prec = "16", sol_numax = "16";
  long sol_qcap = 6;
  unsigned long long sol_budget = 0;
  {
    CLI::App* cmd = app.add_subcommand(
        "solve-hypersurface",
        "find a zero with Puiseux coordinates: --form runs the homogeneous "
        "pipeline, --system the truncate-solve-lift search");
    cmd->add_option("--form", sol_form, "homogeneous form file (json)");
    cmd->add_option("--system", sol_system, "polynomial system file (json)");
    cmd->add_option("--precision", sol_prec, "target vanishing precision");
    cmd->add_option("--nu-max", sol_numax, "congruence level schedule cap");
    cmd->add_option("--q-cap", sol_qcap, "ramification cap");
    cmd->add_option("--budget", sol_budget, "evaluation budget (0 = default)");
    cmd->callback([&] {
      chosen = [&](reporter& rep) {
        return run_solve(sol_form, sol_system, sol_prec, sol_numax, sol_qcap,
                         sol_budget, rep);
      };
    });
  }

  // certify-triple
  std::string ct_system;
  long ct_N = 1, ct_c = 1, ct_s = 0, ct_q = 1, ct_samples = 0;
  {
    CLI::App* cmd = app.add_subcommand(
        "certify-triple",
        "probe an associated triple (N, c, s) at tower level q for counterexamples");
    cmd->add_option("--system", ct_system, "system file (json)")->required();
    cmd->add_option("--N", ct_N, "residual threshold");
    cmd->add_option("--c", ct_c, "precision divisor");
    cmd->add_option("--s", ct_s, "precision shift");
    cmd->add_option("--q", ct_q, "tower level");
    cmd->add_option("--samples", ct_samples, "random probes (0 = default)");
    cmd->callback([&] {
      chosen = [&](reporter& rep) {
        return run_certify(ct_system, ct_N, ct_c, ct_s, ct_q, ct_samples, seed, rep);
      };
    });
  }

  // milnor family, with two spellings for the certificate subcommands
  wedge_opts wo_;
  norm_opts no_;
  ramif_opts ro_;
  witness_opts wi_;
  CLI::App* milnor = app.add_subcommand(
      "milnor", "mod-d symbol calculus over iterated Laurent fields");
  milnor->require_subcommand(1);
  milnor->fallthrough();
  {
    CLI::App* cmd = milnor->add_subcommand("wedge", "wedge unit classes");
    cmd->add_option("--d", wo_.d, "modulus");
    cmd->add_option("--classes", wo_.classes, "json list of residue vectors")
        ->required();
    cmd->callback([&] { chosen = [&](reporter& rep) { return run_wedge(wo_, rep); }; });
  }
  {
    CLI::App* cmd =
        milnor->add_subcommand("norm", "push a class down one Kummer layer");
    cmd->add_option("--u", no_.u, "adjoined monomial (json)")->required();
    cmd->add_option("--class", no_.cls, "class over the extension (json)")->required();
    cmd->callback([&] { chosen = [&](reporter& rep) { return run_norm(no_, rep); }; });
  }
  auto wire_ramif = [&](CLI::App* cmd) {
    cmd->add_option("--input", ro_.input, "monic polynomial file (json)")->required();
    cmd->add_option("--d", ro_.d, "prime degree");
    cmd->add_flag("--assume-irreducible", ro_.assume,
                  "trust irreducibility when the slope test cannot settle it");
    cmd->callback([&] { chosen = [&](reporter& rep) { return run_ramif(ro_, rep); }; });
  };
  wire_ramif(milnor->add_subcommand(
      "ramif-check", "certify that the constant term is not a d-th power"));
  wire_ramif(app.add_subcommand("ramif-check", "same as milnor ramif-check"));
  auto wire_witness = [&](CLI::App* cmd) {
    cmd->add_option("--d", wi_.d, "prime modulus");
    cmd->add_option("--m-plus-1", wi_.m_plus_1, "rank of the residue lattice")
        ->required();
    cmd->add_option("--u-classes", wi_.u_classes, "symbol entries (json)")->required();
    cmd->add_option("--c-classes", wi_.c_classes, "coefficient classes (json)")
        ->required();
    cmd->callback(
        [&] { chosen = [&](reporter& rep) { return run_witness(wi_, rep); }; });
  };
  wire_witness(milnor->add_subcommand(
      "witness", "decompose a symbol over the coefficient-pair extensions"));
  wire_witness(app.add_subcommand("witness", "same as milnor witness"));

  // conic family
  std::string co_a, co_b, co_x;
  long co_bound = 0;
  CLI::App* conic_cmd =
      app.add_subcommand("conic", "norm-group membership for z^2 = a x^2 + b y^2");
  conic_cmd->require_subcommand(1);
  conic_cmd->fallthrough();
  auto wire_conic = [&](CLI::App* cmd) {
    cmd->add_option("--a", co_a, "conic coefficient a")->required();
    cmd->add_option("--b", co_b, "conic coefficient b")->required();
    cmd->add_option("--x", co_x, "rational to test")->required();
  };
  {
    CLI::App* cmd = conic_cmd->add_subcommand(
        "decide", "place-by-place membership decision");
    wire_conic(cmd);
    cmd->callback([&] {
      chosen = [&](reporter& rep) {
        return run_conic_decide(parse_rat(co_a), parse_rat(co_b), parse_rat(co_x), rep);
      };
    });
  }
  {
    CLI::App* cmd = conic_cmd->add_subcommand(
        "witness", "search for a verified product-of-norms certificate");
    wire_conic(cmd);
    cmd->add_option("--bound", co_bound, "enumeration cap on |d| (0 = default)");
    cmd->callback([&] {
      chosen = [&](reporter& rep) {
        return run_conic_witness(parse_rat(co_a), parse_rat(co_b), parse_rat(co_x),
                                 co_bound, rep);
      };
    });
  }

  // selftest
  std::string st_scope = "all";
  {
    CLI::App* cmd = app.add_subcommand("selftest", "run the acceptance suite");
    cmd->add_option("scope", st_scope,
                    "all, series, lifting, pointfinder, milnor, localglobal or cli");
    cmd->callback([&] {
      chosen = [&](reporter& rep) { return run_selftest(st_scope, seed, rep); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  reporter rep{format == "json"};
  if (!chosen) {
    std::cerr << app.help();
    return 3;
  }
  try {
    return chosen(rep);
  } catch (const std::exception& e) {
    rep.emit(json{{"record", "error"}, {"what", e.what()}});
    return exit_for(e);
  }
}
