#include "tailspace/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "tailspace/chebyshev.hpp"
#include "tailspace/config.hpp"
#include "tailspace/distance.hpp"
#include "tailspace/errors.hpp"
#include "tailspace/harness.hpp"
#include "tailspace/json_io.hpp"
#include "tailspace/kfunctional.hpp"
#include "tailspace/report.hpp"

namespace tailspace {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_int(const std::string& s) {
  const auto v = parse_int_list(s);
  if (v.size() != 1) throw DomainError("expected one integer, got '" + s + "'");
  return v.front();
}


Json to_json(const KResult& r) {
  return {{"value", r.value},       {"pairing", r.pairing},   {"gap", r.gap},
          {"converged", r.converged}, {"iterations", r.iterations}, {"a0", r.a0},
          {"a1", r.a1},             {"dual", r.dual},         {"dual_slack0", r.dual_slack0},
          {"dual_slack1", r.dual_slack1}};
}

struct DistanceArgs {
  int n = 0;
  std::optional<int> k;
  std::string levels;
  std::string p = "1";
  double tol = 1e-9;
  std::string function;
  bool symmetric = false;
};

int cmd_transform(const std::string& input, const std::string& direction, const std::string& output,
                  std::ostream& out) {
  const auto obj = parse_dense(read_file(input));
  Json result;
  if (std::holds_alternative<BooleanFunction>(obj)) {
    if (direction == "inverse") throw DomainError("inverse transform expects a coeffs document");
    result = to_json(fwht(std::get<BooleanFunction>(obj)));
  } else {
    if (direction == "forward") throw DomainError("forward transform expects a values document");
    result = to_json(inverse_fwht(std::get<Spectrum>(obj)));
  }
  if (output.empty()) {
    out << result.dump(2) << '\n';
  } else {
    std::ofstream f(output);
    if (!f) throw DomainError("cannot write '" + output + "'");
    f << result.dump(2) << '\n';
  }
  return kExitOk;
}

SpectralSet levels_for(const DistanceArgs& a, int n) {
  if (!a.levels.empty()) return SpectralSet::from_levels(n, parse_int_list(a.levels));
  return SpectralSet::above(n, a.k.value_or(1));
}

int cmd_distance(const DistanceArgs& a, std::ostream& out) {
  const double p = parse_exponent(a.p);
  if (!(p >= 1.0)) throw DomainError("p must be at least 1");
  if (!(a.tol > 0.0)) throw DomainError("tol must be positive");
  DistanceOptions opts;
  opts.tol = a.tol;
  DistanceResult res;
  const bool elem = a.function.rfind("elem:", 0) == 0;
  if (elem && (a.symmetric || a.n > capacity())) {
    if (a.n < 1) throw DomainError("elem: needs --n");
    const auto poly = SymmetricPoly::elementary(a.n, parse_int(a.function.substr(5)));
    res = distance_symmetric(poly, levels_for(a, a.n), p, opts);
  } else {
    const auto f = function_from_spec(a.function, a.n);
    res = distance(f, levels_for(a, f.n()), p, opts);
  }
  out << to_json(res).dump(2) << '\n';
  return res.converged ? kExitOk : kExitNonconvergence;
}

int cmd_kfunc(const std::string& weights, double t, const std::string& pair_name, const std::string& q,
              bool minformula, std::ostream& out) {
  const auto a = parse_real_list(weights);
  Json doc;
  if (minformula) {
    doc = {{"minformula", k_minformula(a, t)}, {"argmin", k_minformula_argmin(a, t)}};
  } else {
    InterpolationPair pair = InterpolationPair::l2_linf();
    if (pair_name == "l1_l2") {
      pair = InterpolationPair::l1_l2();
    } else if (pair_name == "l2_lq") {
      pair = InterpolationPair::l2_lq(parse_exponent(q));
    } else if (pair_name != "l2_linf") {
      throw DomainError("unknown pair '" + pair_name + "'");
    }
    const auto r = k_exact({a, t, pair});
    doc = to_json(r);
    doc["pair"] = pair.name();
    doc["t"] = t;
    out << doc.dump(2) << '\n';
    return r.converged ? kExitOk : kExitNonconvergence;
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& id, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto& ids = check_ids();
  if (id != "all" && std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw DomainError("unknown check id '" + id + "'");
  }
  const auto outcome = run_verify(id, cfg);
  for (const auto& r : outcome.reports) {
    out << summary_line(r) << '\n';
    for (const auto& note : r.notes) out << "  note: " << note << '\n';
  }
  for (const auto& e : outcome.estimates) {
    out << "estimate " << e.quantity << " >= " << e.lower_bound << ' ' << e.params.dump() << '\n';
  }
  if (!cfg.output.empty()) err << "wrote " << write_report(cfg, outcome) << '\n';
  if (!outcome.hard_ok()) return kExitCheckFailed;
  if (!outcome.soft_ok()) {
    err << "warning: soft windows violated" << (cfg.strict ? "" : " (not fatal without --strict)") << '\n';
    if (cfg.strict) return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

BooleanFunction function_from_spec(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("function spec needs a kind prefix: '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  auto check_n = [&](int got) {
    if (n > 0 && n != got) throw DomainError("--n " + std::to_string(n) + " does not match the function (n = " +
                                             std::to_string(got) + ")");
  };
  if (kind == "file") {
    const auto obj = parse_dense(read_file(arg));
    BooleanFunction f = std::holds_alternative<BooleanFunction>(obj) ? std::get<BooleanFunction>(obj)
                                                                     : inverse_fwht(std::get<Spectrum>(obj));
    check_n(f.n());
    return f;
  }
  if (kind == "elem") {
    if (n < 1) throw DomainError("elem: needs --n");
    const int l = parse_int(arg);
    if (l < 0 || l > n) throw DomainError("elem level outside [0, n]");
    check_dimension(n);
    return profile_to_dense(sympoly_to_profile(SymmetricPoly::elementary(n, l)));
  }
  if (kind == "rademacher") {
    const auto a = parse_real_list(arg);
    check_n(static_cast<int>(a.size()));
    return rademacher_sum(a);
  }
  if (kind == "random") {
    if (n < 1) throw DomainError("random: needs --n");
    check_dimension(n);
    const auto parts = arg.find(':');
    const auto seed = static_cast<std::uint64_t>(parse_int(arg.substr(0, parts)));
    const int degree = parts == std::string::npos ? n : parse_int(arg.substr(parts + 1));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<double> c(std::size_t{1} << n, 0.0);
    for (std::size_t s = 0; s < c.size(); ++s) {
      if (popcount(static_cast<Mask>(s)) <= degree) c[s] = gauss(rng);
    }
    return inverse_fwht(Spectrum(n, std::move(c)));
  }
  throw DomainError("unknown function kind '" + kind + "'");
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distances from tail spaces on the hypercube"};
  app.require_subcommand(1);
  int n_max = 0;
  app.add_option("--n-max", n_max, "dense capacity (overrides TAILSPACE_NMAX)");

  auto* transform = app.add_subcommand("transform", "Walsh transform of a function/spectrum JSON file");
  std::string t_input, t_direction = "auto", t_output;
  transform->add_option("input", t_input, "input JSON")->required();
  transform->add_option("--direction", t_direction, "forward | inverse | auto")
      ->check(CLI::IsMember({"forward", "inverse", "auto"}));
  transform->add_option("--output,-o", t_output, "output path (stdout when omitted)");

  auto* dist = app.add_subcommand("distance", "distance of a function from P_I");
  DistanceArgs da;
  dist->add_option("--n", da.n, "dimension");
  dist->add_option("--k", da.k, "tail level: g ranges over P_{>k}");
  dist->add_option("--levels", da.levels, "explicit level set I, e.g. 0,2..4");
  dist->add_option("--p", da.p, "exponent in [1, inf]");
  dist->add_option("--tol", da.tol, "duality gap tolerance");
  dist->add_option("--function", da.function, "file:<path> | elem:<l> | rademacher:<w,...> | random:<seed>[:<deg>]")
      ->required();
  dist->add_flag("--symmetric", da.symmetric, "use the level-profile LP (elem only)");

  auto* kfunc = app.add_subcommand("kfunc", "K-functional of a vector");
  std::string k_weights, k_pair = "l2_linf", k_q = "4";
  double k_t = 1.0;
  bool k_min = false;
  kfunc->add_option("--a", k_weights, "comma-separated vector")->required();
  kfunc->add_option("--t", k_t, "t >= 0");
  kfunc->add_option("--pair", k_pair, "l1_l2 | l2_linf | l2_lq");
  kfunc->add_option("--q", k_q, "q for l2_lq");
  kfunc->add_flag("--minformula", k_min, "evaluate the min-formula instead");

  auto* cheb = app.add_subcommand("chebyshev", "Chebyshev coefficient table as CSV");
  int c_kmax = 20;
  std::string c_output;
  cheb->add_option("--k-max", c_kmax, "largest degree");
  cheb->add_option("--output,-o", c_output, "output path (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "run inequality checks");
  std::string v_id, v_config;
  verify->add_option("check", v_id, "figiel | symmetric | corollary | main | dualhit | ole | oledual | bh | dualbh | mom | all")
      ->required();
  verify->add_option("--config", v_config, "key = value config file");
  std::map<std::string, std::string> raw;
  for (const char* key : {"seed", "tol", "jobs", "output", "format", "n", "k", "d", "r", "trials", "budget", "C", "B",
                          "p", "q", "a", "alpha"}) {
    verify->add_option(std::string("--") + key, raw[key]);
  }
  bool v_strict = false, v_timing = false;
  verify->add_flag("--strict", v_strict, "soft-window violations fail the run");
  verify->add_flag("--timing", v_timing, "record runtimes in reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // capacity is process-wide; an embedding caller gets its own value back
  struct CapacityGuard {
    int saved = capacity();
    ~CapacityGuard() { set_capacity(saved); }
  } guard;
  try {
    if (n_max > 0) set_capacity(n_max);
    if (*transform) return cmd_transform(t_input, t_direction, t_output, out);
    if (*dist) return cmd_distance(da, out);
    if (*kfunc) return cmd_kfunc(k_weights, k_t, k_pair, k_q, k_min, out);
    if (*cheb) {
      if (c_kmax < 0) throw DomainError("--k-max must be nonnegative");
      if (c_output.empty()) {
        write_coefficient_csv(out, c_kmax);
      } else {
        std::ofstream f(c_output);
        if (!f) throw DomainError("cannot write '" + c_output + "'");
        write_coefficient_csv(f, c_kmax);
      }
      return kExitOk;
    }
    if (*verify) {
      RunConfig cfg = v_config.empty() ? RunConfig{} : load_config(v_config);
      if (n_max > 0) cfg.n_max = n_max;
      for (const auto& [key, value] : raw) {
        if (verify->count("--" + key) > 0) apply_config_entry(cfg, key, value);
      }
      if (v_strict) cfg.strict = true;
      if (v_timing) cfg.timing = true;
      cfg.validate();
      set_capacity(cfg.n_max);
      return cmd_verify(v_id, cfg, out, err);
    }
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tailspace
