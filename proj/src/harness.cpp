#include "tailspace/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "tailspace/distance.hpp"
#include "tailspace/errors.hpp"
#include "tailspace/kfunctional.hpp"
#include "tailspace/search.hpp"
#include "tailspace/simplex.hpp"

namespace tailspace {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Largest dense L1 tableau the harness sends to the simplex, in doubles.
constexpr std::size_t kHarnessDenseCap = 500'000;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t check_seed(std::uint64_t seed, const std::string& id) { return mix_seed(seed, fnv1a(id)); }

std::uint64_t param_key(int a, int b, int c, int e = 0) {
  return (static_cast<std::uint64_t>(a) << 48) ^ (static_cast<std::uint64_t>(b) << 32) ^
         (static_cast<std::uint64_t>(c) << 16) ^ static_cast<std::uint64_t>(e);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Json exponent_json(double r) { return std::isinf(r) ? Json("inf") : Json(r); }

double exponent_from_json(const Json& j) {
  return j.is_string() ? parse_exponent(j.get<std::string>()) : j.get<double>();
}

// Negative outside the window; log scale when the window is bounded away from 0.
double margin(double v, const Window& w) {
  if (std::isnan(v)) return kInf;
  if (w.lo > 0.0) {
    if (v <= 0.0) return -kInf;
    return std::min(std::log(v / w.lo), std::log(w.hi / v));
  }
  return std::min(v - w.lo, w.hi - v);
}

CheckReport blank(const std::string& id, Window w, bool hard) {
  CheckReport r;
  r.check_id = id;
  r.window = w;
  r.hard = hard;
  r.worst_ratio = r.min_ratio = r.max_ratio = kNaN;
  r.params = Json::object();
  r.witness = nullptr;
  return r;
}

void record(CheckReport& rep, SweepRow row, const Json& witness) {
  row.check_id = rep.check_id;
  row.instance = rep.instances++;
  if (row.status == "skipped") {
    ++rep.skipped;
  } else {
    const double v = row.ratio;
    if (std::isnan(rep.min_ratio) || v < rep.min_ratio) rep.min_ratio = v;
    if (std::isnan(rep.max_ratio) || v > rep.max_ratio) rep.max_ratio = v;
    if (std::isnan(rep.worst_ratio) || margin(v, rep.window) < margin(rep.worst_ratio, rep.window)) {
      rep.worst_ratio = v;
      rep.witness = witness;
    }
  }
  rep.rows.push_back(std::move(row));
}

// Both sides negligible relative to the function: nothing to compare.
bool negligible(double lhs, double rhs, double f2) {
  return std::max(std::abs(lhs), std::abs(rhs)) <= 1e-12 * f2;
}

DistanceOptions options(const RunConfig& cfg) {
  DistanceOptions o;
  o.tol = cfg.tol;
  return o;
}

// Distance from P_{>k}; for k >= n that space is {0}.
DistanceResult tail_distance(const BooleanFunction& f, int k, double p, const DistanceOptions& opts) {
  if (k >= f.n()) {
    DistanceResult r;
    r.value = r.lower = norm(f, p);
    r.p = p;
    r.method = "trivial";
    return r;
  }
  return distance(f, SpectralSet::above(f.n(), k), p, opts);
}

bool dense_fits(int n, int k) {
  if (n > capacity()) return false;
  std::size_t rows = 0;
  for (int l = 0; l <= k; ++l) rows += static_cast<std::size_t>(binomial(n, l));
  return simplex_footprint(rows, std::size_t{2} << n) <= kHarnessDenseCap;
}

std::vector<double> synthesize(int n, const std::vector<Mask>& masks, std::span<const double> x, int only_level = -1,
                               int max_level = -1) {
  std::vector<double> c(std::size_t{1} << n, 0.0);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const int l = popcount(masks[i]);
    if ((only_level < 0 || l == only_level) && (max_level < 0 || l <= max_level)) c[masks[i]] = x[i];
  }
  detail::walsh_hadamard(c);
  return c;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Spectrum spectrum_of(int n, const std::vector<Mask>& masks, std::span<const double> x) {
  std::vector<double> c(std::size_t{1} << n, 0.0);
  for (std::size_t i = 0; i < masks.size(); ++i) c[masks[i]] = x[i];
  return Spectrum(n, std::move(c));
}

std::vector<double> restrict_to(const Spectrum& s, const std::vector<Mask>& masks) {
  std::vector<double> out(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) out[i] = s[masks[i]];
  return out;
}

std::vector<double> sorted_weights(std::vector<double> a) {
  for (double& v : a) v = std::abs(v);
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

double bh_ratio(const Spectrum& s, int d) {
  const auto masks = SpectralSet::at_most(s.n(), d).masks();
  const auto x = restrict_to(s, masks);
  const double e = 2.0 * d / (d + 1.0);
  const double num = lp_norm(x, e);
  const double den = norm(inverse_fwht(s), kInf);
  return den > 0.0 ? num / den : 0.0;
}

double dual_bh_exponent(int d) { return d == 1 ? kInf : 2.0 * d / (d - 1.0); }

double dual_bh_implied(const Spectrum& s, int d, const DistanceOptions& opts) {
  const auto low = restrict_to(s, SpectralSet::at_most(s.n(), d).masks());
  const double nrm = lp_norm(low, dual_bh_exponent(d));
  if (nrm <= 0.0) return 0.0;
  return tail_distance(inverse_fwht(s), d, 1.0, opts).value / nrm;
}

double mom_primal_ratio(const Spectrum& s, double p, double q) {
  const auto f = inverse_fwht(s);
  const double np = norm(f, p);
  return np > 0.0 ? norm(f, q) / np : -kInf;
}

double mom_dual_ratio(const Spectrum& s, double p, double q, int k, const DistanceOptions& opts) {
  const auto f = inverse_fwht(s);
  const double den = tail_distance(f, k, conjugate_exponent(q), opts).value;
  if (!(den > 1e-300)) return -kInf;
  return tail_distance(f, k, conjugate_exponent(p), opts).value / den;
}

double eps_replay(int d, int k, int n, const std::vector<double>& h) {
  long double pair = 0.0L;
  for (int m = 0; m <= n; ++m) {
    pair += static_cast<long double>(level_weight(n, m)) * elem_sym_value(n, d, m).value * h[static_cast<std::size_t>(m)];
  }
  return std::abs(static_cast<double>(tilde_c(k, d))) - static_cast<double>(pair);
}

}  // namespace

// ---- replay -------------------------------------------------------------------

double replay(const ConstantEstimate& est) {
  const Json& w = est.witness;
  const std::string kind = w.at("kind").get<std::string>();
  DistanceOptions opts;
  if (w.contains("tol")) opts.tol = w.at("tol").get<double>();
  if (kind == "bh") return bh_ratio(spectrum_from_json(w.at("spectrum")), w.at("d").get<int>());
  if (kind == "dual_bh") return dual_bh_implied(spectrum_from_json(w.at("spectrum")), w.at("d").get<int>(), opts);
  if (kind == "mom_primal") {
    return mom_primal_ratio(spectrum_from_json(w.at("spectrum")), exponent_from_json(w.at("p")),
                            exponent_from_json(w.at("q")));
  }
  if (kind == "mom_dual") {
    return mom_dual_ratio(spectrum_from_json(w.at("spectrum")), exponent_from_json(w.at("p")),
                          exponent_from_json(w.at("q")), w.at("k").get<int>(), opts);
  }
  if (kind == "eps") {
    return eps_replay(w.at("d").get<int>(), w.at("k").get<int>(), w.at("n").get<int>(),
                      w.at("h").get<std::vector<double>>());
  }
  throw DomainError("unknown witness kind '" + kind + "'");
}

// ---- instance generation ----------------------------------------------------

HarnessRng instance_rng(std::uint64_t seed, const std::string& check_id, std::uint64_t index) {
  return HarnessRng(mix_seed(check_seed(seed, check_id), index));
}

std::vector<double> weight_family(const std::string& family, int n, HarnessRng& rng) {
  if (n < 1) throw DomainError("weight family needs n >= 1");
  std::vector<double> a(static_cast<std::size_t>(n));
  if (family == "flat") {
    std::fill(a.begin(), a.end(), 1.0);
  } else if (family == "geometric") {
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = std::ldexp(1.0, -i);
  } else if (family == "spike") {
    std::fill(a.begin(), a.end(), 1.0 / n);
    a[0] = 1.0;
  } else if (family == "random") {
    std::normal_distribution<double> gauss;
    for (double& v : a) v = std::abs(gauss(rng));
  } else {
    throw DomainError("unknown weight family '" + family + "'");
  }
  return sorted_weights(std::move(a));
}

BooleanFunction rademacher_sum(const std::vector<double>& a, double constant) {
  const int n = static_cast<int>(a.size());
  return BooleanFunction::generate(n, [&](Mask x) {
    double v = constant;
    for (int i = 0; i < n; ++i) v += (x >> i & 1U) ? -a[static_cast<std::size_t>(i)] : a[static_cast<std::size_t>(i)];
    return v;
  });
}

Spectrum random_instance(int n, int max_level, HarnessRng& rng) {
  check_dimension(n);
  max_level = std::clamp(max_level, 0, n);
  std::vector<double> c(std::size_t{1} << n, 0.0);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  auto sign = [&] { return unit(rng) < 0.5 ? -1.0 : 1.0; };
  const double u = max_level == 0 ? 0.0 : unit(rng);
  if (u < 0.6) {
    for (std::size_t s = 0; s < c.size(); ++s) {
      if (popcount(static_cast<Mask>(s)) <= max_level) c[s] = gauss(rng);
    }
  } else if (u < 0.9) {
    const char* family = u < 0.7 ? "flat" : (u < 0.8 ? "geometric" : "spike");
    const auto a = weight_family(family, n, rng);
    for (int i = 0; i < n; ++i) c[std::size_t{1} << i] = a[static_cast<std::size_t>(i)] * sign();
  } else {
    std::uniform_int_distribution<int> level(0, max_level);
    const int l = level(rng);
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    Mask s = 0;
    for (int i = 0; i < l; ++i) s |= Mask{1} << idx[static_cast<std::size_t>(i)];
    c[s] = sign();
  }
  return Spectrum(n, std::move(c));
}

// ---- report plumbing ------------------------------------------------------------

void finalize(CheckReport& rep) {
  if (rep.instances - rep.skipped <= 0) {
    rep.verdict = Verdict::Pass;
    return;
  }
  rep.worst_ratio = margin(rep.min_ratio, rep.window) <= margin(rep.max_ratio, rep.window) ? rep.min_ratio : rep.max_ratio;
  const bool inside = rep.window.contains(rep.min_ratio) && rep.window.contains(rep.max_ratio);
  rep.verdict = inside ? Verdict::Pass : Verdict::Fail;
}

CheckReport merge_reports(const std::string& check_id, const std::vector<CheckReport>& parts) {
  CheckReport out = blank(check_id, parts.empty() ? Window{} : parts.front().window,
                          parts.empty() ? true : parts.front().hard);
  Json params = Json::array();
  for (const auto& p : parts) {
    params.push_back(p.params);
    for (auto row : p.rows) {
      row.check_id = check_id;
      row.instance = out.instances + row.instance;
      out.rows.push_back(std::move(row));
    }
    out.instances += p.instances;
    out.skipped += p.skipped;
    out.runtime += p.runtime;
    for (const auto& note : p.notes) out.notes.push_back(note);
    if (p.instances - p.skipped <= 0) continue;
    if (std::isnan(out.min_ratio) || p.min_ratio < out.min_ratio) out.min_ratio = p.min_ratio;
    if (std::isnan(out.max_ratio) || p.max_ratio > out.max_ratio) out.max_ratio = p.max_ratio;
    if (std::isnan(out.worst_ratio) || margin(p.worst_ratio, out.window) < margin(out.worst_ratio, out.window)) {
      out.worst_ratio = p.worst_ratio;
      out.witness = p.witness;
    }
  }
  out.params = {{"parts", params}};
  finalize(out);
  return out;
}

bool VerifyOutcome::hard_ok() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return !r.hard || r.verdict == Verdict::Pass; });
}

bool VerifyOutcome::soft_ok() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.hard || r.verdict == Verdict::Pass; });
}

// ---- Figiel -------------------------------------------------------------------

CheckReport check_figiel(int k, int d, int n, long budget, const RunConfig& cfg) {
  if (!(n >= k && k >= d && d >= 0)) throw DomainError("figiel needs n >= k >= d >= 0");
  check_dimension(n);
  Stopwatch clock;
  CheckReport rep = blank("figiel", Window{0.0, 1.0 + 1e-9}, true);
  rep.params = {{"k", k}, {"d", d}, {"n", n}, {"budget", budget}};
  const auto masks = SpectralSet::at_most(n, k).masks();

  std::vector<std::vector<double>> seeds;
  seeds.push_back(restrict_to(fwht(profile_to_dense(build_H(k, n))), masks));
  for (int l = 0; l <= k; ++l) {
    std::vector<double> x(masks.size(), 0.0);
    for (std::size_t i = 0; i < masks.size(); ++i) x[i] = popcount(masks[i]) == l ? 1.0 : 0.0;
    seeds.push_back(std::move(x));
  }

  std::vector<std::vector<double>> found;
  for (int l = 0; l <= d; ++l) {
    const double bound = std::abs(static_cast<double>(tilde_c(k, l)));
    const Objective objective = [&, l](std::span<const double> x) {
      const double whole = max_abs(synthesize(n, masks, x));
      if (!(whole > 1e-300)) return -kInf;
      return max_abs(synthesize(n, masks, x, l)) / whole;
    };
    SearchOptions so;
    so.budget = budget;
    so.seed = mix_seed(check_seed(cfg.seed, "figiel"), param_key(k, l, n));
    const auto res = maximize(masks.size(), objective, seeds, so);
    SweepRow row{.n = n, .k = k, .d = l, .lhs = res.best, .rhs = bound, .ratio = res.best / bound, .status = "ok",
                 .label = "level"};
    record(rep, row,
           {{"k", k}, {"l", l}, {"n", n}, {"ratio", res.best}, {"spectrum", to_json(spectrum_of(n, masks, res.point))}});
    found.push_back(res.point);
  }

  // Summed form on every witness found above.
  for (const auto& x : found) {
    const double le = max_abs(synthesize(n, masks, x, -1, d));
    double sum = 0.0;
    for (int l = 0; l <= d; ++l) sum += max_abs(synthesize(n, masks, x, l));
    if (!(sum > 0.0)) continue;
    SweepRow row{.n = n, .k = k, .d = d, .lhs = le, .rhs = sum, .ratio = le / sum, .status = "ok", .label = "summed"};
    record(rep, row, {{"k", k}, {"d", d}, {"n", n}, {"spectrum", to_json(spectrum_of(n, masks, x))}});
  }
  rep.runtime = clock.seconds();
  finalize(rep);
  return rep;
}

// ---- symmetric --------------------------------------------------------------------

CheckReport check_symmetric(const SymmetricPoly& alpha, int k, bool dense, const RunConfig& cfg) {
  const int n = alpha.n();
  if (alpha.degree() > k || k > n || k < 0) throw DomainError("symmetric check needs degree(alpha) <= k <= n");
  Stopwatch clock;
  CheckReport rep = blank("symmetric", Window{0.0, 1.0 + 1e-8}, true);
  const double rhs = symmetric_bound(alpha, k);
  const SymmetricProfile profile = sympoly_to_profile(alpha);
  const double f2 = profile.norm(2.0);

  double lhs = 0.0;
  std::string path;
  bool converged = true;
  if (k >= n) {
    lhs = profile.norm(1.0);
    path = "trivial";
  } else {
    const bool fits = dense_fits(n, k);
    if (dense && !fits) rep.notes.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                            ": dense LP too large, used the symmetric LP");
    const auto res = dense && fits
                         ? distance(profile_to_dense(profile), SpectralSet::above(n, k), 1.0, options(cfg))
                         : distance_symmetric(alpha, SpectralSet::above(n, k), 1.0, options(cfg));
    lhs = res.value;
    converged = res.converged;
    path = (dense && fits ? "dense/" : "symmetric/") + res.method;
    if (!converged) rep.notes.push_back("n=" + std::to_string(n) + ": solver gap " + fmt(res.gap));
  }
  rep.params = {{"n", n}, {"k", k}, {"alpha", alpha.alpha()}, {"path", path}};
  SweepRow row{.n = n, .k = k, .d = alpha.degree(), .lhs = lhs, .rhs = rhs, .status = "ok", .label = path};
  if (negligible(lhs, rhs, f2)) {
    row.status = "skipped";
  } else {
    // rhs = 0 with lhs > 0 is a violation: report an infinite ratio.
    row.ratio = rhs > 0.0 ? lhs / rhs : kInf;
  }
  record(rep, row, {{"n", n}, {"k", k}, {"alpha", alpha.alpha()}, {"lhs", lhs}, {"rhs", rhs}, {"path", path}});
  rep.runtime = clock.seconds();
  finalize(rep);
  return rep;
}

CheckReport check_symmetric_sweep(long trials, const RunConfig& cfg) {
  Stopwatch clock;
  auto parts = parallel_map<CheckReport>(static_cast<std::size_t>(trials), cfg.jobs, [&](std::size_t i) {
    auto rng = instance_rng(cfg.seed, "symmetric", i);
    auto pick = [&](const std::vector<int>& list, int lo, int hi) {
      std::vector<int> allowed;
      for (int v : list) {
        if (v >= lo && v <= hi) allowed.push_back(v);
      }
      if (list.empty()) return std::uniform_int_distribution<int>(lo, hi)(rng);
      if (allowed.empty()) throw DomainError("no admissible value in sweep list");
      return allowed[std::uniform_int_distribution<std::size_t>(0, allowed.size() - 1)(rng)];
    };
    const bool dense = i % 2 == 0;
    const int d = pick(cfg.d, 0, 4);
    const int k = pick(cfg.k, std::max(d, 1), 6);
    int n = pick(cfg.n, k + 1, dense ? std::min(12, capacity()) : 200);
    // Dense draws shrink until the full-cube LP fits the harness budget.
    while (dense && cfg.n.empty() && n > k + 1 && !dense_fits(n, k)) --n;
    std::normal_distribution<double> gauss;
    std::vector<double> alpha(static_cast<std::size_t>(d) + 1);
    for (double& v : alpha) v = gauss(rng);
    return check_symmetric(SymmetricPoly(n, alpha), k, dense, cfg);
  });
  CheckReport rep = merge_reports("symmetric", parts);
  rep.params = {{"trials", trials}, {"seed", cfg.seed}};
  rep.runtime = clock.seconds();
  return rep;
}

// ---- corollary --------------------------------------------------------------------

ConstantEstimate measure_epsilon(int d, int k, int n, const RunConfig& cfg) {
  if (!(n > k && k >= d && d >= 0)) throw DomainError("epsilon needs n > k >= d >= 0");
  const auto res = distance_symmetric(SymmetricPoly::elementary(n, d), SpectralSet::above(n, k), 1.0, options(cfg));
  const double ct = std::abs(static_cast<double>(tilde_c(k, d)));
  ConstantEstimate est;
  est.quantity = "eps_n_k_d";
  est.lower_bound = ct - res.lower;
  est.params = {{"d", d}, {"k", k}, {"n", n}, {"distance", res.value}, {"lower", res.lower}, {"tilde_c", ct},
                {"gap", res.gap}};
  est.witness = {{"kind", "eps"}, {"d", d}, {"k", k}, {"n", n}, {"h", res.dual_h_profile->levels()}};
  if (!res.converged) est.notes.push_back("solver gap " + fmt(res.gap));
  return est;
}

CheckReport check_corollary(int d, int k, const std::vector<int>& ns, const RunConfig& cfg,
                            std::vector<ConstantEstimate>* estimates) {
  Stopwatch clock;
  const double ct = std::abs(static_cast<double>(tilde_c(k, d)));
  CheckReport rep = blank("corollary", Window{-1e-8, ct + 1e-8}, true);
  std::vector<int> sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> usable;
  for (int n : sorted) {
    if (n > k) {
      usable.push_back(n);
    } else {
      rep.notes.push_back("n=" + std::to_string(n) + " skipped: tail above k is empty");
    }
  }
  const auto ests = parallel_map<ConstantEstimate>(usable.size(), cfg.jobs,
                                                   [&](std::size_t i) { return measure_epsilon(d, k, usable[i], cfg); });
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ests.size(); ++i) {
    const int n = usable[i];
    const double eps = ests[i].lower_bound;
    SweepRow row{.n = n, .k = k, .d = d, .lhs = ests[i].params["lower"].get<double>(), .rhs = ct, .ratio = eps,
                 .status = "ok", .label = "eps"};
    record(rep, row, ests[i].witness);
    num += eps / n;
    den += 1.0 / (static_cast<double>(n) * n);
    if (i > 0 && eps > ests[i - 1].lower_bound + 1e-8) {
      rep.notes.push_back("eps not monotone: n=" + std::to_string(usable[i - 1]) + " -> " + std::to_string(n) + " (" +
                          fmt(ests[i - 1].lower_bound) + " -> " + fmt(eps) + ")");
    }
    for (const auto& note : ests[i].notes) rep.notes.push_back("n=" + std::to_string(n) + ": " + note);
  }
  const double fit = den > 0.0 ? num / den : 0.0;
  rep.params = {{"d", d}, {"k", k}, {"n", usable}, {"tilde_c", ct}, {"fit_C_over_n", fit}};
  if (!usable.empty()) rep.notes.push_back("least-squares fit eps ~ C/n with C = " + fmt(fit));
  if (estimates) estimates->insert(estimates->end(), ests.begin(), ests.end());
  rep.runtime = clock.seconds();
  finalize(rep);
  return rep;
}

// ---- main theorem probe -----------------------------------------------------------

namespace {

struct MainPair {
  CheckReport probe;
  CheckReport routing;
};

MainPair main_instance(int d, int k, int n, std::uint64_t index, double C, const RunConfig& cfg) {
  if (!(n >= k && k >= d && d >= 1)) throw DomainError("main check needs n >= k >= d >= 1");
  Stopwatch clock;
  MainPair out{blank("main", cfg.window_for("main", Window{0.0, C}), false),
               blank("main.routing", Window{0.0, 1e-7}, true)};
  auto rng = instance_rng(cfg.seed, "main", mix_seed(param_key(d, k, n), index));
  const Spectrum spec = random_instance(n, d, rng);
  const BooleanFunction f = inverse_fwht(spec);
  const auto low = restrict_to(spec, SpectralSet::at_most(n, d).masks());
  const double t = std::pow(static_cast<double>(k), d);
  const auto dist = tail_distance(f, k, 1.0, options(cfg));
  const auto K = k_exact({low, t, InterpolationPair::bohnenblust_hille_dual(d)}, 1e-7);
  const Json witness = {{"d", d}, {"k", k}, {"n", n}, {"spectrum", to_json(spec)}, {"distance", dist.value},
                        {"K", K.value}};
  SweepRow row{.n = n, .k = k, .d = d, .lhs = dist.value, .rhs = K.value, .status = "ok", .label = "ratio"};
  if (!K.converged) {
    row.status = "skipped";
    out.probe.notes.push_back("instance " + std::to_string(index) + ": K solve did not converge, excluded");
  } else if (negligible(dist.value, K.value, norm(f, 2.0))) {
    row.status = "skipped";
  } else {
    row.ratio = dist.value / K.value;
  }
  if (!dist.converged) out.probe.notes.push_back("instance " + std::to_string(index) + ": distance gap " + fmt(dist.gap));
  record(out.probe, row, witness);

  if (d == 1) {
    // Same instance through the direct Rademacher-sum path and the (l2, l_inf) pair.
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = spec[Mask{1} << i];
    const auto dist2 = tail_distance(rademacher_sum(a, spec[0]), k, 1.0, options(cfg));
    std::vector<double> v{spec[0]};
    v.insert(v.end(), a.begin(), a.end());
    const auto K2 = k_exact({v, static_cast<double>(k), InterpolationPair::l2_linf()});
    const double scale = std::max({1.0, dist.value, K.value});
    const double diff = std::max(std::abs(dist.value - dist2.value), std::abs(K.value - K2.value)) / scale;
    SweepRow r2{.n = n, .k = k, .d = d, .lhs = dist2.value, .rhs = K2.value, .ratio = diff, .status = "ok",
                .label = "routing"};
    record(out.routing, r2, witness);
  }
  out.probe.runtime = out.routing.runtime = clock.seconds();
  finalize(out.probe);
  finalize(out.routing);
  return out;
}

std::vector<CheckReport> merge_main(const std::vector<MainPair>& pairs, Window window) {
  std::vector<CheckReport> probes, routes;
  bool any_routing = false;
  for (const auto& p : pairs) {
    probes.push_back(p.probe);
    routes.push_back(p.routing);
    any_routing = any_routing || p.routing.instances > 0;
  }
  std::vector<CheckReport> out{merge_reports("main", probes)};
  out[0].window = window;
  finalize(out[0]);
  if (out[0].verdict == Verdict::Fail) {
    out[0].notes.push_back("finding: ratio " + fmt(out[0].max_ratio) + " exceeds C = " + fmt(window.hi) +
                           "; witness stored");
  }
  if (any_routing) out.push_back(merge_reports("main.routing", routes));
  return out;
}

}  // namespace

std::vector<CheckReport> check_thm_main(int d, int k, int n, long trials, double C, const RunConfig& cfg) {
  if (!(C > 0.0)) throw DomainError("C must be positive");
  Stopwatch clock;
  const auto pairs = parallel_map<MainPair>(static_cast<std::size_t>(trials), cfg.jobs,
                                            [&](std::size_t i) { return main_instance(d, k, n, i, C, cfg); });
  auto out = merge_main(pairs, cfg.window_for("main", Window{0.0, C}));
  for (auto& r : out) {
    r.params = {{"d", d}, {"k", k}, {"n", n}, {"trials", trials}, {"C", C}};
    r.runtime = clock.seconds();
  }
  return out;
}

// ---- dual Hitczenko -------------------------------------------------------------------

namespace {

CheckReport dual_hit_instance(int n, std::uint64_t index, const std::vector<double>& r_grid, const RunConfig& cfg) {
  if (n < 2) throw DomainError("dual Hitczenko check needs n >= 2");
  Stopwatch clock;
  CheckReport rep = blank("dualhit", cfg.window_for("dualhit"), false);
  auto rng = instance_rng(cfg.seed, "dualhit", mix_seed(param_key(n, 0, 0), index));
  const Spectrum spec = random_instance(n, n, rng);
  const BooleanFunction f = inverse_fwht(spec);
  const double f2 = norm(f, 2.0);
  for (double r : r_grid) {
    if (!(r > 1.0)) throw DomainError("r must lie in (1, inf]");
    const auto dist = distance(f, SpectralSet::above(n, 1), r, options(cfg));
    const double rhs = thm12_rhs(spec, r);
    SweepRow row{.n = n, .k = 1, .r = r, .lhs = dist.value, .rhs = rhs, .status = "ok", .label = dist.method};
    if (negligible(dist.value, rhs, f2)) {
      row.status = "skipped";
    } else {
      row.ratio = rhs > 0.0 ? dist.value / rhs : kInf;
    }
    if (!dist.converged) rep.notes.push_back("instance " + std::to_string(index) + " r=" + fmt(r) + ": gap " + fmt(dist.gap));
    record(rep, row, {{"n", n}, {"r", exponent_json(r)}, {"spectrum", to_json(spec)}, {"lhs", dist.value}, {"rhs", rhs}});
  }
  rep.runtime = clock.seconds();
  finalize(rep);
  return rep;
}

}  // namespace

CheckReport check_thm_dual_hit(int n, long trials, const std::vector<double>& r_grid, const RunConfig& cfg) {
  Stopwatch clock;
  const auto parts = parallel_map<CheckReport>(static_cast<std::size_t>(trials), cfg.jobs,
                                               [&](std::size_t i) { return dual_hit_instance(n, i, r_grid, cfg); });
  CheckReport rep = merge_reports("dualhit", parts);
  Json rs = Json::array();
  for (double r : r_grid) rs.push_back(exponent_json(r));
  rep.params = {{"n", n}, {"trials", trials}, {"r", rs}};
  rep.notes.push_back("empirical window [" + fmt(rep.min_ratio) + ", " + fmt(rep.max_ratio) + "]");
  rep.runtime = clock.seconds();
  return rep;
}

// ---- Rademacher sums ------------------------------------------------------------------

CheckReport check_ole(std::vector<double> a, int k, const RunConfig& cfg) {
  if (a.empty() || k < 0) throw DomainError("ole check needs nonempty weights and k >= 0");
  Stopwatch clock;
  a = sorted_weights(std::move(a));
  const int n = static_cast<int>(a.size());
  CheckReport rep = blank("ole", cfg.window_for("ole"), false);
  const auto f = rademacher_sum(a);
  const auto dist = tail_distance(f, k, 1.0, options(cfg));
  const double rhs = k_minformula(a, k);
  SweepRow row{.n = n, .k = k, .lhs = dist.value, .rhs = rhs, .status = "ok", .label = dist.method};
  if (negligible(dist.value, rhs, norm(f, 2.0))) {
    row.status = "skipped";
  } else {
    row.ratio = rhs > 0.0 ? dist.value / rhs : kInf;
  }
  if (!dist.converged) rep.notes.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": gap " + fmt(dist.gap));
  rep.params = {{"n", n}, {"k", k}, {"a", a}};
  record(rep, row, {{"k", k}, {"a", a}, {"lhs", dist.value}, {"rhs", rhs}});
  rep.runtime = clock.seconds();
  finalize(rep);
  return rep;
}

CheckReport check_ole_dual_remark(std::vector<double> a, int k, const RunConfig& cfg) {
  if (a.empty() || k < 1) throw DomainError("ole dual check needs nonempty weights and k >= 1");
  Stopwatch clock;
  a = sorted_weights(std::move(a));
  const int n = static_cast<int>(a.size());
  CheckReport rep = blank("oledual", cfg.window_for("oledual"), false);
  std::vector<int> levels{0};
  for (int l = 2; l <= std::min(k, n); ++l) levels.push_back(l);
  const auto f = rademacher_sum(a);
  const auto dist = distance(f, SpectralSet::from_levels(n, levels), kInf, options(cfg));
  const double rhs = std::max(lp_norm(a, 2.0), lp_norm(a, 1.0) / k);
  SweepRow row{.n = n, .k = k, .r = kInf, .lhs = dist.value, .rhs = rhs, .status = "ok", .label = dist.method};
  if (negligible(dist.value, rhs, norm(f, 2.0))) {
    row.status = "skipped";
  } else {
    row.ratio = rhs > 0.0 ? dist.value / rhs : kInf;
  }
  if (!dist.converged) rep.notes.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": gap " + fmt(dist.gap));
  rep.params = {{"n", n}, {"k", k}, {"a", a}};
  record(rep, row, {{"k", k}, {"a", a}, {"lhs", dist.value}, {"rhs", rhs}});
  rep.runtime = clock.seconds();
  finalize(rep);
  return rep;
}

// ---- Bohnenblust-Hille ----------------------------------------------------------------

ConstantEstimate bh_search(int d, int n, long budget, const RunConfig& cfg) {
  if (!(n >= d && d >= 1)) throw DomainError("bh search needs n >= d >= 1");
  check_dimension(n);
  const auto masks = SpectralSet::at_most(n, d).masks();
  const double e = 2.0 * d / (d + 1.0);
  const Objective objective = [&](std::span<const double> x) {
    const double den = max_abs(synthesize(n, masks, x));
    if (!(den > 1e-300)) return -kInf;
    return lp_norm(x, e) / den;
  };
  std::vector<std::vector<double>> seeds;
  {
    std::vector<double> unit(masks.size(), 0.0);
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (popcount(masks[i]) == d) {
        unit[i] = 1.0;
        break;
      }
    }
    seeds.push_back(unit);
    std::vector<double> elem(masks.size(), 0.0);
    for (std::size_t i = 0; i < masks.size(); ++i) elem[i] = popcount(masks[i]) == d ? 1.0 : 0.0;
    seeds.push_back(elem);
  }
  SearchOptions so;
  so.budget = budget;
  so.seed = mix_seed(check_seed(cfg.seed, "bh"), param_key(d, n, 0));
  const auto res = maximize(masks.size(), objective, seeds, so);
  const Spectrum witness = spectrum_of(n, masks, res.point);
  ConstantEstimate est;
  est.quantity = "B_d";
  est.lower_bound = bh_ratio(witness, d);
  est.params = {{"d", d}, {"n", n}, {"budget", budget}, {"evaluations", res.evaluations}, {"source", "primal search"}};
  est.witness = {{"kind", "bh"}, {"d", d}, {"spectrum", to_json(witness)}};
  return est;
}

CheckReport check_bh(int d, int n, long budget, const RunConfig& cfg, ConstantEstimate* estimate) {
  Stopwatch clock;
  CheckReport rep = blank("bh", Window{1.0 - 1e-9, kInf}, true);
  const ConstantEstimate est = bh_search(d, n, budget, cfg);
  const double character = bh_ratio(Spectrum::unit(n, (Mask{1} << d) - 1), d);
  record(rep, {.n = n, .d = d, .lhs = est.lower_bound, .rhs = 1.0, .ratio = est.lower_bound, .status = "ok",
               .label = "search"},
         est.witness);
  record(rep, {.n = n, .d = d, .lhs = character, .rhs = 1.0, .ratio = character, .status = "ok", .label = "character"},
         {{"kind", "bh"}, {"d", d}, {"spectrum", to_json(Spectrum::unit(n, (Mask{1} << d) - 1))}});
  rep.params = {{"d", d}, {"n", n}, {"budget", budget}};
  rep.notes.push_back("B_" + std::to_string(d) + " >= " + fmt(est.lower_bound));
  if (estimate) *estimate = est;
  rep.runtime = clock.seconds();
  finalize(rep);
  return rep;
}

CheckReport check_dual_bh(int d, int n, long trials, double B, const RunConfig& cfg, ConstantEstimate* raised) {
  if (!(n >= d && d >= 1)) throw DomainError("dual bh check needs n >= d >= 1");
  if (!(B >= 1.0)) throw DomainError("B must be at least 1, the single-character lower bound");
  Stopwatch clock;
  const auto opts = options(cfg);
  struct Item {
    CheckReport rep;
    double implied = 0.0;
    Json spectrum;
  };
  const auto items = parallel_map<Item>(static_cast<std::size_t>(trials), cfg.jobs, [&](std::size_t i) {
    Item it{blank("dualbh", cfg.window_for("dualbh", Window{0.0, 1.0}), false), 0.0, nullptr};
    auto rng = instance_rng(cfg.seed, "dualbh", mix_seed(param_key(d, n, 0), i));
    const Spectrum spec = random_instance(n, n, rng);
    const auto f = inverse_fwht(spec);
    const auto low = restrict_to(spec, SpectralSet::at_most(n, d).masks());
    const double lhs = tail_distance(f, d, 1.0, opts).value;
    const double nrm = lp_norm(low, dual_bh_exponent(d));
    SweepRow row{.n = n, .k = d, .d = d, .lhs = lhs, .rhs = B * nrm, .status = "ok", .label = "implied/B"};
    if (negligible(lhs, B * nrm, norm(f, 2.0))) {
      row.status = "skipped";
    } else {
      it.implied = nrm > 0.0 ? lhs / nrm : kInf;
      row.ratio = it.implied / B;
    }
    it.spectrum = to_json(spec);
    record(it.rep, row, {{"d", d}, {"n", n}, {"B", B}, {"spectrum", it.spectrum}});
    finalize(it.rep);
    return it;
  });
  std::vector<CheckReport> parts;
  std::size_t best = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    parts.push_back(items[i].rep);
    if (items[i].implied > items[best].implied) best = i;
  }
  CheckReport rep = merge_reports("dualbh", parts);
  rep.params = {{"d", d}, {"n", n}, {"trials", trials}, {"B", B}};
  if (!items.empty()) {
    const double implied = items[best].implied;
    if (implied > B) {
      rep.notes.push_back("B = " + fmt(B) + " is below B_" + std::to_string(d) + ": witness certifies B_" +
                          std::to_string(d) + " >= " + fmt(implied));
    }
    if (raised) {
      raised->quantity = "B_d";
      raised->lower_bound = implied;
      raised->params = {{"d", d}, {"n", n}, {"trials", trials}, {"source", "dual distance"}};
      raised->witness = {{"kind", "dual_bh"}, {"d", d}, {"tol", cfg.tol}, {"spectrum", items[best].spectrum}};
    }
  }
  rep.runtime = clock.seconds();
  return rep;
}

// ---- moment comparison ------------------------------------------------------------------

MomEstimate estimate_mom_constant(double p, double q, int k, int n, long budget, const RunConfig& cfg) {
  if (!(p >= 1.0 && p <= q && std::isfinite(q))) throw DomainError("mom estimate needs 1 <= p <= q < inf");
  if (!(n >= k && k >= 0)) throw DomainError("mom estimate needs n >= k >= 0");
  check_dimension(n);
  Stopwatch clock;
  const auto masks = SpectralSet::at_most(n, k).masks();
  const auto opts = options(cfg);

  std::vector<std::vector<double>> seeds;
  for (double c : {0.0, 0.5, 1.0, 1.5}) {
    std::vector<double> x(masks.size(), 0.0);
    for (std::size_t i = 0; i < masks.size(); ++i) {
      const int l = popcount(masks[i]);
      x[i] = l == 0 ? c : (l == 1 ? 1.0 : 0.0);
    }
    if (k == 0) x[0] = 1.0;
    seeds.push_back(std::move(x));
  }

  const Objective primal_obj = [&](std::span<const double> x) {
    return mom_primal_ratio(spectrum_of(n, masks, x), p, q);
  };
  const Objective dual_obj = [&](std::span<const double> x) {
    return mom_dual_ratio(spectrum_of(n, masks, x), p, q, k, opts);
  };
  SearchOptions so;
  so.budget = budget;
  so.seed = mix_seed(check_seed(cfg.seed, "mom"), param_key(k, n, 0));
  const auto pr = maximize(masks.size(), primal_obj, seeds, so);
  so.seed = mix_seed(check_seed(cfg.seed, "mom"), param_key(k, n, 1));
  const auto du = maximize(masks.size(), dual_obj, seeds, so);

  MomEstimate out;
  const Json params = {{"p", p}, {"q", q}, {"k", k}, {"n", n}, {"budget", budget}};
  out.primal.quantity = "M_pq_k";
  out.primal.lower_bound = pr.best;
  out.primal.params = params;
  out.primal.params["source"] = "primal moments";
  out.primal.witness = {{"kind", "mom_primal"}, {"p", p}, {"q", q}, {"spectrum", to_json(spectrum_of(n, masks, pr.point))}};
  out.dual.quantity = "M_pq_k";
  out.dual.lower_bound = du.best;
  out.dual.params = params;
  out.dual.params["source"] = "dual distances";
  out.dual.witness = {{"kind", "mom_dual"}, {"p", p}, {"q", q}, {"k", k}, {"tol", cfg.tol},
                      {"spectrum", to_json(spectrum_of(n, masks, du.point))}};

  out.agreement = blank("mom", Window{0.9, 1.0 / 0.9}, true);
  const double ratio = pr.best > 0.0 ? du.best / pr.best : kNaN;
  record(out.agreement,
         {.n = n, .k = k, .r = q, .lhs = du.best, .rhs = pr.best, .ratio = ratio, .status = "ok", .label = "dual/primal"},
         {{"primal", out.primal.witness}, {"dual", out.dual.witness}});
  out.agreement.params = params;
  out.agreement.notes.push_back("primal " + fmt(pr.best) + ", dual " + fmt(du.best));
  out.agreement.runtime = clock.seconds();
  finalize(out.agreement);
  return out;
}

// ---- orchestration --------------------------------------------------------------------

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"figiel", "symmetric", "corollary", "main", "dualhit",
                                            "ole",    "oledual",   "bh",        "dualbh", "mom"};
  return ids;
}

namespace {

std::vector<int> or_default(const std::vector<int>& v, std::vector<int> fallback) { return v.empty() ? fallback : v; }

std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

template <class T>
T pick(const std::vector<T>& list, HarnessRng& rng) {
  return list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
}

void run_figiel(const RunConfig& cfg, VerifyOutcome& out) {
  struct Job {
    int k, d, n;
  };
  std::vector<Job> jobs;
  for (int k : or_default(cfg.k, {1, 2, 3, 4})) {
    for (int d : cfg.d.empty() ? std::vector<int>{k} : cfg.d) {
      if (d > k) continue;
      for (int n : or_default(cfg.n, range(std::max(k, 2), 8))) {
        if (n >= k) jobs.push_back({k, d, n});
      }
    }
  }
  if (jobs.empty()) throw DomainError("figiel: no admissible (k, d, n) combination");
  const long budget = cfg.budget.value_or(10000);
  Stopwatch clock;
  const auto parts = parallel_map<CheckReport>(jobs.size(), cfg.jobs, [&](std::size_t i) {
    return check_figiel(jobs[i].k, jobs[i].d, jobs[i].n, budget, cfg);
  });
  auto rep = merge_reports("figiel", parts);
  rep.runtime = clock.seconds();
  out.reports.push_back(std::move(rep));
}

void run_symmetric(const RunConfig& cfg, VerifyOutcome& out) {
  if (!cfg.alpha.empty()) {
    if (cfg.n.empty()) throw DomainError("symmetric: alpha needs n");
    const SymmetricPoly poly(cfg.n.front(), cfg.alpha);
    const int k = cfg.k.empty() ? std::max(poly.degree(), 0) : cfg.k.front();
    out.reports.push_back(check_symmetric(poly, k, true, cfg));
    return;
  }
  out.reports.push_back(check_symmetric_sweep(cfg.trials.value_or(500), cfg));
}

void run_corollary(const RunConfig& cfg, VerifyOutcome& out) {
  if (cfg.d.empty() && cfg.k.empty()) {
    out.reports.push_back(check_corollary(1, 1, or_default(cfg.n, {2, 4, 8, 16, 32}), cfg, &out.estimates));
    out.reports.push_back(check_corollary(2, 2, or_default(cfg.n, range(8, 64)), cfg, &out.estimates));
    return;
  }
  for (int d : or_default(cfg.d, {1})) {
    for (int k : or_default(cfg.k, {d})) {
      if (k < d) continue;
      out.reports.push_back(check_corollary(d, k, or_default(cfg.n, range(std::max(8, k + 1), 64)), cfg, &out.estimates));
    }
  }
}

void run_main(const RunConfig& cfg, VerifyOutcome& out) {
  struct Job {
    int d, k, n;
  };
  std::vector<std::pair<int, int>> combos;
  for (int d : or_default(cfg.d, {1, 2})) {
    for (int k : or_default(cfg.k, range(d, 4))) {
      if (k >= d && d >= 1) combos.emplace_back(d, k);
    }
  }
  if (combos.empty()) throw DomainError("main: no admissible (d, k) combination");
  const long trials = cfg.trials.value_or(500);
  const double C = cfg.C.value_or(std::numbers::e);
  std::vector<Job> jobs;
  for (long i = 0; i < trials; ++i) {
    const auto [d, k] = combos[static_cast<std::size_t>(i) % combos.size()];
    auto rng = instance_rng(cfg.seed, "main.n", static_cast<std::uint64_t>(i));
    std::vector<int> ns;
    for (int n : or_default(cfg.n, range(k + 1, 8))) {
      if (n >= k) ns.push_back(n);
    }
    if (ns.empty()) throw DomainError("main: no admissible n for k = " + std::to_string(k));
    jobs.push_back({d, k, pick(ns, rng)});
  }
  Stopwatch clock;
  const auto pairs = parallel_map<MainPair>(jobs.size(), cfg.jobs, [&](std::size_t i) {
    return main_instance(jobs[i].d, jobs[i].k, jobs[i].n, i, C, cfg);
  });
  auto reps = merge_main(pairs, cfg.window_for("main", Window{0.0, C}));
  for (auto& r : reps) {
    r.params = {{"trials", trials}, {"C", C}};
    r.runtime = clock.seconds();
    out.reports.push_back(std::move(r));
  }
}

void run_dualhit(const RunConfig& cfg, VerifyOutcome& out) {
  const long trials = cfg.trials.value_or(300);
  const std::vector<double> r_grid = cfg.r.empty() ? std::vector<double>{1.5, 2.0, 4.0, kInf} : cfg.r;
  const auto ns = or_default(cfg.n, range(2, 8));
  Stopwatch clock;
  const auto parts = parallel_map<CheckReport>(static_cast<std::size_t>(trials), cfg.jobs, [&](std::size_t i) {
    auto rng = instance_rng(cfg.seed, "dualhit.n", i);
    return dual_hit_instance(pick(ns, rng), i, r_grid, cfg);
  });
  auto rep = merge_reports("dualhit", parts);
  Json rs = Json::array();
  for (double r : r_grid) rs.push_back(exponent_json(r));
  rep.params = {{"n", ns}, {"trials", trials}, {"r", rs}};
  rep.notes.push_back("empirical window [" + fmt(rep.min_ratio) + ", " + fmt(rep.max_ratio) + "]");
  rep.runtime = clock.seconds();
  out.reports.push_back(std::move(rep));
}

template <class Fn>
void run_rademacher(const std::string& id, const RunConfig& cfg, VerifyOutcome& out, std::vector<int> default_n,
                    int k_lo, Fn&& check) {
  struct Job {
    std::vector<double> a;
    int k;
  };
  std::vector<Job> jobs;
  const auto ks_for = [&](int n) {
    std::vector<int> ks;
    for (int k : cfg.k.empty() ? range(k_lo, n) : cfg.k) {
      if (k >= k_lo) ks.push_back(k);
    }
    return ks;
  };
  if (!cfg.a.empty()) {
    for (int k : ks_for(static_cast<int>(cfg.a.size()))) jobs.push_back({cfg.a, k});
  } else {
    for (int n : or_default(cfg.n, default_n)) {
      for (const char* family : {"flat", "geometric", "spike", "random"}) {
        auto rng = instance_rng(cfg.seed, id + "." + family, static_cast<std::uint64_t>(n));
        const auto a = weight_family(family, n, rng);
        for (int k : ks_for(n)) jobs.push_back({a, k});
      }
    }
  }
  Stopwatch clock;
  const auto parts =
      parallel_map<CheckReport>(jobs.size(), cfg.jobs, [&](std::size_t i) { return check(jobs[i].a, jobs[i].k); });
  auto rep = merge_reports(id, parts);
  rep.params = {{"instances", jobs.size()}};
  rep.notes.push_back("empirical window [" + fmt(rep.min_ratio) + ", " + fmt(rep.max_ratio) + "]");
  rep.runtime = clock.seconds();
  out.reports.push_back(std::move(rep));
}

void run_bh(const RunConfig& cfg, VerifyOutcome& out) {
  for (int d : or_default(cfg.d, {1, 2, 3})) {
    for (int n : or_default(cfg.n, {std::max(d, 6)})) {
      ConstantEstimate est;
      out.reports.push_back(check_bh(d, n, cfg.budget.value_or(10000), cfg, &est));
      out.estimates.push_back(std::move(est));
    }
  }
}

void run_dualbh(const RunConfig& cfg, VerifyOutcome& out) {
  for (int d : or_default(cfg.d, {2})) {
    for (int n : or_default(cfg.n, {6})) {
      ConstantEstimate est;
      out.reports.push_back(check_dual_bh(d, n, cfg.trials.value_or(100), cfg.B.value_or(1.5), cfg, &est));
      if (!est.quantity.empty()) out.estimates.push_back(std::move(est));
    }
  }
}

void run_mom(const RunConfig& cfg, VerifyOutcome& out) {
  for (int k : or_default(cfg.k, {1})) {
    for (int n : or_default(cfg.n, {6})) {
      auto m = estimate_mom_constant(cfg.p.value_or(2.0), cfg.q.value_or(4.0), k, n, cfg.budget.value_or(10000), cfg);
      out.reports.push_back(std::move(m.agreement));
      out.estimates.push_back(std::move(m.primal));
      out.estimates.push_back(std::move(m.dual));
    }
  }
}

}  // namespace

VerifyOutcome run_verify(const std::string& id, const RunConfig& cfg) {
  cfg.validate();
  VerifyOutcome out;
  if (id == "all") {
    for (const auto& each : check_ids()) {
      auto part = run_verify(each, cfg);
      out.reports.insert(out.reports.end(), part.reports.begin(), part.reports.end());
      out.estimates.insert(out.estimates.end(), part.estimates.begin(), part.estimates.end());
    }
    return out;
  }
  if (id == "figiel") {
    run_figiel(cfg, out);
  } else if (id == "symmetric") {
    run_symmetric(cfg, out);
  } else if (id == "corollary") {
    run_corollary(cfg, out);
  } else if (id == "main") {
    run_main(cfg, out);
  } else if (id == "dualhit") {
    run_dualhit(cfg, out);
  } else if (id == "ole") {
    run_rademacher("ole", cfg, out, {4, 6, 8}, 1,
                   [&](const std::vector<double>& a, int k) { return check_ole(a, k, cfg); });
  } else if (id == "oledual") {
    run_rademacher("oledual", cfg, out, {2, 4, 6, 8}, 1,
                   [&](const std::vector<double>& a, int k) { return check_ole_dual_remark(a, k, cfg); });
  } else if (id == "bh") {
    run_bh(cfg, out);
  } else if (id == "dualbh") {
    run_dualbh(cfg, out);
  } else if (id == "mom") {
    run_mom(cfg, out);
  } else {
    throw DomainError("unknown check id '" + id + "'");
  }
  return out;
}

}  // namespace tailspace
