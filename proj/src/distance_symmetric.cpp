// Distances of permutation-symmetric functions, solved over level profiles.
// Averaging a feasible g over coordinate permutations keeps it feasible and
// does not increase the norm, so the symmetric LP has the dense optimum.
//
// kappa_l(m) = K_l(m) / C(n, l) is the mean of w_S over |S| = l at a point
// with m coordinates equal to -1, and the common level-l coefficient of f is
// f^_l = sum_m C(n,m) 2^-n f(m) kappa_l(m).

#include <algorithm>
#include <cmath>

#include "tailspace/distance.hpp"
#include "tailspace/errors.hpp"
#include "tailspace/simplex.hpp"

namespace tailspace {

namespace {

// Profile LPs are small and the level-l residual is amplified by C(n, l)
// downstream, so the right-hand side is never perturbed here.
const SimplexOptions kProfileSimplex{.perturbation = 0.0};

struct LevelData {
  int n;
  std::vector<int> inside;   // I
  std::vector<int> outside;  // J
  std::vector<std::vector<double>> kappa;
  std::vector<double> weight;
};

LevelData level_data(int n, const SpectralSet& levels) {
  LevelData d{n, levels.levels(), levels.complement().levels(), normalized_krawtchouk(n, n), {}};
  d.weight.resize(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) d.weight[static_cast<std::size_t>(m)] = level_weight(n, m);
  return d;
}

double kap(const LevelData& d, int l, int m) {
  return d.kappa[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)];
}

void check(int n, const SpectralSet& levels, double p, double tol) {
  if (levels.n() != n) throw DomainError("distance_symmetric: level set dimension mismatch");
  if (levels.empty()) throw DomainError("distance_symmetric: level set I must be nonempty");
  if (!(p == 1.0 || p == 2.0 || std::isinf(p))) {
    throw DomainError("distance_symmetric: p must be 1, 2 or inf");
  }
  if (!(tol > 0.0)) throw DomainError("distance_symmetric: tol must be positive");
}

// P_J of a profile given its level coefficients on J.
std::vector<double> synthesize(const LevelData& d, const std::vector<double>& coeff_j) {
  std::vector<double> out(static_cast<std::size_t>(d.n) + 1, 0.0);
  for (std::size_t i = 0; i < d.outside.size(); ++i) {
    const int l = d.outside[i];
    const double c = std::exp(log_binomial(d.n, l)) * coeff_j[i];
    if (c == 0.0) continue;
    for (int m = 0; m <= d.n; ++m) out[static_cast<std::size_t>(m)] += c * kap(d, l, m);
  }
  return out;
}

void finish(DistanceResult& r, double tol) {
  r.gap = std::max(0.0, r.value - r.lower);
  r.converged = r.gap <= tol * std::max(1.0, std::abs(r.value));
}

DistanceResult solve_l2(const LevelData& d, const std::vector<double>& fhat_j,
                        const std::optional<SymmetricProfile>& f) {
  DistanceResult r;
  r.p = 2.0;
  r.method = "symmetric_parseval";
  long double s = 0.0L;
  for (std::size_t i = 0; i < d.outside.size(); ++i) {
    s += std::exp(static_cast<long double>(log_binomial(d.n, d.outside[i]))) * fhat_j[i] * fhat_j[i];
  }
  r.value = static_cast<double>(std::sqrt(s));
  r.lower = r.value;
  auto pj = synthesize(d, fhat_j);
  if (f) {
    std::vector<double> g(f->levels());
    for (std::size_t m = 0; m < g.size(); ++m) g[m] -= pj[m];
    r.primal_g_profile = SymmetricProfile(d.n, std::move(g));
  }
  if (r.value > 0.0) {
    for (double& v : pj) v /= r.value;
  }
  r.dual_h_profile = SymmetricProfile(d.n, std::move(pj));
  r.gap = 0.0;
  r.converged = true;
  return r;
}

std::optional<DistanceResult> solve_l1(const LevelData& d, const std::vector<double>& fhat_j,
                                       const std::optional<SymmetricProfile>& f, double tol) {
  const std::size_t width = static_cast<std::size_t>(d.n) + 1;
  DenseLp lp;
  lp.rows = d.outside.size();
  lp.cols = 2 * width;
  lp.a.resize(lp.rows * lp.cols);
  lp.b = fhat_j;
  lp.c.assign(lp.cols, 1.0);
  for (std::size_t i = 0; i < lp.rows; ++i) {
    for (std::size_t m = 0; m < width; ++m) {
      const double k = kap(d, d.outside[i], static_cast<int>(m));
      lp.at(i, m) = k;
      lp.at(i, width + m) = -k;
    }
  }
  const LpSolution sol = simplex_solve(lp, kProfileSimplex);
  if (sol.status != LpStatus::Optimal) return std::nullopt;

  // z_m = C(n,m) 2^-n e(m). Remove the constraint residual through P_J.
  std::vector<double> z(width), resid(lp.rows);
  for (std::size_t m = 0; m < width; ++m) z[m] = sol.z[m] - sol.z[width + m];
  for (std::size_t i = 0; i < lp.rows; ++i) {
    long double s = fhat_j[i];
    for (std::size_t m = 0; m < width; ++m) s -= static_cast<long double>(z[m]) * lp.at(i, m);
    resid[i] = static_cast<double>(s);
  }
  const auto corr = synthesize(d, resid);

  DistanceResult r;
  r.p = 1.0;
  r.method = "symmetric_simplex";
  long double value = 0.0L;
  for (std::size_t m = 0; m < width; ++m) value += std::abs(z[m] + d.weight[m] * corr[m]);
  r.value = static_cast<double>(value);
  if (f) {
    std::vector<double> g(f->levels());
    for (std::size_t m = 0; m < width; ++m) {
      const double e = (d.weight[m] > 0.0 ? z[m] / d.weight[m] : 0.0) + corr[m];
      g[m] -= e;
    }
    r.primal_g_profile = SymmetricProfile(d.n, std::move(g));
  }

  std::vector<double> h(width, 0.0);
  for (std::size_t i = 0; i < lp.rows; ++i) {
    for (std::size_t m = 0; m < width; ++m) h[m] += sol.y[i] * lp.at(i, m);
  }
  double hmax = 0.0;
  for (double v : h) hmax = std::max(hmax, std::abs(v));
  const double hscale = std::max(1.0, hmax);
  long double lower = 0.0L;
  for (std::size_t i = 0; i < lp.rows; ++i) lower += static_cast<long double>(sol.y[i]) * fhat_j[i];
  r.lower = static_cast<double>(lower) / hscale;
  for (double& v : h) v /= hscale;
  r.dual_h_profile = SymmetricProfile(d.n, std::move(h));
  finish(r, tol);
  return r;
}

std::optional<DistanceResult> solve_linf(const LevelData& d, const SymmetricProfile& f, double tol) {
  const std::size_t width = static_cast<std::size_t>(d.n) + 1;
  DenseLp lp;
  lp.rows = d.inside.size() + 1;
  lp.cols = 2 * width;
  lp.a.resize(lp.rows * lp.cols);
  lp.b.assign(lp.rows, 0.0);
  lp.b[0] = 1.0;
  lp.c.resize(lp.cols);
  for (std::size_t m = 0; m < width; ++m) {
    lp.at(0, m) = 1.0;
    lp.at(0, width + m) = 1.0;
    lp.c[m] = -f.levels()[m];
    lp.c[width + m] = f.levels()[m];
  }
  for (std::size_t i = 0; i < d.inside.size(); ++i) {
    for (std::size_t m = 0; m < width; ++m) {
      const double k = kap(d, d.inside[i], static_cast<int>(m));
      lp.at(i + 1, m) = k;
      lp.at(i + 1, width + m) = -k;
    }
  }
  const LpSolution sol = simplex_solve(lp, kProfileSimplex);
  if (sol.status != LpStatus::Optimal) return std::nullopt;

  DistanceResult r;
  r.p = kInf;
  r.method = "symmetric_simplex";
  std::vector<double> g(width, 0.0);
  for (std::size_t i = 0; i < d.inside.size(); ++i) {
    for (std::size_t m = 0; m < width; ++m) g[m] -= sol.y[i + 1] * lp.at(i + 1, m);
  }
  double value = 0.0;
  for (std::size_t m = 0; m < width; ++m) value = std::max(value, std::abs(f.levels()[m] - g[m]));
  r.value = value;
  r.primal_g_profile = SymmetricProfile(d.n, std::move(g));

  std::vector<double> h(width, 0.0);
  double mass = 0.0;
  long double lower = 0.0L;
  for (std::size_t m = 0; m < width; ++m) {
    const double nu = sol.z[m] - sol.z[width + m];
    mass += std::abs(nu);
    lower += static_cast<long double>(nu) * f.levels()[m];
    h[m] = d.weight[m] > 0.0 ? nu / d.weight[m] : 0.0;
  }
  if (mass > 0.0) {
    for (double& v : h) v /= mass;
    lower /= mass;
  }
  r.lower = static_cast<double>(lower);
  r.dual_h_profile = SymmetricProfile(d.n, std::move(h));
  finish(r, tol);
  return r;
}

DistanceResult solve(const LevelData& d, const std::vector<double>& fhat_j,
                     const std::optional<SymmetricProfile>& f, double p, double tol) {
  std::optional<DistanceResult> r;
  if (d.outside.empty()) {
    r.emplace();
    r->p = p;
    r->method = "trivial";
    if (f) r->primal_g_profile = *f;
    r->dual_h_profile = SymmetricProfile(d.n, std::vector<double>(static_cast<std::size_t>(d.n) + 1, 0.0));
  } else if (p == 2.0) {
    r = solve_l2(d, fhat_j, f);
  } else if (p == 1.0) {
    r = solve_l1(d, fhat_j, f, tol);
  } else {
    r = solve_linf(d, *f, tol);
  }
  if (!r) throw DomainError("distance_symmetric: level LP did not reach an optimal basis");
  r->levels = d.inside;
  return std::move(*r);
}

}  // namespace

DistanceResult distance_symmetric(const SymmetricProfile& f, const SpectralSet& levels, double p,
                                  const DistanceOptions& opts) {
  check(f.n(), levels, p, opts.tol);
  const LevelData d = level_data(f.n(), levels);
  const auto all = f.level_coefficients(f.n());
  std::vector<double> fhat_j;
  for (int l : d.outside) fhat_j.push_back(all[static_cast<std::size_t>(l)]);
  return solve(d, fhat_j, f, p, opts.tol);
}

DistanceResult distance_symmetric(const SymmetricPoly& f, const SpectralSet& levels, double p,
                                  const DistanceOptions& opts) {
  check(f.n(), levels, p, opts.tol);
  const LevelData d = level_data(f.n(), levels);
  std::vector<double> fhat_j;
  for (int l : d.outside) {
    const auto li = static_cast<std::size_t>(l);
    fhat_j.push_back(li < f.alpha().size() ? f.alpha()[li] : 0.0);
  }
  std::optional<SymmetricProfile> profile;
  if (std::isinf(p) || f.n() <= 400) profile = sympoly_to_profile(f);
  return solve(d, fhat_j, profile, p, opts.tol);
}

}  // namespace tailspace
