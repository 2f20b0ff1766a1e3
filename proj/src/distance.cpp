#include "tailspace/distance.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "distance_impl.hpp"
#include "tailspace/errors.hpp"
#include "tailspace/simplex.hpp"

namespace tailspace {

namespace detail {

void restrict_spectrum(std::vector<double>& coeffs, const SpectralSet& keep) {
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    if (!keep.contains(popcount(static_cast<Mask>(s)))) coeffs[s] = 0.0;
  }
}

void finish_dense(DistanceResult& r, const BooleanFunction& f, Spectrum g, BooleanFunction h, double tol) {
  const BooleanFunction residual = f - inverse_fwht(g);
  r.value = norm(residual, r.p);
  r.lower = inner(f, h);
  r.gap = std::max(0.0, r.value - r.lower);
  r.converged = r.gap <= tol * std::max(1.0, std::abs(r.value));
  r.primal_g = std::move(g);
  r.dual_h = std::move(h);
}

}  // namespace detail

namespace {

void validate(int n, const SpectralSet& levels, double p, double tol) {
  if (levels.n() != n) throw DomainError("distance: level set dimension mismatch");
  if (levels.empty()) throw DomainError("distance: level set I must be nonempty");
  if (!(p >= 1.0)) throw DomainError("distance: exponent p must be >= 1");
  if (!(tol > 0.0)) throw DomainError("distance: tol must be positive");
}

DistanceResult parseval(const BooleanFunction& f, const SpectralSet& levels, double tol) {
  DistanceResult r;
  r.p = 2.0;
  r.method = "parseval";
  const Spectrum fs = fwht(f);
  std::vector<double> g(fs.coeffs().begin(), fs.coeffs().end());
  std::vector<double> h = g;
  detail::restrict_spectrum(g, levels);
  detail::restrict_spectrum(h, levels.complement());
  BooleanFunction hf = inverse_fwht(Spectrum(f.n(), std::move(h)));
  const double hn = norm(hf, 2.0);
  if (hn > 0.0) hf = hf * (1.0 / hn);
  detail::finish_dense(r, f, Spectrum(f.n(), std::move(g)), std::move(hf), tol);
  r.gap = 0.0;
  r.lower = r.value;
  r.converged = true;
  return r;
}

// Feasible start for the L1 LP: points whose characters on the rows form a
// well-conditioned square block, each taken as z+ or z- by the sign of the
// exact solution on that block.
std::vector<std::size_t> crash_basis(const DenseLp& lp, std::size_t size) {
  const auto m = static_cast<Eigen::Index>(lp.rows);
  Eigen::MatrixXd w(m, static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index x = 0; x < w.cols(); ++x) w(i, x) = lp.at(static_cast<std::size_t>(i), static_cast<std::size_t>(x));
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(w);
  if (qr.rank() < m) return {};
  const auto& perm = qr.colsPermutation().indices();
  Eigen::MatrixXd block(m, m);
  for (Eigen::Index j = 0; j < m; ++j) block.col(j) = w.col(perm(j));
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(lp.b.data(), m);
  const Eigen::VectorXd u = block.partialPivLu().solve(b);
  std::vector<std::size_t> basis(lp.rows);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto x = static_cast<std::size_t>(perm(j));
    basis[static_cast<std::size_t>(j)] = u(j) >= 0.0 ? x : size + x;
  }
  return basis;
}

std::optional<DistanceResult> l1_simplex(const BooleanFunction& f, const SpectralSet& levels,
                                         const DistanceOptions& opts) {
  const int n = f.n();
  const std::size_t size = f.size();
  const auto rows = levels.complement().masks();
  DenseLp lp;
  lp.rows = rows.size();
  lp.cols = 2 * size;
  if (simplex_footprint(lp.rows, lp.cols) > opts.simplex_budget) return std::nullopt;
  const Spectrum fs = fwht(f);
  lp.a.resize(lp.rows * lp.cols);
  lp.b.resize(lp.rows);
  lp.c.assign(lp.cols, 1.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t x = 0; x < size; ++x) {
      const double w = walsh(rows[i], static_cast<Mask>(x));
      lp.at(i, x) = w;
      lp.at(i, size + x) = -w;
    }
    lp.b[i] = fs[rows[i]];
  }
  const LpSolution sol = simplex_solve(lp, SimplexOptions{.initial_basis = crash_basis(lp, size)});
  if (sol.status != LpStatus::Optimal) return std::nullopt;

  std::vector<double> e(size);
  const double scale = static_cast<double>(size);
  for (std::size_t x = 0; x < size; ++x) e[x] = scale * (sol.z[x] - sol.z[size + x]);
  std::vector<double> g(fs.coeffs().begin(), fs.coeffs().end());
  const Spectrum es = fwht(BooleanFunction(n, std::move(e)));
  for (std::size_t s = 0; s < size; ++s) g[s] -= es.coeffs()[s];
  detail::restrict_spectrum(g, levels);

  std::vector<double> hc(size, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) hc[rows[i]] = sol.y[i];
  BooleanFunction h = inverse_fwht(Spectrum(n, std::move(hc)));
  const double hmax = norm(h, kInf);
  if (hmax > 1.0) h = h * (1.0 / hmax);

  DistanceResult r;
  r.p = 1.0;
  r.method = "simplex";
  detail::finish_dense(r, f, Spectrum(n, std::move(g)), std::move(h), opts.tol);
  return r;
}

// Signed measure nu = lambda - mu of total mass 1, orthogonal to P_I,
// maximizing <f, nu>; the row multipliers give g.
std::optional<DistanceResult> linf_simplex(const BooleanFunction& f, const SpectralSet& levels,
                                           const DistanceOptions& opts) {
  const int n = f.n();
  const std::size_t size = f.size();
  const auto masks = levels.masks();
  DenseLp lp;
  lp.rows = masks.size() + 1;
  lp.cols = 2 * size;
  if (simplex_footprint(lp.rows, lp.cols) > opts.simplex_budget) return std::nullopt;
  lp.a.resize(lp.rows * lp.cols);
  lp.b.assign(lp.rows, 0.0);
  lp.b[0] = 1.0;
  lp.c.resize(lp.cols);
  for (std::size_t x = 0; x < size; ++x) {
    lp.at(0, x) = 1.0;
    lp.at(0, size + x) = 1.0;
    lp.c[x] = -f[static_cast<Mask>(x)];
    lp.c[size + x] = f[static_cast<Mask>(x)];
  }
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t x = 0; x < size; ++x) {
      const double w = walsh(masks[i], static_cast<Mask>(x));
      lp.at(i + 1, x) = w;
      lp.at(i + 1, size + x) = -w;
    }
  }
  const LpSolution sol = simplex_solve(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;

  std::vector<double> g(size, 0.0);
  for (std::size_t i = 0; i < masks.size(); ++i) g[masks[i]] = -sol.y[i + 1];

  std::vector<double> hv(size);
  for (std::size_t x = 0; x < size; ++x) hv[x] = static_cast<double>(size) * (sol.z[x] - sol.z[size + x]);
  const Spectrum hs = fwht(BooleanFunction(n, std::move(hv)));
  std::vector<double> hc(hs.coeffs().begin(), hs.coeffs().end());
  detail::restrict_spectrum(hc, levels.complement());
  BooleanFunction h = inverse_fwht(Spectrum(n, std::move(hc)));
  const double mass = norm(h, 1.0);
  if (mass > 0.0) h = h * (1.0 / mass);

  DistanceResult r;
  r.p = kInf;
  r.method = "simplex";
  detail::finish_dense(r, f, Spectrum(n, std::move(g)), std::move(h), opts.tol);
  return r;
}

}  // namespace

DistanceResult distance(const BooleanFunction& f, const SpectralSet& levels, double p,
                        const DistanceOptions& opts) {
  validate(f.n(), levels, p, opts.tol);
  DistanceResult r;
  if (levels.complement().empty()) {
    r.p = p;
    r.method = "trivial";
    detail::finish_dense(r, f, fwht(f), BooleanFunction::constant(f.n(), 0.0), opts.tol);
  } else if (p == 2.0) {
    r = parseval(f, levels, opts.tol);
  } else if (p == 1.0) {
    auto lp = l1_simplex(f, levels, opts);
    r = lp ? std::move(*lp) : detail::l1_first_order(f, levels, opts);
  } else if (std::isinf(p)) {
    auto lp = linf_simplex(f, levels, opts);
    r = lp ? std::move(*lp) : detail::linf_first_order(f, levels, opts);
  } else {
    r = detail::smooth_distance(f, levels, p, opts);
  }
  r.levels = levels.levels();
  return r;
}

DistanceResult distance(const DistanceQuery& q) {
  DistanceOptions opts;
  opts.tol = q.tol;
  if (const auto* f = std::get_if<BooleanFunction>(&q.f)) return distance(*f, q.levels, q.p, opts);
  return distance_symmetric(std::get<SymmetricProfile>(q.f), q.levels, q.p, opts);
}

DualSup dual_sup(const BooleanFunction& f, int k, double tol) {
  if (k < 0 || k >= f.n()) throw DomainError("dual_sup: require 0 <= k < n");
  DistanceOptions opts;
  opts.tol = tol;
  DistanceResult r = distance(f, SpectralSet::above(f.n(), k), 1.0, opts);
  return DualSup{r.lower, std::move(*r.dual_h), r.converged};
}

namespace {

Json profile_json(const SymmetricProfile& p) {
  return Json{{"n", p.n()}, {"repr", "profile"}, {"data", p.levels()}};
}

}  // namespace

Json to_json(const DistanceResult& r) {
  Json out;
  out["value"] = r.value;
  out["lower"] = r.lower;
  out["gap"] = r.gap;
  if (std::isinf(r.p)) {
    out["p"] = "inf";
  } else {
    out["p"] = r.p;
  }
  out["levels"] = r.levels;
  out["converged"] = r.converged;
  out["method"] = r.method;
  if (r.primal_g) out["primal_g"] = to_json(*r.primal_g);
  if (r.primal_g_profile) out["primal_g"] = profile_json(*r.primal_g_profile);
  if (r.dual_h) out["dual_h"] = to_json(*r.dual_h);
  if (r.dual_h_profile) out["dual_h"] = profile_json(*r.dual_h_profile);
  return out;
}

}  // namespace tailspace
