// L_p distance for p in (1, inf) \ {2}.
//
// p < 2: Newton ascent on the smooth dual  max_y <b, y> - E|h_y|^q / q  with
//        h_y = sum_{S in J} y_S w_S and q = p*. The primal is recovered from
//        e = |h|^{q-1} sgn h.
// p > 2: equality-constrained Newton on  min E|e|^p / p  s.t. e^_J = f^_J;
//        the Schur complement has one row per constraint.
// Both Hessians are Walsh Gram matrices, read off a single transform:
//   sum_x wt(x) w_S(x) w_T(x) = 2^n wt^(S xor T).

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "distance_impl.hpp"

namespace tailspace::detail {

namespace {

struct Setup {
  int n;
  std::size_t size;
  std::vector<Mask> masks;  // J
  Eigen::VectorXd b;        // f^ on J
  SpectralSet levels;
  SpectralSet complement;
};

Eigen::MatrixXd gram(const Setup& s, std::vector<double> weight) {
  walsh_hadamard(weight);
  const double inv = 1.0 / static_cast<double>(s.size);
  const auto m = static_cast<Eigen::Index>(s.masks.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      out(i, j) = weight[s.masks[static_cast<std::size_t>(i)] ^ s.masks[static_cast<std::size_t>(j)]] * inv;
    }
  }
  return out;
}

Eigen::VectorXd analyze(const Setup& s, std::vector<double> v) {
  walsh_hadamard(v);
  const double inv = 1.0 / static_cast<double>(s.size);
  Eigen::VectorXd out(static_cast<Eigen::Index>(s.masks.size()));
  for (std::size_t i = 0; i < s.masks.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[s.masks[i]] * inv;
  return out;
}

std::vector<double> synthesize(const Setup& s, const Eigen::VectorXd& y) {
  std::vector<double> c(s.size, 0.0);
  for (std::size_t i = 0; i < s.masks.size(); ++i) c[s.masks[i]] = y(static_cast<Eigen::Index>(i));
  walsh_hadamard(c);
  return c;
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  return m.ldlt().solve(rhs);
}

double mean_pow(const std::vector<double>& v, double p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return s / static_cast<double>(v.size());
}

struct Iterate {
  double value = kInf;
  double lower = -kInf;
  std::vector<double> g;  // spectrum on I
  std::vector<double> h;  // values, spectrum on J, |h|_q = 1
};

// Certified pair from a candidate residual e: g = P_I(f - e), h from |e'|^{p-1}.
void certify_from_residual(const Setup& s, std::span<const double> f, const std::vector<double>& e, double p,
                           Iterate& best) {
  std::vector<double> gc(s.size);
  for (std::size_t x = 0; x < s.size; ++x) gc[x] = f[x] - e[x];
  walsh_hadamard(gc);
  const double inv = 1.0 / static_cast<double>(s.size);
  for (std::size_t k = 0; k < s.size; ++k) {
    gc[k] = s.levels.contains(popcount(static_cast<Mask>(k))) ? gc[k] * inv : 0.0;
  }
  std::vector<double> gv = gc;
  walsh_hadamard(gv);
  std::vector<double> res(s.size);
  for (std::size_t x = 0; x < s.size; ++x) res[x] = f[x] - gv[x];
  const double value = norm(res, p);
  if (value < best.value) {
    best.value = value;
    best.g = std::move(gc);
  }
  std::vector<double> hv(s.size);
  for (std::size_t x = 0; x < s.size; ++x) hv[x] = std::copysign(std::pow(std::abs(res[x]), p - 1.0), res[x]);
  const Eigen::VectorXd hy = analyze(s, hv);
  std::vector<double> h = synthesize(s, hy);
  const double hn = norm(h, conjugate_exponent(p));
  if (hn > 0.0) {
    double pair = 0.0;
    for (std::size_t x = 0; x < s.size; ++x) pair += f[x] * h[x];
    const double lower = pair * inv / hn;
    if (lower > best.lower) {
      for (double& v : h) v /= hn;
      best.lower = lower;
      best.h = std::move(h);
    }
  }
}

bool done(const Iterate& it, double tol) {
  return it.value - it.lower <= tol * std::max(1.0, it.value);
}

int dual_newton(const Setup& s, std::span<const double> f, double p, double tol, Iterate& best) {
  const double q = conjugate_exponent(p);
  auto phi = [&](const Eigen::VectorXd& y) {
    const auto h = synthesize(s, y);
    return s.b.dot(y) - mean_pow(h, q) / q;
  };
  Eigen::VectorXd y = s.b;
  int stalls = 0;
  {
    const auto h = synthesize(s, y);
    const double c = std::pow(s.b.dot(y) / mean_pow(h, q), 1.0 / (q - 1.0));
    y *= c;
  }
  int it = 0;
  for (; it < 200; ++it) {
    const auto h = synthesize(s, y);
    std::vector<double> e(s.size), wt(s.size);
    for (std::size_t x = 0; x < s.size; ++x) {
      const double a = std::abs(h[x]);
      e[x] = std::copysign(std::pow(a, q - 1.0), h[x]);
      wt[x] = (q - 1.0) * std::pow(a, q - 2.0);
    }
    certify_from_residual(s, f, e, p, best);
    if (done(best, tol)) break;
    const Eigen::VectorXd grad = s.b - analyze(s, e);
    Eigen::MatrixXd hess = gram(s, std::move(wt));
    hess.diagonal().array() += 1e-14 * std::max(1.0, hess.diagonal().maxCoeff());
    const Eigen::VectorXd dir = solve_spd(hess, grad);
    const double dec = grad.dot(dir);
    if (!(dec > 0.0) || !dir.allFinite()) break;
    const double base = phi(y);
    double step = 1.0;
    while (step > 1e-12 && phi(y + step * dir) < base + 0.25 * step * dec) step *= 0.5;
    // Near the optimum Armijo drowns in rounding; take the pure Newton step.
    if (step <= 1e-12) {
      if (dec > 1e-12 * std::max(1.0, std::abs(base)) || ++stalls > 3) break;
      step = 1.0;
    }
    y += step * dir;
  }
  return it;
}

int primal_newton(const Setup& s, std::span<const double> f, double p, double tol, Iterate& best) {
  auto phi = [&](const std::vector<double>& e) { return mean_pow(e, p) / p; };
  std::vector<double> e = synthesize(s, s.b);
  std::vector<double> trial(s.size);
  int stalls = 0;
  int it = 0;
  for (; it < 200; ++it) {
    certify_from_residual(s, f, e, p, best);
    if (done(best, tol)) break;
    double dmax = 0.0;
    std::vector<double> grad(s.size), dinv(s.size), u(s.size);
    for (std::size_t x = 0; x < s.size; ++x) {
      const double a = std::abs(e[x]);
      grad[x] = std::copysign(std::pow(a, p - 1.0), e[x]);
      dinv[x] = (p - 1.0) * std::pow(a, p - 2.0);
      dmax = std::max(dmax, dinv[x]);
    }
    const double reg = 1e-12 * std::max(dmax, 1e-300);
    for (std::size_t x = 0; x < s.size; ++x) {
      dinv[x] = 1.0 / (dinv[x] + reg);
      u[x] = grad[x] * dinv[x];
    }
    const Eigen::MatrixXd schur = gram(s, dinv);
    const Eigen::VectorXd nu = solve_spd(schur, analyze(s, u));
    const auto back = synthesize(s, nu);
    std::vector<double> dir(s.size);
    double dec = 0.0;
    for (std::size_t x = 0; x < s.size; ++x) {
      dir[x] = -u[x] + dinv[x] * back[x];
      dec -= grad[x] * dir[x];
    }
    if (!(dec > 0.0)) break;
    const double base = phi(e);
    const double slope = dec / static_cast<double>(s.size);
    double step = 1.0;
    while (step > 1e-12) {
      for (std::size_t x = 0; x < s.size; ++x) trial[x] = e[x] + step * dir[x];
      if (phi(trial) <= base - 0.25 * step * slope) break;
      step *= 0.5;
    }
    if (step <= 1e-12) {
      if (slope > 1e-12 * std::max(1.0, base) || ++stalls > 3) break;
      for (std::size_t x = 0; x < s.size; ++x) trial[x] = e[x] + dir[x];
    }
    e.swap(trial);
  }
  return it;
}

}  // namespace

DistanceResult smooth_distance(const BooleanFunction& f, const SpectralSet& levels, double p,
                               const DistanceOptions& opts) {
  Setup s{f.n(), f.size(), levels.complement().masks(), {}, levels, levels.complement()};
  const double scale = norm(f, kInf);
  std::vector<double> fv(f.values().begin(), f.values().end());
  if (scale > 0.0) {
    for (double& v : fv) v /= scale;
  }
  s.b = analyze(s, fv);

  DistanceResult r;
  r.p = p;
  r.method = p < 2.0 ? "dual_newton" : "primal_newton";
  if (s.b.cwiseAbs().maxCoeff() == 0.0) {
    finish_dense(r, f, project(fwht(f), levels), BooleanFunction::constant(f.n(), 0.0), opts.tol);
    return r;
  }
  Iterate best;
  // The working problem is scaled by 1/|f|_inf; tighten so the rescaled gap meets tol.
  const double tol = std::max(0.5 * opts.tol / std::max(1.0, scale), 1e-13);
  if (p < 2.0) {
    dual_newton(s, fv, p, tol, best);
  } else {
    primal_newton(s, fv, p, tol, best);
  }
  std::vector<double> g = best.g;
  for (double& v : g) v *= scale;
  finish_dense(r, f, Spectrum(f.n(), std::move(g)), BooleanFunction(f.n(), best.h), opts.tol);
  return r;
}

}  // namespace tailspace::detail
