// Restarted PDHG for the L1 and L_inf distances when the simplex tableau is
// too large. Primal g lives in P_I (spatial values), dual h in the unit ball
// of the conjugate norm; every check re-derives a certified pair.

#include <algorithm>
#include <cmath>

#include "distance_impl.hpp"

namespace tailspace::detail {

namespace {

std::vector<double> project_values(std::span<const double> v, int n, const SpectralSet& keep) {
  std::vector<double> c(v.begin(), v.end());
  walsh_hadamard(c);
  const double scale = std::ldexp(1.0, -n);
  for (std::size_t s = 0; s < c.size(); ++s) {
    c[s] = keep.contains(popcount(static_cast<Mask>(s))) ? c[s] * scale : 0.0;
  }
  walsh_hadamard(c);
  return c;
}

// Euclidean projection onto {h : mean |h| <= 1}.
void project_l1_ball(std::vector<double>& h) {
  const double size = static_cast<double>(h.size());
  double mass = 0.0;
  for (double v : h) mass += std::abs(v);
  if (mass <= size) return;
  std::vector<double> mag(h.size());
  std::transform(h.begin(), h.end(), mag.begin(), [](double v) { return std::abs(v); });
  std::sort(mag.begin(), mag.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    cum += mag[i];
    const double t = (cum - size) / static_cast<double>(i + 1);
    if (mag[i] <= t) break;
    theta = t;
  }
  for (double& v : h) v = std::copysign(std::max(std::abs(v) - theta, 0.0), v);
}

struct Certificate {
  double value;
  double lower;
  std::vector<double> g;
  std::vector<double> h;
};

Certificate certify(const BooleanFunction& f, const SpectralSet& levels, const std::vector<double>& g,
                    const std::vector<double>& h, double p) {
  Certificate c;
  c.g = project_values(g, f.n(), levels);
  c.h = project_values(h, f.n(), levels.complement());
  std::vector<double> res(f.size());
  for (std::size_t x = 0; x < res.size(); ++x) res[x] = f[static_cast<Mask>(x)] - c.g[x];
  c.value = norm(res, p);
  const double hn = norm(c.h, conjugate_exponent(p));
  if (hn > 0.0) {
    for (double& v : c.h) v /= hn;
  }
  double s = 0.0;
  for (std::size_t x = 0; x < res.size(); ++x) s += f[static_cast<Mask>(x)] * c.h[x];
  c.lower = hn > 0.0 ? s / static_cast<double>(res.size()) : 0.0;
  return c;
}

DistanceResult run_pdhg(const BooleanFunction& f, const SpectralSet& levels, double p,
                        const DistanceOptions& opts) {
  const std::size_t size = f.size();
  const auto fv = f.values();
  std::vector<double> g(size, 0.0), h(size, 0.0), g_prev(size), bar(size);
  std::vector<double> g_sum(size, 0.0), h_sum(size, 0.0);
  const double fscale = std::max(norm(f, kInf), 1e-300);
  // The operator is the identity in L2(uniform); tau * sigma < 1.
  double tau = fscale, sigma = 0.99 / fscale;
  if (std::isinf(p)) std::swap(tau, sigma);

  Certificate best{kInf, -kInf, {}, {}};
  long restart_len = 64;
  long since_restart = 0;
  long iter = 0;
  for (; iter < opts.first_order_iterations; ++iter) {
    g_prev = g;
    const auto ph = project_values(h, f.n(), levels);
    for (std::size_t x = 0; x < size; ++x) g[x] += tau * ph[x];
    for (std::size_t x = 0; x < size; ++x) bar[x] = 2.0 * g[x] - g_prev[x];
    for (std::size_t x = 0; x < size; ++x) h[x] += sigma * (fv[x] - bar[x]);
    if (p == 1.0) {
      for (double& v : h) v = std::clamp(v, -1.0, 1.0);
    } else {
      project_l1_ball(h);
    }
    for (std::size_t x = 0; x < size; ++x) {
      g_sum[x] += g[x];
      h_sum[x] += h[x];
    }
    ++since_restart;
    if (since_restart == restart_len) {
      const double inv = 1.0 / static_cast<double>(since_restart);
      for (std::size_t x = 0; x < size; ++x) {
        g_sum[x] *= inv;
        h_sum[x] *= inv;
      }
      Certificate cur = certify(f, levels, g, h, p);
      Certificate avg = certify(f, levels, g_sum, h_sum, p);
      bool avg_better = avg.value - avg.lower < cur.value - cur.lower;
      if (avg_better) {
        g = g_sum;
        h = h_sum;
      }
      Certificate& pick = avg_better ? avg : cur;
      if (pick.value < best.value) {
        best.value = pick.value;
        best.g = pick.g;
      }
      if (pick.lower > best.lower) {
        best.lower = pick.lower;
        best.h = pick.h;
      }
      std::fill(g_sum.begin(), g_sum.end(), 0.0);
      std::fill(h_sum.begin(), h_sum.end(), 0.0);
      since_restart = 0;
      restart_len = std::min<long>(restart_len * 2, 4096);
      if (best.value - best.lower <= opts.tol * std::max(1.0, best.value)) {
        ++iter;
        break;
      }
    }
  }
  if (best.g.empty()) {
    Certificate cur = certify(f, levels, g, h, p);
    best = cur;
  }

  DistanceResult r;
  r.p = p;
  r.method = "pdhg";
  std::vector<double> gc = best.g;
  walsh_hadamard(gc);
  const double scale = std::ldexp(1.0, -f.n());
  for (double& v : gc) v *= scale;
  restrict_spectrum(gc, levels);
  finish_dense(r, f, Spectrum(f.n(), std::move(gc)), BooleanFunction(f.n(), best.h), opts.tol);
  return r;
}

}  // namespace

DistanceResult l1_first_order(const BooleanFunction& f, const SpectralSet& levels, const DistanceOptions& opts) {
  return run_pdhg(f, levels, 1.0, opts);
}

DistanceResult linf_first_order(const BooleanFunction& f, const SpectralSet& levels,
                                const DistanceOptions& opts) {
  return run_pdhg(f, levels, kInf, opts);
}

}  // namespace tailspace::detail
