#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace oracle {

double character(Mask s, Mask x, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) {
    if ((s >> i) & 1u) v *= ((x >> i) & 1u) ? -1.0 : 1.0;
  }
  return v;
}

std::vector<double> naive_spectrum(const std::vector<double>& values, int n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> out(size, 0.0);
  for (std::size_t s = 0; s < size; ++s) {
    long double acc = 0.0L;
    for (std::size_t x = 0; x < size; ++x) acc += values[x] * character(static_cast<Mask>(s), static_cast<Mask>(x), n);
    out[s] = static_cast<double>(acc / static_cast<long double>(size));
  }
  return out;
}

std::vector<double> naive_synthesis(const std::vector<double>& coeffs, int n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> out(size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    long double acc = 0.0L;
    for (std::size_t s = 0; s < size; ++s) acc += coeffs[s] * character(static_cast<Mask>(s), static_cast<Mask>(x), n);
    out[x] = static_cast<double>(acc);
  }
  return out;
}

std::vector<double> random_values(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(std::size_t{1} << n);
  for (double& x : v) x = g(rng);
  return v;
}

double mean_norm(const std::vector<double>& v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  long double s = 0.0L;
  for (double x : v) s += std::pow(static_cast<long double>(std::abs(x)), static_cast<long double>(p));
  return static_cast<double>(std::pow(s / static_cast<long double>(v.size()), 1.0L / static_cast<long double>(p)));
}

namespace {

__int128 choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<std::int64_t> chebyshev_closed(int k) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(k) + 1, 0);
  if (k == 0) {
    c[0] = 1;
    return c;
  }
  for (int j = 0; 2 * j <= k; ++j) {
    const __int128 num = static_cast<__int128>(k) * choose(k - j, j) * (static_cast<__int128>(1) << (k - 2 * j));
    const __int128 v = num / (2 * (k - j));
    c[static_cast<std::size_t>(k - 2 * j)] = static_cast<std::int64_t>(j % 2 ? -v : v);
  }
  return c;
}

double elem_sym_brute(int n, int l, int m) {
  const Mask x = (m >= 32) ? ~Mask{0} : ((Mask{1} << m) - 1);
  double total = 0.0;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (std::popcount(s) == l) total += character(s, x, n);
  }
  return total;
}

std::vector<double> h_profile_trig(int k, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    const double t = static_cast<double>(n - 2 * m) / n;
    out[static_cast<std::size_t>(m)] = std::cos(k * std::acos(std::clamp(t, -1.0, 1.0)));
  }
  return out;
}

namespace {

template <class Objective>
double grid_min(double hi, int steps, Objective&& obj) {
  double best = obj(0.0);
  for (int i = 1; i <= steps; ++i) best = std::min(best, obj(hi * i / steps));
  return best;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double k_l2_linf_grid(const std::vector<double>& a, double t, int steps) {
  // a0 = (|a| - lam)_+ sign(a), a1 = clip(a, lam).
  return grid_min(max_abs(a), steps, [&](double lam) {
    double s = 0.0;
    for (double v : a) s += std::pow(std::max(std::abs(v) - lam, 0.0), 2);
    return std::sqrt(s) + t * std::min(lam, max_abs(a));
  });
}

double k_l1_l2_grid(const std::vector<double>& a, double t, int steps) {
  // a0 = soft(a, lam) in l1, a1 = clip(a, lam) in l2.
  return grid_min(max_abs(a), steps, [&](double lam) {
    double l1 = 0.0, s = 0.0;
    for (double v : a) {
      l1 += std::max(std::abs(v) - lam, 0.0);
      s += std::pow(std::min(std::abs(v), lam), 2);
    }
    return l1 + t * std::sqrt(s);
  });
}

double minformula_enumerate(std::vector<double> a, double k) {
  for (double& v : a) v = std::abs(v);
  std::sort(a.rbegin(), a.rend());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r <= a.size(); ++r) {
    double s = 0.0;
    for (std::size_t i = 0; i < r; ++i) s += a[i] * a[i];
    const double next = r < a.size() ? a[r] : 0.0;
    best = std::min(best, std::sqrt(s) + k * next);
  }
  return best;
}

Audit audit(const tailspace::BooleanFunction& f, const tailspace::SpectralSet& levels, double p,
            const tailspace::DistanceResult& r) {
  const int n = f.n();
  Audit out;
  const std::vector<double> fv(f.values().begin(), f.values().end());
  const std::vector<double> gc(r.primal_g->coeffs().begin(), r.primal_g->coeffs().end());
  for (std::size_t s = 0; s < gc.size(); ++s) {
    if (!levels.contains(std::popcount(static_cast<Mask>(s)))) out.g_off_levels = std::max(out.g_off_levels, std::abs(gc[s]));
  }
  const auto gv = naive_synthesis(gc, n);
  std::vector<double> resid(fv.size());
  for (std::size_t x = 0; x < fv.size(); ++x) resid[x] = fv[x] - gv[x];
  out.primal = mean_norm(resid, p);

  const std::vector<double> hv(r.dual_h->values().begin(), r.dual_h->values().end());
  const auto hc = naive_spectrum(hv, n);
  for (std::size_t s = 0; s < hc.size(); ++s) {
    if (levels.contains(std::popcount(static_cast<Mask>(s)))) out.h_on_levels = std::max(out.h_on_levels, std::abs(hc[s]));
  }
  const double q = p == 1.0 ? tailspace::kInf : (std::isinf(p) ? 1.0 : p / (p - 1.0));
  out.h_dual_norm = mean_norm(hv, q);
  long double pair = 0.0L;
  for (std::size_t x = 0; x < fv.size(); ++x) pair += static_cast<long double>(fv[x]) * hv[x];
  out.dual = static_cast<double>(pair / static_cast<long double>(fv.size()));
  return out;
}

}  // namespace oracle
