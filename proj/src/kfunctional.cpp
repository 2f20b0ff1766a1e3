#include "tailspace/kfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tailspace/errors.hpp"

namespace tailspace {

namespace {

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

double dot(std::span<const double> a, std::span<const double> b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

std::vector<double> sorted_abs_desc(std::span<const double> a) {
  std::vector<double> b(a.size());
  std::transform(a.begin(), a.end(), b.begin(), [](double v) { return std::abs(v); });
  std::sort(b.begin(), b.end(), std::greater<>());
  return b;
}

// Fills the certificate fields from a primal decomposition and a candidate
// dual direction, scaling the direction down until it is feasible.
void certify(KResult& r, std::span<const double> a, double t, const InterpolationPair& pair,
             std::vector<double> u, double tol) {
  r.value = pair.a0_norm(r.a0) + t * pair.a1_norm(r.a1);
  double scale = 1.0;
  const double n0 = pair.a0_dual_norm(u);
  const double n1 = pair.a1_dual_norm(u);
  if (n0 > 1.0) scale = std::min(scale, 1.0 / n0);
  if (n1 > t) scale = std::min(scale, n1 > 0.0 ? t / n1 : 0.0);
  for (double& v : u) v *= scale;
  r.dual = std::move(u);
  r.pairing = dot(a, r.dual);
  r.dual_slack0 = 1.0 - pair.a0_dual_norm(r.dual);
  r.dual_slack1 = t - pair.a1_dual_norm(r.dual);
  r.gap = std::max(0.0, r.value - r.pairing);
  r.converged = r.gap <= tol;
}

// ---- (l2, l_inf): clipping family a1 = clip(a, lambda) ----------------------

double clip_cost(const std::vector<double>& b, const std::vector<long double>& s1,
                 const std::vector<long double>& s2, std::size_t r, double lambda, double t) {
  // r = number of entries strictly above lambda; cost sqrt(sum (b_i - lambda)^2) + t lambda.
  const long double q = s2[r] - 2.0L * lambda * s1[r] + static_cast<long double>(r) * lambda * lambda;
  (void)b;
  return static_cast<double>(std::sqrt(std::max(q, 0.0L))) + t * lambda;
}

KResult k_l2_linf(std::span<const double> a, double t, double tol) {
  const auto pair = InterpolationPair::l2_linf();
  const std::size_t n = a.size();
  const auto b = sorted_abs_desc(a);
  std::vector<long double> s1(n + 1, 0.0L), s2(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    s1[i + 1] = s1[i] + b[i];
    s2[i + 1] = s2[i] + static_cast<long double>(b[i]) * b[i];
  }
  double best_lambda = n ? b[0] : 0.0;
  double best = n ? t * b[0] : 0.0;
  auto consider = [&](std::size_t r, double lambda) {
    const double c = clip_cost(b, s1, s2, r, lambda, t);
    if (c < best) {
      best = c;
      best_lambda = lambda;
    }
  };
  for (std::size_t r = 1; r <= n; ++r) {
    // Interval [lo, hi] where exactly the top r entries exceed lambda.
    const double hi = b[r - 1];
    const double lo = r < n ? b[r] : 0.0;
    if (hi <= lo) continue;
    consider(r, lo);
    const long double rr = static_cast<long double>(r);
    if (t * t < rr) {
      const long double var = std::max(s2[r] - s1[r] * s1[r] / rr, 0.0L);
      const long double u = t * std::sqrt(var / (1.0L - t * t / rr));
      const double lambda = static_cast<double>((s1[r] - u) / rr);
      if (lambda > lo && lambda < hi) consider(r, lambda);
    }
  }
  KResult res;
  res.a0.resize(n);
  res.a1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::min(std::abs(a[i]), best_lambda);
    res.a1[i] = sgn(a[i]) * mag;
    res.a0[i] = a[i] - res.a1[i];
  }
  std::vector<double> u(n, 0.0);
  const double r0 = lp_norm(res.a0, 2.0);
  if (r0 > 0.0) {
    for (std::size_t i = 0; i < n; ++i) u[i] = res.a0[i] / r0;
  } else if (n > 0 && b[0] > 0.0) {
    // All mass sits in a1: spread t over the maximal entries.
    std::size_t ties = 0;
    for (double v : a) ties += std::abs(v) == b[0];
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(a[i]) == b[0]) u[i] = sgn(a[i]) * t / static_cast<double>(ties);
    }
  }
  certify(res, a, t, pair, std::move(u), tol);
  return res;
}

// ---- (l1, l2): soft-threshold family a0 = soft(a, lambda) ---------------

KResult k_l1_l2(std::span<const double> a, double t, double tol) {
  const auto pair = InterpolationPair::l1_l2();
  const std::size_t n = a.size();
  const auto b = sorted_abs_desc(a);
  std::vector<long double> s1(n + 1, 0.0L), tail2(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) s1[i + 1] = s1[i] + b[i];
  for (std::size_t i = n; i-- > 0;) tail2[i] = tail2[i + 1] + static_cast<long double>(b[i]) * b[i];
  auto cost = [&](std::size_t r, double lambda) {
    const long double l1 = s1[r] - static_cast<long double>(r) * lambda;
    const long double l2 = std::sqrt(static_cast<long double>(r) * lambda * lambda + tail2[r]);
    return static_cast<double>(l1 + t * l2);
  };
  // lambda = 0: a1 = 0.
  double best_lambda = 0.0;
  double best = static_cast<double>(s1[n]);
  auto consider = [&](std::size_t r, double lambda) {
    const double c = cost(r, lambda);
    if (c < best) {
      best = c;
      best_lambda = lambda;
    }
  };
  for (std::size_t r = 0; r < n; ++r) {
    // Interval [lo, hi] where exactly the top r entries exceed lambda.
    const double hi = r == 0 ? b[0] : b[r - 1];
    const double lo = b[r];
    if (hi < lo) continue;
    consider(r, hi);
    const long double rr = static_cast<long double>(r);
    if (static_cast<long double>(t) * t > rr && tail2[r] > 0.0L) {
      const double lambda = static_cast<double>(std::sqrt(tail2[r] / (static_cast<long double>(t) * t - rr)));
      if (lambda > lo && lambda < hi) consider(r, lambda);
    }
  }
  KResult res;
  res.a0.resize(n);
  res.a1.resize(n);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::min(std::abs(a[i]), best_lambda);
    res.a1[i] = sgn(a[i]) * mag;
    res.a0[i] = a[i] - res.a1[i];
    if (best_lambda > 0.0) {
      u[i] = sgn(a[i]) * std::min(1.0, std::abs(a[i]) / best_lambda);
    } else {
      u[i] = sgn(a[i]);
    }
  }
  certify(res, a, t, pair, std::move(u), tol);
  return res;
}

// ---- (l2, l_q): bisection on the bound beta = |a1|_q -----------------------

// Projection of |a| (entries >= 0) onto the l_q ball of radius beta.
std::vector<double> project_lq_ball(const std::vector<double>& mag, double q, double beta) {
  if (lp_norm(mag, q) <= beta) return mag;
  std::vector<double> x(mag.size(), 0.0);
  if (beta <= 0.0) return x;
  // x_i(mu) solves x + mu x^{q-1} = mag_i; find mu with sum x_i^q = beta^q.
  auto solve_coords = [&](double mu) {
    for (std::size_t i = 0; i < mag.size(); ++i) {
      const double m = mag[i];
      if (m == 0.0) {
        x[i] = 0.0;
        continue;
      }
      double xi = std::min(m, std::pow(m / mu, 1.0 / (q - 1.0)));
      for (int it = 0; it < 100; ++it) {
        const double pw = std::pow(xi, q - 2.0);
        const double g = xi + mu * pw * xi - m;
        const double dg = 1.0 + mu * (q - 1.0) * pw;
        const double next = xi - g / dg;
        if (!(next > 0.0)) {
          xi *= 0.5;
          continue;
        }
        if (std::abs(next - xi) <= 1e-16 * xi) {
          xi = next;
          break;
        }
        xi = next;
      }
      x[i] = xi;
    }
  };
  const double mx = *std::max_element(mag.begin(), mag.end());
  auto excess = [&](double mu) {
    solve_coords(mu);
    return lp_norm(x, q) / beta - 1.0;
  };
  // Bracket in log(mu).
  double lo = std::log(1e-300), hi = 0.0;
  double f_hi = excess(std::exp(hi));
  while (f_hi > 0.0 && hi < 700.0) {
    lo = hi;
    hi += 4.0;
    f_hi = excess(std::exp(hi));
  }
  (void)mx;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(std::exp(mid)) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  solve_coords(std::exp(hi));
  // Land exactly inside the ball.
  const double nq = lp_norm(x, q);
  if (nq > beta) {
    for (double& v : x) v *= beta / nq;
  }
  return x;
}

KResult k_l2_lq(std::span<const double> a, double t, double q, double tol, std::stop_token stop) {
  const auto pair = InterpolationPair::l2_lq(q);
  const std::size_t n = a.size();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(a[i]);
  const double qs = conjugate_exponent(q);
  const double aq = lp_norm(mag, q);
  KResult res;
  res.a0.assign(a.begin(), a.end());
  res.a1.assign(n, 0.0);
  if (aq == 0.0) {
    certify(res, a, t, pair, std::vector<double>(n, 0.0), tol);
    return res;
  }

  // slope(beta) = t - |u(beta)|_{q*} with u = (a - c)/|a - c|_2; nondecreasing.
  auto residual_direction = [&](const std::vector<double>& c, std::vector<double>& u) {
    u.assign(n, 0.0);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = mag[i] - c[i];
      r2 += u[i] * u[i];
    }
    r2 = std::sqrt(r2);
    if (r2 > 0.0) {
      for (double& v : u) v /= r2;
    }
    return r2;
  };
  std::vector<double> u;
  auto slope = [&](double beta) {
    const auto c = project_lq_ball(mag, q, beta);
    residual_direction(c, u);
    return t - lp_norm(u, qs);
  };

  double best_beta;
  const double s0 = slope(0.0);
  if (s0 >= 0.0) {
    best_beta = 0.0;
  } else {
    // Normal direction at the boundary point a itself: psi(a) / |psi(a)|_2.
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = std::pow(mag[i] / aq, q - 1.0);
    const double p2 = lp_norm(psi, 2.0);
    for (double& v : psi) v /= p2;
    if (t - lp_norm(psi, qs) <= 0.0) {
      best_beta = aq;
    } else {
      double lo = 0.0, hi = aq;
      int it = 0;
      for (; it < 200; ++it) {
        if (stop.stop_requested()) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (slope(mid) < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      res.iterations = it;
      best_beta = 0.5 * (lo + hi);
    }
  }

  const auto c = project_lq_ball(mag, q, best_beta);
  for (std::size_t i = 0; i < n; ++i) {
    res.a1[i] = sgn(a[i]) * c[i];
    res.a0[i] = a[i] - res.a1[i];
  }
  std::vector<double> dir(n, 0.0);
  std::vector<double> unit;
  if (residual_direction(c, unit) > 0.0) {
    for (std::size_t i = 0; i < n; ++i) dir[i] = sgn(a[i]) * unit[i];
  } else {
    // a0 = 0: the dual vector is t times the norming functional of a in l_q.
    const double denom = std::pow(aq, q - 1.0);
    for (std::size_t i = 0; i < n; ++i) dir[i] = sgn(a[i]) * t * std::pow(mag[i], q - 1.0) / denom;
  }
  certify(res, a, t, pair, std::move(dir), tol);
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------

InterpolationPair InterpolationPair::l2_lq(double q) {
  if (!(q > 2.0)) throw DomainError("l2_lq: exponent q must exceed 2");
  if (std::isinf(q)) return l2_linf();
  return InterpolationPair(Kind::L2_Lq, q);
}

InterpolationPair InterpolationPair::bohnenblust_hille_dual(int d) {
  if (d < 1) throw DomainError("bohnenblust_hille_dual: d must be at least 1");
  if (d == 1) return l2_linf();
  return l2_lq(2.0 * d / (d - 1.0));
}

std::string InterpolationPair::name() const {
  switch (kind_) {
    case Kind::L1_L2:
      return "l1_l2";
    case Kind::L2_Linf:
      return "l2_linf";
    case Kind::L2_Lq:
      return "l2_l" + std::to_string(q_);
  }
  return "?";
}

double InterpolationPair::a0_norm(std::span<const double> v) const {
  return lp_norm(v, kind_ == Kind::L1_L2 ? 1.0 : 2.0);
}

double InterpolationPair::a1_norm(std::span<const double> v) const {
  switch (kind_) {
    case Kind::L1_L2:
      return lp_norm(v, 2.0);
    case Kind::L2_Linf:
      return lp_norm(v, kInf);
    case Kind::L2_Lq:
      return lp_norm(v, q_);
  }
  return 0.0;
}

double InterpolationPair::a0_dual_norm(std::span<const double> v) const {
  return lp_norm(v, kind_ == Kind::L1_L2 ? kInf : 2.0);
}

double InterpolationPair::a1_dual_norm(std::span<const double> v) const {
  switch (kind_) {
    case Kind::L1_L2:
      return lp_norm(v, 2.0);
    case Kind::L2_Linf:
      return lp_norm(v, 1.0);
    case Kind::L2_Lq:
      return lp_norm(v, conjugate_exponent(q_));
  }
  return 0.0;
}

double lp_norm(std::span<const double> v, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: exponent must be >= 1");
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::abs(x));
  if (std::isinf(p) || mx == 0.0) return mx;
  long double s = 0.0L;
  if (p == 1.0) {
    for (double x : v) s += std::abs(x);
    return static_cast<double>(s);
  }
  if (p == 2.0) {
    for (double x : v) s += static_cast<long double>(x / mx) * (x / mx);
    return mx * static_cast<double>(std::sqrt(s));
  }
  for (double x : v) s += std::pow(static_cast<long double>(std::abs(x) / mx), p);
  return mx * static_cast<double>(std::pow(s, 1.0L / p));
}

KResult k_exact(const KQuery& query, double tol, std::stop_token stop) {
  if (!(query.t >= 0.0) || !std::isfinite(query.t)) throw DomainError("k_exact: t must be finite and >= 0");
  for (double v : query.a) {
    if (!std::isfinite(v)) throw DomainError("k_exact: non-finite entry");
  }
  if (!(tol > 0.0)) throw DomainError("k_exact: tol must be positive");
  const std::span<const double> a(query.a);
  if (query.t == 0.0) {
    KResult r;
    r.a0.assign(a.size(), 0.0);
    r.a1.assign(a.begin(), a.end());
    certify(r, a, 0.0, query.pair, std::vector<double>(a.size(), 0.0), tol);
    return r;
  }
  switch (query.pair.kind()) {
    case InterpolationPair::Kind::L2_Linf:
      return k_l2_linf(a, query.t, tol);
    case InterpolationPair::Kind::L1_L2:
      return k_l1_l2(a, query.t, tol);
    case InterpolationPair::Kind::L2_Lq:
      return k_l2_lq(a, query.t, query.pair.q(), tol, stop);
  }
  throw DomainError("k_exact: unknown pair");
}

int k_minformula_argmin(std::span<const double> a, double k) {
  if (!(k >= 0.0)) throw DomainError("k_minformula: k must be >= 0");
  const auto b = sorted_abs_desc(a);
  const std::size_t n = b.size();
  long double prefix = 0.0L;
  double best = n ? k * b[0] : 0.0;
  int arg = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    prefix += static_cast<long double>(b[r - 1]) * b[r - 1];
    const double next = r < n ? b[r] : 0.0;
    const double v = static_cast<double>(std::sqrt(prefix)) + k * next;
    if (v < best) {
      best = v;
      arg = static_cast<int>(r);
    }
  }
  return arg;
}

double k_minformula(std::span<const double> a, double k) {
  const auto b = sorted_abs_desc(a);
  const auto r = static_cast<std::size_t>(k_minformula_argmin(a, k));
  long double prefix = 0.0L;
  for (std::size_t i = 0; i < r; ++i) prefix += static_cast<long double>(b[i]) * b[i];
  return static_cast<double>(std::sqrt(prefix)) + k * (r < b.size() ? b[r] : 0.0);
}

double thm12_rhs(const Spectrum& s, double r) {
  if (!(r > 1.0)) throw DomainError("thm12_rhs: r must exceed 1");
  const double factor = std::isinf(r) ? 1.0 : std::sqrt((r - 1.0) / r);
  double mx = 0.0;
  long double sq = 0.0L;
  for (int i = 0; i < s.n(); ++i) {
    const double c = s[Mask{1} << i];
    mx = std::max(mx, std::abs(c));
    sq += static_cast<long double>(c) * c;
  }
  return std::abs(s[0]) + mx + factor * static_cast<double>(std::sqrt(sq));
}

KResult hitczenko_value(std::span<const double> a, double r) {
  if (!(r > 1.0)) throw DomainError("hitczenko_value: r must exceed 1");
  KQuery q{std::vector<double>(a.begin(), a.end()), std::sqrt(conjugate_exponent(r)),
           InterpolationPair::l1_l2()};
  return k_exact(q);
}

double dual_intersection_norm(std::span<const double> y, double t, const InterpolationPair& pair) {
  if (!(t > 0.0)) throw DomainError("dual_intersection_norm: t must be positive");
  return std::max(pair.a0_dual_norm(y), pair.a1_dual_norm(y) / t);
}

}  // namespace tailspace
