#include "tailspace/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "tailspace/errors.hpp"

namespace tailspace {

namespace {

using i128 = __int128;

constexpr std::int64_t kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kI64Min = std::numeric_limits<std::int64_t>::min();

bool fits_i64(i128 v) { return v >= kI64Min && v <= kI64Max; }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

// ---- exact integer helpers --------------------------------------------------

std::int64_t binomial_exact(int n, int k) {
  if (n < 0) throw DomainError("binomial: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  i128 c = 1;
  for (int j = 1; j <= k; ++j) {
    c = c * (n - k + j) / j;  // exact: c*(n-k+j) is divisible by j
    if (!fits_i64(c)) {
      throw OverflowError("C(" + std::to_string(n) + "," + std::to_string(k) +
                          ") exceeds the 64-bit range");
    }
  }
  return static_cast<std::int64_t>(c);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return static_cast<double>(c < 9.0e15L ? std::nearbyintl(c) : c);
}

// ---- Chebyshev ----------------------------------------------------------------

ChebyshevRow chebyshev_row(int k) {
  if (k < 0) throw DomainError("chebyshev_row: negative degree");
  std::vector<std::int64_t> prev{1};  // T_0
  if (k == 0) return {0, prev};
  std::vector<std::int64_t> cur{0, 1};  // T_1
  for (int j = 1; j < k; ++j) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(j) + 2, 0);
    for (std::size_t l = 0; l < next.size(); ++l) {
      i128 v = 0;
      if (l >= 1) v += i128{2} * cur[l - 1];
      if (l < prev.size()) v -= prev[l];
      if (!fits_i64(v)) {
        throw OverflowError("Chebyshev coefficient c(" + std::to_string(j + 1) + "," +
                            std::to_string(l) + ") exceeds the 64-bit range");
      }
      next[l] = static_cast<std::int64_t>(v);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {k, cur};
}

std::int64_t chebyshev_coeff(int k, int l) {
  if (l < 0) throw DomainError("chebyshev_coeff: negative level");
  if (l > k) return 0;
  return chebyshev_row(k).c[static_cast<std::size_t>(l)];
}

std::int64_t tilde_c(int k, int l) {
  if (l < 0 || l > k) {
    throw DomainError("tilde_c: level " + std::to_string(l) + " outside [0, " + std::to_string(k) + "]");
  }
  return (k - l) % 2 == 0 ? chebyshev_coeff(k, l) : chebyshev_coeff(k - 1, l);
}

bool tilde_c_within_factorial_bound(int k, int l) {
  const std::int64_t c = tilde_c(k, l);
  unsigned __int128 lhs = static_cast<unsigned __int128>(c < 0 ? -static_cast<i128>(c) : c);
  unsigned __int128 rhs = 1;
  constexpr auto kMax = ~static_cast<unsigned __int128>(0);
  for (int j = 1; j <= l; ++j) {
    if (lhs > kMax / static_cast<unsigned>(j)) throw OverflowError("l! |c~| exceeds 128 bits");
    lhs *= static_cast<unsigned>(j);
    if (k > 0 && rhs > kMax / static_cast<unsigned>(k)) throw OverflowError("k^l exceeds 128 bits");
    rhs *= static_cast<unsigned>(k);
  }
  return lhs <= rhs;
}

double chebyshev_value(int k, double x) {
  if (k < 0) throw DomainError("chebyshev_value: negative degree");
  if (k == 0) return 1.0;
  long double prev = 1.0L;
  long double cur = x;
  for (int j = 1; j < k; ++j) {
    const long double next = 2.0L * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

void write_coefficient_csv(std::ostream& out, int k_max) {
  out << "k,l,c,c_tilde,bound\n";
  for (int k = 0; k <= k_max; ++k) {
    const ChebyshevRow row = chebyshev_row(k);
    for (int l = 0; l <= k; ++l) {
      long double bound = 1.0L;
      for (int j = 1; j <= l; ++j) bound *= static_cast<long double>(k) / j;
      out << k << ',' << l << ',' << row.c[static_cast<std::size_t>(l)] << ',' << tilde_c(k, l) << ','
          << std::setprecision(17) << static_cast<double>(bound) << '\n';
    }
  }
}

// ---- elementary symmetric values -------------------------------------------

namespace {

// Normalized Krawtchouk values kappa_l(m) for l = 0..max_level at a fixed m,
// from (n-l) kappa_{l+1} = (n-2m) kappa_l - l kappa_{l-1}.
std::vector<long double> kappa_column(int n, int m, int max_level) {
  std::vector<long double> kap(static_cast<std::size_t>(max_level) + 1, 0.0L);
  kap[0] = 1.0L;
  if (max_level >= 1) kap[1] = static_cast<long double>(n - 2 * m) / n;
  for (int l = 1; l < max_level; ++l) {
    kap[static_cast<std::size_t>(l) + 1] =
        ((n - 2 * m) * kap[static_cast<std::size_t>(l)] - l * kap[static_cast<std::size_t>(l) - 1]) /
        (n - l);
  }
  return kap;
}

}  // namespace

SymValue elem_sym_value(int n, int l, int m) {
  if (n < 0 || l < 0 || l > n || m < 0 || m > n) {
    throw DomainError("elem_sym_value: require 0 <= l <= n and 0 <= m <= n");
  }
  // Integer recurrence (l+1) K_{l+1} = (n-2m) K_l - (n-l+1) K_{l-1}.
  bool exact = true;
  i128 prev = 0;  // K_{-1}
  i128 cur = 1;   // K_0
  for (int j = 0; j < l && exact; ++j) {
    const i128 next_num = i128{n - 2 * m} * cur - i128{n - j + 1} * prev;
    const i128 next = next_num / (j + 1);
    if (!fits_i64(next) || !fits_i64(next_num)) exact = false;
    prev = cur;
    cur = next;
  }
  if (exact) return {static_cast<double>(cur), true};

  // Float fallback through the normalized recurrence, mirrored for l > n/2.
  const int l_eff = std::min(l, n - l);
  const int m_eff = std::min(m, n - m);
  long double v = kappa_column(n, m_eff, l_eff)[static_cast<std::size_t>(l_eff)];
  if (m_eff != m && (l_eff % 2) == 1) v = -v;        // K_l(n-m) = (-1)^l K_l(m)
  if (l_eff != l && (m % 2) == 1) v = -v;            // K_{n-l}(m) = (-1)^m K_l(m)
  const long double scale = std::exp(static_cast<long double>(log_binomial(n, l)));
  return {static_cast<double>(v * scale), false};
}

std::vector<std::vector<double>> normalized_krawtchouk(int n, int max_level) {
  if (n < 0 || max_level < 0 || max_level > n) {
    throw DomainError("normalized_krawtchouk: require 0 <= max_level <= n");
  }
  const int half = n / 2;
  const int l_direct = std::min(max_level, half);
  std::vector<std::vector<double>> kappa(static_cast<std::size_t>(max_level) + 1,
                                         std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int m = 0; m <= n; ++m) {
    const int m_eff = std::min(m, n - m);
    const bool flip_m = m_eff != m;
    const auto col = kappa_column(n, m_eff, l_direct);
    for (int l = 0; l <= max_level; ++l) {
      long double v;
      int parity_l;
      if (l <= l_direct) {
        v = col[static_cast<std::size_t>(l)];
        parity_l = l;
      } else {
        // l > n/2: kappa_l(m) = (-1)^m kappa_{n-l}(m), with n-l <= l_direct.
        const int lm = n - l;
        v = col[static_cast<std::size_t>(lm)];
        if (flip_m && (lm % 2) == 1) v = -v;
        if (m % 2 == 1) v = -v;
        kappa[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] = static_cast<double>(v);
        continue;
      }
      if (flip_m && (parity_l % 2) == 1) v = -v;
      kappa[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] = static_cast<double>(v);
    }
  }
  return kappa;
}

double level_weight(int n, int m) {
  if (m < 0 || m > n) return 0.0;
  return std::exp(log_binomial(n, m) - n * std::log(2.0));
}

// ---- symmetric functions ---------------------------------------------------

SymmetricProfile::SymmetricProfile(int n, std::vector<double> levels)
    : n_(n), levels_(std::move(levels)) {
  if (n_ < 1) throw DomainError("SymmetricProfile: dimension must be at least 1");
  if (levels_.size() != static_cast<std::size_t>(n_) + 1) {
    throw DomainError("SymmetricProfile: expected n+1 level values");
  }
  for (double v : levels_) {
    if (!std::isfinite(v)) throw DomainError("SymmetricProfile: non-finite entry");
  }
}

double SymmetricProfile::norm(double p) const {
  if (!(p >= 1.0)) throw DomainError("norm: exponent must be >= 1");
  double m = 0.0;
  for (double v : levels_) m = std::max(m, std::abs(v));
  if (std::isinf(p) || m == 0.0) return m;
  long double s = 0.0L;
  for (int k = 0; k <= n_; ++k) {
    s += level_weight(n_, k) * std::pow(static_cast<long double>(std::abs(levels_[k]) / m), p);
  }
  return m * static_cast<double>(std::pow(s, 1.0L / p));
}

std::vector<double> SymmetricProfile::level_coefficients(int max_level) const {
  const auto kappa = normalized_krawtchouk(n_, max_level);
  std::vector<double> out(static_cast<std::size_t>(max_level) + 1, 0.0);
  for (int l = 0; l <= max_level; ++l) {
    long double s = 0.0L;
    for (int m = 0; m <= n_; ++m) {
      s += static_cast<long double>(level_weight(n_, m)) * levels_[static_cast<std::size_t>(m)] *
           kappa[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)];
    }
    out[static_cast<std::size_t>(l)] = static_cast<double>(s);
  }
  return out;
}

SymmetricPoly::SymmetricPoly(int n, std::vector<double> alpha) : n_(n), alpha_(std::move(alpha)) {
  if (n_ < 1) throw DomainError("SymmetricPoly: dimension must be at least 1");
  if (alpha_.size() > static_cast<std::size_t>(n_) + 1) {
    throw DomainError("SymmetricPoly: degree exceeds dimension");
  }
  for (double v : alpha_) {
    if (!std::isfinite(v)) throw DomainError("SymmetricPoly: non-finite coefficient");
  }
}

SymmetricPoly SymmetricPoly::elementary(int n, int l) {
  if (l < 0 || l > n) throw DomainError("elementary: level outside [0, n]");
  std::vector<double> alpha(static_cast<std::size_t>(l) + 1, 0.0);
  alpha.back() = 1.0;
  return SymmetricPoly(n, std::move(alpha));
}

int SymmetricPoly::degree() const {
  for (int l = static_cast<int>(alpha_.size()) - 1; l >= 0; --l) {
    if (alpha_[static_cast<std::size_t>(l)] != 0.0) return l;
  }
  return -1;
}

SymmetricPoly operator-(const SymmetricPoly& a, const SymmetricPoly& b) {
  if (a.n() != b.n()) throw DomainError("SymmetricPoly: dimension mismatch");
  std::vector<double> alpha(std::max(a.alpha().size(), b.alpha().size()), 0.0);
  for (std::size_t l = 0; l < a.alpha().size(); ++l) alpha[l] += a.alpha()[l];
  for (std::size_t l = 0; l < b.alpha().size(); ++l) alpha[l] -= b.alpha()[l];
  while (!alpha.empty() && alpha.back() == 0.0) alpha.pop_back();
  return SymmetricPoly(a.n(), std::move(alpha));
}

SymmetricPoly operator*(double c, const SymmetricPoly& a) {
  std::vector<double> alpha(a.alpha());
  for (double& v : alpha) v *= c;
  while (!alpha.empty() && alpha.back() == 0.0) alpha.pop_back();
  return SymmetricPoly(a.n(), std::move(alpha));
}

SymmetricProfile build_H(int k, int n) {
  if (k < 1 || n < k) throw DomainError("build_H: require n >= k >= 1");
  std::vector<double> levels(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    levels[static_cast<std::size_t>(m)] = chebyshev_value(k, static_cast<double>(n - 2 * m) / n);
  }
  return SymmetricProfile(n, std::move(levels));
}

BetaExpansion beta_expansion(int k, int n) {
  if (k < 0 || n < k || n < 1) throw DomainError("beta_expansion: require n >= k >= 0");
  // Chebyshev recurrence carried out in the f_l basis, where multiplication
  // by s = x_1 + ... + x_n acts as s f_l = (l+1) f_{l+1} + (n-l+1) f_{l-1}.
  const auto size = static_cast<std::size_t>(k) + 1;
  auto times_s = [&](const std::vector<long double>& v) {
    std::vector<long double> out(size, 0.0L);
    for (std::size_t j = 0; j < size; ++j) {
      long double acc = 0.0L;
      if (j >= 1) acc += static_cast<long double>(j) * v[j - 1];
      if (j + 1 < size) acc += static_cast<long double>(n - static_cast<int>(j)) * v[j + 1];
      out[j] = acc;
    }
    return out;
  };
  std::vector<long double> prev(size, 0.0L);
  prev[0] = 1.0L;  // T_0
  std::vector<long double> cur = prev;
  if (k >= 1) {
    cur = times_s(prev);
    for (auto& v : cur) v /= n;  // T_1(s/n)
    for (int j = 1; j < k; ++j) {
      auto next = times_s(cur);
      for (std::size_t l = 0; l < size; ++l) next[l] = 2.0L * next[l] / n - prev[l];
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  BetaExpansion out;
  out.beta.assign(cur.begin(), cur.end());
  for (int l = 0; l <= k; ++l) {
    if ((k - l) % 2 != 0) out.beta[static_cast<std::size_t>(l)] = 0.0;  // parity of T_k
  }
  // Residual against direct evaluation of T_k on every level.
  // Binomials by product: exp(lgamma) loses ~1e-13 relative at n in the
  // hundreds, which the cancellation below turns into visible residual.
  const auto kappa = normalized_krawtchouk(n, k);
  std::vector<long double> choose(size, 1.0L);
  for (std::size_t l = 1; l < size; ++l) {
    choose[l] = choose[l - 1] * static_cast<long double>(n - static_cast<int>(l) + 1) / static_cast<long double>(l);
  }
  for (int m = 0; m <= n; ++m) {
    long double s = 0.0L;
    for (int l = 0; l <= k; ++l) {
      s += static_cast<long double>(out.beta[static_cast<std::size_t>(l)]) * choose[static_cast<std::size_t>(l)] *
           kappa[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)];
    }
    const double target = chebyshev_value(k, static_cast<double>(n - 2 * m) / n);
    out.max_residual = std::max(out.max_residual, static_cast<double>(std::abs(s - target)));
  }
  return out;
}

SymmetricPoly build_phi(int d, int k, int n, std::vector<std::string>* diagnostics) {
  if (d < 0) return SymmetricPoly(std::max(n, 1), {});
  if (!(n >= k && k >= d)) throw DomainError("build_phi: require n >= k >= d");
  if ((k - d) % 2 != 0) {
    throw DomainError("build_phi: k - d must be even (use k - 1 for odd parity)");
  }
  const BetaExpansion be = beta_expansion(k, n);
  std::vector<double> alpha(static_cast<std::size_t>(d) + 1, 0.0);
  for (int l = d; l >= 0; l -= 2) {
    const double b = be.beta[static_cast<std::size_t>(l)];
    const int s = sign_of(b);
    if (s == 0 && diagnostics) {
      diagnostics->push_back("beta_{" + std::to_string(l) + "," + std::to_string(k) + "," +
                             std::to_string(n) + "} vanishes; term dropped");
    }
    alpha[static_cast<std::size_t>(l)] = s;
  }
  while (!alpha.empty() && alpha.back() == 0.0) alpha.pop_back();
  return SymmetricPoly(n, std::move(alpha));
}

double symmetric_bound(const SymmetricPoly& poly, int k) {
  if (poly.degree() > k) throw DomainError("symmetric_bound: degree exceeds k");
  double s = 0.0;
  for (int l = 0; l <= poly.degree(); ++l) {
    const double a = poly.alpha()[static_cast<std::size_t>(l)];
    if (a != 0.0) s += std::abs(a) * static_cast<double>(std::llabs(tilde_c(k, l)));
  }
  return s;
}

BooleanFunction profile_to_dense(const SymmetricProfile& p) {
  const auto& levels = p.levels();
  return BooleanFunction::generate(p.n(), [&](Mask x) { return levels[static_cast<std::size_t>(popcount(x))]; });
}

SymmetricProfile sympoly_to_profile(const SymmetricPoly& poly) {
  const int n = poly.n();
  std::vector<double> levels(static_cast<std::size_t>(n) + 1, 0.0);
  for (int m = 0; m <= n; ++m) {
    long double s = 0.0L;
    for (std::size_t l = 0; l < poly.alpha().size(); ++l) {
      const double a = poly.alpha()[l];
      if (a != 0.0) s += static_cast<long double>(a) * elem_sym_value(n, static_cast<int>(l), m).value;
    }
    levels[static_cast<std::size_t>(m)] = static_cast<double>(s);
  }
  return SymmetricProfile(n, std::move(levels));
}

}  // namespace tailspace
