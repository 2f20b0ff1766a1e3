#pragma once

// Chebyshev coefficients, elementary symmetric polynomials on the hypercube
// and the symmetric-function toolkit built on them.
//
// f_l denotes the l-th elementary symmetric multilinear polynomial, the sum
// of all w_S with |S| = l. Its value at a point with m coordinates equal to
// -1 is the Krawtchouk number K_l(m) = sum_j (-1)^j C(m,j) C(n-m,l-j).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tailspace/hypercube.hpp"

namespace tailspace {

// ---- exact integer helpers ------------------------------------------------

// C(n, k) as an exact 64-bit integer; OverflowError outside the window.
std::int64_t binomial_exact(int n, int k);
// C(n, k) in floating point (exact below 2^53).
double binomial(int n, int k);
double log_binomial(int n, int k);

// ---- Chebyshev ------------------------------------------------------------

struct ChebyshevRow {
  int k = 0;
  std::vector<std::int64_t> c;  // c[l] = coefficient of x^l in T_k
};

// Exact coefficients via T_{k+1} = 2x T_k - T_{k-1}. OverflowError once a
// coefficient leaves the signed 64-bit range.
ChebyshevRow chebyshev_row(int k);
std::int64_t chebyshev_coeff(int k, int l);

// c(k, l) if k - l is even, c(k - 1, l) otherwise.
std::int64_t tilde_c(int k, int l);

// |tilde_c(k, l)| * l! <= k^l, decided in 128-bit integer arithmetic.
bool tilde_c_within_factorial_bound(int k, int l);

// T_k(x) evaluated by the three-term recurrence.
double chebyshev_value(int k, double x);

// CSV table with header k,l,c,c_tilde,bound for 0 <= l <= k <= k_max.
void write_coefficient_csv(std::ostream& out, int k_max);

// ---- elementary symmetric values -------------------------------------------

struct SymValue {
  double value = 0.0;
  bool exact = false;  // false: integer window overflowed, float recurrence used
};

// f_l at any point with m coordinates equal to -1.
SymValue elem_sym_value(int n, int l, int m);

// kappa[l][m] = K_l(m) / C(n, l) for 0 <= l <= max_level, 0 <= m <= n.
// Bounded by 1 in absolute value; stable for n in the hundreds.
std::vector<std::vector<double>> normalized_krawtchouk(int n, int max_level);

// C(n, m) / 2^n, the mass of the level set {m coordinates equal to -1}.
double level_weight(int n, int m);

// ---- symmetric functions ---------------------------------------------------

class SymmetricProfile {
 public:
  SymmetricProfile(int n, std::vector<double> levels);

  int n() const { return n_; }
  // levels()[m] is the value at any point with m coordinates equal to -1.
  const std::vector<double>& levels() const { return levels_; }
  double operator[](int m) const { return levels_[static_cast<std::size_t>(m)]; }

  double norm(double p) const;
  // Common Walsh coefficient of the level-l characters, for l = 0..max_level.
  std::vector<double> level_coefficients(int max_level) const;

 private:
  int n_;
  std::vector<double> levels_;
};

// f = sum_l alpha[l] f_l.
class SymmetricPoly {
 public:
  SymmetricPoly(int n, std::vector<double> alpha);

  static SymmetricPoly elementary(int n, int l);

  int n() const { return n_; }
  const std::vector<double>& alpha() const { return alpha_; }
  // Largest l with alpha[l] != 0; -1 for the zero polynomial.
  int degree() const;

  bool operator==(const SymmetricPoly&) const = default;

 private:
  int n_;
  std::vector<double> alpha_;
};

SymmetricPoly operator-(const SymmetricPoly& a, const SymmetricPoly& b);
SymmetricPoly operator*(double c, const SymmetricPoly& a);

// H_{k,n}(x) = T_k((x_1 + ... + x_n) / n) as a level profile.
SymmetricProfile build_H(int k, int n);

struct BetaExpansion {
  std::vector<double> beta;  // H_{k,n} = sum_l beta[l] f_l
  double max_residual = 0.0; // max over m of |sum_l beta_l f_l(m) - T_k((n-2m)/n)|
};

BetaExpansion beta_expansion(int k, int n);

// phi_{d,k,n} = sum over l <= d with d - l even of sign(beta_{l,k,n}) f_l.
// Requires n >= k >= d and k - d even; d < 0 yields the zero polynomial.
// Vanishing betas give sign 0 and are reported through `diagnostics`.
SymmetricPoly build_phi(int d, int k, int n, std::vector<std::string>* diagnostics = nullptr);

// sum_l |alpha_l| |tilde_c(k, l)|, the upper bound on the L1 distance of
// sum_l alpha_l f_l from the tail space above level k.
double symmetric_bound(const SymmetricPoly& poly, int k);

BooleanFunction profile_to_dense(const SymmetricProfile& p);
SymmetricProfile sympoly_to_profile(const SymmetricPoly& poly);

}  // namespace tailspace
