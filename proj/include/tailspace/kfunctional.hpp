#pragma once

// Lions-Peetre K-functionals K(a, t; A0, A1) = inf { |a0|_A0 + t |a1|_A1 : a = a0 + a1 }
// for the finite-dimensional pairs (l1, l2), (l2, l_inf) and (l2, l_q).
//
// Every evaluation returns a primal decomposition and a dual vector u that is
// feasible for max { <a, u> : |u|_{A0*} <= 1, |u|_{A1*} <= t }, so the
// reported value is certified up to `gap`.

#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "tailspace/hypercube.hpp"

namespace tailspace {

class InterpolationPair {
 public:
  enum class Kind { L1_L2, L2_Linf, L2_Lq };

  static InterpolationPair l1_l2() { return InterpolationPair(Kind::L1_L2, 2.0); }
  static InterpolationPair l2_linf() { return InterpolationPair(Kind::L2_Linf, kInf); }
  // q in (2, inf]; q = inf is the (l2, l_inf) pair.
  static InterpolationPair l2_lq(double q);
  // (l2, l_{2d/(d-1)}); d = 1 gives (l2, l_inf).
  static InterpolationPair bohnenblust_hille_dual(int d);

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  std::string name() const;

  double a0_norm(std::span<const double> v) const;
  double a1_norm(std::span<const double> v) const;
  double a0_dual_norm(std::span<const double> v) const;
  double a1_dual_norm(std::span<const double> v) const;

 private:
  InterpolationPair(Kind kind, double q) : kind_(kind), q_(q) {}
  Kind kind_;
  double q_;
};

// Plain l_p norm of a vector (counting measure); p = kInf for the max.
double lp_norm(std::span<const double> v, double p);

struct KQuery {
  std::vector<double> a;
  double t = 0.0;
  InterpolationPair pair = InterpolationPair::l2_linf();
};

struct KResult {
  double value = 0.0;
  std::vector<double> a0;    // witness decomposition, a = a0 + a1
  std::vector<double> a1;
  std::vector<double> dual;  // u with |u|_{A0*} <= 1 and |u|_{A1*} <= t
  double pairing = 0.0;      // <a, u>, a certified lower bound
  double dual_slack0 = 0.0;  // 1 - |u|_{A0*}
  double dual_slack1 = 0.0;  // t - |u|_{A1*}
  double gap = 0.0;          // value - pairing
  bool converged = true;
  int iterations = 0;
};

// Exact for (l1,l2) and (l2,l_inf) through the closed one-parameter
// soft-threshold/clipping families; certified 1-D convex solve for (l2,l_q).
// A cancelled or exhausted (l2,l_q) solve returns its best bracket with
// converged = false.
KResult k_exact(const KQuery& query, double tol = 1e-7, std::stop_token stop = {});

// min over r in {0..n} of (sum_{i<=r} a*_i^2)^{1/2} + k a*_{r+1}, a* the
// decreasing rearrangement of |a| and a*_{n+1} = 0. Ties go to the smaller r.
double k_minformula(std::span<const double> a, double k);
// The minimizing r of k_minformula.
int k_minformula_argmin(std::span<const double> a, double k);

// |E f| + max_i |f^({i})| + sqrt((r-1)/r) (sum_i f^({i})^2)^{1/2}, r in (1, inf].
double thm12_rhs(const Spectrum& s, double r);

// K(a, sqrt(r*); l1, l2) with r* the conjugate exponent of r.
KResult hitczenko_value(std::span<const double> a, double r);

// max(|y|_{A0*}, |y|_{A1*} / t), the norm of y in the dual of (R^n, K(., t)).
double dual_intersection_norm(std::span<const double> y, double t, const InterpolationPair& pair);

}  // namespace tailspace
