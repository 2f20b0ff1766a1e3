#pragma once

// Slow, independent reference computations. Nothing here calls the library's
// transform, recurrences or solvers.

#include <cstdint>
#include <random>
#include <vector>

#include "tailspace/distance.hpp"
#include "tailspace/hypercube.hpp"

namespace oracle {

using tailspace::Mask;

// prod_{i in S} x_i with x_i = -1 iff bit i of x is set, by explicit product.
double character(Mask s, Mask x, int n);

// f^(S) = 2^-n sum_x f(x) w_S(x), O(4^n).
std::vector<double> naive_spectrum(const std::vector<double>& values, int n);
std::vector<double> naive_synthesis(const std::vector<double>& coeffs, int n);

std::vector<double> random_values(int n, std::mt19937_64& rng);

// Mean-measure L_p norm, p = inf allowed.
double mean_norm(const std::vector<double>& v, double p);

// c(k, l) from the closed form c(k, k-2j) = (-1)^j k C(k-j, j) 2^(k-2j) / (2(k-j)).
std::vector<std::int64_t> chebyshev_closed(int k);

// f_l at the point whose first m coordinates are -1, by summing over all l-subsets.
double elem_sym_brute(int n, int l, int m);

// Level profile of T_k((n - 2m)/n) through cos(k arccos t).
std::vector<double> h_profile_trig(int k, int n);

// min over a dense lambda grid of the clip / soft-threshold objectives.
double k_l2_linf_grid(const std::vector<double>& a, double t, int steps = 200000);
double k_l1_l2_grid(const std::vector<double>& a, double t, int steps = 200000);

// Every r in {0..n} of the min-formula, no tie handling.
double minformula_enumerate(std::vector<double> a, double k);

// Independent audit of a dense DistanceResult.
struct Audit {
  double primal = 0.0;        // |f - g|_p recomputed from primal_g
  double dual = 0.0;          // E[f h] recomputed from dual_h
  double g_off_levels = 0.0;  // max |g^(S)| with |S| outside I
  double h_on_levels = 0.0;   // max |h^(S)| with |S| in I
  double h_dual_norm = 0.0;   // |h|_{p*}
};
Audit audit(const tailspace::BooleanFunction& f, const tailspace::SpectralSet& levels, double p,
            const tailspace::DistanceResult& r);

}  // namespace oracle
