#pragma once

// inf over g in P_I of |f - g|_p, with a primal g and a dual h certifying the
// value. The dual side is E[f h] over h with spectrum off I and |h|_{p*} <= 1.
//
// Paths:
//   p = 2          Parseval, exact.
//   p = 1, inf     dense simplex when the tableau fits, else restarted PDHG.
//   other p        Newton on the smooth dual (p < 2) or the constrained
//                  primal (p > 2).
//   symmetric f    the same LPs over level profiles, p in {1, 2, inf}.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tailspace/chebyshev.hpp"
#include "tailspace/hypercube.hpp"
#include "tailspace/json_io.hpp"

namespace tailspace {

struct DistanceQuery {
  std::variant<BooleanFunction, SymmetricProfile> f;
  SpectralSet levels;  // I, the levels g may use; the tail is above(n, k)
  double p = 1.0;
  double tol = 1e-9;
};

struct DistanceResult {
  double value = 0.0;
  double lower = 0.0;
  double gap = 0.0;
  double p = 1.0;
  std::vector<int> levels;
  bool converged = true;
  std::string method;

  // Dense witnesses.
  std::optional<Spectrum> primal_g;
  std::optional<BooleanFunction> dual_h;
  // Symmetric witnesses (level profiles).
  std::optional<SymmetricProfile> primal_g_profile;
  std::optional<SymmetricProfile> dual_h_profile;
};

struct DistanceOptions {
  double tol = 1e-9;
  // Largest simplex tableau, in doubles, before switching to PDHG.
  std::size_t simplex_budget = 8'000'000;
  long first_order_iterations = 200'000;
};

DistanceResult distance(const BooleanFunction& f, const SpectralSet& levels, double p,
                        const DistanceOptions& opts = {});
DistanceResult distance(const DistanceQuery& q);

// p in {1, 2, inf}. The SymmetricPoly overload reads the level coefficients
// off alpha exactly instead of integrating the profile.
DistanceResult distance_symmetric(const SymmetricProfile& f, const SpectralSet& levels, double p,
                                  const DistanceOptions& opts = {});
DistanceResult distance_symmetric(const SymmetricPoly& f, const SpectralSet& levels, double p,
                                  const DistanceOptions& opts = {});

struct DualSup {
  double value = 0.0;
  BooleanFunction h;
  bool converged = true;
};

// sup { E[f h] : h of degree <= k, |h|_inf <= 1 }.
DualSup dual_sup(const BooleanFunction& f, int k, double tol = 1e-9);

Json to_json(const DistanceResult& r);

}  // namespace tailspace
