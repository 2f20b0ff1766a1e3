#pragma once

// Inequality checks. Each check evaluates a statistic per instance (usually
// lhs / rhs), keeps the extreme values and the witness behind the worst one,
// and compares against a window. Hard windows encode proved inequalities;
// soft windows probe two-sided estimates without constants and only warn.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tailspace/chebyshev.hpp"
#include "tailspace/config.hpp"
#include "tailspace/hypercube.hpp"
#include "tailspace/json_io.hpp"

namespace tailspace {

enum class Verdict { Pass, Fail };

struct SweepRow {
  std::string check_id;
  long instance = 0;
  int n = 0;
  int k = -1;
  int d = -1;
  double r = 0.0;  // exponent where relevant, 0 otherwise
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::string status;  // ok | skipped | nonconverged
  std::string label;
};

struct CheckReport {
  std::string check_id;
  long instances = 0;
  long skipped = 0;
  // Statistic extremes over evaluated instances; NaN when nothing was evaluated.
  double worst_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  Window window;
  bool hard = true;
  Verdict verdict = Verdict::Pass;
  Json witness;  // the instance behind worst_ratio
  Json params;
  std::vector<std::string> notes;
  double runtime = 0.0;
  std::vector<SweepRow> rows;
};

struct ConstantEstimate {
  std::string quantity;  // M_pq_k, B_d, eps_n_k_d, ...
  double lower_bound = 0.0;
  Json params;
  Json witness;  // enough to recompute lower_bound with replay()
  std::vector<std::string> notes;
};

// Recomputes an estimate from its stored witness.
double replay(const ConstantEstimate& est);

// ---- instance generation ----------------------------------------------------

using HarnessRng = std::mt19937_64;

// Stable per-check, per-instance generator.
HarnessRng instance_rng(std::uint64_t seed, const std::string& check_id, std::uint64_t index);

// Degree <= max_level spectrum drawn from a mixture: independent normals on
// every admissible level, or one of the structured families (flat, geometric
// and one-spike Rademacher sums, a single character).
Spectrum random_instance(int n, int max_level, HarnessRng& rng);

// Nonnegative Rademacher weights by family name: flat, geometric, spike, random.
std::vector<double> weight_family(const std::string& family, int n, HarnessRng& rng);

// sum_i a_i x_i, evaluated pointwise.
BooleanFunction rademacher_sum(const std::vector<double>& a, double constant = 0.0);

// ---- checks -------------------------------------------------------------------

// max |Rad_l h|_inf / |h|_inf over degree <= k functions for each l <= d,
// divided by |tilde_c(k, l)|. Hard window [0, 1 + 1e-9].
CheckReport check_figiel(int k, int d, int n, long budget, const RunConfig& cfg);

// One symmetric polynomial: L1 distance from the tail above k against the
// symmetric bound. `dense` routes through the full-cube LP when it fits.
CheckReport check_symmetric(const SymmetricPoly& alpha, int k, bool dense, const RunConfig& cfg);
// Random symmetric polynomials; even instances dense (n <= 12), odd symmetric (n <= 200).
CheckReport check_symmetric_sweep(long trials, const RunConfig& cfg);

// |tilde_c(k, d)| - certified lower bound on the L1 distance of f_d from the tail.
ConstantEstimate measure_epsilon(int d, int k, int n, const RunConfig& cfg);
// Sweep over n: hard eps >= -1e-8, C/n fit, monotonicity noted.
CheckReport check_corollary(int d, int k, const std::vector<int>& ns, const RunConfig& cfg,
                            std::vector<ConstantEstimate>* estimates = nullptr);

// L1 distance over K(f^_{<=d}, k^d; l2, l_{2d/(d-1)}). Soft window [0, C].
// For d = 1 the second report compares against the direct Rademacher-sum
// pipeline and is hard.
std::vector<CheckReport> check_thm_main(int d, int k, int n, long trials, double C, const RunConfig& cfg);

// L_r distance from the tail above 1 over the Hitczenko-type expression.
CheckReport check_thm_dual_hit(int n, long trials, const std::vector<double>& r_grid, const RunConfig& cfg);

// L1 distance of f_a from the tail above k over the min-formula.
CheckReport check_ole(std::vector<double> a, int k, const RunConfig& cfg);
// L_inf distance of f_a from P_{0,2..k} over max(|a|_2, |a|_1 / k).
CheckReport check_ole_dual_remark(std::vector<double> a, int k, const RunConfig& cfg);

// Witness-certified lower bound on B_d by search over degree <= d functions.
ConstantEstimate bh_search(int d, int n, long budget, const RunConfig& cfg);
CheckReport check_bh(int d, int n, long budget, const RunConfig& cfg, ConstantEstimate* estimate = nullptr);

// L1 distance from the tail above d over B |f^_{<=d}|_{2d/(d-1)}. Violations
// certify B < B_d; the largest implied constant is returned in `raised`.
CheckReport check_dual_bh(int d, int n, long trials, double B, const RunConfig& cfg,
                          ConstantEstimate* raised = nullptr);

struct MomEstimate {
  ConstantEstimate primal;  // max |f|_q / |f|_p over degree <= k
  ConstantEstimate dual;    // max dist_{p*}(f) / dist_{q*}(f), tail above k
  CheckReport agreement;    // dual / primal, hard window [0.9, 1/0.9]
};
MomEstimate estimate_mom_constant(double p, double q, int k, int n, long budget, const RunConfig& cfg);

// ---- orchestration ------------------------------------------------------------

struct VerifyOutcome {
  std::vector<CheckReport> reports;
  std::vector<ConstantEstimate> estimates;
  bool hard_ok() const;
  bool soft_ok() const;
};

// figiel, symmetric, corollary, main, dualhit, ole, oledual, bh, dualbh, mom.
const std::vector<std::string>& check_ids();
// Runs one check id (or "all") with defaults filled in from cfg. DomainError
// for an unknown id.
VerifyOutcome run_verify(const std::string& id, const RunConfig& cfg);

// Combines per-instance reports of one check, preserving order.
CheckReport merge_reports(const std::string& check_id, const std::vector<CheckReport>& parts);
// Recomputes worst_ratio and verdict from the extremes and window.
void finalize(CheckReport& report);

}  // namespace tailspace
