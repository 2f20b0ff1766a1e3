#pragma once

// Dense two-phase tableau simplex for  min c^T z  s.t.  A z = b, z >= 0.
// Returns both the primal point and the equality multipliers y (A^T y <= c
// at optimality), polished by a final LU solve on the optimal basis.

#include <cstddef>
#include <vector>

namespace tailspace {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

// Row-major m x ncols matrix.
struct DenseLp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> z;
  std::vector<double> y;
  double objective = 0.0;
  long pivots = 0;
};

struct SimplexOptions {
  long max_pivots = 200000;
  double pivot_tol = 1e-9;
  double cost_tol = 1e-11;
  // Degenerate pivots in a row before switching to Bland's rule.
  int bland_after = 50;
  // Pivots between refactorizations of the tableau.
  long reinvert_every = 150;
  // Right-hand sides are shifted by up to this fraction of max |b| while
  // pivoting, which breaks the massive degeneracy of Walsh systems. The final
  // basis is re-solved against the exact b.
  double perturbation = 1e-7;
  // Optional starting basis, one column per row. Phase 1 is skipped when it is
  // nonsingular and primal feasible; otherwise it is ignored.
  std::vector<std::size_t> initial_basis;
};

LpSolution simplex_solve(const DenseLp& lp, const SimplexOptions& opts = {});

// Tableau footprint in doubles; callers use it to pick a solver.
inline std::size_t simplex_footprint(std::size_t rows, std::size_t cols) {
  return (rows + 1) * (cols + rows + 1);
}

}  // namespace tailspace
