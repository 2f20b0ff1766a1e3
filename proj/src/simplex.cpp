#include "tailspace/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "tailspace/errors.hpp"

namespace tailspace {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
    case LpStatus::IterationLimit:
      return "iteration_limit";
  }
  return "?";
}

namespace {

class Tableau {
 public:
  Tableau(const DenseLp& lp, const SimplexOptions& opts)
      : lp_(lp), m_(lp.rows), n_(lp.cols), w_(lp.cols + lp.rows + 1), opts_(opts),
        t_((m_ + 1) * w_, 0.0), basis_(m_), sign_(m_, 1.0), rhs_(m_) {
    double bscale = 1.0;
    for (double v : lp.b) bscale = std::max(bscale, std::abs(v));
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = lp.b[i] < 0.0 ? -1.0 : 1.0;
      // Deterministic shift in [0.5, 1) * perturbation * bscale.
      const double u = 0.5 + 0.5 * std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
      rhs_[i] = std::abs(lp.b[i]) + opts.perturbation * bscale * u;
      double* row = &t_[i * w_];
      for (std::size_t j = 0; j < n_; ++j) row[j] = sign_[i] * lp.at(i, j);
      row[n_ + i] = 1.0;
      row[w_ - 1] = rhs_[i];
      basis_[i] = n_ + i;
    }
  }

  // Objective row for costs over all n + m columns (artificials last).
  void load_costs(const std::vector<double>& cost) {
    cost_ = cost;
    double* obj = objective_row();
    std::fill(obj, obj + w_, 0.0);
    for (std::size_t j = 0; j + 1 < w_; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[i * w_];
      for (std::size_t j = 0; j < w_; ++j) obj[j] -= cb * row[j];
    }
  }

  // Rebuild every row as B^-1 [A | I] from the original data to shed the
  // rounding accumulated over many pivots.
  bool reinvert() {
    const auto m = static_cast<Eigen::Index>(m_);
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t bj = basis_[k];
      for (std::size_t i = 0; i < m_; ++i) {
        basis_matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = column_entry(i, bj);
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!(lu.rcond() > 1e-13)) return false;
    Eigen::MatrixXd full(m, static_cast<Eigen::Index>(w_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j + 1 < w_; ++j) full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = column_entry(i, j);
      full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(w_ - 1)) = rhs_[i];
    }
    const Eigen::MatrixXd solved = lu.solve(full);
    if (!solved.allFinite()) return false;
    min_rhs_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) min_rhs_ = std::min(min_rhs_, solved(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(w_ - 1)));
    for (std::size_t i = 0; i < m_; ++i) {
      double* row = &t_[i * w_];
      for (std::size_t j = 0; j < w_; ++j) {
        const double v = solved(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        row[j] = std::abs(v) < 1e-14 ? 0.0 : v;
      }
      row[basis_[i]] = 1.0;
      row[w_ - 1] = std::max(row[w_ - 1], 0.0);
    }
    load_costs(cost_);
    return true;
  }

  // Installs a caller-supplied basis. When it is singular or infeasible the
  // artificial basis is restored and false is returned.
  bool install(const std::vector<std::size_t>& basis, double scale) {
    if (basis.size() != m_) return false;
    std::vector<char> seen(n_, 0);
    for (std::size_t j : basis) {
      if (j >= n_ || seen[j]) return false;
      seen[j] = 1;
    }
    basis_ = basis;
    cost_.assign(n_ + m_, 0.0);
    if (reinvert() && min_rhs_ >= -1e-9 * scale) return true;
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
    reinvert();
    return false;
  }

  // Runs pivots over columns [0, limit). Returns the terminal status.
  LpStatus run(std::size_t limit, long& pivots) {
    const double* obj = objective_row();
    int degenerate = 0;
    long since_reinvert = 0;
    std::vector<char> blocked(limit, 0);
    while (true) {
      if (pivots >= opts_.max_pivots) return LpStatus::IterationLimit;
      const bool bland = degenerate >= opts_.bland_after;
      std::size_t enter = limit;
      double best = -opts_.cost_tol;
      for (std::size_t j = 0; j < limit; ++j) {
        if (!blocked[j] && obj[j] < best) {
          enter = j;
          if (bland) break;
          best = obj[j];
        }
      }
      if (enter == limit) return LpStatus::Optimal;

      std::size_t leave = m_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double piv = t_[i * w_ + enter];
        if (piv <= opts_.pivot_tol) continue;
        const double r = t_[i * w_ + w_ - 1] / piv;
        const double slack = leave < m_ ? 1e-12 * std::max(1.0, std::abs(ratio)) : 0.0;
        if (leave == m_ || r < ratio - slack) {
          ratio = r;
          leave = i;
        } else if (r <= ratio + slack && leave < m_) {
          const bool better = bland ? basis_[i] < basis_[leave]
                                    : piv > t_[leave * w_ + enter];
          if (better) {
            ratio = std::min(ratio, r);
            leave = i;
          }
        }
      }
      if (leave == m_) {
        // A clearly negative reduced cost over a nonpositive column is a ray;
        // a marginal one is rounding, so skip the column for this round.
        if (obj[enter] < -1e-7 && column_nonpositive(enter)) return LpStatus::Unbounded;
        blocked[enter] = 1;
        continue;
      }
      std::fill(blocked.begin(), blocked.end(), 0);
      degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;
      pivot(leave, enter);
      ++pivots;
      if (++since_reinvert >= opts_.reinvert_every) {
        reinvert();
        since_reinvert = 0;
      }
    }
  }

  // Pivot basic artificials out where a structural column allows it.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      const double* row = &t_[i * w_];
      std::size_t best = n_;
      double mag = opts_.pivot_tol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(row[j]) > mag) {
          mag = std::abs(row[j]);
          best = j;
        }
      }
      if (best < n_) pivot(i, best);
    }
  }

  bool dual_feasible(std::size_t limit) const {
    for (std::size_t j = 0; j < limit; ++j) {
      if (t_[m_ * w_ + j] < -opts_.cost_tol) return false;
    }
    return true;
  }

  double objective_value() const { return -t_[m_ * w_ + w_ - 1]; }
  double rhs(std::size_t i) const { return t_[i * w_ + w_ - 1]; }
  double reduced_cost(std::size_t j) const { return t_[m_ * w_ + j]; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  double sign(std::size_t i) const { return sign_[i]; }

 private:
  double* objective_row() { return &t_[m_ * w_]; }

  void pivot(std::size_t r, std::size_t col) {
    double* prow = &t_[r * w_];
    const double inv = 1.0 / prow[col];
    nz_.clear();
    for (std::size_t j = 0; j < w_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    prow[col] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * w_];
      const double f = row[col];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) row[j] -= f * prow[j];
      row[col] = 0.0;
    }
    basis_[r] = col;
  }

  bool column_nonpositive(std::size_t col) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (t_[i * w_ + col] > 1e-12) return false;
    }
    return true;
  }

  // Entry (i, j) of the sign-flipped system [A | I].
  double column_entry(std::size_t i, std::size_t j) const {
    if (j < n_) return sign_[i] * lp_.at(i, j);
    return j - n_ == i ? 1.0 : 0.0;
  }

  const DenseLp& lp_;
  std::size_t m_, n_, w_;
  SimplexOptions opts_;
  std::vector<double> cost_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<double> sign_;
  std::vector<double> rhs_;
  std::vector<std::size_t> nz_;
  double min_rhs_ = 0.0;
};

// Re-solve x_B = B^-1 b and y = B^-T c_B on the final basis.
void polish(const DenseLp& lp, const Tableau& tab, LpSolution& sol) {
  const std::size_t m = lp.rows;
  if (m == 0) return;
  Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  Eigen::VectorXd cb(static_cast<Eigen::Index>(m));
  Eigen::VectorXd b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = tab.basis()[i];
    const auto col = static_cast<Eigen::Index>(i);
    if (bj < lp.cols) {
      for (std::size_t r = 0; r < m; ++r) basis_matrix(static_cast<Eigen::Index>(r), col) = lp.at(r, bj);
      cb(col) = lp.c[bj];
    } else {
      const std::size_t r = bj - lp.cols;
      basis_matrix(static_cast<Eigen::Index>(r), col) = tab.sign(r);
      cb(col) = 0.0;
    }
    b(static_cast<Eigen::Index>(i)) = lp.b[i];
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
  const Eigen::VectorXd xb = lu.solve(b);
  const Eigen::VectorXd y = lu.transpose().solve(cb);
  if (!xb.allFinite() || !y.allFinite()) return;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if ((basis_matrix * xb - b).cwiseAbs().maxCoeff() > 1e-9 * scale) return;
  std::vector<double> z(lp.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = tab.basis()[i];
    const double v = xb(static_cast<Eigen::Index>(i));
    if (bj >= lp.cols) continue;
    if (v < -1e-9 * scale) return;
    z[bj] = std::max(v, 0.0);
  }
  sol.z = std::move(z);
  for (std::size_t i = 0; i < m; ++i) sol.y[i] = y(static_cast<Eigen::Index>(i));
}

}  // namespace

LpSolution simplex_solve(const DenseLp& lp, const SimplexOptions& opts) {
  if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || lp.c.size() != lp.cols) {
    throw DomainError("simplex_solve: inconsistent dimensions");
  }
  LpSolution sol;
  double bscale = 1.0;
  for (double v : lp.b) bscale = std::max(bscale, std::abs(v));
  Tableau tab(lp, opts);
  const std::size_t all = lp.cols + lp.rows;
  std::vector<double> cost(all, 0.0);
  if (opts.initial_basis.empty() || !tab.install(opts.initial_basis, bscale)) {
    std::fill(cost.begin() + static_cast<std::ptrdiff_t>(lp.cols), cost.end(), 1.0);
    tab.load_costs(cost);
    sol.status = tab.run(all, sol.pivots);
    if (sol.status == LpStatus::IterationLimit) return sol;
    if (tab.objective_value() > 1e-9 * bscale) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    tab.expel_artificials();
  }
  std::copy(lp.c.begin(), lp.c.end(), cost.begin());
  std::fill(cost.begin() + static_cast<std::ptrdiff_t>(lp.cols), cost.end(), 0.0);
  tab.load_costs(cost);
  // Optimality is re-checked on a freshly inverted tableau.
  for (int round = 0; round < 4; ++round) {
    sol.status = tab.run(lp.cols, sol.pivots);
    if (sol.status != LpStatus::Optimal || !tab.reinvert() || tab.dual_feasible(lp.cols)) break;
  }
  if (sol.status != LpStatus::Optimal) return sol;

  sol.z.assign(lp.cols, 0.0);
  for (std::size_t i = 0; i < lp.rows; ++i) {
    const std::size_t bj = tab.basis()[i];
    if (bj < lp.cols) sol.z[bj] = std::max(tab.rhs(i), 0.0);
  }
  sol.y.assign(lp.rows, 0.0);
  for (std::size_t i = 0; i < lp.rows; ++i) sol.y[i] = -tab.sign(i) * tab.reduced_cost(lp.cols + i);
  polish(lp, tab, sol);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < lp.cols; ++j) sol.objective += lp.c[j] * sol.z[j];
  return sol;
}

}  // namespace tailspace
