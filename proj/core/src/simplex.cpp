#include "fluidmatch/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fluidmatch/error.hpp"

namespace fluidmatch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// In-place inverse of a dense column-major n x n matrix by Gauss-Jordan with
// partial pivoting. Returns false when a pivot falls below `tol`.
bool invert_dense(std::vector<double>& a, int n, double tol) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(c) * n + r]; };
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  auto iv = [&](int r, int c) -> double& { return inv[static_cast<std::size_t>(c) * n + r]; };
  for (int i = 0; i < n; ++i) iv(i, i) = 1.0;

  for (int col = 0; col < n; ++col) {
    int best = col;
    double best_abs = std::abs(at(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(at(r, col)) > best_abs) {
        best_abs = std::abs(at(r, col));
        best = r;
      }
    }
    if (best_abs < tol) return false;
    if (best != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(at(best, c), at(col, c));
        std::swap(iv(best, c), iv(col, c));
      }
    }
    const double piv = at(col, col);
    for (int c = 0; c < n; ++c) {
      at(col, c) /= piv;
      iv(col, c) /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = at(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        at(r, c) -= f * at(col, c);
        iv(r, c) -= f * iv(col, c);
      }
    }
  }
  a.swap(inv);
  return true;
}

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardFormLP& lp, const SimplexOptions& options)
      : lp_(lp), opt_(options), m_(lp.num_rows), n_(lp.num_cols()) {
    if (static_cast<int>(lp.rhs.size()) != m_ || static_cast<int>(lp.cost.size()) != n_) {
      throw ValidationError("simplex: cost/rhs dimensions do not match the constraint matrix");
    }
    row_entries_.resize(m_);
    slack_col_.assign(m_, -1);
    slack_row_.assign(n_, -1);
    for (int j = 0; j < n_; ++j) {
      const auto& entries = lp.columns[j].entries;
      for (const auto& [r, v] : entries) {
        if (r < 0 || r >= m_) throw ValidationError("simplex: row index out of range");
        row_entries_[r].emplace_back(j, v);
      }
      if (entries.size() == 1 && entries[0].second == 1.0 && slack_col_[entries[0].first] < 0) {
        slack_col_[entries[0].first] = j;
        slack_row_[j] = entries[0].first;
      }
    }
    x_.assign(n_, 0.0);
    in_basis_.assign(n_, false);
    pos_s_.assign(n_, -1);
    pos_r_.assign(m_, -1);
    covered_.assign(m_, false);
    dc_.assign(m_, 0.0);
    pi_.assign(m_, 0.0);
  }

  SimplexResult run(std::span<const int> initial_basis) {
    load_basis(initial_basis);
    SimplexResult result;
    const long max_iter =
        opt_.max_iterations > 0 ? opt_.max_iterations : 50L * (static_cast<long>(m_) + n_);

    bool bland = false;
    int degenerate_run = 0;
    int since_refactor = 0;
    std::vector<double> ds;
    std::vector<int> touched;

    while (true) {
      compute_duals();
      const int q = choose_entering(bland);
      if (q < 0) {
        result.status = SimplexStatus::Optimal;
        break;
      }
      if (result.iterations >= max_iter) {
        result.status = SimplexStatus::IterationLimit;
        break;
      }
      ftran(q, ds, touched);

      // Ratio test. Leaving candidate is either a structural position or a
      // covered row whose slack is basic.
      double best_ratio = kInf;
      double best_piv = 0.0;
      int leave_pos = -1;  // position in S
      int leave_row = -1;  // covered row
      int leave_col = std::numeric_limits<int>::max();
      auto consider = [&](double xval, double piv, int pos, int row, int col) {
        if (piv <= opt_.pivot_tolerance) return;
        const double ratio = std::max(xval, 0.0) / piv;
        bool take = false;
        if (ratio < best_ratio - 1e-12 * std::max(1.0, best_ratio)) {
          take = true;
        } else if (ratio <= best_ratio + 1e-12 * std::max(1.0, best_ratio)) {
          if (bland) {
            take = col < leave_col;
          } else {
            take = piv > best_piv * (1.0 + 1e-12) || (piv >= best_piv * (1.0 - 1e-12) && col < leave_col);
          }
        }
        if (take) {
          best_ratio = std::min(ratio, best_ratio);
          best_piv = piv;
          leave_pos = pos;
          leave_row = row;
          leave_col = col;
        }
      };
      for (int p = 0; p < static_cast<int>(s_.size()); ++p) consider(x_[s_[p]], ds[p], p, -1, s_[p]);
      for (int r : touched) consider(x_[slack_col_[r]], dc_[r], -1, r, slack_col_[r]);

      if (leave_pos < 0 && leave_row < 0) {
        clear_dc(touched);
        result.status = SimplexStatus::Unbounded;
        break;
      }

      const double step = best_ratio;
      for (int p = 0; p < static_cast<int>(s_.size()); ++p) x_[s_[p]] -= step * ds[p];
      for (int r : touched) x_[slack_col_[r]] -= step * dc_[r];
      x_[q] = step;

      pivot(q, leave_pos, leave_row, ds);
      clear_dc(touched);
      ++result.iterations;
      if (bland) ++result.bland_iterations;

      if (step <= 1e-12) {
        if (++degenerate_run >= opt_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      // A rebuild costs O(|S|^3) against O(|S|^2) per update, so large reduced
      // bases are rebuilt proportionally less often.
      if (++since_refactor >= std::max(opt_.refactor_interval, static_cast<int>(s_.size()))) {
        refactor();
        since_refactor = 0;
      }
    }

    refactor();
    compute_duals();
    result.primal.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (in_basis_[j]) result.primal[j] = std::max(x_[j], 0.0);
    }
    result.duals = pi_;
    result.objective = 0.0;
    for (int j = 0; j < n_; ++j) result.objective += lp_.cost[j] * result.primal[j];
    for (int j = 0; j < n_; ++j) {
      if (in_basis_[j]) result.basis.push_back(j);
    }
    return result;
  }

 private:
  double& inv(int p, int k) { return binv_[static_cast<std::size_t>(k) * s_.size() + p]; }

  void load_basis(std::span<const int> basis) {
    for (int j : basis) {
      if (j < 0 || j >= n_ || in_basis_[j]) throw ValidationError("simplex: malformed initial basis");
      in_basis_[j] = true;
      if (slack_row_[j] >= 0) {
        covered_[slack_row_[j]] = true;
      } else {
        pos_s_[j] = static_cast<int>(s_.size());
        s_.push_back(j);
      }
    }
    for (int r = 0; r < m_; ++r) {
      if (!covered_[r]) {
        pos_r_[r] = static_cast<int>(r_.size());
        r_.push_back(r);
      }
    }
    if (r_.size() != s_.size() || static_cast<int>(basis.size()) != m_) {
      throw ValidationError("simplex: initial basis has the wrong size");
    }
    refactor();
    for (int j : basis) {
      double scale = 1.0;
      for (const auto& e : lp_.columns[j].entries) scale = std::max(scale, std::abs(lp_.rhs[e.first]));
      if (x_[j] < -1e-9 * scale) throw ValidationError("simplex: initial basis is not primal feasible");
    }
  }

  // Rebuild the reduced inverse from scratch and recompute basic values.
  void refactor() {
    const int ns = static_cast<int>(s_.size());
    binv_.assign(static_cast<std::size_t>(ns) * ns, 0.0);
    for (int p = 0; p < ns; ++p) {
      for (const auto& [r, v] : lp_.columns[s_[p]].entries) {
        if (pos_r_[r] >= 0) binv_[static_cast<std::size_t>(p) * ns + pos_r_[r]] = v;
      }
    }
    if (!invert_dense(binv_, ns, 1e-13)) throw SolverError("simplex: basis matrix became singular");
    std::vector<double> b_r(ns);
    for (int k = 0; k < ns; ++k) b_r[k] = lp_.rhs[r_[k]];
    for (int p = 0; p < ns; ++p) {
      double acc = 0.0;
      for (int k = 0; k < ns; ++k) acc += inv(p, k) * b_r[k];
      x_[s_[p]] = acc;
    }
    for (int r = 0; r < m_; ++r) {
      if (!covered_[r]) continue;
      double acc = lp_.rhs[r];
      for (const auto& [col, v] : row_entries_[r]) {
        if (pos_s_[col] >= 0) acc -= v * x_[col];
      }
      x_[slack_col_[r]] = acc;
    }
  }

  void compute_duals() {
    const int ns = static_cast<int>(s_.size());
    for (int r = 0; r < m_; ++r) pi_[r] = covered_[r] ? lp_.cost[slack_col_[r]] : 0.0;
    std::vector<double> w(ns);
    for (int p = 0; p < ns; ++p) {
      double acc = lp_.cost[s_[p]];
      for (const auto& [r, v] : lp_.columns[s_[p]].entries) {
        if (covered_[r]) acc -= v * pi_[r];
      }
      w[p] = acc;
    }
    for (int k = 0; k < ns; ++k) {
      const double* col = &binv_[static_cast<std::size_t>(k) * ns];
      double acc = 0.0;
      for (int p = 0; p < ns; ++p) acc += col[p] * w[p];
      pi_[r_[k]] = acc;
    }
  }

  int choose_entering(bool bland) const {
    int best = -1;
    double best_d = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (in_basis_[j]) continue;
      double d = lp_.cost[j];
      for (const auto& [r, v] : lp_.columns[j].entries) d -= pi_[r] * v;
      const double tol = opt_.optimality_tolerance * std::max(1.0, std::abs(lp_.cost[j]));
      if (d >= -tol) continue;
      if (bland) return j;
      if (best < 0 || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    return best;
  }

  // ds = reduced-inverse * a_q restricted to uncovered rows; dc_[r] for covered rows.
  void ftran(int q, std::vector<double>& ds, std::vector<int>& touched) {
    const int ns = static_cast<int>(s_.size());
    ds.assign(ns, 0.0);
    touched.clear();
    for (const auto& [r, v] : lp_.columns[q].entries) {
      const int k = pos_r_[r];
      if (k >= 0) {
        const double* col = &binv_[static_cast<std::size_t>(k) * ns];
        for (int p = 0; p < ns; ++p) ds[p] += col[p] * v;
      } else {
        if (dc_[r] == 0.0) touched.push_back(r);
        dc_[r] += v;
      }
    }
    for (int p = 0; p < ns; ++p) {
      if (ds[p] == 0.0) continue;
      for (const auto& [r, v] : lp_.columns[s_[p]].entries) {
        if (!covered_[r]) continue;
        if (dc_[r] == 0.0) touched.push_back(r);
        dc_[r] -= v * ds[p];
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  }

  void clear_dc(const std::vector<int>& touched) {
    for (int r : touched) dc_[r] = 0.0;
  }

  // w = b_row^T * reduced-inverse, where b_row holds row `row` of A at structural basic columns.
  std::vector<double> row_times_inverse(int row) {
    const int ns = static_cast<int>(s_.size());
    std::vector<double> w(ns, 0.0);
    for (const auto& [col, v] : row_entries_[row]) {
      const int p = pos_s_[col];
      if (p < 0) continue;
      for (int k = 0; k < ns; ++k) w[k] += v * inv(p, k);
    }
    return w;
  }

  void pivot(int q, int leave_pos, int leave_row, const std::vector<double>& ds) {
    const int ns = static_cast<int>(s_.size());
    const bool entering_slack = slack_row_[q] >= 0;
    int leaving_col;

    if (!entering_slack && leave_pos >= 0) {
      // Structural replaces structural: column swap in the reduced block.
      leaving_col = s_[leave_pos];
      const double piv = ds[leave_pos];
      for (int k = 0; k < ns; ++k) {
        double* col = &binv_[static_cast<std::size_t>(k) * ns];
        const double scaled = col[leave_pos] / piv;
        if (scaled != 0.0) {
          for (int p = 0; p < ns; ++p) col[p] -= ds[p] * scaled;
        }
        col[leave_pos] = scaled;
      }
      pos_s_[leaving_col] = -1;
      s_[leave_pos] = q;
      pos_s_[q] = leave_pos;
    } else if (!entering_slack) {
      // Structural enters, slack of `leave_row` leaves: border the block.
      leaving_col = slack_col_[leave_row];
      const double s = dc_[leave_row];
      std::vector<double> w = row_times_inverse(leave_row);
      const int nn = ns + 1;
      std::vector<double> next(static_cast<std::size_t>(nn) * nn);
      for (int k = 0; k < ns; ++k) {
        for (int p = 0; p < ns; ++p) {
          next[static_cast<std::size_t>(k) * nn + p] = inv(p, k) + ds[p] * w[k] / s;
        }
        next[static_cast<std::size_t>(k) * nn + ns] = -w[k] / s;
      }
      for (int p = 0; p < ns; ++p) next[static_cast<std::size_t>(ns) * nn + p] = -ds[p] / s;
      next[static_cast<std::size_t>(ns) * nn + ns] = 1.0 / s;
      binv_.swap(next);
      covered_[leave_row] = false;
      pos_r_[leave_row] = ns;
      r_.push_back(leave_row);
      pos_s_[q] = ns;
      s_.push_back(q);
    } else if (leave_pos >= 0) {
      // Slack of an uncovered row enters, structural leaves: drop a row and a column.
      const int row = slack_row_[q];
      const int kr = pos_r_[row];
      leaving_col = s_[leave_pos];
      const double piv = inv(leave_pos, kr);
      const int nn = ns - 1;
      std::vector<double> next(static_cast<std::size_t>(nn) * nn);
      int kk = 0;
      for (int k = 0; k < ns; ++k) {
        if (k == kr) continue;
        const double factor = inv(leave_pos, k) / piv;
        int pp = 0;
        for (int p = 0; p < ns; ++p) {
          if (p == leave_pos) continue;
          next[static_cast<std::size_t>(kk) * nn + pp] = inv(p, k) - inv(p, kr) * factor;
          ++pp;
        }
        ++kk;
      }
      binv_.swap(next);
      pos_s_[leaving_col] = -1;
      s_.erase(s_.begin() + leave_pos);
      for (int p = leave_pos; p < nn; ++p) pos_s_[s_[p]] = p;
      pos_r_[row] = -1;
      r_.erase(r_.begin() + kr);
      for (int k = kr; k < nn; ++k) pos_r_[r_[k]] = k;
      covered_[row] = true;
    } else {
      // Slack enters, slack leaves: the uncovered row set swaps one row.
      const int row = slack_row_[q];
      const int kr = pos_r_[row];
      leaving_col = slack_col_[leave_row];
      std::vector<double> z = row_times_inverse(leave_row);
      const double denom = -dc_[leave_row];
      z[kr] -= 1.0;
      for (int k = 0; k < ns; ++k) {
        const double f = z[k] / denom;
        if (f == 0.0) continue;
        double* col = &binv_[static_cast<std::size_t>(k) * ns];
        for (int p = 0; p < ns; ++p) col[p] -= ds[p] * f;
      }
      r_[kr] = leave_row;
      pos_r_[leave_row] = kr;
      pos_r_[row] = -1;
      covered_[leave_row] = false;
      covered_[row] = true;
    }

    in_basis_[leaving_col] = false;
    x_[leaving_col] = 0.0;
    in_basis_[q] = true;
  }

  const StandardFormLP& lp_;
  SimplexOptions opt_;
  int m_;
  int n_;
  std::vector<std::vector<std::pair<int, double>>> row_entries_;
  std::vector<int> slack_col_;
  std::vector<int> slack_row_;

  std::vector<double> x_;
  std::vector<bool> in_basis_;
  std::vector<int> s_;      // structural basic columns
  std::vector<int> r_;      // rows without a basic slack
  std::vector<int> pos_s_;
  std::vector<int> pos_r_;
  std::vector<bool> covered_;
  std::vector<double> binv_;  // column-major |S| x |S|
  std::vector<double> dc_;
  std::vector<double> pi_;
};

}  // namespace

SimplexResult solve_simplex(const StandardFormLP& lp, std::span<const int> initial_basis,
                            const SimplexOptions& options) {
  RevisedSimplex solver(lp, options);
  return solver.run(initial_basis);
}

std::string basis_digest(std::span<const int> basis) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int j : basis) {
    auto v = static_cast<std::uint32_t>(j);
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fluidmatch
