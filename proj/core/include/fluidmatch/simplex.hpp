#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fluidmatch {

/// One column of a sparse constraint matrix: (row, coefficient) pairs with
/// distinct rows.
struct SparseColumn {
  std::vector<std::pair<int, double>> entries;
};

/// min cost^T z  subject to  A z = rhs,  z >= 0, with A stored by column.
struct StandardFormLP {
  int num_rows = 0;
  std::vector<double> cost;
  std::vector<double> rhs;
  std::vector<SparseColumn> columns;

  int num_cols() const noexcept { return static_cast<int>(columns.size()); }
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  /// Consecutive degenerate pivots under Dantzig pricing before switching to
  /// Bland's rule until the objective moves again.
  int degenerate_switch = 50;
  int refactor_interval = 64;
  /// 0 means 50 * (rows + cols).
  long max_iterations = 0;
};

enum class SimplexStatus { Optimal, Unbounded, IterationLimit };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::IterationLimit;
  std::vector<double> primal;  // one per column
  std::vector<double> duals;   // one per row, y = c_B B^{-1}
  double objective = 0.0;
  std::vector<int> basis;      // sorted basic column indices
  long iterations = 0;
  long bland_iterations = 0;
};

/// Revised primal simplex started from a caller-supplied feasible basis.
///
/// Columns that are unit vectors (a single coefficient 1.0) act as slacks of
/// their row. The basis is kept in reduced form: only the block formed by
/// non-slack basic columns and rows without a basic slack is inverted, and that
/// inverse is updated in place at every pivot (column swap, bordering, row
/// removal or row swap depending on which kinds of variables enter and leave).
/// Dantzig pricing is the default; a run of degenerate pivots switches to
/// Bland's rule until progress resumes. Pivoting is fully deterministic.
///
/// Throws ValidationError if `initial_basis` is not a feasible basis of `lp`.
SimplexResult solve_simplex(const StandardFormLP& lp, std::span<const int> initial_basis,
                            const SimplexOptions& options = {});

/// Stable 64-bit digest of a sorted basis, rendered as 16 hex digits.
std::string basis_digest(std::span<const int> basis);

}  // namespace fluidmatch
