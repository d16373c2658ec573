#pragma once

#include "ltf/rational.hpp"

#include <optional>
#include <vector>

namespace ltf {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Exact solution of min gamma.z subject to M z = d, z >= 0.
/// Two-phase dense simplex, Bland's smallest-index rule on both the entering
/// and leaving choices (terminating and deterministic). basis holds the
/// column index basic in each row at the optimum; redundant equality rows are
/// dropped and reported in dropped_rows.
struct StandardResult {
  LpStatus status;
  rat objective;
  std::vector<rat> x;
  std::vector<int> basis;
  std::vector<int> dropped_rows;
};

StandardResult solve_standard(std::vector<std::vector<rat>> M, std::vector<rat> d,
                              const std::vector<rat>& gamma);

/// min c.w subject to A w >= b with w free.
///
/// Solved through the dual max b.y : A^T y = c, y >= 0, whose tableau has one
/// row per primal VARIABLE, so instances with many constraint rows and few
/// variables stay small. At a dual-optimal basis B the primal optimum is the
/// unique solution of the square tight system A_B w = b_B, and the dual
/// reduced costs are exactly the primal slacks, so optimality certifies
/// feasibility row by row. tight lists B (row indices into A).
struct RowFormResult {
  LpStatus status;  // Infeasible: no w satisfies A w >= b.
                    // Unbounded: c.w unbounded below on the feasible set
                    // (possible only when the feasible set is unbounded).
  std::vector<rat> w;
  rat objective;
  std::vector<int> tight;
};

RowFormResult solve_row_form(const std::vector<std::vector<rat>>& A,
                             const std::vector<rat>& b, const std::vector<rat>& c);

/// Exact Gaussian elimination; empty when singular.
std::optional<std::vector<rat>> solve_square(std::vector<std::vector<rat>> A,
                                             std::vector<rat> b);

}  // namespace ltf
