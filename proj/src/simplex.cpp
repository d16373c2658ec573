#include "ltf/simplex.hpp"

#include <algorithm>

namespace ltf {

StandardResult solve_standard(std::vector<std::vector<rat>> M, std::vector<rat> d,
                              const std::vector<rat>& gamma) {
  int r = static_cast<int>(M.size());
  int c = r ? static_cast<int>(M[0].size()) : static_cast<int>(gamma.size());
  for (const auto& row : M)
    if (static_cast<int>(row.size()) != c)
      throw error("internal", "ragged constraint matrix");
  if (static_cast<int>(gamma.size()) != c)
    throw error("internal", "objective length mismatch");
  if (static_cast<int>(d.size()) != r)
    throw error("internal", "rhs length mismatch");

  // Normalize rhs >= 0.
  for (int i = 0; i < r; ++i)
    if (d[i] < 0) {
      d[i] = -d[i];
      for (auto& v : M[i]) v = -v;
    }

  // Columns: real variables 0..c-1, artificials c..c+r-1.
  std::vector<std::vector<rat>> tab(r, std::vector<rat>(c + r, rat(0)));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) tab[i][j] = M[i][j];
    tab[i][c + i] = 1;
  }
  std::vector<rat>& rhs = d;
  std::vector<int> basis(r);
  for (int i = 0; i < r; ++i) basis[i] = c + i;

  std::vector<rat> cost;   // reduced costs of the current phase
  rat obj = 0;             // negative of current objective value offset

  auto pivot = [&](int pi, int pj) {
    rat inv = 1 / tab[pi][pj];
    for (auto& v : tab[pi]) v *= inv;
    rhs[pi] *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == pi || tab[i][pj] == 0) continue;
      rat f = tab[i][pj];
      for (int j = 0; j < c + r; ++j)
        if (tab[pi][j] != 0) tab[i][j] -= f * tab[pi][j];
      rhs[i] -= f * rhs[pi];
    }
    if (cost[pj] != 0) {
      rat f = cost[pj];
      for (int j = 0; j < c + r; ++j)
        if (tab[pi][j] != 0) cost[j] -= f * tab[pi][j];
      obj += f * rhs[pi];
    }
    basis[pi] = pj;
  };

  // Bland's rule: smallest eligible entering column; leaving row by minimum
  // ratio with smallest basic variable index on ties. Returns false when
  // optimal, throws status via out param when unbounded.
  auto iterate = [&](int limit_cols, bool* unbounded) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit_cols; ++j)
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return;
      int leave = -1;
      rat best_ratio = 0;
      for (int i = 0; i < r; ++i) {
        if (tab[i][enter] <= 0) continue;
        rat ratio = rhs[i] / tab[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        *unbounded = true;
        return;
      }
      pivot(leave, enter);
    }
  };

  StandardResult res;
  res.objective = 0;

  // Phase 1: minimize the artificial sum.
  cost.assign(c + r, rat(0));
  for (int i = 0; i < r; ++i) cost[c + i] = 1;
  obj = 0;
  for (int i = 0; i < r; ++i) {  // canonicalize: artificials are basic
    for (int j = 0; j < c + r; ++j) cost[j] -= tab[i][j];
    obj += rhs[i];
  }
  bool unbounded = false;
  iterate(c + r, &unbounded);
  if (unbounded) throw error("internal", "phase-1 objective cannot be unbounded");
  if (obj != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Drive basic artificials out; an all-zero row marks a redundant equality.
  std::vector<bool> drop(r, false);
  for (int i = 0; i < r; ++i) {
    if (basis[i] < c) continue;
    int col = -1;
    for (int j = 0; j < c; ++j)
      if (tab[i][j] != 0) {
        col = j;
        break;
      }
    if (col < 0) {
      drop[i] = true;
      res.dropped_rows.push_back(i);
    } else {
      pivot(i, col);
    }
  }
  if (!res.dropped_rows.empty()) {
    std::vector<std::vector<rat>> nt;
    std::vector<rat> nr;
    std::vector<int> nb;
    for (int i = 0; i < r; ++i) {
      if (drop[i]) continue;
      nt.push_back(std::move(tab[i]));
      nr.push_back(std::move(rhs[i]));
      nb.push_back(basis[i]);
    }
    tab = std::move(nt);
    rhs = std::move(nr);
    basis = std::move(nb);
    r = static_cast<int>(tab.size());
  }

  // Phase 2 over the real columns only.
  cost.assign(c + r, rat(0));
  for (int j = 0; j < c; ++j) cost[j] = gamma[j];
  obj = 0;
  for (int i = 0; i < r; ++i) {
    if (cost[basis[i]] == 0) continue;
    rat f = cost[basis[i]];
    for (int j = 0; j < c + r; ++j)
      if (tab[i][j] != 0) cost[j] -= f * tab[i][j];
    obj += f * rhs[i];
  }
  unbounded = false;
  iterate(c, &unbounded);
  if (unbounded) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.x.assign(c, rat(0));
  for (int i = 0; i < r; ++i)
    if (basis[i] < c) res.x[basis[i]] = rhs[i];
  rat val = 0;
  for (int j = 0; j < c; ++j) val += gamma[j] * res.x[j];
  res.objective = val;
  res.basis = basis;
  return res;
}

std::optional<std::vector<rat>> solve_square(std::vector<std::vector<rat>> A,
                                             std::vector<rat> b) {
  int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (A[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    rat inv = 1 / A[col][col];
    for (auto& v : A[col]) v *= inv;
    b[col] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || A[i][col] == 0) continue;
      rat f = A[i][col];
      for (int j = col; j < n; ++j) A[i][j] -= f * A[col][j];
      b[i] -= f * b[col];
    }
  }
  return b;
}

RowFormResult solve_row_form(const std::vector<std::vector<rat>>& A,
                             const std::vector<rat>& b, const std::vector<rat>& c) {
  size_t m = A.size();
  size_t n = c.size();
  for (const auto& row : A)
    if (row.size() != n) throw error("internal", "constraint row length mismatch");
  if (b.size() != m) throw error("internal", "rhs length mismatch");

  RowFormResult res;
  res.objective = 0;
  if (m == 0) {
    // No constraints: feasible, optimal iff c = 0.
    bool zero = true;
    for (const rat& ci : c) zero = zero && ci == 0;
    res.status = zero ? LpStatus::Optimal : LpStatus::Unbounded;
    res.w.assign(n, rat(0));
    return res;
  }

  // Dual: min (-b).y subject to A^T y = c, y >= 0.
  std::vector<std::vector<rat>> At(n, std::vector<rat>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) At[j][i] = A[i][j];
  std::vector<rat> gamma(m);
  for (size_t i = 0; i < m; ++i) gamma[i] = -b[i];

  StandardResult dual = solve_standard(std::move(At), c, gamma);
  if (dual.status == LpStatus::Infeasible) {
    // A^T y = c, y >= 0 insoluble: the primal is unbounded if feasible at
    // all. Settle which by a feasibility probe with a zero objective (whose
    // dual, y = 0, always exists, so the probe cannot reach this branch).
    bool zero = true;
    for (const rat& ci : c) zero = zero && ci == 0;
    if (zero) throw error("internal", "zero-objective dual cannot be infeasible");
    RowFormResult probe = solve_row_form(A, b, std::vector<rat>(n, rat(0)));
    res.status = probe.status == LpStatus::Optimal ? LpStatus::Unbounded
                                                   : LpStatus::Infeasible;
    return res;
  }
  if (dual.status == LpStatus::Unbounded) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Tight rows = dual basis. Dropped dual equalities are linearly dependent
  // primal variable columns; those variables are fixed to 0 and the square
  // tight system is solved over the kept ones, which preserves the identity
  // "dual reduced cost of row i = A_i w - b_i" and therefore feasibility.
  std::vector<bool> kept(n, true);
  for (int j : dual.dropped_rows) kept[j] = false;
  std::vector<int> keep_idx;
  for (size_t j = 0; j < n; ++j)
    if (kept[j]) keep_idx.push_back(static_cast<int>(j));

  res.tight = dual.basis;
  std::sort(res.tight.begin(), res.tight.end());
  if (res.tight.size() != keep_idx.size())
    throw error("internal", "dual basis size does not match system rank");
  std::vector<std::vector<rat>> Ab;
  std::vector<rat> bb;
  for (int idx : res.tight) {
    std::vector<rat> row;
    for (int j : keep_idx) row.push_back(A[idx][j]);
    Ab.push_back(std::move(row));
    bb.push_back(b[idx]);
  }
  auto sol = solve_square(std::move(Ab), std::move(bb));
  if (!sol) throw error("internal", "tight basis system is singular");
  res.w.assign(n, rat(0));
  for (size_t t = 0; t < keep_idx.size(); ++t) res.w[keep_idx[t]] = (*sol)[t];

  rat val = 0;
  for (size_t j = 0; j < n; ++j) val += c[j] * res.w[j];
  if (val != -dual.objective)
    throw error("internal", "strong duality check failed");
  for (size_t i = 0; i < m; ++i) {
    rat lhs = 0;
    for (size_t j = 0; j < n; ++j) lhs += A[i][j] * res.w[j];
    if (lhs < b[i]) throw error("internal", "recovered optimum violates a row");
  }
  res.objective = val;
  res.status = LpStatus::Optimal;
  return res;
}

}  // namespace ltf
