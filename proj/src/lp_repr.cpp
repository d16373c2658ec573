#include "ltf/lp_repr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "ltf/fourier.hpp"

namespace ltf {

namespace {

std::pair<std::vector<std::vector<rat>>, std::vector<rat>> row_matrix(const LpProblem& lp) {
  std::vector<std::vector<rat>> A;
  std::vector<rat> b;
  for (const auto& row : lp.rows) {
    A.push_back(row.coeffs);
    b.push_back(row.rhs);
  }
  return {std::move(A), std::move(b)};
}

void append_gap_rows(LpProblem& lp) {
  for (int i = 1; i <= lp.m; ++i) {
    LpRow row;
    row.kind = RowKind::GapRow;
    row.gap_index = i;
    row.rhs = 1;
    row.coeffs.assign(lp.m, rat(0));
    row.coeffs[i - 1] = 1;
    if (i < lp.m) row.coeffs[i] = -1;
    lp.rows.push_back(std::move(row));
  }
}

/// g(x, y) = f(x) when y = +1 and -f(-x) when y = -1; odd by construction,
/// and the new variable is relevant exactly when f was not odd.
TruthTable lift_table(const TruthTable& t) {
  int n = t.n();
  std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  TruthTable g(n + 1);
  for (std::uint64_t p = 0; p < g.size(); ++p) {
    if (p >> n & 1)
      g.set(p, t.get(p & mask));
    else
      g.set(p, -t.get(~p & mask));
  }
  return g;
}

TruthTable project(const TruthTable& g, const std::vector<int>& kept) {
  int m = static_cast<int>(kept.size());
  TruthTable h(m);
  for (std::uint64_t p = 0; p < h.size(); ++p) {
    std::uint64_t q = 0;
    for (int j = 0; j < m; ++j)
      if (p >> j & 1) q |= std::uint64_t{1} << kept[j];
    h.set(p, g.get(q));
  }
  return h;
}

/// +1 when the table never decreases as variable j flips to +1, -1 for the
/// mirrored case. Relevant variables of a threshold function admit exactly one.
int direction(const TruthTable& h, int j) {
  std::uint64_t bit = std::uint64_t{1} << j;
  bool up = true, down = true;
  for (std::uint64_t p = 0; p < h.size(); ++p) {
    if (p & bit) continue;
    int lo = h.get(p), hi = h.get(p | bit);
    if (lo > hi) up = false;
    if (lo < hi) down = false;
  }
  if (up == down) throw error("internal", "variable is not unate");
  return up ? 1 : -1;
}

GapReport gap_report_impl(const std::vector<rat>& w,
                          const std::function<rat(int)>& bound_of) {
  if (w.empty()) throw error("zero_weight", "empty weight vector");
  GapReport rep;
  for (const rat& wi : w) {
    if (wi == 0) throw error("zero_weight", "gap report needs nonzero weights");
    rep.normalized.push_back(rat_abs(wi));
  }
  std::sort(rep.normalized.begin(), rep.normalized.end(), std::greater<rat>());
  rat top = rep.normalized.front();
  for (auto& v : rep.normalized) v /= top;
  int n = static_cast<int>(w.size());
  for (int i = 0; i + 1 < n; ++i)
    rep.gaps.push_back(rep.normalized[i] - rep.normalized[i + 1]);
  std::vector<rat> sorted = rep.gaps;
  std::sort(sorted.begin(), sorted.end(), std::greater<rat>());
  for (int k = 1; k <= n - 1; ++k) {
    GapEntry e;
    e.k = k;
    e.gap = sorted[k - 1];
    e.bound = bound_of(k);
    e.pass = e.gap >= e.bound;
    if (k <= n - 2 && !e.pass) rep.holds = false;
    rep.table.push_back(std::move(e));
  }
  return rep;
}

}  // namespace

rat cube_gap_bound(int n, int k) {
  return 1 / rat_pow(rat(2 * n + 2), 2 * k + 8);
}

rat extended_gap_bound(int k, long R, int j) {
  return 1 / (rat(2 * k + 2 * R) * rat_pow(rat(2 * k + 2), 2 * j + 8));
}

GapReport gap_report(const std::vector<rat>& w) {
  int n = static_cast<int>(w.size());
  return gap_report_impl(w, [n](int k) { return cube_gap_bound(n, k); });
}

GapReport gap_report_extended(const std::vector<rat>& w, long R) {
  int k = static_cast<int>(w.size());
  return gap_report_impl(w, [k, R](int j) { return extended_gap_bound(k, R, j); });
}

// ---------------------------------------------------------------------------
// Hypercube pipeline
// ---------------------------------------------------------------------------

std::optional<Ltf> threshold_witness(const TruthTable& t, long row_cap) {
  int n = t.n();
  if (n < 1) throw error("bad_arity", "need at least one variable");
  if (n >= 62 || static_cast<long>(t.size()) > row_cap)
    throw error("cap", "feasibility system exceeds the row cap");
  std::vector<std::vector<rat>> A;
  std::vector<rat> b(t.size(), rat(1));
  for (std::uint64_t p = 0; p < t.size(); ++p) {
    std::vector<rat> row(n + 1);
    int f = t.get(p);
    for (int i = 0; i < n; ++i) row[i] = f * coord(p, i);
    row[n] = -f;
    A.push_back(std::move(row));
  }
  RowFormResult r = solve_row_form(A, b, std::vector<rat>(n + 1, rat(0)));
  if (r.status != LpStatus::Optimal) return std::nullopt;
  Ltf w;
  w.weights.assign(r.w.begin(), r.w.begin() + n);
  w.theta = r.w[n];
  return w;
}

bool is_threshold(const TruthTable& t, long row_cap) {
  return threshold_witness(t, row_cap).has_value();
}

BuiltLp build_ltf_lp(const TruthTable& t, long row_cap) {
  if (!threshold_witness(t, row_cap))
    throw error("not_ltf", "table is not a threshold function");

  TruthTable g = t;
  LiftRecord lift;
  lift.source_arity = t.n();
  if (!g.is_odd()) {
    g = lift_table(g);
    lift.lifted = true;
  }
  int gn = g.n();

  std::vector<int> kept;
  for (int i = 0; i < gn; ++i) {
    if (g.ignores(i))
      lift.dropped.push_back(i + 1);
    else
      kept.push_back(i);
  }
  if (!lift.dropped.empty()) {
    lift.note = "dropped irrelevant variables:";
    for (int v : lift.dropped) lift.note += " " + std::to_string(v);
  }
  int m = static_cast<int>(kept.size());
  if (m == 0) throw error("internal", "odd function with no relevant variables");

  TruthTable h = project(g, kept);
  std::vector<int> dir(m);
  for (int j = 0; j < m; ++j) dir[j] = direction(h, j);
  InfluenceProfile prof = influences(h);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b2) { return prof.inf[a] > prof.inf[b2]; });

  lift.vars.resize(m);
  lift.signs.resize(m);
  for (int j = 0; j < m; ++j) {
    lift.vars[j] = kept[order[j]] + 1;
    lift.signs[j] = dir[order[j]];
  }

  // The function in LP coordinates: variable j is vars[j], negated when
  // signs[j] = -1; monotone increasing with influences nonincreasing.
  TruthTable F(m);
  for (std::uint64_t p = 0; p < F.size(); ++p) {
    std::uint64_t q = 0;
    for (int j = 0; j < m; ++j) {
      bool bit = p >> j & 1;
      if (lift.signs[j] < 0) bit = !bit;
      if (bit) q |= std::uint64_t{1} << (lift.vars[j] - 1);
    }
    F.set(p, g.get(q));
  }

  BuiltLp out;
  out.lift = std::move(lift);
  out.lp.m = m;
  for (std::uint64_t p = 0; p < F.size(); ++p) {
    if (F.get(p) != 1) continue;
    LpRow row;
    row.kind = RowKind::HypercubePoint;
    row.point = p;
    row.rhs = 1;
    for (int j = 0; j < m; ++j) row.coeffs.emplace_back(coord(p, j));
    out.lp.rows.push_back(std::move(row));
  }
  append_gap_rows(out.lp);
  return out;
}

VertexCertificate solve_vertex(const LpProblem& lp) {
  auto [A, b] = row_matrix(lp);
  RowFormResult r = solve_row_form(A, b, std::vector<rat>(lp.m, rat(1)));
  if (r.status == LpStatus::Infeasible)
    throw error("not_ltf", "system infeasible: no threshold representation");
  if (r.status == LpStatus::Unbounded)
    throw error("internal", "chain-bounded objective cannot be unbounded");

  VertexCertificate cert;
  cert.w = r.w;
  cert.objective = r.objective;
  cert.basis_rows = r.tight;
  if (cert.basis_rows.size() != static_cast<size_t>(lp.m))
    throw error("internal", "tight basis does not have full rank");
  for (size_t i = 0; i < A.size(); ++i) {
    rat lhs = 0;
    for (int j = 0; j < lp.m; ++j) lhs += A[i][j] * cert.w[j];
    if (lhs < b[i]) throw error("internal", "certificate violates a row");
    if (lhs == b[i]) cert.tight_rows.push_back(static_cast<int>(i));
  }
  std::vector<std::vector<rat>> S;
  std::vector<rat> rhs;
  for (int idx : cert.basis_rows) {
    S.push_back(A[idx]);
    rhs.push_back(b[idx]);
  }
  auto again = solve_square(std::move(S), std::move(rhs));
  if (!again || *again != cert.w)
    throw error("internal", "tight system does not re-solve to the optimum");
  return cert;
}

Ltf invert_certificate(const VertexCertificate& cert, const LiftRecord& lift) {
  int src = lift.source_arity;
  std::vector<rat> u(src + (lift.lifted ? 1 : 0), rat(0));
  for (size_t j = 0; j < lift.vars.size(); ++j)
    u[lift.vars[j] - 1] = lift.signs[j] * cert.w[j];
  Ltf rep;
  if (lift.lifted) {
    rep.weights.assign(u.begin(), u.begin() + src);
    rep.theta = -u[src];
  } else {
    rep.weights = std::move(u);
    rep.theta = 0;
  }
  return rep;
}

LtfRepresentation ltf_representation(const TruthTable& t, long row_cap) {
  LtfRepresentation out;
  out.built = build_ltf_lp(t, row_cap);
  out.cert = solve_vertex(out.built.lp);
  out.rep = invert_certificate(out.cert, out.built.lift);
  if (!(truth_table(out.rep) == t))
    throw error("internal", "representation does not reproduce the table");
  out.gaps = gap_report(out.cert.w);
  return out;
}

// ---------------------------------------------------------------------------
// Extended domain
// ---------------------------------------------------------------------------

ExtendedTable::ExtendedTable(int k_, long R_) : k(k_), R(R_) {
  if (k < 1 || k > 30) throw error("bad_arity", "extended domain needs 1 <= k <= 30");
  if (R < 0) throw error("bad_range", "negative integer range");
  vals.assign(size(), 1);
}

ExtendedTable extended_table(const std::vector<rat>& w, const rat& theta, long R) {
  int k = static_cast<int>(w.size());
  ExtendedTable h(k, R);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << (k - 1)); ++s)
    for (long t = -R; t <= R; ++t) {
      rat v = -theta;
      for (int i = 0; i + 1 < k; ++i) v += w[i] * coord(s, i);
      v += w[k - 1] * t;
      h.set(s, t, v >= 0 ? 1 : -1);
    }
  return h;
}

ExtendedRepr extended_domain_repr(const ExtendedTable& h, long row_cap) {
  int k = h.k;
  long R = h.R;
  if (k < 1 || R < 0 || h.vals.size() != h.size())
    throw error("bad_arity", "malformed extended table");
  for (int v : h.vals)
    if (v != 1 && v != -1) throw error("bad_value", "table values must be +-1");
  if (static_cast<long>(h.size()) > row_cap)
    throw error("cap", "extended domain exceeds the row cap");

  // Feasibility pre-check with a free threshold.
  {
    std::vector<std::vector<rat>> A;
    std::vector<rat> b;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << (k - 1)); ++s)
      for (long t = -R; t <= R; ++t) {
        int f = h.get(s, t);
        std::vector<rat> row(k + 1);
        for (int i = 0; i + 1 < k; ++i) row[i] = f * coord(s, i);
        row[k - 1] = rat(f) * t;
        row[k] = -f;
        A.push_back(std::move(row));
        b.emplace_back(1);
      }
    RowFormResult pre = solve_row_form(A, b, std::vector<rat>(k + 1, rat(0)));
    if (pre.status != LpStatus::Optimal)
      throw error("not_ltf", "not a threshold function on the extended domain");
  }

  ExtendedRepr out;

  // Working copy: P +-1 bits labeled by source coordinate (the lift
  // coordinate gets label k), plus the integer coordinate while relevant.
  int P = k - 1;
  std::vector<int> pm_label(P);
  std::iota(pm_label.begin(), pm_label.end(), 0);
  bool has_int = true;
  long span = 2 * R + 1;
  std::vector<int> vals = h.vals;
  auto val_at = [&](std::uint64_t s, long t) -> int {
    return vals[s * span + (t + R)];
  };

  std::uint64_t cmask = (std::uint64_t{1} << P) - 1;
  bool odd = true;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << P) && odd; ++s)
    for (long t = -R; t <= R; ++t)
      if (val_at(s, t) != -val_at(~s & cmask, -t)) {
        odd = false;
        break;
      }
  if (!odd) {
    std::vector<int> lifted((std::uint64_t{2} << P) * span);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << P); ++s)
      for (long t = -R; t <= R; ++t) {
        lifted[(s | std::uint64_t{1} << P) * span + (t + R)] = val_at(s, t);
        lifted[s * span + (t + R)] = -val_at(~s & cmask, -t);
      }
    vals = std::move(lifted);
    pm_label.push_back(k);
    ++P;
    cmask = (std::uint64_t{1} << P) - 1;
    out.lifted = true;
  }

  // Drop irrelevant coordinates.
  {
    std::vector<int> keep_bits;
    for (int bit = 0; bit < P; ++bit) {
      std::uint64_t bmask = std::uint64_t{1} << bit;
      bool rel = false;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << P) && !rel; ++s) {
        if (s & bmask) continue;
        for (long t = -R; t <= R; ++t)
          if (val_at(s, t) != val_at(s | bmask, t)) {
            rel = true;
            break;
          }
      }
      if (rel)
        keep_bits.push_back(bit);
      else
        out.dropped.push_back(pm_label[bit]);
    }
    bool int_rel = false;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << P) && !int_rel; ++s)
      for (long t = -R; t < R; ++t)
        if (val_at(s, t) != val_at(s, t + 1)) {
          int_rel = true;
          break;
        }
    if (!int_rel) {
      out.dropped.push_back(k - 1);
      has_int = false;
    }
    if (static_cast<int>(keep_bits.size()) < P || !has_int) {
      int newP = static_cast<int>(keep_bits.size());
      long newspan = has_int ? span : 1;
      long newR = has_int ? R : 0;
      std::vector<int> nv((std::uint64_t{1} << newP) * newspan);
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << newP); ++s) {
        std::uint64_t old_s = 0;
        for (int j = 0; j < newP; ++j)
          if (s >> j & 1) old_s |= std::uint64_t{1} << keep_bits[j];
        for (long t = -newR; t <= newR; ++t)
          nv[s * newspan + (t + newR)] = val_at(old_s, has_int ? t : 0);
      }
      std::vector<int> nl;
      for (int b2 : keep_bits) nl.push_back(pm_label[b2]);
      pm_label = std::move(nl);
      vals = std::move(nv);
      P = newP;
      span = newspan;
      R = newR;
      cmask = (std::uint64_t{1} << P) - 1;
    }
    std::sort(out.dropped.begin(), out.dropped.end());
  }

  int m = P + (has_int ? 1 : 0);
  if (m == 0) throw error("internal", "odd function with no relevant coordinates");

  // Unate directions and rough influence counts for the ordering heuristic.
  std::vector<int> dir_pm(P);
  std::vector<long long> cnt_pm(P, 0);
  for (int bit = 0; bit < P; ++bit) {
    std::uint64_t bmask = std::uint64_t{1} << bit;
    bool up = true, down = true;
    long long cnt = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << P); ++s) {
      if (s & bmask) continue;
      for (long t = -R; t <= R; ++t) {
        int lo = val_at(s, t), hi = val_at(s | bmask, t);
        if (lo != hi) cnt += 2;
        if (lo > hi) up = false;
        if (lo < hi) down = false;
      }
    }
    if (up == down) throw error("internal", "coordinate is not unate");
    dir_pm[bit] = up ? 1 : -1;
    cnt_pm[bit] = cnt;
  }
  int dir_int = 0;
  if (has_int) {
    bool up = true, down = true;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << P); ++s)
      for (long t = -R; t < R; ++t) {
        int lo = val_at(s, t), hi = val_at(s, t + 1);
        if (lo > hi) up = false;
        if (lo < hi) down = false;
      }
    if (up == down) throw error("internal", "integer coordinate is not unate");
    dir_int = up ? 1 : -1;
  }

  // Chain orderings to try: slot  >= 0 is a +-1 bit, -1 the integer
  // coordinate. Its position is not determined by influence sorting, so
  // placements are tried from the back, then all permutations.
  std::vector<int> base(P);
  std::iota(base.begin(), base.end(), 0);
  std::stable_sort(base.begin(), base.end(), [&](int a, int b2) {
    if (cnt_pm[a] != cnt_pm[b2]) return cnt_pm[a] > cnt_pm[b2];
    return pm_label[a] < pm_label[b2];
  });
  std::vector<std::vector<int>> candidates;
  if (has_int) {
    for (int pos = m - 1; pos >= 0; --pos) {
      std::vector<int> ord;
      int bi = 0;
      for (int j = 0; j < m; ++j)
        ord.push_back(j == pos ? -1 : base[bi++]);
      candidates.push_back(std::move(ord));
    }
    if (m <= 8) {
      std::vector<int> all = base;
      all.push_back(-1);
      std::sort(all.begin(), all.end());
      do candidates.push_back(all);
      while (std::next_permutation(all.begin(), all.end()));
    }
  } else {
    candidates.push_back(base);
  }

  LpProblem lp;
  std::vector<int> order;
  bool solved = false;
  for (const auto& cand : candidates) {
    LpProblem trial;
    trial.m = m;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << P); ++s)
      for (long t = -R; t <= R; ++t) {
        if (val_at(s, t) != 1) continue;
        LpRow row;
        row.kind = RowKind::ExtendedPoint;
        row.point = s;
        row.ext_t = t;
        row.rhs = 1;
        for (int slot : cand)
          row.coeffs.push_back(slot < 0 ? rat(dir_int) * t
                                        : rat(dir_pm[slot] * coord(s, slot)));
        trial.rows.push_back(std::move(row));
      }
    append_gap_rows(trial);
    auto [A, b] = row_matrix(trial);
    RowFormResult r = solve_row_form(A, b, std::vector<rat>(m, rat(1)));
    if (r.status != LpStatus::Optimal) continue;
    lp = std::move(trial);
    order = cand;
    solved = true;
    break;
  }
  if (!solved) throw error("internal", "no feasible chain ordering");
  out.cert = solve_vertex(lp);
  out.lp = std::move(lp);

  if (has_int) {
    int pos = static_cast<int>(std::find(order.begin(), order.end(), -1) -
                               order.begin());
    out.order_note = "integer coordinate at chain position " +
                     std::to_string(pos + 1) + " of " + std::to_string(m);
  }

  // Back to source coordinates; the lift weight is the threshold.
  std::vector<rat> u(k + 1, rat(0));
  for (int j = 0; j < m; ++j) {
    int slot = order[j];
    if (slot < 0)
      u[k - 1] = dir_int * out.cert.w[j];
    else
      u[pm_label[slot]] = dir_pm[slot] * out.cert.w[j];
  }
  out.w.assign(u.begin(), u.begin() + k);
  out.theta = -u[k];

  for (std::uint64_t s = 0; s < (std::uint64_t{1} << (k - 1)); ++s)
    for (long t = -h.R; t <= h.R; ++t) {
      rat v = -out.theta;
      for (int i = 0; i + 1 < k; ++i) v += out.w[i] * coord(s, i);
      v += out.w[k - 1] * t;
      if ((v >= 0 ? 1 : -1) != h.get(s, t))
        throw error("internal", "extended representation round trip failed");
    }

  rat mx = 0;
  for (const rat& wi : out.w) mx = std::max(mx, rat_abs(wi));
  if (mx > 0) {
    for (const rat& wi : out.w) out.normalized.push_back(wi / mx);
    out.normalized_theta = out.theta / mx;
  } else {
    out.normalized = out.w;
    out.normalized_theta = out.theta;
  }

  std::vector<rat> nz;
  for (const rat& wi : out.w)
    if (wi != 0) nz.push_back(wi);
  if (!nz.empty())
    out.gaps = has_int ? gap_report_extended(nz, h.R) : gap_report(nz);
  return out;
}

// ---------------------------------------------------------------------------
// Weight floors
// ---------------------------------------------------------------------------

WeightFloorReport weight_floor_check(const std::vector<rat>& w, double eps,
                                     FloorMode mode) {
  if (mode == FloorMode::Approx && !(eps > 0 && eps < 2))
    throw error("bad_eps", "approx floors need eps in (0, 2)");
  WeightFloorReport rep;
  rep.mode = mode;
  rep.eps = eps;
  rep.note =
      "report only: the floors assert existence of some representation, so a "
      "failing vector is not a contradiction";
  int n = static_cast<int>(w.size());
  std::vector<rat> a;
  for (const rat& wi : w) a.push_back(rat_abs(wi));
  std::sort(a.begin(), a.end(), std::greater<rat>());
  if (n > 0 && a[0] != 0 && a[0] != 1) {
    rat top = a[0];
    for (auto& v : a) v /= top;
  }
  for (int kk = 1; kk <= n; ++kk) {
    FloorEntry e;
    e.k = kk;
    e.wk = a[kk - 1];
    bigint kpow = 1;
    for (int i = 0; i < kk; ++i) kpow *= kk;
    if (mode == FloorMode::Exact) {
      e.floor_q = rat(1) / (rat(4) * rat(kpow) * n);
      e.pass = e.wk >= e.floor_q;
    } else {
      e.floor_d = 1.0 / (kpow.convert_to<double>() *
                         std::sqrt(3.0 * n * std::log(2.0 / eps)));
      e.pass = to_double(e.wk) >= e.floor_d;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Integer-weight extremes
// ---------------------------------------------------------------------------

Ltf omb_witness(int n, int verify_cap) {
  if (n < 1) throw error("bad_arity", "need n >= 1");
  std::vector<bigint> wb(n);
  for (int i = 0; i < n; ++i) {
    wb[i] = bigint(1) << (n - 1 - i);
    if (i % 2 == 0) wb[i] = -wb[i];
  }
  Ltf f;
  for (const bigint& v : wb) f.weights.emplace_back(v);

  // Class i fixes x_1..x_{i-1} = -1 and x_i = +1; its affine values cover
  // B_i +- (2^(n-i) - 1) and its output is (-1)^i. All-(-1) maps to +1.
  bigint prefix = 0;
  std::optional<bigint> max_neg, min_pos;
  auto fold_neg = [&](const bigint& v) {
    if (!max_neg || v > *max_neg) max_neg = v;
  };
  auto fold_pos = [&](const bigint& v) {
    if (!min_pos || v < *min_pos) min_pos = v;
  };
  for (int i = 1; i <= n; ++i) {
    bigint B = prefix + wb[i - 1];
    bigint M = (bigint(1) << (n - i)) - 1;
    if (i % 2)
      fold_neg(B + M);
    else
      fold_pos(B - M);
    prefix -= wb[i - 1];
  }
  fold_pos(prefix);  // the all-(-1) point
  f.theta = rat(*max_neg + *min_pos) / 2;

  if (n <= verify_cap) {
    TruthTable def(n);
    for (std::uint64_t p = 1; p < def.size(); ++p)
      def.set(p, std::countr_zero(p) % 2 ? 1 : -1);
    def.set(0, 1);
    if (!(truth_table(f) == def))
      throw error("internal", "alternating-power weights disagree with the definition");
  }
  return f;
}

MinWeightResult min_weight_search(const TruthTable& t, long W_max, int arity_cap) {
  int n = t.n();
  if (n < 1 || n > arity_cap) throw error("cap", "arity exceeds the search cap");
  if (W_max < 1) throw error("bad_range", "weight budget must be >= 1");
  MinWeightResult res;

  std::vector<int> rel;
  for (int i = 0; i < n; ++i)
    if (!t.ignores(i)) rel.push_back(i);
  if (rel.empty()) {
    res.found = true;
    res.max_weight = 0;
    res.witness.weights.assign(n, rat(0));
    res.witness.theta = t.get(0) == 1 ? -1 : 1;
    res.note = "constant table";
    return res;
  }

  // A non-unate table separates under no weight vector at all.
  std::vector<int> dir;
  for (int i : rel) {
    std::uint64_t bit = std::uint64_t{1} << i;
    bool up = true, down = true;
    for (std::uint64_t p = 0; p < t.size(); ++p) {
      if (p & bit) continue;
      int lo = t.get(p), hi = t.get(p | bit);
      if (lo > hi) up = false;
      if (lo < hi) down = false;
    }
    if (up == down) {
      res.note = "not unate: no threshold representation exists at any weight";
      return res;
    }
    dir.push_back(up ? 1 : -1);
  }

  // Project onto relevant variables, sign-corrected to increasing, and scan
  // positive magnitude grids of growing maximum.
  int kk = static_cast<int>(rel.size());
  std::vector<int> sub(std::size_t{1} << kk);
  for (std::uint64_t q = 0; q < sub.size(); ++q) {
    std::uint64_t p = 0;
    for (int j = 0; j < kk; ++j) {
      bool b = q >> j & 1;
      if (dir[j] < 0) b = !b;
      if (b) p |= std::uint64_t{1} << rel[j];
    }
    sub[q] = t.get(p);
  }
  std::vector<long> v(kk);
  for (long W = 1; W <= W_max; ++W) {
    std::fill(v.begin(), v.end(), 1L);
    while (true) {
      if (*std::max_element(v.begin(), v.end()) == W) {
        long long max_neg = std::numeric_limits<long long>::min();
        long long min_pos = std::numeric_limits<long long>::max();
        for (std::uint64_t q = 0; q < sub.size(); ++q) {
          long long sum = 0;
          for (int j = 0; j < kk; ++j) sum += (q >> j & 1) ? v[j] : -v[j];
          if (sub[q] == 1)
            min_pos = std::min(min_pos, sum);
          else
            max_neg = std::max(max_neg, sum);
        }
        if (max_neg < min_pos) {
          res.found = true;
          res.max_weight = W;
          res.witness.weights.assign(n, rat(0));
          for (int j = 0; j < kk; ++j)
            res.witness.weights[rel[j]] = rat(dir[j] * v[j]);
          res.witness.theta = rat(max_neg + min_pos, 2);
          if (!(truth_table(res.witness) == t))
            throw error("internal", "separating vector fails the table");
          return res;
        }
      }
      int j = 0;
      while (j < kk && v[j] == W) {
        v[j] = 1;
        ++j;
      }
      if (j == kk) break;
      ++v[j];
    }
  }
  res.note = "no integer representation with max weight <= " + std::to_string(W_max);
  return res;
}

std::vector<TruthTable> integer_ltf_tables(int n, long wmax) {
  if (n < 1 || n > 6) throw error("bad_arity", "grid enumeration supports 1 <= n <= 6");
  if (wmax < 0) throw error("bad_range", "negative weight bound");
  std::set<std::uint64_t> seen;
  std::vector<long> w(n, -wmax);
  std::vector<long long> sums(std::size_t{1} << n);
  while (true) {
    for (std::uint64_t p = 0; p < sums.size(); ++p) {
      long long s = 0;
      for (int j = 0; j < n; ++j) s += (p >> j & 1) ? w[j] : -w[j];
      sums[p] = s;
    }
    std::vector<long long> cuts(sums.begin(), sums.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(cuts.back() + 1);
    for (long long th : cuts) {
      std::uint64_t key = 0;
      for (std::uint64_t p = 0; p < sums.size(); ++p)
        if (sums[p] >= th) key |= std::uint64_t{1} << p;
      seen.insert(key);
    }
    int j = 0;
    while (j < n && w[j] == wmax) {
      w[j] = -wmax;
      ++j;
    }
    if (j == n) break;
    ++w[j];
  }
  std::vector<TruthTable> out;
  for (std::uint64_t key : seen) {
    TruthTable t(n);
    for (std::uint64_t p = 0; p < t.size(); ++p)
      t.set(p, key >> p & 1 ? 1 : -1);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace ltf
