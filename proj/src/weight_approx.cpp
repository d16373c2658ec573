#include "ltf/weight_approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace ltf {

namespace {

bigint big_abs(const bigint& v) { return v < 0 ? bigint(-v) : v; }

/// Rational strictly above sqrt(x); dyadic floor plus enough slack to clear
/// both the dyadic truncation and libm rounding.
rat sqrt_upper(double x) {
  double s = std::sqrt(x < 0 ? 0.0 : x);
  rat up = dyadic_floor(s, 24) + rat(1, std::int64_t{1} << 20);
  return up;
}

int nonzero_count(const std::vector<rat>& w) {
  int m = 0;
  for (const rat& x : w)
    if (x != 0) ++m;
  return m;
}

/// Nonzero magnitudes sorted descending.
std::vector<rat> magnitude_profile(const std::vector<rat>& w) {
  std::vector<rat> mags;
  for (const rat& x : w)
    if (x != 0) mags.push_back(rat_abs(x));
  std::sort(mags.begin(), mags.end(), [](const rat& a, const rat& b) { return a > b; });
  return mags;
}

std::vector<rat> descending_gaps(const std::vector<rat>& mags) {
  std::vector<rat> gaps;
  for (std::size_t i = 0; i + 1 < mags.size(); ++i) {
    rat g = mags[i] - mags[i + 1];
    gaps.push_back(g);
  }
  std::sort(gaps.begin(), gaps.end(), [](const rat& a, const rat& b) { return a > b; });
  return gaps;
}

/// ceil(1/eps^(2/3)) as the least k with k^3 eps^2 >= 1, saturated at 64
/// (beyond any enumerable weight count).
int cube_root_order(const rat& eps) {
  rat e2 = eps * eps;
  int k = 1;
  while (k < 64) {
    rat lhs = rat(k) * rat(k) * rat(k) * e2;
    if (lhs >= 1) break;
    ++k;
  }
  return k;
}

struct SourceProfile {
  Ltf base;               // representation scaled so max |w_i| = 1
  std::vector<rat> mags;  // nonzero |weights| of base, descending
  int m = 0;
};

SourceProfile normalized_profile(const Ltf& rep) {
  SourceProfile sp;
  rat mx = 0;
  for (const rat& w : rep.weights) {
    rat a = rat_abs(w);
    if (a > mx) mx = a;
  }
  sp.base.weights.reserve(rep.weights.size());
  for (const rat& w : rep.weights) {
    rat s = w / mx;
    sp.base.weights.push_back(s);
  }
  sp.base.theta = rep.theta / mx;
  sp.mags = magnitude_profile(sp.base.weights);
  sp.m = static_cast<int>(sp.mags.size());
  return sp;
}

/// Exact distance; tables are materialized for full-domain measures so the
/// enumeration is incremental rather than per-point dot products.
MeasuredDistance measure_distance(const TruthTable& tf, const Ltf& h, const InputDistribution& d,
                                  int cap) {
  MeasuredDistance m;
  if (d.is_explicit()) {
    m.value = distance_exact(BoolFn(tf), BoolFn(h), d, cap);
  } else {
    TruthTable th = truth_table(h, cap);
    m.value = distance_exact(BoolFn(tf), BoolFn(th), d, cap);
  }
  m.mode = DistanceMode::Exact;
  return m;
}

/// Copy the rounded weights into the report with their common factor divided
/// out (the threshold scales along, so the function is unchanged).
void fill_weights(PipelineReport& rep, const RoundedLtf& rounded) {
  rep.weight_ceiling = rounded.weight_ceiling;
  bigint g = 0;
  for (const bigint& vi : rounded.v) g = boost::multiprecision::gcd(g, vi);
  if (g > 1) {
    rep.h.weights.clear();
    rep.h.weights.reserve(rounded.v.size());
    bigint mx = 0;
    bigint s2 = 0;
    for (const bigint& vi : rounded.v) {
      bigint q = vi / g;
      rep.h.weights.push_back(rat(q));
      bigint a = big_abs(q);
      if (a > mx) mx = a;
      s2 += q * q;
    }
    rep.h.theta = rounded.h.theta / rat(g);
    rep.max_weight = mx;
    rep.sum_v_sq = s2;
  } else {
    rep.h = rounded.h;
    rep.max_weight = rounded.max_weight;
    rep.sum_v_sq = rounded.sum_v_sq;
  }
}

/// Round, measure, and halve the grid until the target holds or the budget
/// runs out. The final attempt is what the report describes.
void run_rounding_loop(PipelineReport& rep, const Ltf& base, const rat& radius, int m,
                       const TruthTable& tf, const InputDistribution& d,
                       const PipelineConfig& cfg) {
  RoundingMode mode = d.is_explicit() ? RoundingMode::GeneralD : RoundingMode::Uniform;
  RoundingSpec spec = make_rounding_spec(radius, rep.eps, m, mode);
  rat alpha = spec.alpha;
  for (int attempt = 0;; ++attempt) {
    RoundingSpec cur = spec;
    cur.alpha = alpha;
    RoundedLtf rounded = round_weights(base, cur, d, false, cfg.cap);
    fill_weights(rep, rounded);
    rep.alpha = alpha;
    rep.retries = attempt;
    rep.dist = measure_distance(tf, rep.h, d, cfg.cap);
    if (rep.dist.value <= rep.target || attempt >= cfg.budget) break;
    alpha /= 2;
  }
  rep.met_target = rep.dist.value <= rep.target;
  rep.shortfall = !rep.met_target;
  rep.r = radius;
}

PipelineReport start_report(const char* method, const Ltf& f, const rat& eps,
                            const InputDistribution& d, const PipelineConfig& cfg) {
  if (eps <= 0 || eps >= 1) throw error("bad_eps", "target error must lie in (0,1)");
  if (d.n() != f.n()) throw error("bad_distribution", "distribution arity does not match the function");
  PipelineReport rep;
  rep.method = method;
  rep.dist_kind = d.is_uniform() ? "uniform" : (d.is_product() ? "product" : "explicit");
  rep.eps = eps;
  rep.target = rat(2) * eps;
  rep.config = cfg;
  return rep;
}

bool constant_shortcut(PipelineReport& rep, const TruthTable& t, int n) {
  std::uint64_t pos = t.count_positive();
  if (pos != 0 && pos != t.size()) return false;
  rep.h.weights.assign(n, rat(0));
  rep.h.theta = pos ? rat(-1) : rat(1);
  rep.max_weight = 0;
  rep.weight_ceiling = 0;
  rep.sum_v_sq = 0;
  rep.met_target = true;
  rep.trace.constant = true;
  rep.trace.branch = "constant";
  return true;
}

/// Exact integer representation: clear denominators, divide out the common
/// factor. Used when a gap statistic is void (too few weights for the order).
void exact_integer_fallback(PipelineReport& rep, const Ltf& exact, const TruthTable& tf,
                            const InputDistribution& d, const PipelineConfig& cfg) {
  bigint den = 1;
  for (const rat& w : exact.weights) den = boost::multiprecision::lcm(den, rat_den(w));
  std::vector<bigint> v;
  v.reserve(exact.weights.size());
  for (const rat& w : exact.weights) v.push_back(rat_num(w) * (den / rat_den(w)));
  bigint g = 0;
  for (const bigint& vi : v) g = boost::multiprecision::gcd(g, vi);
  if (g == 0) g = 1;
  rep.h.weights.clear();
  rep.h.weights.reserve(v.size());
  bigint mx = 0;
  bigint s2 = 0;
  for (const bigint& vi : v) {
    bigint q = vi / g;
    rep.h.weights.push_back(rat(q));
    bigint a = big_abs(q);
    if (a > mx) mx = a;
    s2 += q * q;
  }
  rep.h.theta = exact.theta * rat(den) / rat(g);
  rep.max_weight = mx;
  rep.weight_ceiling = mx;
  rep.sum_v_sq = s2;
  rep.dist = measure_distance(tf, rep.h, d, cfg.cap);
  rep.met_target = rep.dist.value <= rep.target;
  rep.shortfall = !rep.met_target;
  rep.trace.branch = "exact";
}

/// Marginal of d on the kept coordinates (ascending order expected).
InputDistribution marginal_on(const InputDistribution& d, const std::vector<int>& keep) {
  int nk = static_cast<int>(keep.size());
  if (d.is_uniform()) return InputDistribution::uniform(nk);
  if (d.is_product()) {
    std::vector<rat> p;
    p.reserve(keep.size());
    for (int i : keep) p.push_back(d.as_product().p[i]);
    return InputDistribution::product(std::move(p));
  }
  std::map<std::uint64_t, rat> acc;
  for (const auto& [pt, pr] : d.as_explicit().support) {
    std::uint64_t proj = 0;
    for (int j = 0; j < nk; ++j)
      if ((pt >> keep[j]) & 1) proj |= std::uint64_t{1} << j;
    acc[proj] += pr;
  }
  std::vector<std::pair<std::uint64_t, rat>> s(acc.begin(), acc.end());
  return InputDistribution::explicit_support(nk, std::move(s));
}

/// Run the gap pipeline on f compressed to the kept coordinates and expand
/// the result back to full arity. keep must be sorted ascending.
void delegate_compressed(PipelineReport& rep, const Ltf& f, const TruthTable& tf,
                         const InputDistribution& d, const PipelineConfig& cfg,
                         const std::vector<int>& keep) {
  Ltf gc;
  gc.weights.reserve(keep.size());
  for (int i : keep) gc.weights.push_back(f.weights[i]);
  gc.theta = f.theta;
  InputDistribution dc = marginal_on(d, keep);
  PipelineReport sub = pipeline_halasz(gc, rep.eps, dc, cfg);
  rep.h.weights.assign(f.n(), rat(0));
  for (std::size_t j = 0; j < keep.size(); ++j) rep.h.weights[keep[j]] = sub.h.weights[j];
  rep.h.theta = sub.h.theta;
  rep.max_weight = sub.max_weight;
  rep.weight_ceiling = sub.weight_ceiling;
  rep.sum_v_sq = sub.sum_v_sq;
  rep.k = sub.k;
  rep.r = sub.r;
  rep.alpha = sub.alpha;
  rep.retries = sub.retries;
  rep.dist = measure_distance(tf, rep.h, d, cfg.cap);
  rep.met_target = rep.dist.value <= rep.target;
  rep.shortfall = !rep.met_target;
}

void critical_tail_branch(PipelineReport& rep, const Ltf& f, const TruthTable& tf,
                          const InputDistribution& d, const PipelineConfig& cfg,
                          const CriticalIndexReport& ci) {
  rep.trace.branch = "tail-rounding";
  int ell = ci.ell;
  int m_rel = static_cast<int>(ci.order.size());
  double e = to_double(rep.eps);

  // scaling that puts the regular tail near unit weights
  rat sigma_sq = ci.tail_sq[ell - 1];
  double cd = std::sqrt(m_rel * std::log(1.0 / e)) / (e * std::sqrt(to_double(sigma_sq)));
  rat c = dyadic_floor(cd, 20);
  if (c <= 0) c = 1;

  // each head variable doubles the enumeration, so the head shrinks first
  // when the row budget is tight; displaced variables join the tail
  int ell_used = ell;
  while (ell_used > 1 &&
         (ell_used - 1 >= 60 || (1L << (ell_used - 1)) + ell_used > cfg.row_cap))
    --ell_used;
  rep.trace.ell_used = ell_used;
  if (ell_used < ell) rep.trace.lp_capped = true;

  std::vector<rat> head_w;
  std::vector<int> head_idx;
  std::vector<bigint> tail_v;
  std::vector<int> tail_idx;
  for (int j = 0; j < m_rel; ++j) {
    int src = ci.order[j];
    rat cw = c * f.weights[src];
    if (j < ell_used - 1) {
      head_w.push_back(cw);
      head_idx.push_back(src);
    } else {
      tail_v.push_back(round_ties_even(cw));
      tail_idx.push_back(src);
    }
  }
  rat theta_p = c * f.theta;

  bigint T = 0;
  bigint sum_tail_sq = 0;
  for (const bigint& vi : tail_v) {
    T += big_abs(vi);
    sum_tail_sq += vi * vi;
  }

  if (T == 0) {
    // the tail rounded away entirely at this scale
    if (head_idx.empty()) {
      rep.h.weights.assign(f.n(), rat(0));
      rep.h.theta = f.theta > 0 ? rat(1) : rat(-1);
      rep.max_weight = 0;
      rep.weight_ceiling = 0;
      rep.sum_v_sq = 0;
      rep.dist = measure_distance(tf, rep.h, d, cfg.cap);
      rep.met_target = rep.dist.value <= rep.target;
      rep.shortfall = !rep.met_target;
      return;
    }
    std::vector<int> keep = head_idx;
    std::sort(keep.begin(), keep.end());
    delegate_compressed(rep, f, tf, d, cfg, keep);
    return;
  }

  long R0_formula =
      static_cast<long>(std::ceil(cfg.R_c * std::sqrt(static_cast<double>(m_rel)) *
                                  std::log(1.0 / e) / e));
  long hoeff_floor =
      static_cast<long>(std::ceil(std::sqrt(2.0 * std::log(2.0 / e) * to_double(rat(sum_tail_sq)))));
  long R0 = std::max(R0_formula, hoeff_floor);
  if (R0 < 1) R0 = 1;
  rep.trace.R0 = R0;
  long R_used = R0;
  if (T < R_used) R_used = T.convert_to<long>();
  long span_budget = (cfg.row_cap - ell_used) >> (ell_used - 1);
  long R_max = (span_budget - 1) / 2;
  if (R_max < 0) R_max = 0;
  if (R_used > R_max) {
    R_used = R_max;
    rep.trace.lp_capped = true;
  }
  rep.trace.R0_used = R_used;

  // re-represent the head together with one integer coordinate carrying the
  // rounded tail, then pull the tail weights back through that coordinate
  std::vector<rat> ext_w = head_w;
  ext_w.push_back(rat(1));
  ExtendedTable ht = extended_table(ext_w, theta_p, R_used);
  ExtendedRepr er = extended_domain_repr(ht, cfg.row_cap);

  int kx = ell_used;
  rat u_int = er.normalized[kx - 1];
  std::vector<rat> W(f.n(), rat(0));
  for (int j = 0; j + 1 < kx; ++j) W[head_idx[j]] = er.normalized[j];
  for (std::size_t j = 0; j < tail_idx.size(); ++j) {
    rat uv = u_int * rat(tail_v[j]);
    W[tail_idx[j]] = uv;
  }
  Ltf base;
  base.weights = std::move(W);
  base.theta = er.normalized_theta;

  // radius from the head-only gap profile; coarse unit fallback when the
  // head has no gaps to offer
  int jp = cube_root_order(rep.eps);
  rep.k = jp;
  std::vector<rat> head_part(er.normalized.begin(), er.normalized.end() - 1);
  std::vector<rat> gaps = descending_gaps(magnitude_profile(head_part));
  rat radius = 1;
  if (!gaps.empty()) {
    int pick = std::min(jp + 2, static_cast<int>(gaps.size()));
    radius = gaps[pick - 1];
    if (radius <= 0) radius = 1;
  }
  int m_round = nonzero_count(base.weights);
  run_rounding_loop(rep, base, radius, m_round, tf, d, cfg);
}

}  // namespace

RoundingSpec make_rounding_spec(const rat& r, const rat& eps, int m, RoundingMode mode) {
  if (r <= 0) throw error("bad_radius", "rounding radius must be positive");
  if (eps <= 0 || eps >= 1) throw error("bad_eps", "error budget must lie in (0,1)");
  if (m < 1) throw error("bad_arity", "rounding needs at least one weight");
  RoundingSpec s;
  s.r = r;
  s.eps = eps;
  s.mode = mode;
  if (mode == RoundingMode::Uniform) {
    double ln = std::log(2.0 / to_double(eps));
    rat denom = sqrt_upper(m * ln);
    s.alpha = r / denom;
  } else {
    s.alpha = r / m;
  }
  return s;
}

RoundedLtf round_weights(const Ltf& g, const RoundingSpec& spec, const InputDistribution& d,
                         bool verify_premise, int cap) {
  if (spec.alpha <= 0) throw error("bad_alpha", "grid step must be positive");
  RoundedLtf out;
  out.e_l1 = 0;
  out.max_weight = 0;
  out.sum_v_sq = 0;
  rat max_w = 0;
  out.v.reserve(g.weights.size());
  out.h.weights.reserve(g.weights.size());
  for (const rat& w : g.weights) {
    rat q = w / spec.alpha;
    bigint vi = round_ties_even(q);
    out.v.push_back(vi);
    out.h.weights.push_back(rat(vi));
    rat err = rat_abs(w - spec.alpha * rat(vi));
    out.e_l1 += err;
    bigint a = big_abs(vi);
    if (a > out.max_weight) out.max_weight = a;
    out.sum_v_sq += vi * vi;
    rat aw = rat_abs(w);
    if (aw > max_w) max_w = aw;
  }
  out.h.theta = g.theta / spec.alpha;
  out.weight_ceiling = ceil_rat(max_w / spec.alpha);
  out.degenerate = out.max_weight == 0;
  if (verify_premise) {
    out.premise.checked = true;
    LevyResult lv = levy_exact(g.weights, spec.r, d, cap);
    out.premise.p = lv.p;
    out.premise.holds = lv.p <= spec.eps;
  }
  return out;
}

TruncatedJunta truncate_to_junta(const Ltf& f, int L, int cap) {
  if (L < 1) throw error("bad_l", "junta size must be at least 1");
  TruncatedJunta out;
  int n = f.n();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return cmp_abs(f.weights[a], f.weights[b]) > 0; });
  out.g.weights.assign(n, rat(0));
  out.g.theta = f.theta;
  int take = std::min(L, n);
  for (int j = 0; j < take; ++j) {
    out.kept.push_back(idx[j]);
    out.g.weights[idx[j]] = f.weights[idx[j]];
  }
  if (n <= cap) {
    TruthTable tf = truth_table(f, cap);
    TruthTable tg = truth_table(out.g, cap);
    out.dist = distance_exact(BoolFn(tf), BoolFn(tg), InputDistribution::uniform(n), cap);
  }
  return out;
}

PipelineReport pipeline_erdos(const Ltf& f, const rat& eps, const InputDistribution& d,
                              const PipelineConfig& cfg) {
  PipelineReport rep = start_report("ser07", f, eps, d, cfg);
  TruthTable t = truth_table(f, cfg.cap);
  if (constant_shortcut(rep, t, f.n())) return rep;
  LtfRepresentation lr = ltf_representation(t, cfg.row_cap);
  SourceProfile sp = normalized_profile(lr.rep);
  rat thr = rat(1) / (eps * eps);
  int k = sp.m;
  if (rat(sp.m) > thr) k = static_cast<int>(ceil_rat(thr).convert_to<long>());
  rep.k = k;
  rat radius = sp.mags[k - 1];
  rep.trace.branch = "rounded";
  run_rounding_loop(rep, sp.base, radius, sp.m, t, d, cfg);
  return rep;
}

PipelineReport pipeline_halasz(const Ltf& f, const rat& eps, const InputDistribution& d,
                               const PipelineConfig& cfg) {
  PipelineReport rep = start_report("thm25", f, eps, d, cfg);
  TruthTable t = truth_table(f, cfg.cap);
  if (constant_shortcut(rep, t, f.n())) return rep;
  LtfRepresentation lr = ltf_representation(t, cfg.row_cap);
  SourceProfile sp = normalized_profile(lr.rep);
  int k = cube_root_order(eps);
  rep.k = k;
  if (k > sp.m - 2) {
    exact_integer_fallback(rep, lr.rep, t, d, cfg);
    return rep;
  }
  std::vector<rat> gaps = descending_gaps(sp.mags);
  rat radius = gaps[k - 1];
  rep.trace.branch = "rounded";
  run_rounding_loop(rep, sp.base, radius, sp.m, t, d, cfg);
  return rep;
}

PipelineReport pipeline_critical(const Ltf& f, const rat& eps, const InputDistribution& d,
                                 const PipelineConfig& cfg) {
  PipelineReport rep = start_report("thm2", f, eps, d, cfg);
  TruthTable t = truth_table(f, cfg.cap);
  if (constant_shortcut(rep, t, f.n())) return rep;

  double e = to_double(eps);
  double ln1e = std::log(1.0 / e);
  int L = static_cast<int>(std::ceil(cfg.L_c * ln1e * ln1e / (e * e)));
  int K = static_cast<int>(std::ceil(cfg.K_c / std::pow(e, 2.0 / 3.0)));
  if (L < 1) L = 1;
  if (K < 1) K = 1;
  rep.trace.L = L;
  rep.trace.K = K;

  CriticalIndexReport ci = critical_index(f, eps);
  rep.trace.infinite_ell = ci.infinite;
  rep.trace.ell = ci.ell;

  if (ci.infinite || ci.ell > L) {
    rep.trace.branch = "truncate+thm25";
    TruncatedJunta tj = truncate_to_junta(f, L, cfg.cap);
    std::vector<int> keep = tj.kept;
    std::sort(keep.begin(), keep.end());
    delegate_compressed(rep, f, t, d, cfg, keep);
    return rep;
  }
  critical_tail_branch(rep, f, t, d, cfg, ci);
  return rep;
}

Corollary13Report corollary13_compose(const Ltf& f, const rat& eps, const PipelineConfig& cfg) {
  if (eps <= 0 || eps >= 1) throw error("bad_eps", "target error must lie in (0,1)");
  Corollary13Report out;
  out.eps = eps;
  rat half = eps / 2;
  Rng rng(cfg.seed);
  out.junta = theorem1_pipeline(f, half, rng, {}, 32, cfg.cap);
  TruthTable tf = truth_table(f, cfg.cap);
  InfluenceProfile ip = influences(tf, cfg.cap);
  out.inf_sq = ip.total * ip.total;
  out.rounding = pipeline_erdos(out.junta.g, half, InputDistribution::uniform(f.n()), cfg);
  out.sum_v_sq = out.rounding.sum_v_sq;
  out.total = measure_distance(tf, out.rounding.h, InputDistribution::uniform(f.n()), cfg.cap);
  out.met = out.total.value <= eps;
  out.shortfall = out.junta.shortfall || out.rounding.shortfall;
  return out;
}

}  // namespace ltf
