#include "ltf/verify.hpp"

#include "ltf/anticonc.hpp"
#include "ltf/core.hpp"
#include "ltf/fourier.hpp"
#include "ltf/junta.hpp"
#include "ltf/lp_repr.hpp"
#include "ltf/weight_approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ltf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Suite {
  VerifyReport rep;
  Rng rng;
  double worst = kInf;

  Suite(const std::string& name, const VerifyParams& p, std::string note)
      : rng(p.seed) {
    rep.suite = name;
    rep.seed = p.seed;
    rep.margin_note = std::move(note);
  }

  void check(bool pass, double margin, const json& instance, const std::string& detail) {
    ++rep.instances;
    worst = std::min(worst, margin);
    if (pass) {
      ++rep.passed;
    } else {
      ++rep.failed;
      if (rep.failures.size() < 16)
        rep.failures.push_back({instance, rep.seed, detail});
    }
  }

  VerifyReport finish() {
    rep.worst_margin = rep.instances > 0 && worst != kInf ? worst : 0;
    return std::move(rep);
  }
};

int scaled(int requested, int fallback) { return requested > 0 ? requested : fallback; }

Ltf random_generic_ltf(Rng& rng, int n, bool signs = true) {
  Ltf f;
  for (int i = 0; i < n; ++i) {
    rat w(static_cast<long>(rng.below(5)) + 1, static_cast<long>(rng.below(3)) + 1);
    if (signs && rng.pm1() < 0) w = -w;
    f.weights.push_back(w);
  }
  f.theta = rat(static_cast<long>(rng.below(5)) - 2, 4);
  return f;
}

json weights_json(const std::vector<rat>& w) {
  json a = json::array();
  for (const rat& wi : w) a.push_back(format_rat(wi));
  return a;
}

// --------------------------------------------------------------------------
// lemma9: small-margin mass of near-maximally-regular random vectors.
// Def-6 regularity forces tau >= 1/sqrt(n), so the literal tau grid has no
// witnesses at enumerable arity; the inequality is checked at the grid taus
// anyway (it holds with slack for generic vectors) and at the vector's actual
// regularity, where the hypothesis genuinely applies.
// --------------------------------------------------------------------------

VerifyReport suite_lemma9(const VerifyParams& p) {
  Suite s("lemma9", p, "min over checks of 4*tau - Pr[marg < tau]");
  int nmax = std::max(8, std::min(scaled(p.nmax, 14), p.cap));
  int count = scaled(p.instances, 100);
  for (int i = 0; i < count; ++i) {
    int n = 8 + i % (nmax - 7);
    Ltf f = random_generic_ltf(s.rng, n, false);
    RegularityReport reg = regularity(f);
    std::vector<rat> taus = {rat(1, 20), rat(1, 10), rat(1, 5)};
    int j = 1;
    while (rat(j, 32) * rat(j, 32) < reg.tau_squared && j < 32) ++j;
    taus.push_back(rat(j, 32));
    bool pass = true;
    double margin = kInf;
    rat worst_tau = 0, worst_frac = 0;
    for (const rat& tau : taus) {
      MarginReport m = margin_stats(f, tau, p.cap);
      rat slack = 4 * tau - m.fraction_below;
      margin = std::min(margin, to_double(slack));
      if (!m.small_margin_ok) {
        pass = false;
        worst_tau = tau;
        worst_frac = m.fraction_below;
      }
    }
    json inst;
    inst["ltf"] = ltf_to_json(f);
    if (!pass) {
      inst["tau"] = format_rat(worst_tau);
      inst["fraction_below"] = format_rat(worst_frac);
    }
    s.check(pass, margin, inst, pass ? "" : "Pr[marg < tau] > 4 tau");
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// lemma10: mean exact distance between h_theta and its sampled-form g_theta.
// --------------------------------------------------------------------------

VerifyReport suite_lemma10(const VerifyParams& p) {
  Suite s("lemma10", p, "min over instances of 5*tau + 3se - mean dist (tau = 1/10)");
  int m = std::clamp(scaled(p.nmax, 12), 4, 14);
  int count = scaled(p.instances, 20);
  int draws = scaled(p.draws, 200);
  InputDistribution u = InputDistribution::uniform(m);
  for (int i = 0; i < count; ++i) {
    Ltf h;
    for (int v = 0; v < m; ++v) {
      rat w(static_cast<long>(s.rng.below(10)) + 3, static_cast<long>(s.rng.below(5)) + 4);
      if (s.rng.pm1() < 0) w = -w;
      h.weights.push_back(w);
    }
    h.theta = rat(static_cast<long>(s.rng.below(5)) - 2, 2);
    RegularityReport reg = regularity(h);
    int j = 7;  // tau_s >= 1/10 and >= the actual regularity
    while (rat(j, 64) * rat(j, 64) < reg.tau_squared && j < 64) ++j;
    rat tau_s(j, 64);

    rat sum = 0, sum_sq = 0;
    for (int d = 0; d < draws; ++d) {
      SampledLinearForm form = sample_linear_form(h.weights, tau_s, s.rng);
      Ltf g = build_g_theta(form, -h.theta);
      rat dist = distance_exact(BoolFn(g), BoolFn(h), u, p.cap);
      sum += dist;
      sum_sq += dist * dist;
    }
    rat mean = sum / draws;
    double var = draws > 1
                     ? to_double((sum_sq - sum * sum / draws) / (draws - 1))
                     : 0.0;
    double se = std::sqrt(std::max(var, 0.0) / draws);
    double bound_grid = 5.0 * 0.1 + 3 * se;
    double bound_reg = 5.0 * to_double(tau_s) + 3 * se;
    double mean_d = to_double(mean);
    bool pass = mean_d <= bound_grid && mean_d <= bound_reg;
    json inst;
    inst["ltf"] = ltf_to_json(h);
    inst["tau_sample"] = format_rat(tau_s);
    inst["mean_dist"] = format_rat(mean);
    inst["draws"] = draws;
    s.check(pass, bound_grid - mean_d, inst,
            pass ? "" : "mean sampled distance above 5*tau + 3se");
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// erdos: exact central-binomial anti-concentration bound.
// --------------------------------------------------------------------------

VerifyReport suite_erdos(const VerifyParams& p) {
  Suite s("erdos", p, "min over instances of bound - p_r");
  int kmax = std::max(4, std::min(scaled(p.nmax, 16), p.cap));
  int count = scaled(p.instances, 200);
  rat r(1, 2);
  for (int i = 0; i < count; ++i) {
    std::vector<rat> a;
    int k;
    if (i == 0) {
      a.assign(4, rat(1));  // the tight case: p = bound = 6/16
      k = 4;
    } else {
      k = 4 + i % (kmax - 3);
      for (int v = 0; v < k; ++v) {
        rat w(static_cast<long>(s.rng.below(9)) + 1, static_cast<long>(s.rng.below(2)) + 1);
        if (s.rng.pm1() < 0) w = -w;
        a.push_back(w);
      }
    }
    ErdosReport rep = erdos_check(a, r, InputDistribution::uniform(k), p.cap);
    bool pass = rep.pass && rep.bound.has_value();
    if (i == 0) pass = pass && rep.p == rat(6, 16);
    rat slack = rep.bound ? *rep.bound - rep.p : rat(0);
    json inst;
    inst["a"] = weights_json(a);
    inst["r"] = format_rat(r);
    s.check(pass, to_double(slack), inst, pass ? "" : "p_r above the central-binomial bound");
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// halasz: k^{3/2}-normalized trend of the (1..k) family against the frozen
// pre-build band, with exact spot values.
// --------------------------------------------------------------------------

VerifyReport suite_halasz(const VerifyParams& p) {
  Suite s("halasz", p, "min distance of p_r*k^{3/2} to the frozen band edges [2.29, 2.57]");
  int hi = std::max(6, std::min(scaled(p.nmax, 16), p.cap));
  auto family = [](int k) {
    std::vector<rat> a;
    for (int i = 1; i <= k; ++i) a.push_back(rat(i));
    return a;
  };
  auto dist_for = [](int k) { return InputDistribution::uniform(k); };
  std::vector<ProbeRow> rows = halasz_probe(family, rat(1), 6, hi, dist_for, p.cap);
  const std::map<int, rat> spots = {
      {8, rat(27, 256)}, {12, rat(247, 4096)}, {16, rat(2627, 65536)}};
  double lo_seen = kInf, hi_seen = -kInf;
  for (const ProbeRow& row : rows) {
    bool pass = row.trend >= 2.29 && row.trend <= 2.57;
    auto spot = spots.find(row.k);
    if (spot != spots.end() && row.p != spot->second) pass = false;
    lo_seen = std::min(lo_seen, row.trend);
    hi_seen = std::max(hi_seen, row.trend);
    json inst;
    inst["k"] = row.k;
    inst["p"] = format_rat(row.p);
    inst["trend"] = row.trend;
    s.check(pass, std::min(row.trend - 2.29, 2.57 - row.trend), inst,
            pass ? "" : "trend left the frozen band or an exact spot value moved");
  }
  if (!rows.empty()) {
    json inst;
    inst["trend_min"] = lo_seen;
    inst["trend_max"] = hi_seen;
    s.check(hi_seen <= 2 * lo_seen, 2 * lo_seen - hi_seen, inst,
            hi_seen <= 2 * lo_seen ? "" : "band wider than twice its minimum");
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// extension: anti-concentration never grows under prefix extension.
// --------------------------------------------------------------------------

VerifyReport suite_extension(const VerifyParams& p) {
  Suite s("extension", p, "min over pairs of p_prefix - p_full");
  int nmax = std::max(8, std::min(scaled(p.nmax, 14), p.cap));
  int count = scaled(p.instances, 500);
  for (int i = 0; i < count; ++i) {
    int k0 = 2 + static_cast<int>(s.rng.below(4));
    int n = k0 + 1 + static_cast<int>(s.rng.below(nmax - k0));
    std::vector<rat> full;
    for (int v = 0; v < n; ++v) {
      rat w(static_cast<long>(s.rng.below(8)) + 1, static_cast<long>(s.rng.below(3)) + 1);
      if (s.rng.pm1() < 0) w = -w;
      full.push_back(w);
    }
    std::vector<rat> prefix(full.begin(), full.begin() + k0);
    rat r(1 + static_cast<long>(s.rng.below(4)), 4);
    bool product = i % 2 == 1;
    std::vector<rat> biases;
    if (product) biases.assign(n, rat(7, 10));
    ExtensionReport rep = extension_check(prefix, full, r, biases, p.cap);
    json inst;
    inst["prefix"] = weights_json(prefix);
    inst["full"] = weights_json(full);
    inst["r"] = format_rat(r);
    inst["dist"] = product ? "product(7/10)" : "uniform";
    s.check(rep.pass, to_double(rep.p_prefix - rep.p_full), inst,
            rep.pass ? "" : "extension increased the anti-concentration value");
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// lemma26 / claim40 / prop17 share the enumerated threshold-function sweep.
// --------------------------------------------------------------------------

constexpr long kEnumWmax = 3;  // integer_ltf_tables(n, 3) is complete for n <= 4

std::map<int, std::size_t> enum_counts() {
  return {{1, 4}, {2, 14}, {3, 104}, {4, 1882}};
}

VerifyReport suite_lemma26(const VerifyParams& p) {
  Suite s("lemma26", p, "min over chains of gap_k - floor_k, k <= m-2");
  int nmax = scaled(p.nmax, 10);

  auto check_table = [&](const TruthTable& t, json inst) {
    LtfRepresentation rep = ltf_representation(t, p.row_cap);
    bool pass = truth_table(rep.rep, p.cap) == t && rep.gaps.holds;
    double margin = kInf;
    int m = static_cast<int>(rep.gaps.normalized.size());
    for (const GapEntry& e : rep.gaps.table)
      if (e.k <= m - 2) margin = std::min(margin, to_double(e.gap - e.bound));
    s.check(pass, margin, inst,
            pass ? "" : "representation round-trip or gap floor failed");
  };

  for (int n = 2; n <= std::min(4, nmax); ++n) {
    std::vector<TruthTable> all = integer_ltf_tables(n, kEnumWmax);
    json count_inst;
    count_inst["arity"] = n;
    count_inst["tables"] = all.size();
    s.check(all.size() == enum_counts()[n], kInf, count_inst,
            "threshold-function enumeration count moved");
    for (const TruthTable& t : all) {
      json inst;
      inst["table"] = table_to_json(t);
      check_table(t, std::move(inst));
    }
  }

  if (nmax >= 6) {
    int count = scaled(p.instances, 50);
    for (int i = 0; i < count; ++i) {
      int n = 6 + i % (std::min(nmax, 10) - 5);
      Ltf f = random_generic_ltf(s.rng, n);
      json inst;
      inst["ltf"] = ltf_to_json(f);
      check_table(truth_table(f, p.cap), std::move(inst));
    }
  }
  return s.finish();
}

VerifyReport suite_claim40(const VerifyParams& p) {
  Suite s("claim40", p, "min over chains of |w_k| - 1/(4 k^k n)");
  int nmax = std::clamp(scaled(p.nmax, 8), 3, 10);
  int count = scaled(p.instances, 30);
  for (int i = 0; i < count; ++i) {
    int n = 3 + i % (nmax - 2);
    Ltf f = random_generic_ltf(s.rng, n);
    LtfRepresentation rep = ltf_representation(truth_table(f, p.cap), p.row_cap);
    WeightFloorReport floors = weight_floor_check(rep.gaps.normalized, 0.0, FloorMode::Exact);
    bool pass = true;
    double margin = kInf;
    for (const FloorEntry& e : floors.entries) {
      pass = pass && e.pass;
      margin = std::min(margin, to_double(e.wk - e.floor_q));
    }
    json inst;
    inst["ltf"] = ltf_to_json(f);
    inst["normalized"] = weights_json(rep.gaps.normalized);
    s.check(pass, margin, inst,
            pass ? "" : "vertex representation under the exact weight floor");
  }
  return s.finish();
}

VerifyReport suite_prop17(const VerifyParams& p) {
  Suite s("prop17", p,
          "boolean junta-size check; no margin (constants excluded: degree 0)");
  int nmax = std::clamp(scaled(p.nmax, 4), 1, 6);
  for (int n = 1; n <= std::min(4, nmax); ++n) {
    for (const TruthTable& t : integer_ltf_tables(n, kEnumWmax)) {
      std::uint64_t pos = t.count_positive();
      if (pos == 0 || pos == t.size()) continue;  // degree 0, literal check is vacuous
      json inst;
      inst["table"] = table_to_json(t);
      s.check(prop17_check(t, p.cap), 0, inst, "relevant variables above 2k-1");
    }
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// lemma29: extended-domain representations and their gap floors.
// --------------------------------------------------------------------------

VerifyReport suite_lemma29(const VerifyParams& p) {
  Suite s("lemma29", p, "min over chains of gap_j - floor_j, j <= m-2");
  const std::vector<std::pair<int, long>> shapes = {{3, 4}, {4, 6}, {4, 8}};
  int per_shape = scaled(p.instances, 20);
  for (const auto& [k, R] : shapes) {
    for (int i = 0; i < per_shape; ++i) {
      std::vector<rat> w;
      for (int v = 0; v + 1 < k; ++v) {
        rat wi(static_cast<long>(s.rng.below(6)) + 1, static_cast<long>(s.rng.below(2)) + 1);
        if (s.rng.pm1() < 0) wi = -wi;
        w.push_back(wi);
      }
      rat wk(static_cast<long>(s.rng.below(4)) + 1, static_cast<long>(s.rng.below(2)) + 1);
      if (s.rng.pm1() < 0) wk = -wk;
      w.push_back(wk);
      rat theta(static_cast<long>(s.rng.below(9)) - 4, 2);

      ExtendedTable h = extended_table(w, theta, R);
      ExtendedRepr er = extended_domain_repr(h, p.row_cap);
      ExtendedTable back = extended_table(er.w, er.theta, R);
      bool pass = back.vals == h.vals && er.gaps.holds;
      double margin = kInf;
      int m = static_cast<int>(er.gaps.normalized.size());
      for (const GapEntry& e : er.gaps.table)
        if (e.k <= m - 2) margin = std::min(margin, to_double(e.gap - e.bound));
      json inst;
      inst["k"] = k;
      inst["R"] = R;
      inst["weights"] = weights_json(w);
      inst["theta"] = format_rat(theta);
      s.check(pass, margin, inst,
              pass ? "" : "extended representation round-trip or gap floor failed");
    }
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// lemma22: rounding contract under a certified anti-concentration premise.
// --------------------------------------------------------------------------

VerifyReport suite_lemma22(const VerifyParams& p) {
  Suite s("lemma22", p, "min over instances of 2*eps - dist");
  int nmax = std::max(8, std::min(scaled(p.nmax, 14), p.cap));
  int count = scaled(p.instances, 50);
  const rat eps_grid[] = {rat(1, 2), rat(1, 3), rat(1, 4)};
  for (int i = 0; i < count; ++i) {
    int n = 8 + i % (nmax - 7);
    Ltf f;
    for (int v = 0; v < n; ++v) {
      rat w(static_cast<long>(s.rng.below(10)) + 3, static_cast<long>(s.rng.below(5)) + 4);
      if (s.rng.pm1() < 0) w = -w;
      f.weights.push_back(w);
    }
    f.theta = rat(static_cast<long>(s.rng.below(2 * n)) - n, 3);
    rat eps = eps_grid[i % 3];
    InputDistribution u = InputDistribution::uniform(n);

    rat r(1, 2);
    int guard = 0;
    while (levy_exact(f.weights, r, u, p.cap).p > eps && guard++ < 60) r /= 2;

    RoundingSpec spec = make_rounding_spec(r, eps, n, RoundingMode::Uniform);
    RoundedLtf rr = round_weights(f, spec, u, true, p.cap);
    rat dist = distance_exact(BoolFn(f), BoolFn(rr.h), u, p.cap);

    rat maxw = 0;
    for (const rat& w : f.weights) maxw = std::max(maxw, rat_abs(w));
    bool pass = rr.premise.holds && dist <= 2 * eps &&
                rr.weight_ceiling == ceil_rat(maxw / spec.alpha) &&
                rr.max_weight <= rr.weight_ceiling;
    json inst;
    inst["ltf"] = ltf_to_json(f);
    inst["eps"] = format_rat(eps);
    inst["r"] = format_rat(r);
    inst["dist"] = format_rat(dist);
    s.check(pass, to_double(2 * eps - dist), inst,
            pass ? "" : "rounding contract violated");
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// berryesseen: constant-free Gaussian band on exact interval masses.
// --------------------------------------------------------------------------

VerifyReport suite_berryesseen(const VerifyParams& p) {
  Suite s("berryesseen", p, "min over instances of 2*tau - residual");
  int nmax = std::max(8, std::min(scaled(p.nmax, 16), p.cap));
  int count = scaled(p.instances, 200);
  for (int i = 0; i < count; ++i) {
    int n = 8 + i % (nmax - 7);
    std::vector<rat> w;
    for (int v = 0; v < n; ++v) {
      rat wi(static_cast<long>(s.rng.below(5)) + 1, static_cast<long>(s.rng.below(3)) + 1);
      if (s.rng.pm1() < 0) wi = -wi;
      w.push_back(wi);
    }
    rat alpha = -rat(static_cast<long>(s.rng.below(13)), 2);
    rat beta = alpha + rat(static_cast<long>(s.rng.below(12)) + 1, 2);
    GaussianBandReport rep = gaussian_band(w, alpha, beta, p.cap);
    json inst;
    inst["weights"] = weights_json(w);
    inst["alpha"] = format_rat(alpha);
    inst["beta"] = format_rat(beta);
    inst["residual"] = rep.residual;
    s.check(rep.pass, rep.two_tau - rep.residual, inst,
            rep.pass ? "" : "Gaussian band residual above 2*tau");
  }
  return s.finish();
}

// --------------------------------------------------------------------------
// corollary13: junta approximation composed with integer rounding.
// --------------------------------------------------------------------------

VerifyReport suite_corollary13(const VerifyParams& p) {
  Suite s("corollary13", p, "min over runs of eps - total distance");
  std::vector<std::pair<std::string, Ltf>> members;
  members.emplace_back("dictator6", dictator(6, 2));
  members.emplace_back("maj5", majority(5));
  members.emplace_back("maj9", majority(9));
  members.emplace_back("prop14(2,9)", prop14_witness(2, 9));
  const rat eps_grid[] = {rat(1, 2), rat(3, 10)};
  int count = scaled(p.instances, 8);
  PipelineConfig cfg;
  cfg.cap = p.cap;
  cfg.row_cap = p.row_cap;
  cfg.seed = p.seed;
  int run = 0;
  for (const auto& [name, f] : members) {
    for (const rat& eps : eps_grid) {
      if (run++ >= count) break;
      Corollary13Report rep = corollary13_compose(f, eps, cfg);
      bool pass = rep.met && !rep.shortfall;
      json inst;
      inst["member"] = name;
      inst["eps"] = format_rat(eps);
      inst["total"] = format_rat(rep.total.value);
      inst["sum_v_sq"] = rep.sum_v_sq.str();
      s.check(pass, to_double(eps - rep.total.value), inst,
              pass ? "" : "composition missed its end-to-end budget");
    }
  }
  return s.finish();
}

using SuiteFn = VerifyReport (*)(const VerifyParams&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"lemma9", suite_lemma9},       {"lemma10", suite_lemma10},
      {"erdos", suite_erdos},         {"halasz", suite_halasz},
      {"extension", suite_extension}, {"lemma26", suite_lemma26},
      {"lemma29", suite_lemma29},     {"lemma22", suite_lemma22},
      {"claim40", suite_claim40},     {"berryesseen", suite_berryesseen},
      {"prop17", suite_prop17},       {"corollary13", suite_corollary13},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

VerifyReport run_verify_suite(const std::string& name, const VerifyParams& p) {
  for (const auto& [suite, fn] : suite_table())
    if (suite == name) return fn(p);
  throw error("bad_suite", "unknown verify suite '" + name + "'");
}

json verify_report_to_json(const VerifyReport& r) {
  json j;
  j["suite"] = r.suite;
  j["instances"] = r.instances;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["worst_margin"] = r.worst_margin;
  j["margin_note"] = r.margin_note;
  j["seed"] = r.seed;
  json fails = json::array();
  for (const VerifyFailure& f : r.failures) {
    json e;
    e["seed"] = f.seed;
    e["detail"] = f.detail;
    e["instance"] = f.instance;
    fails.push_back(std::move(e));
  }
  j["failures"] = std::move(fails);
  return j;
}

}  // namespace ltf
