#include "doctest.h"

#include "ltf/fourier.hpp"
#include "ltf/lp_repr.hpp"
#include "ltf/weight_approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

using namespace ltf;

namespace {

Ltf head_plus_tail_17() {
  // sign(4 x_1 + x_2 + ... + x_17): one heavy coordinate over a regular tail
  Ltf f;
  f.weights.assign(17, rat(1));
  f.weights[0] = rat(4);
  f.theta = 0;
  return f;
}

rat exact_dist(const Ltf& a, const Ltf& b, const InputDistribution& d) {
  if (d.is_explicit()) return distance_exact(BoolFn(a), BoolFn(b), d);
  TruthTable ta = truth_table(a), tb = truth_table(b);
  return distance_exact(BoolFn(ta), BoolFn(tb), d);
}

bool all_integer(const std::vector<rat>& w) {
  for (const rat& x : w)
    if (rat_den(x) != 1) return false;
  return true;
}

int nonzero(const std::vector<rat>& w) {
  int m = 0;
  for (const rat& x : w)
    if (x != 0) ++m;
  return m;
}

/// k-th biggest consecutive gap of the normalized magnitude profile.
rat profile_gap(const std::vector<rat>& w, int k) {
  std::vector<rat> mags;
  for (const rat& x : w)
    if (x != 0) mags.push_back(rat_abs(x));
  std::sort(mags.begin(), mags.end(), [](const rat& a, const rat& b) { return a > b; });
  rat top = mags[0];
  for (rat& m : mags) m /= top;
  std::vector<rat> gaps;
  for (std::size_t i = 0; i + 1 < mags.size(); ++i) gaps.push_back(mags[i] - mags[i + 1]);
  std::sort(gaps.begin(), gaps.end(), [](const rat& a, const rat& b) { return a > b; });
  return gaps[k - 1];
}

Ltf random_regularish(Rng& rng, int n) {
  Ltf g;
  for (int i = 0; i < n; ++i) {
    long num = 3 + static_cast<long>(rng.below(10));
    long den = 4 + static_cast<long>(rng.below(5));
    rat w(num, den);
    if (rng.below(2)) w = -w;
    g.weights.push_back(w);
  }
  g.theta = rat(static_cast<long>(rng.below(2 * n)) - n, 3);
  return g;
}

/// Halve r until the exact window mass at radius r drops within eps.
rat certified_radius(const Ltf& g, const rat& eps, const InputDistribution& d) {
  rat r(1, 2);
  int guard = 0;
  while (guard < 60) {
    LevyResult lv = levy_exact(g.weights, r, d);
    if (lv.p <= eps) break;
    r /= 2;
    ++guard;
  }
  return r;
}

}  // namespace

TEST_CASE("rounding grids follow the mode formulas") {
  rat r(1, 2), eps(1, 2);
  RoundingSpec u = make_rounding_spec(r, eps, 3, RoundingMode::Uniform);
  CHECK(u.alpha > 0);
  double truth = 0.5 / std::sqrt(3.0 * std::log(4.0));
  double got = to_double(u.alpha);
  CHECK(got < truth);            // the denominator upper bound only shrinks alpha
  CHECK(got > truth * 0.9999);   // and only by a hair

  RoundingSpec g = make_rounding_spec(rat(5, 9), rat(1, 4), 5, RoundingMode::GeneralD);
  rat want(1, 9);
  CHECK(g.alpha == want);  // exact r/m

  CHECK_THROWS_WITH_AS(make_rounding_spec(rat(0), eps, 3, RoundingMode::Uniform),
                       doctest::Contains("radius"), error);
  CHECK_THROWS_WITH_AS(make_rounding_spec(r, rat(1), 3, RoundingMode::Uniform),
                       doctest::Contains("(0,1)"), error);
  CHECK_THROWS_WITH_AS(make_rounding_spec(r, eps, 0, RoundingMode::Uniform),
                       doctest::Contains("weight"), error);
}

TEST_CASE("weights snap to the grid and the threshold scales along") {
  Ltf g;
  g.weights = {rat(1), rat(49, 50), rat(101, 100)};
  g.theta = 0;
  RoundingSpec sp;
  sp.r = rat(1, 2);
  sp.eps = rat(1, 10);
  sp.alpha = rat(1, 10);
  RoundedLtf rr = round_weights(g, sp, InputDistribution::uniform(3));
  CHECK(rr.v == std::vector<bigint>{10, 10, 10});
  CHECK(rr.h.theta == 0);
  CHECK(rr.max_weight == 10);
  CHECK(rr.weight_ceiling == 11);  // ceil(max |w| / alpha) before any rounding down
  CHECK(rr.sum_v_sq == 300);
  rat l1(3, 100);
  CHECK(rr.e_l1 == l1);
  CHECK_FALSE(rr.degenerate);
  CHECK(truth_table(rr.h) == truth_table(majority(3)));
  rat d = exact_dist(g, rr.h, InputDistribution::uniform(3));
  CHECK(d == 0);

  SUBCASE("integer weights are a fixed point of the unit grid") {
    Ltf f;
    f.weights = {rat(3), rat(-2), rat(5)};
    f.theta = rat(1, 2);
    RoundingSpec unit;
    unit.r = 1;
    unit.eps = rat(1, 2);
    unit.alpha = 1;
    RoundedLtf out = round_weights(f, unit, InputDistribution::uniform(3));
    CHECK(out.v == std::vector<bigint>{3, -2, 5});
    CHECK(out.e_l1 == 0);
    rat th(1, 2);
    CHECK(out.h.theta == th);
  }

  SUBCASE("ties round to even") {
    Ltf f;
    f.weights = {rat(5, 2), rat(7, 2), rat(-5, 2), rat(-7, 2), rat(1, 2), rat(3, 2)};
    f.theta = 0;
    RoundingSpec unit;
    unit.r = 1;
    unit.eps = rat(1, 2);
    unit.alpha = 1;
    RoundedLtf out = round_weights(f, unit, InputDistribution::uniform(6));
    CHECK(out.v == std::vector<bigint>{2, 4, -2, -4, 0, 2});
  }

  SUBCASE("an all-zero rounding is reported, not thrown") {
    Ltf f;
    f.weights = {rat(1, 100), rat(-1, 100)};
    f.theta = 0;
    RoundingSpec unit;
    unit.r = 1;
    unit.eps = rat(1, 2);
    unit.alpha = 1;
    RoundedLtf out = round_weights(f, unit, InputDistribution::uniform(2));
    CHECK(out.degenerate);
    CHECK(out.max_weight == 0);
  }

  SUBCASE("a nonpositive grid throws") {
    RoundingSpec bad;
    bad.r = 1;
    bad.eps = rat(1, 2);
    bad.alpha = 0;
    CHECK_THROWS_WITH_AS(round_weights(g, bad, InputDistribution::uniform(3)),
                         doctest::Contains("grid"), error);
  }
}

TEST_CASE("the window-mass premise is checked exactly on request") {
  Ltf g = majority(3);
  RoundingSpec sp = make_rounding_spec(rat(1, 2), rat(1, 2), 3, RoundingMode::Uniform);
  RoundedLtf rr = round_weights(g, sp, InputDistribution::uniform(3), true);
  CHECK(rr.premise.checked);
  rat p(3, 8);  // the +-1 values cluster at most 3/8 in any width-1 window
  CHECK(rr.premise.p == p);
  CHECK(rr.premise.holds);

  RoundingSpec tight = make_rounding_spec(rat(1, 2), rat(1, 4), 3, RoundingMode::Uniform);
  RoundedLtf rr2 = round_weights(g, tight, InputDistribution::uniform(3), true);
  CHECK(rr2.premise.checked);
  CHECK_FALSE(rr2.premise.holds);  // 3/8 > 1/4

  RoundedLtf quiet = round_weights(g, sp, InputDistribution::uniform(3));
  CHECK_FALSE(quiet.premise.checked);
}

TEST_CASE("certified radii keep the rounded distance within twice the budget") {
  Rng rng(2026);
  rat eps(1, 10);
  for (int it = 0; it < 50; ++it) {
    int n = 8 + static_cast<int>(rng.below(5));
    Ltf g = random_regularish(rng, n);
    InputDistribution un = InputDistribution::uniform(n);
    rat r = certified_radius(g, eps, un);
    RoundingSpec sp = make_rounding_spec(r, eps, n, RoundingMode::Uniform);
    RoundedLtf rr = round_weights(g, sp, un, true);
    REQUIRE(rr.premise.holds);
    rat d = exact_dist(g, rr.h, un);
    rat bound = 2 * eps;
    REQUIRE(d <= bound);
    CHECK(rr.max_weight <= rr.weight_ceiling);
    rat mx = 0;
    for (const rat& w : g.weights) {
      rat a = rat_abs(w);
      if (a > mx) mx = a;
    }
    bigint ceil_again = ceil_rat(mx / sp.alpha);
    CHECK(rr.weight_ceiling == ceil_again);
  }

  SUBCASE("a wider instance with a pinned seed") {
    Rng rng14(7);
    Ltf g = random_regularish(rng14, 14);
    g.theta = rat(1, 3);
    InputDistribution un = InputDistribution::uniform(14);
    rat r = certified_radius(g, eps, un);
    rat half(1, 2);
    CHECK(r == half);  // the window mass is small enough at the first try
    RoundingSpec sp = make_rounding_spec(r, eps, 14, RoundingMode::Uniform);
    RoundedLtf rr = round_weights(g, sp, un, true);
    rat p(1027, 16384);
    CHECK(rr.premise.p == p);
    rat d = exact_dist(g, rr.h, un);
    rat want(61, 16384);
    CHECK(d == want);
  }
}

TEST_CASE("coarse grids bound the total rounding error below the radius") {
  Rng rng(11);
  rat eps(1, 5);
  InputDistribution d6 = parity_closed_support(6);
  for (int it = 0; it < 20; ++it) {
    Ltf g;
    for (int i = 0; i < 6; ++i) {
      long num = 1 + static_cast<long>(rng.below(12));
      long den = 1 + static_cast<long>(rng.below(6));
      rat w(num, den);
      if (rng.below(2)) w = -w;
      g.weights.push_back(w);
    }
    g.theta = rat(static_cast<long>(rng.below(5)), 7);
    rat r = certified_radius(g, eps, d6);
    RoundingSpec sp = make_rounding_spec(r, eps, 6, RoundingMode::GeneralD);
    RoundedLtf rr = round_weights(g, sp, d6, true);
    REQUIRE(rr.premise.holds);
    rat half_bound = rat(6) * sp.alpha / 2;
    REQUIRE(rr.e_l1 <= half_bound);
    REQUIRE(rr.e_l1 < r);  // the rounding-error event cannot fire at all
    rat d = exact_dist(g, rr.h, d6);
    REQUIRE(d <= eps);  // single budget, not doubled
  }

  SUBCASE("pairwise-independent three-variable support") {
    // four atoms of mass 1/4 each: no radius can certify a budget below 1/4
    InputDistribution d3 = pairwise_hadamard_n3();
    rat wide(1, 3);
    Ltf g;
    g.weights = {rat(1), rat(2, 3), rat(1, 3)};
    g.theta = rat(1, 5);
    rat r = certified_radius(g, wide, d3);
    RoundingSpec sp = make_rounding_spec(r, wide, 3, RoundingMode::GeneralD);
    RoundedLtf rr = round_weights(g, sp, d3, true);
    REQUIRE(rr.premise.holds);
    CHECK(rr.e_l1 < r);
    CHECK(exact_dist(g, rr.h, d3) <= wide);
  }
}

TEST_CASE("truncation keeps the heaviest coordinates") {
  Ltf f = head_plus_tail_17();
  TruncatedJunta tj = truncate_to_junta(f, 1);
  CHECK(tj.kept == std::vector<int>{0});
  CHECK(nonzero(tj.g.weights) == 1);
  REQUIRE(tj.dist.has_value());
  rat want(10889, 65536);
  CHECK(*tj.dist == want);

  SUBCASE("keeping everything changes nothing") {
    TruncatedJunta all = truncate_to_junta(f, 17);
    CHECK(all.kept.size() == 17);
    CHECK(*all.dist == 0);
  }

  SUBCASE("an oversized request is clamped to the arity") {
    TruncatedJunta all = truncate_to_junta(f, 99);
    CHECK(all.kept.size() == 17);
    CHECK(*all.dist == 0);
  }

  SUBCASE("two heavy coordinates over a majority tail") {
    Ltf w = prop14_witness(2, 9);
    TruncatedJunta two = truncate_to_junta(w, 2);
    CHECK(two.kept == std::vector<int>{0, 1});
    rat d(1, 8);
    CHECK(*two.dist == d);
  }

  SUBCASE("magnitude ties break by index") {
    Ltf g;
    g.weights = {rat(1), rat(-1), rat(1, 2)};
    g.theta = 0;
    TruncatedJunta two = truncate_to_junta(g, 2);
    CHECK(two.kept == std::vector<int>{0, 1});
  }

  SUBCASE("an empty junta is rejected") {
    CHECK_THROWS_WITH_AS(truncate_to_junta(f, 0), doctest::Contains("junta"), error);
  }
}

TEST_CASE("representation rounding meets its verified budget") {
  InputDistribution u9 = InputDistribution::uniform(9);
  PipelineReport rep = pipeline_erdos(majority(9), rat(3, 10), u9);
  CHECK(rep.method == "ser07");
  CHECK(rep.dist_kind == "uniform");
  CHECK(rep.trace.branch == "rounded");
  CHECK(rep.k == 9);  // ceil(1/eps^2) = 12 saturates at the nonzero count
  rat r(17, 25);
  CHECK(rep.r == r);  // smallest weight of the 25..17 chain, normalized
  CHECK(rep.max_weight == 6);
  CHECK(rep.weight_ceiling == 7);
  CHECK(rep.sum_v_sq == 240);
  rat d(1, 128);
  CHECK(rep.dist.value == d);
  CHECK(rep.dist.mode == DistanceMode::Exact);
  CHECK(rep.met_target);
  CHECK_FALSE(rep.shortfall);
  CHECK(rep.retries == 0);
  CHECK(all_integer(rep.h.weights));
  CHECK(exact_dist(majority(9), rep.h, u9) == rep.dist.value);
  // the ceiling tracks the grid: the top normalized weight is 1 by scaling
  bigint again = ceil_rat(rat(1) / rep.alpha);
  CHECK(rep.weight_ceiling == again);

  SUBCASE("a dictator rounds to a single unit weight") {
    PipelineReport one = pipeline_erdos(dictator(7, 3), rat(1, 2), InputDistribution::uniform(7));
    CHECK(one.max_weight == 1);
    CHECK(one.sum_v_sq == 1);
    CHECK(one.dist.value == 0);
    CHECK(nonzero(one.h.weights) == 1);
    rat w3 = rat_abs(one.h.weights[3]);
    CHECK(w3 == 1);
  }

  SUBCASE("product measures verify under their own weights") {
    std::vector<rat> p(9, rat(7, 10));
    InputDistribution dp = InputDistribution::product(p);
    PipelineReport biased = pipeline_erdos(majority(9), rat(3, 10), dp);
    CHECK(biased.dist_kind == "product");
    rat want(583443, 250000000);
    CHECK(biased.dist.value == want);
    CHECK(biased.met_target);
    CHECK(exact_dist(majority(9), biased.h, dp) == biased.dist.value);
  }

  SUBCASE("explicit supports get the coarse grid and exact support sums") {
    InputDistribution dk = parity_closed_support(5);
    PipelineReport xp = pipeline_erdos(majority(5), rat(1, 4), dk);
    CHECK(xp.dist_kind == "explicit");
    CHECK(xp.k == 5);
    rat rr(5, 9);
    CHECK(xp.r == rr);
    rat a(1, 9);
    CHECK(xp.alpha == a);  // exact r/m, no irrational bound involved
    CHECK(xp.max_weight == 9);
    CHECK(xp.sum_v_sq == 255);
    CHECK(xp.dist.value == 0);
    CHECK(xp.met_target);
  }

  SUBCASE("mismatched arity and bad budgets throw") {
    CHECK_THROWS_WITH_AS(pipeline_erdos(majority(9), rat(1), u9), doctest::Contains("(0,1)"),
                         error);
    CHECK_THROWS_WITH_AS(pipeline_erdos(majority(3), rat(1, 2), u9),
                         doctest::Contains("arity"), error);
  }
}

TEST_CASE("constant inputs short-circuit the pipelines") {
  Ltf f;
  f.weights.assign(3, rat(0));
  f.theta = 5;
  InputDistribution u3 = InputDistribution::uniform(3);
  for (const PipelineReport& rep :
       {pipeline_erdos(f, rat(1, 4), u3), pipeline_halasz(f, rat(1, 4), u3),
        pipeline_critical(f, rat(1, 4), u3)}) {
    CHECK(rep.trace.constant);
    CHECK(rep.trace.branch == "constant");
    CHECK(rep.max_weight == 0);
    CHECK(rep.dist.value == 0);
    CHECK(rep.met_target);
    CHECK(truth_table(rep.h) == truth_table(f));
  }

  Ltf g;  // nonzero weights can still be constant when the threshold dominates
  g.weights = {rat(1, 4), rat(1, 4)};
  g.theta = 5;
  PipelineReport rep = pipeline_erdos(g, rat(1, 4), InputDistribution::uniform(2));
  CHECK(rep.trace.constant);
  CHECK(truth_table(rep.h) == truth_table(g));
}

TEST_CASE("gap rounding needs fewer integer bits than its weight-floor counterpart") {
  InputDistribution u9 = InputDistribution::uniform(9);
  PipelineReport rep = pipeline_halasz(majority(9), rat(1, 2), u9);
  CHECK(rep.method == "thm25");
  CHECK(rep.trace.branch == "rounded");
  CHECK(rep.k == 2);
  rat r(1, 25);  // the 25..17 chain has all consecutive gaps equal to 1/25
  CHECK(rep.r == r);
  CHECK(rep.max_weight == 88);
  CHECK(rep.weight_ceiling == 89);
  CHECK(rep.sum_v_sq == 50316);
  CHECK(rep.dist.value == 0);
  CHECK(rep.met_target);
  CHECK(all_integer(rep.h.weights));
  // honesty: the radius is the realized k-th biggest profile gap
  LtfRepresentation lr = ltf_representation(truth_table(majority(9)));
  CHECK(rep.r == profile_gap(lr.rep.weights, 2));
  bigint again = ceil_rat(rat(1) / rep.alpha);
  CHECK(rep.weight_ceiling == again);

  SUBCASE("short profiles fall back to the exact representation") {
    PipelineReport ex = pipeline_halasz(majority(3), rat(9, 10), InputDistribution::uniform(3));
    CHECK(ex.trace.branch == "exact");
    CHECK(ex.k == 2);  // recorded even though the gap statistic is void
    CHECK(ex.r == 0);
    CHECK(ex.alpha == 0);
    CHECK(ex.max_weight == 4);  // strict-chain minimal weights 4,3,2
    CHECK(ex.sum_v_sq == 29);
    CHECK(ex.dist.value == 0);
    CHECK(ex.met_target);
    CHECK(all_integer(ex.h.weights));
    CHECK(truth_table(ex.h) == truth_table(majority(3)));
  }
}

TEST_CASE("the critical split rounds the tail through an extended representation") {
  Ltf f = head_plus_tail_17();
  InputDistribution u17 = InputDistribution::uniform(17);
  PipelineReport rep = pipeline_critical(f, rat(2, 5), u17);
  CHECK(rep.method == "thm2");
  CHECK(rep.trace.branch == "tail-rounding");
  CHECK(rep.trace.ell == 2);
  CHECK(rep.trace.ell_used == 2);
  CHECK(rep.trace.L == 11);
  CHECK(rep.trace.K == 4);
  CHECK(rep.trace.R0 == 19);
  CHECK(rep.trace.R0_used == 19);
  CHECK_FALSE(rep.trace.lp_capped);
  CHECK(rep.k == 2);
  CHECK(rep.max_weight == 5);
  CHECK(rep.weight_ceiling == 6);
  CHECK(rep.sum_v_sq == 41);  // 5 x_1 + sixteen unit weights
  rat d(1001, 16384);
  CHECK(rep.dist.value == d);
  CHECK(rep.met_target);
  CHECK_FALSE(rep.shortfall);
  CHECK(all_integer(rep.h.weights));
  CHECK(exact_dist(f, rep.h, u17) == rep.dist.value);

  SUBCASE("runs are deterministic") {
    PipelineReport again = pipeline_critical(f, rat(2, 5), u17);
    CHECK(again.h.weights == rep.h.weights);
    CHECK(again.h.theta == rep.h.theta);
    CHECK(again.dist.value == rep.dist.value);
    CHECK(again.alpha == rep.alpha);
  }

  SUBCASE("the row cap shrinks the integer range honestly") {
    PipelineConfig cfg;
    cfg.row_cap = 40;
    PipelineReport capped = pipeline_critical(f, rat(2, 5), u17, cfg);
    CHECK(capped.trace.lp_capped);
    CHECK(capped.trace.R0 == 19);
    CHECK(capped.trace.R0_used == 9);  // (40 - 2) / 2 rows per slice, span 19
    // the narrowed range loses the tail entirely: the heavy head remains
    CHECK(capped.max_weight == 1);
    CHECK(capped.sum_v_sq == 1);
    rat dd(10889, 65536);  // exactly the distance to the heavy dictator
    CHECK(capped.dist.value == dd);
    CHECK(capped.met_target);
  }
}

TEST_CASE("deep critical indices truncate and delegate to gap rounding") {
  Ltf f;
  for (int i = 1; i <= 10; ++i) f.weights.push_back(rat(1, bigint(1) << i));
  f.theta = 0;
  PipelineReport rep = pipeline_critical(f, rat(2, 5), InputDistribution::uniform(10));
  CHECK(rep.trace.infinite_ell);  // every coordinate stays heavy against its tail
  CHECK(rep.trace.ell == 0);
  CHECK(rep.trace.branch == "truncate+thm25");
  CHECK(rep.max_weight == 1);  // the function is the first-coordinate dictator
  CHECK(rep.sum_v_sq == 1);
  CHECK(rep.dist.value == 0);
  CHECK(rep.met_target);

  SUBCASE("a dictator goes the same way") {
    PipelineReport one = pipeline_critical(dictator(6, 2), rat(2, 5), InputDistribution::uniform(6));
    CHECK(one.trace.infinite_ell);
    CHECK(one.trace.branch == "truncate+thm25");
    CHECK(one.max_weight == 1);
    CHECK(one.dist.value == 0);
    rat w2 = rat_abs(one.h.weights[2]);
    CHECK(w2 == 1);
  }
}

TEST_CASE("a fully regular vector rounds its whole tail") {
  InputDistribution u9 = InputDistribution::uniform(9);
  PipelineReport rep = pipeline_critical(majority(9), rat(2, 5), u9);
  CHECK(rep.trace.branch == "tail-rounding");
  CHECK(rep.trace.ell == 1);  // empty head: the first weight is already regular
  CHECK(rep.trace.ell_used == 1);
  CHECK(rep.trace.R0 == 14);
  CHECK(rep.trace.R0_used == 14);
  CHECK(rep.max_weight == 1);
  CHECK(rep.weight_ceiling == 8);
  CHECK(rep.sum_v_sq == 9);
  CHECK(rep.dist.value == 0);
  CHECK(rep.met_target);
  CHECK(truth_table(rep.h) == truth_table(majority(9)));
}

TEST_CASE("junta selection composes with integer rounding") {
  Ltf f = prop14_witness(2, 9);
  Corollary13Report c = corollary13_compose(f, rat(3, 10));
  CHECK(c.junta.case_taken == 1);
  CHECK(c.junta.measured_dist == 0);
  rat total(5, 2048);
  CHECK(c.total.value == total);
  CHECK(c.met);
  CHECK_FALSE(c.shortfall);
  rat inf2(326041, 262144);  // (total influence 571/512)^2
  CHECK(c.inf_sq == inf2);
  CHECK(c.sum_v_sq == 2208);
  CHECK(exact_dist(f, c.rounding.h, InputDistribution::uniform(11)) == c.total.value);

  SUBCASE("a dictator composes trivially") {
    Corollary13Report one = corollary13_compose(dictator(5, 1), rat(3, 10));
    CHECK(one.total.value == 0);
    CHECK(one.met);
    CHECK(one.inf_sq == 1);
    CHECK(one.sum_v_sq == 1);
  }

  SUBCASE("majority composes end to end") {
    Corollary13Report m = corollary13_compose(majority(9), rat(3, 10));
    rat t(3, 512);
    CHECK(m.total.value == t);
    CHECK(m.met);
    rat inf2m(99225, 16384);
    CHECK(m.inf_sq == inf2m);
    CHECK(m.sum_v_sq == 330);
  }

  SUBCASE("bad budgets throw") {
    CHECK_THROWS_WITH_AS(corollary13_compose(majority(3), rat(0)), doctest::Contains("(0,1)"),
                         error);
  }
}

TEST_CASE("gap rounding never needs more bits than representation rounding") {
  Ltf f = omb_witness(9);
  InputDistribution u9 = InputDistribution::uniform(9);
  const rat eps_steps[3] = {rat(1, 2), rat(3, 10), rat(1, 5)};
  const bigint erdos_frozen[3] = {15, 198, 219};
  const bigint halasz_frozen[3] = {14, 28, 31};
  for (int i = 0; i < 3; ++i) {
    PipelineReport e = pipeline_erdos(f, eps_steps[i], u9);
    PipelineReport h = pipeline_halasz(f, eps_steps[i], u9);
    CHECK(e.max_weight == erdos_frozen[i]);
    CHECK(h.max_weight == halasz_frozen[i]);
    CHECK(h.max_weight <= e.max_weight);
    CHECK(e.met_target);
    CHECK(h.met_target);
  }
}
