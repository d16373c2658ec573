#include "doctest.h"

#include "ltf/core.hpp"
#include "ltf/lp_repr.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>
#include <vector>

using namespace ltf;

namespace {

std::vector<rat> rv(std::initializer_list<long> xs) {
  std::vector<rat> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Ltf random_ltf(int n, Rng& rng) {
  Ltf f;
  for (int i = 0; i < n; ++i)
    f.weights.emplace_back(static_cast<long>(rng.below(41)) - 20);
  f.theta = static_cast<long>(rng.below(21)) - 10;
  return f;
}

bool chain_shaped(const std::vector<rat>& w) {
  for (size_t j = 0; j + 1 < w.size(); ++j)
    if (w[j] - w[j + 1] < 1) return false;
  return !w.empty() && w.back() >= 1;
}

}  // namespace

TEST_CASE("gap bounds") {
  CHECK(cube_gap_bound(3, 1) == rat(1) / rat_pow(rat(8), 10));
  CHECK(cube_gap_bound(3, 2) == rat(1) / rat_pow(rat(8), 12));
  CHECK(cube_gap_bound(5, 1) == rat(1) / rat_pow(rat(12), 10));
  CHECK(extended_gap_bound(2, 3, 1) == rat(1) / (rat(10) * rat_pow(rat(6), 10)));
  CHECK(extended_gap_bound(1, 2, 1) == rat(1) / (rat(6) * rat_pow(rat(4), 10)));
  CHECK(extended_gap_bound(4, 0, 2) == rat(1) / (rat(8) * rat_pow(rat(10), 12)));
}

TEST_CASE("gap report on the majority weights") {
  GapReport rep = gap_report(rv({4, 3, 2}));
  REQUIRE(rep.normalized.size() == 3);
  CHECK(rep.normalized[0] == 1);
  CHECK(rep.normalized[1] == make_rat(3, 4));
  CHECK(rep.normalized[2] == make_rat(1, 2));
  REQUIRE(rep.gaps.size() == 2);
  CHECK(rep.gaps[0] == make_rat(1, 4));
  CHECK(rep.gaps[1] == make_rat(1, 4));
  REQUIRE(rep.table.size() == 2);
  CHECK(rep.table[0].k == 1);
  CHECK(rep.table[0].gap == make_rat(1, 4));
  CHECK(rep.table[0].bound == cube_gap_bound(3, 1));
  CHECK(rep.table[0].pass);
  CHECK(rep.table[1].pass);
  CHECK(rep.holds);
}

TEST_CASE("gap report sorts magnitudes and flags tied weights") {
  GapReport rep = gap_report(rv({-2, 4}));
  REQUIRE(rep.normalized.size() == 2);
  CHECK(rep.normalized[0] == 1);
  CHECK(rep.normalized[1] == make_rat(1, 2));
  CHECK(rep.gaps[0] == make_rat(1, 2));
  CHECK(rep.holds);

  GapReport tied = gap_report(rv({1, 1}));
  REQUIRE(tied.table.size() == 1);
  CHECK(tied.gaps[0] == 0);
  CHECK_FALSE(tied.table[0].pass);
  // k = 1 exceeds n - 2, so the failing entry is outside the guaranteed range.
  CHECK(tied.holds);

  GapReport flat = gap_report(rv({1, 1, 1, 1}));
  CHECK_FALSE(flat.table[0].pass);
  CHECK_FALSE(flat.holds);
}

TEST_CASE("gap report rejects zero weights") {
  CHECK_THROWS_WITH_AS(gap_report({}), "empty weight vector", error);
  CHECK_THROWS_AS(gap_report(rv({0, 1})), error);
  try {
    gap_report(rv({1, 0}));
  } catch (const error& e) {
    CHECK(e.code() == "zero_weight");
  }
}

TEST_CASE("threshold recognition") {
  TruthTable maj = truth_table(majority(3));
  CHECK(is_threshold(maj));
  Ltf w = *threshold_witness(maj);
  CHECK(truth_table(w) == maj);

  TruthTable x(2);
  x.set(0, -1);
  x.set(1, 1);
  x.set(2, 1);
  x.set(3, -1);
  CHECK_FALSE(is_threshold(x));
  CHECK_FALSE(threshold_witness(x).has_value());

  CHECK_THROWS_AS(threshold_witness(maj, 4), error);
  try {
    threshold_witness(maj, 4);
  } catch (const error& e) {
    CHECK(e.code() == "cap");
  }
}

TEST_CASE("LP build for the 3-variable majority") {
  BuiltLp built = build_ltf_lp(truth_table(majority(3)));
  CHECK_FALSE(built.lift.lifted);
  CHECK(built.lift.source_arity == 3);
  CHECK(built.lift.vars == std::vector<int>{1, 2, 3});
  CHECK(built.lift.signs == std::vector<int>{1, 1, 1});
  CHECK(built.lift.dropped.empty());
  CHECK(built.lift.note.empty());

  REQUIRE(built.lp.m == 3);
  REQUIRE(built.lp.rows.size() == 7);
  std::vector<std::uint64_t> pts;
  for (int i = 0; i < 4; ++i) {
    CHECK(built.lp.rows[i].kind == RowKind::HypercubePoint);
    CHECK(built.lp.rows[i].rhs == 1);
    pts.push_back(built.lp.rows[i].point);
  }
  CHECK(pts == std::vector<std::uint64_t>{3, 5, 6, 7});
  for (int i = 4; i < 7; ++i) {
    CHECK(built.lp.rows[i].kind == RowKind::GapRow);
    CHECK(built.lp.rows[i].gap_index == i - 3);
    CHECK(built.lp.rows[i].rhs == 1);
  }
  CHECK(built.lp.rows[4].coeffs == rv({1, -1, 0}));
  CHECK(built.lp.rows[5].coeffs == rv({0, 1, -1}));
  CHECK(built.lp.rows[6].coeffs == rv({0, 0, 1}));

  VertexCertificate cert = solve_vertex(built.lp);
  CHECK(cert.w == rv({4, 3, 2}));
  CHECK(cert.objective == 9);
  CHECK(cert.tight_rows == std::vector<int>{2, 4, 5});
  CHECK(cert.basis_rows == std::vector<int>{2, 4, 5});

  Ltf rep = invert_certificate(cert, built.lift);
  CHECK(rep.weights == rv({4, 3, 2}));
  CHECK(rep.theta == 0);
}

TEST_CASE("dropped variables come back with weight zero") {
  TruthTable t = truth_table(dictator(3, 0));
  BuiltLp built = build_ltf_lp(t);
  CHECK_FALSE(built.lift.lifted);
  CHECK(built.lift.dropped == std::vector<int>{2, 3});
  CHECK(built.lift.note == "dropped irrelevant variables: 2 3");
  CHECK(built.lp.m == 1);
  REQUIRE(built.lp.rows.size() == 2);

  LtfRepresentation r = ltf_representation(t);
  CHECK(r.rep.weights == rv({1, 0, 0}));
  CHECK(r.rep.theta == 0);
  CHECK(r.cert.objective == 1);
  CHECK(truth_table(r.rep) == t);
}

TEST_CASE("decreasing variables are negated in the lift record") {
  TruthTable t(1);
  t.set(0, 1);
  t.set(1, -1);
  BuiltLp built = build_ltf_lp(t);
  CHECK(built.lift.signs == std::vector<int>{-1});
  LtfRepresentation r = ltf_representation(t);
  CHECK(r.rep.weights == rv({-1}));
  CHECK(r.rep.theta == 0);
}

TEST_CASE("non-odd tables get lifted: two-variable conjunction") {
  TruthTable t(2);
  t.set(0, -1);
  t.set(1, -1);
  t.set(2, -1);
  t.set(3, 1);
  REQUIRE_FALSE(t.is_odd());

  BuiltLp built = build_ltf_lp(t);
  CHECK(built.lift.lifted);
  CHECK(built.lift.source_arity == 2);
  CHECK(built.lp.m == 3);
  CHECK(built.lp.rows.size() == 7);

  LtfRepresentation r = ltf_representation(t);
  CHECK(r.rep.weights == rv({4, 3}));
  CHECK(r.rep.theta == 2);
  CHECK(truth_table(r.rep) == t);
  CHECK(r.gaps.holds);
}

TEST_CASE("solve_vertex reports infeasible systems as non-threshold") {
  LpProblem lp;
  lp.m = 1;
  LpRow a;
  a.kind = RowKind::GapRow;
  a.coeffs = rv({1});
  a.rhs = 1;
  LpRow b;
  b.kind = RowKind::HypercubePoint;
  b.coeffs = rv({-1});
  b.rhs = 0;
  lp.rows = {a, b};
  CHECK_THROWS_AS(solve_vertex(lp), error);
  try {
    solve_vertex(lp);
  } catch (const error& e) {
    CHECK(e.code() == "not_ltf");
  }
}

TEST_CASE("degenerate vertices keep the tight set larger than the basis") {
  LpProblem lp;
  lp.m = 1;
  LpRow a;
  a.kind = RowKind::HypercubePoint;
  a.coeffs = rv({1});
  a.rhs = 1;
  LpRow g;
  g.kind = RowKind::GapRow;
  g.gap_index = 1;
  g.coeffs = rv({1});
  g.rhs = 1;
  lp.rows = {a, g};
  VertexCertificate cert = solve_vertex(lp);
  CHECK(cert.w == rv({1}));
  CHECK(cert.tight_rows == std::vector<int>{0, 1});
  CHECK(cert.basis_rows.size() == 1);
  CHECK(std::includes(cert.tight_rows.begin(), cert.tight_rows.end(),
                      cert.basis_rows.begin(), cert.basis_rows.end()));
}

TEST_CASE("single-variable representation") {
  LtfRepresentation r = ltf_representation(truth_table(dictator(1, 0)));
  CHECK(r.cert.w == rv({1}));
  CHECK(r.rep.weights == rv({1}));
  CHECK(r.gaps.table.empty());
  CHECK(r.gaps.holds);
}

TEST_CASE("representation pipeline rejects non-threshold tables") {
  TruthTable x(2);
  x.set(0, -1);
  x.set(1, 1);
  x.set(2, 1);
  x.set(3, -1);
  CHECK_THROWS_AS(build_ltf_lp(x), error);
  CHECK_THROWS_AS(ltf_representation(x), error);
}

TEST_CASE("pipeline is deterministic") {
  TruthTable t = truth_table(majority(5));
  LtfRepresentation a = ltf_representation(t);
  LtfRepresentation b = ltf_representation(t);
  CHECK(a.cert.w == b.cert.w);
  CHECK(a.cert.basis_rows == b.cert.basis_rows);
  CHECK(a.cert.tight_rows == b.cert.tight_rows);
  CHECK(a.rep.weights == b.rep.weights);
}

TEST_CASE("random bounded-weight functions round-trip at larger arity") {
  Rng rng(20260817);
  int built = 0;
  for (int n : {5, 5, 5, 8, 8, 10}) {
    Ltf f = random_ltf(n, rng);
    TruthTable t = truth_table(f);
    LtfRepresentation r = ltf_representation(t);
    CHECK(truth_table(r.rep) == t);
    CHECK(chain_shaped(r.cert.w));
    CHECK(r.gaps.holds);
    ++built;
  }
  CHECK(built == 6);
}

TEST_CASE("every 4-variable threshold table is represented exactly") {
  std::vector<TruthTable> all = integer_ltf_tables(4, 3);
  REQUIRE(all.size() == 1882);
  int lifted = 0, dropped = 0;
  for (const TruthTable& t : all) {
    LtfRepresentation r = ltf_representation(t);
    CHECK(truth_table(r.rep) == t);
    CHECK(r.gaps.holds);
    CHECK(chain_shaped(r.cert.w));
    lifted += r.built.lift.lifted;
    dropped += !r.built.lift.dropped.empty();
  }
  // Odd tables are exactly the lifts of 3-variable threshold tables, and
  // 346 of the 1882 ignore at least one input.
  CHECK(lifted == 1882 - 104);
  CHECK(dropped == 346);
}

TEST_CASE("integer grid enumeration matches the known counts") {
  CHECK(integer_ltf_tables(1, 1).size() == 4);
  CHECK(integer_ltf_tables(2, 2).size() == 14);
  CHECK(integer_ltf_tables(3, 2).size() == 104);
  CHECK(integer_ltf_tables(3, 1).size() == 56);
  CHECK(integer_ltf_tables(4, 2).size() == 986);
  CHECK_THROWS_AS(integer_ltf_tables(7, 1), error);
  CHECK_THROWS_AS(integer_ltf_tables(3, -1), error);
}

TEST_CASE("grid membership agrees with LP recognition at three variables") {
  std::set<std::uint64_t> keys;
  for (const TruthTable& t : integer_ltf_tables(3, 2)) {
    std::uint64_t k = 0;
    for (std::uint64_t p = 0; p < t.size(); ++p)
      if (t.get(p) == 1) k |= std::uint64_t{1} << p;
    keys.insert(k);
  }
  int hits = 0;
  for (std::uint64_t k = 0; k < 256; ++k) {
    TruthTable t(3);
    for (std::uint64_t p = 0; p < 8; ++p) t.set(p, k >> p & 1 ? 1 : -1);
    bool ltf = is_threshold(t);
    CHECK(ltf == (keys.count(k) > 0));
    hits += ltf;
  }
  CHECK(hits == 104);
}

TEST_CASE("extended tables evaluate affine forms") {
  ExtendedTable h = extended_table(rv({1, 1}), rat(0), 2);
  CHECK(h.k == 2);
  CHECK(h.R == 2);
  CHECK(h.size() == 10);
  CHECK(h.get(1, -1) == 1);   // s = +1: 1 + (-1) = 0, ties go positive
  CHECK(h.get(1, -2) == -1);
  CHECK(h.get(0, 0) == -1);   // s = -1
  CHECK(h.get(0, 1) == 1);
  CHECK_THROWS_AS(ExtendedTable(0, 1), error);
  CHECK_THROWS_AS(ExtendedTable(2, -1), error);
}

TEST_CASE("extended representation of the integer-coordinate sign") {
  // k = 1: the table is sign(t) over t in [-2, 2], never odd because of the
  // tie at t = 0, so the pipeline lifts and the threshold becomes -1.
  ExtendedTable h = extended_table(rv({1}), rat(0), 2);
  ExtendedRepr r = extended_domain_repr(h);
  CHECK(r.lifted);
  CHECK(r.dropped.empty());
  CHECK(r.w == rv({2}));
  CHECK(r.theta == -1);
  CHECK(r.normalized == rv({1}));
  CHECK(r.normalized_theta == make_rat(-1, 2));
  CHECK(r.order_note == "integer coordinate at chain position 1 of 2");
  CHECK(r.cert.objective == 3);
  CHECK(r.gaps.holds);
}

TEST_CASE("extended pipeline drops a dominated integer coordinate") {
  // Weight 5 against |t| <= 3: the integer coordinate never flips the sign.
  ExtendedTable h = extended_table(rv({5, 1}), rat(0), 3);
  ExtendedRepr r = extended_domain_repr(h);
  CHECK(r.dropped == std::vector<int>{1});
  CHECK_FALSE(r.lifted);
  CHECK(r.w[1] == 0);
  CHECK(r.w[0] > 0);
  CHECK(r.theta == 0);
  CHECK(r.order_note.empty());
  ExtendedTable back = extended_table(r.w, r.theta, h.R);
  CHECK(back.vals == h.vals);
}

TEST_CASE("extended representation keeps a live integer coordinate") {
  ExtendedTable h = extended_table(rv({2, 1}), make_rat(1, 2), 3);
  ExtendedRepr r = extended_domain_repr(h);
  CHECK(r.lifted);  // the threshold breaks oddness
  CHECK(r.dropped.empty());
  CHECK(r.w[1] != 0);
  ExtendedTable back = extended_table(r.w, r.theta, h.R);
  CHECK(back.vals == h.vals);
  CHECK(r.gaps.holds);
  CHECK_FALSE(r.order_note.empty());
}

TEST_CASE("extended representation round-trips on a parameter grid") {
  Rng rng(7781);
  int live_int = 0, dropped_any = 0;
  for (int k : {1, 2, 3, 4}) {
    for (long R : {0L, 1L, 3L, 8L}) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<rat> w;
        for (int i = 0; i < k; ++i)
          w.emplace_back(static_cast<long>(rng.below(13)) - 6);
        rat theta = static_cast<long>(rng.below(9)) - 4;
        ExtendedTable h = extended_table(w, theta, R);
        ExtendedRepr r = extended_domain_repr(h);
        ExtendedTable back = extended_table(r.w, r.theta, h.R);
        CHECK(back.vals == h.vals);
        CHECK(r.gaps.holds);
        bool int_dropped = std::find(r.dropped.begin(), r.dropped.end(), k - 1) !=
                           r.dropped.end();
        live_int += !int_dropped;
        dropped_any += !r.dropped.empty();
      }
    }
  }
  CHECK(live_int >= 12);
  CHECK(dropped_any >= 12);
}

TEST_CASE("extended pipeline is deterministic") {
  ExtendedTable h = extended_table(rv({3, -2, 1}), rat(1), 4);
  ExtendedRepr a = extended_domain_repr(h);
  ExtendedRepr b = extended_domain_repr(h);
  CHECK(a.w == b.w);
  CHECK(a.theta == b.theta);
  CHECK(a.order_note == b.order_note);
  CHECK(a.cert.basis_rows == b.cert.basis_rows);
}

TEST_CASE("extended pipeline rejects bad input") {
  ExtendedTable h(2, 1);
  for (std::uint64_t s = 0; s < 2; ++s)
    for (long t = -1; t <= 1; ++t) h.set(s, t, t == 0 ? 1 : -1);
  CHECK_THROWS_AS(extended_domain_repr(h), error);
  try {
    extended_domain_repr(h);
  } catch (const error& e) {
    CHECK(e.code() == "not_ltf");
  }

  ExtendedTable bad(2, 1);
  bad.vals[0] = 0;
  CHECK_THROWS_AS(extended_domain_repr(bad), error);

  ExtendedTable malformed(2, 1);
  malformed.vals.pop_back();
  CHECK_THROWS_AS(extended_domain_repr(malformed), error);

  ExtendedTable big = extended_table(rv({1, 1}), rat(0), 3);
  CHECK_THROWS_AS(extended_domain_repr(big, 8), error);
}

TEST_CASE("weight floors, exact mode") {
  WeightFloorReport rep = weight_floor_check(rv({4, 3, 2}), 0, FloorMode::Exact);
  CHECK(rep.mode == FloorMode::Exact);
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].wk == 1);
  CHECK(rep.entries[0].floor_q == make_rat(1, 12));
  CHECK(rep.entries[1].wk == make_rat(3, 4));
  CHECK(rep.entries[1].floor_q == make_rat(1, 48));
  CHECK(rep.entries[2].wk == make_rat(1, 2));
  CHECK(rep.entries[2].floor_q == make_rat(1, 324));
  for (const auto& e : rep.entries) CHECK(e.pass);
  CHECK_FALSE(rep.note.empty());

  WeightFloorReport tiny =
      weight_floor_check({rat(1), make_rat(1, 1000000000)}, 0, FloorMode::Exact);
  CHECK(tiny.entries[0].pass);
  CHECK(tiny.entries[1].floor_q == make_rat(1, 32));
  CHECK_FALSE(tiny.entries[1].pass);
}

TEST_CASE("weight floors, approximate mode") {
  WeightFloorReport rep = weight_floor_check(rv({4, 3, 2}), 0.1, FloorMode::Approx);
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].floor_d == doctest::Approx(0.192593).epsilon(1e-4));
  CHECK(rep.entries[1].floor_d == doctest::Approx(0.048148).epsilon(1e-4));
  CHECK(rep.entries[2].floor_d == doctest::Approx(0.0071331).epsilon(1e-4));
  for (const auto& e : rep.entries) CHECK(e.pass);

  CHECK_THROWS_AS(weight_floor_check(rv({1}), 0, FloorMode::Approx), error);
  CHECK_THROWS_AS(weight_floor_check(rv({1}), 2.0, FloorMode::Approx), error);
  CHECK_NOTHROW(weight_floor_check(rv({1}), 1.9, FloorMode::Approx));
  CHECK(weight_floor_check({}, 0, FloorMode::Exact).entries.empty());
}

TEST_CASE("alternating-power witness") {
  Ltf f3 = omb_witness(3);
  CHECK(f3.weights == rv({-4, 2, -1}));
  CHECK(f3.theta == 2);

  CHECK(omb_witness(2).theta == 0);
  CHECK(omb_witness(4).theta == 4);
  CHECK(omb_witness(5).theta == 10);
  CHECK(omb_witness(6).theta == 20);

  TruthTable def(4);
  def.set(0, 1);
  for (std::uint64_t p = 1; p < 16; ++p)
    def.set(p, std::countr_zero(p) % 2 ? 1 : -1);
  CHECK(truth_table(omb_witness(4)) == def);

  Ltf f16 = omb_witness(16);  // construction self-verifies up to the cap
  CHECK(f16.weights[0] == -32768);
  CHECK(f16.weights[15] == 1);
  CHECK_THROWS_AS(omb_witness(0), error);
}

TEST_CASE("minimum integer weight search") {
  MinWeightResult maj = min_weight_search(truth_table(majority(3)), 5);
  CHECK(maj.found);
  CHECK(maj.max_weight == 1);
  CHECK(maj.witness.weights == rv({1, 1, 1}));
  CHECK(maj.witness.theta == 0);

  MinWeightResult dict = min_weight_search(truth_table(dictator(3, 0)), 5);
  CHECK(dict.found);
  CHECK(dict.max_weight == 1);
  CHECK(dict.witness.weights == rv({1, 0, 0}));
}

TEST_CASE("alternating-power tables need growing weights") {
  long expected[] = {1, 2, 2, 5};
  for (int n = 2; n <= 5; ++n) {
    MinWeightResult r = min_weight_search(truth_table(omb_witness(n)), 8);
    CHECK(r.found);
    CHECK(r.max_weight == expected[n - 2]);
    CHECK(truth_table(r.witness) == truth_table(omb_witness(n)));
  }
}

TEST_CASE("weight search edge cases") {
  TruthTable x(2);
  x.set(0, -1);
  x.set(1, 1);
  x.set(2, 1);
  x.set(3, -1);
  MinWeightResult r = min_weight_search(x, 10);
  CHECK_FALSE(r.found);
  CHECK(r.note.find("not unate") != std::string::npos);

  MinWeightResult low = min_weight_search(truth_table(omb_witness(3)), 1);
  CHECK_FALSE(low.found);
  CHECK(low.note == "no integer representation with max weight <= 1");

  TruthTable c(2, true);
  MinWeightResult cst = min_weight_search(c, 3);
  CHECK(cst.found);
  CHECK(cst.max_weight == 0);
  CHECK(cst.witness.theta == -1);
  CHECK(cst.note == "constant table");

  CHECK_THROWS_AS(min_weight_search(TruthTable(6), 3), error);
  CHECK_THROWS_AS(min_weight_search(x, 0), error);
}
