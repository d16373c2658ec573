#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltf/core.hpp"
#include "ltf/simplex.hpp"

namespace ltf {

/// Row cap for LP construction (hypercube instances have 2^n point rows).
inline constexpr long kDefaultLpRows = 1L << 16;

// ---------------------------------------------------------------------------
// Problem types
// ---------------------------------------------------------------------------

enum class RowKind { HypercubePoint, GapRow, ExtendedPoint };

/// One >= constraint with its provenance.
struct LpRow {
  RowKind kind;
  std::vector<rat> coeffs;
  rat rhs;
  std::uint64_t point = 0;  // HypercubePoint/ExtendedPoint: +-1 pattern bits
  long ext_t = 0;           // ExtendedPoint: value of the integer coordinate
  int gap_index = 0;        // GapRow: 1-based position in the weight chain
};

struct LpProblem {
  int m = 0;  // variables
  std::vector<LpRow> rows;
};

/// How the LP variable space maps back onto the input function: variable j
/// stands for source variable vars[j] (1-based; source_arity+1 names the
/// threshold variable added by lifting) negated when signs[j] = -1.
struct LiftRecord {
  int source_arity = 0;
  bool lifted = false;
  std::vector<int> vars;
  std::vector<int> signs;
  std::vector<int> dropped;  // irrelevant variables, 1-based, weight 0
  std::string note;
};

struct BuiltLp {
  LpProblem lp;
  LiftRecord lift;
};

/// Optimal vertex with its certificate: basis_rows is an independent tight
/// subset of size m whose square system re-solves to exactly w.
struct VertexCertificate {
  std::vector<rat> w;
  rat objective = 0;
  std::vector<int> tight_rows;
  std::vector<int> basis_rows;
};

// ---------------------------------------------------------------------------
// Gap structure
// ---------------------------------------------------------------------------

struct GapEntry {
  int k = 0;
  rat gap;    // k-th biggest of the normalized gap multiset
  rat bound;
  bool pass = false;
};

struct GapReport {
  std::vector<rat> normalized;  // |w| sorted descending, scaled so max = 1
  std::vector<rat> gaps;        // consecutive differences of normalized
  std::vector<GapEntry> table;  // sorted gaps against the per-k floor
  bool holds = true;            // all k up to n-2 pass
};

/// Hypercube floor for the k-th biggest gap at arity n: 1/(2n+2)^(2k+8).
rat cube_gap_bound(int n, int k);

/// Extended-domain floor: 1/((2k+2R)(2k+2)^(2j+8)) for a function that
/// depends on k variables, the last ranging over [-R, R].
rat extended_gap_bound(int k, long R, int j);

/// Gap table of a weight vector against the hypercube floors.
GapReport gap_report(const std::vector<rat>& w);

/// Same with the extended-domain floors.
GapReport gap_report_extended(const std::vector<rat>& w, long R);

// ---------------------------------------------------------------------------
// Hypercube representations
// ---------------------------------------------------------------------------

/// Strict-margin representation found by LP feasibility over all 2^n points,
/// or nothing when the table is not a threshold function.
std::optional<Ltf> threshold_witness(const TruthTable& t, long row_cap = kDefaultLpRows);

bool is_threshold(const TruthTable& t, long row_cap = kDefaultLpRows);

/// Point rows {w.x >= 1 : f(x) = +1} plus the chain rows w_i - w_{i+1} >= 1,
/// w_m >= 1, built after lifting non-odd inputs to one extra variable,
/// dropping irrelevant variables, negating decreasing ones, and sorting by
/// influence (descending, ties by index).
BuiltLp build_ltf_lp(const TruthTable& t, long row_cap = kDefaultLpRows);

/// Minimize sum(w) over the problem rows and certify the optimal vertex.
VertexCertificate solve_vertex(const LpProblem& lp);

/// Map a certificate back through the lift record: weights in source order
/// (0 for dropped variables) and the threshold.
Ltf invert_certificate(const VertexCertificate& cert, const LiftRecord& lift);

struct LtfRepresentation {
  Ltf rep;  // exact: sign(w.x - theta) reproduces the table everywhere
  BuiltLp built;
  VertexCertificate cert;
  GapReport gaps;
};

/// Full pipeline: build, solve, invert, verify the round trip, report gaps.
LtfRepresentation ltf_representation(const TruthTable& t, long row_cap = kDefaultLpRows);

// ---------------------------------------------------------------------------
// Extended domain {-1,1}^(k-1) x {-R..R}
// ---------------------------------------------------------------------------

/// Function table over the extended domain; the +-1 coordinates come first
/// and index s little-endian, the integer coordinate is last.
struct ExtendedTable {
  int k = 1;
  long R = 0;
  std::vector<int> vals;  // index s*(2R+1) + (t+R)

  ExtendedTable() = default;
  ExtendedTable(int k, long R);

  long span() const { return 2 * R + 1; }
  std::uint64_t size() const { return span() << (k - 1); }
  int get(std::uint64_t s, long t) const { return vals[s * span() + (t + R)]; }
  void set(std::uint64_t s, long t, int v) { vals[s * span() + (t + R)] = v; }
};

/// Evaluate sign(w.y - theta) over the whole extended domain.
ExtendedTable extended_table(const std::vector<rat>& w, const rat& theta, long R);

struct ExtendedRepr {
  std::vector<rat> w;  // k weights in source coordinate order
  rat theta = 0;
  std::vector<rat> normalized;  // scaled so max |w_i| = 1 (unless all zero)
  rat normalized_theta = 0;
  bool lifted = false;
  std::vector<int> dropped;  // irrelevant coordinates, 0-based
  std::string order_note;
  VertexCertificate cert;
  LpProblem lp;
  GapReport gaps;
};

/// Same pipeline over the extended domain. The chain position of the integer
/// coordinate is not fixed by influence sorting; orderings are tried (integer
/// coordinate last first, then earlier positions, then all permutations) and
/// the first feasible one wins.
ExtendedRepr extended_domain_repr(const ExtendedTable& h, long row_cap = kDefaultLpRows);

// ---------------------------------------------------------------------------
// Weight floors
// ---------------------------------------------------------------------------

enum class FloorMode { Approx, Exact };

struct FloorEntry {
  int k = 0;
  rat wk;            // |w_k| of the sorted input
  rat floor_q;       // exact-mode floor 1/(4 k^k n)
  double floor_d = 0;  // approx-mode floor 1/(k^k sqrt(3 n ln(2/eps)))
  bool pass = false;
};

/// Per-k weight floors. Report-only: the floors are existence statements
/// about some representation, so a failing vector is not a contradiction.
struct WeightFloorReport {
  FloorMode mode = FloorMode::Exact;
  double eps = 0;
  std::vector<FloorEntry> entries;
  std::string note;
};

WeightFloorReport weight_floor_check(const std::vector<rat>& w, double eps, FloorMode mode);

// ---------------------------------------------------------------------------
// Integer-weight extremes
// ---------------------------------------------------------------------------

/// The alternating-power function sign(sum (-1)^i 2^(n-i) x_i - theta): its
/// value is (-1)^i at the first index i with x_i = +1, and +1 at all-(-1).
/// theta is the midpoint of the two affine values adjacent to the sign change.
Ltf omb_witness(int n, int verify_cap = 16);

struct MinWeightResult {
  bool found = false;
  long max_weight = 0;
  Ltf witness;
  std::string note;
};

/// Least W <= W_max such that integer weights with max |w_i| = W realize the
/// table (exhaustive over monotonized magnitude grids). Not found reports
/// whether the table is realizable at all.
MinWeightResult min_weight_search(const TruthTable& t, long W_max, int arity_cap = 5);

/// All threshold-function tables reachable from integer weights in
/// [-wmax, wmax]^n with every separating threshold, deduplicated. n <= 6.
std::vector<TruthTable> integer_ltf_tables(int n, long wmax);

}  // namespace ltf
