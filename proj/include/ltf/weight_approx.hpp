#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltf/anticonc.hpp"
#include "ltf/core.hpp"
#include "ltf/junta.hpp"
#include "ltf/lp_repr.hpp"
#include "ltf/rational.hpp"

namespace ltf {

// Grid rounding of LTF weights and the end-to-end low-integer-weight
// pipelines built on top of it.  Weights are snapped to multiples of a grid
// step alpha chosen from an anti-concentration radius r; the distance between
// the original and the rounded function is then certified by measurement.

enum class RoundingMode {
  Uniform,   // alpha = r / sqrt(m ln(2/eps)); needs independent coordinates
  GeneralD,  // alpha = r / m; works under any input distribution
};

struct RoundingSpec {
  rat r;       // anti-concentration radius the grid is derived from
  rat eps;     // error budget the radius was certified against
  rat alpha;   // grid step
  RoundingMode mode = RoundingMode::Uniform;
};

/// Grid step for rounding m weights against radius r and budget eps.
/// Uniform mode divides r by a rational upper bound on sqrt(m ln(2/eps)), so
/// the realized grid is never coarser than the real-valued formula; GeneralD
/// mode uses the exact step r/m, which keeps the total rounding error below r
/// outright.  Throws "bad_radius", "bad_eps", or "bad_arity".
RoundingSpec make_rounding_spec(const rat& r, const rat& eps, int m, RoundingMode mode);

struct PremiseCheck {
  bool checked = false;
  bool holds = false;  // window mass at radius r stays within eps
  rat p;               // exact sup-window mass when checked
};

struct RoundedLtf {
  Ltf h;                  // sign(sum v_i x_i - theta/alpha); integer weights
  std::vector<bigint> v;  // v_i = round(w_i / alpha), ties to even
  bigint max_weight;      // max |v_i|
  bigint weight_ceiling;  // ceil(max |w_i| / alpha); upper bound on max |v_i|
  bigint sum_v_sq;        // sum v_i^2
  rat e_l1;               // total rounding error sum |w_i - alpha v_i|
  bool degenerate = false;  // every weight rounded to zero
  PremiseCheck premise;
};

/// Round g's weights to the grid of spec and rescale the threshold along.
/// With verify_premise the sup-window probability mass of the weight vector
/// at radius spec.r under d is computed exactly and compared against
/// spec.eps.  Throws "bad_alpha" on a nonpositive grid, "cap" if the premise
/// check needs an enumeration beyond cap.
RoundedLtf round_weights(const Ltf& g, const RoundingSpec& spec, const InputDistribution& d,
                         bool verify_premise = false, int cap = kDefaultEnumCap);

struct TruncatedJunta {
  Ltf g;                   // same arity as the input, off-junta weights zeroed
  std::vector<int> kept;   // kept coordinates, heaviest first, ties by index
  std::optional<rat> dist; // exact distance to the input when enumerable
};

/// Keep the L largest-magnitude weights of f and zero the rest.
/// Throws "bad_l" for L < 1.
TruncatedJunta truncate_to_junta(const Ltf& f, int L, int cap = kDefaultEnumCap);

struct PipelineConfig {
  double L_c = 2.0;   // junta-size constant: L = ceil(L_c ln^2(1/eps)/eps^2)
  double K_c = 2.0;   // regular-head constant: K = ceil(K_c / eps^(2/3))
  double R_c = 2.0;   // integer-range constant: R0 = ceil(R_c sqrt(n) ln(1/eps)/eps)
  int budget = 16;    // verify-and-retry rounds (grid halved per retry)
  int cap = kDefaultEnumCap;
  long row_cap = kDefaultLpRows;
  std::uint64_t seed = 0;
};

enum class DistanceMode { Exact, Mc };

struct MeasuredDistance {
  rat value;
  DistanceMode mode = DistanceMode::Exact;
  std::uint64_t samples = 0;  // sampled estimates only
};

struct CaseTrace {
  bool constant = false;      // input was constant; nothing to round
  bool infinite_ell = false;  // no coordinate was small against its tail
  int ell = 0;                // critical index (1-based; 0 when unset/infinite)
  int ell_used = 0;           // head size after the row cap (tail-rounding only)
  int L = 0;                  // junta-size cutoff
  int K = 0;                  // regular-head cutoff
  long R0 = 0;                // requested integer range
  long R0_used = 0;           // range after the row cap
  bool lp_capped = false;     // extended enumeration was shrunk to fit row_cap
  std::string branch;  // "constant" | "rounded" | "exact" | "truncate+thm25" | "tail-rounding"
};

struct PipelineReport {
  std::string method;     // "ser07" | "thm25" | "thm2"
  std::string dist_kind;  // "uniform" | "product" | "explicit"
  Ltf h;                  // integer-weight approximator (common factor divided out)
  bigint max_weight;
  bigint weight_ceiling;
  bigint sum_v_sq;
  MeasuredDistance dist;  // measured distance from the input to h under d
  rat target;             // 2 eps
  bool met_target = false;
  bool shortfall = false;  // retry budget exhausted above the target
  int k = 0;               // weight/gap order statistic the radius came from
  rat r;                   // anti-concentration radius (0 on exact branches)
  rat alpha;               // final grid step (0 on exact branches)
  int retries = 0;
  CaseTrace trace;
  rat eps;
  PipelineConfig config;
};

/// Round the minimal representation at radius r = k-th largest normalized
/// weight, k = min(ceil(1/eps^2), #nonzero).  Needs the truth table, so n
/// must stay within cfg.cap.  Throws "bad_eps", "bad_distribution", "cap".
PipelineReport pipeline_erdos(const Ltf& f, const rat& eps, const InputDistribution& d,
                              const PipelineConfig& cfg = {});

/// Round at radius r = k-th largest consecutive gap of the normalized
/// representation profile, k = ceil(1/eps^(2/3)).  When k > #nonzero - 2 the
/// gap statistic is void and the exact integer representation is returned
/// instead (denominators cleared, common factor divided out).
PipelineReport pipeline_halasz(const Ltf& f, const rat& eps, const InputDistribution& d,
                               const PipelineConfig& cfg = {});

/// Split f at its eps-critical index.  A deep critical index (ell > L,
/// infinity included) truncates to the L heaviest coordinates and delegates
/// to pipeline_halasz on the junta.  A shallow one rounds the tail to
/// integers, re-represents the head over a cube-times-integer-range domain,
/// and rounds the composed weights.  The row cap shrinks the integer range
/// (and if needed the head) rather than failing; trace records what ran.
PipelineReport pipeline_critical(const Ltf& f, const rat& eps, const InputDistribution& d,
                                 const PipelineConfig& cfg = {});

struct Corollary13Report {
  JuntaApproximator junta;  // stage 1: junta approximator at eps/2
  PipelineReport rounding;  // stage 2: integer rounding of the junta at eps/2
  rat inf_sq;               // squared total influence of the input
  bigint sum_v_sq;          // integer weight mass of the final approximator
  MeasuredDistance total;   // exact distance from f to the final approximator
  bool met = false;         // total <= eps
  bool shortfall = false;   // a stage missed its own budget
  rat eps;
};

/// Junta approximation composed with integer rounding: stage targets eps/2
/// each, final distance measured end to end against eps.
Corollary13Report corollary13_compose(const Ltf& f, const rat& eps,
                                      const PipelineConfig& cfg = {});

}  // namespace ltf
