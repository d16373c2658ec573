#pragma once

#include "ltf/core.hpp"
#include "ltf/fourier.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ltf {

/// Result of sampling a linear form: N independent draws, each picking index
/// i with probability |u_i|/||u||_1 and accumulating sign(u_i)*x_i. The
/// realized form is L(x) = sum_i counts[i]*x_i, so (l1/N)*L(x) estimates u.x.
struct SampledLinearForm {
  std::map<int, long long> counts;  // index -> accumulated signed coefficient
  std::uint64_t draws = 0;          // N
  rat l1;                           // ||u||_1 of the source vector
  std::vector<rat> source;          // the vector the draws came from
};

/// Default draw count ceil(2*(||u||_1^2/||u||_2^2)*ln(2/tau)/tau^2), the
/// smallest count making the Hoeffding failure bound 2*exp(-N*tau^2/(2*l1^2))
/// come out <= tau. The l1^2/l2^2 ratio makes the count scale-invariant; for
/// a unit-2-norm u it is the plain ||u||_1^2.
std::uint64_t sample_draw_count(const std::vector<rat>& u, const rat& tau);

/// Draw a linear form approximating u.x. Scale-invariant: a rescaled u gives
/// the same index distribution and draw count, and l1 is reported for the u
/// actually passed, so downstream thresholds stay in the caller's scale.
/// tau must lie in (0,1) and u must be tau-regular (u_i^2 <= tau^2 * ||u||_2^2).
/// Throws "bad_tau", "zero_vector", "non_regular", or "cap" (draw count above
/// 2^30).
SampledLinearForm sample_linear_form(const std::vector<rat>& u, const rat& tau,
                                     Rng& rng,
                                     std::optional<std::uint64_t> n_override = {});

/// L(z) of the realized draw at the point z.
long long sampled_value(const SampledLinearForm& form, std::uint64_t z);

/// Exact expectation of L(z) over the draw randomness: (N/||u||_1)*(u.z).
rat sampled_expectation(const SampledLinearForm& form, std::uint64_t z);

/// The threshold function sign(theta + (||u||_1/N)*L(x)) as an Ltf over the
/// source arity. Its relevant variables are the drawn indices, so it is an
/// N-junta by construction. Throws "degenerate" when the form has no draws.
Ltf build_g_theta(const SampledLinearForm& form, const rat& theta);

/// Head/tail decomposition of an Ltf at a degree-1 spectrum threshold, with
/// the tail replaced by its degree-1 coefficients. The threshold parameter is
/// compared directly against |fhat(i)| (the asymptotic statement's kappa
/// enters only through its square, so the squared value is the parameter).
struct HeadTailSplit {
  std::vector<int> head;    // 0-based i with |fhat(i)| >= kappa_sq
  std::vector<int> tail;    // the complement
  rat kappa_sq;             // threshold applied to |fhat(i)|
  rat sigma_t_sq;           // sum over tail of fhat(i)^2
  rat tail_regularity_sq;   // max over tail of fhat(i)^2/sigma_t_sq (0 if none)
  int which_case = 1;       // 1: tail spectrum vanishes, junta on head; 2: f_prime live
  Ltf f_prime;              // head weights kept, tail weights proportional to fhat(i)
  rat d_sq;                 // (sum tail w_i^2)/sigma_t_sq, the exact scale bridge
};

/// Split f at the given squared threshold and build f_prime = sign(head part
/// + d * sum_T fhat(i) x_i) with d = sqrt(d_sq), realized exactly: the stored
/// tail weights are r*fhat(i) for a rational r on the same side of every
/// sign-critical ratio as d, so the table is exactly f_prime's and the tail
/// weights normalized to unit 2-norm are exactly fhat(i)/sigma_T.
HeadTailSplit head_tail_split(const Ltf& f, const rat& kappa_sq,
                              int cap = kDefaultEnumCap);

/// The uniform-distance-optimal junta on J: per assignment to J, the sign of
/// the conditional expectation of f over the remaining coordinates, ties
/// resolved to +1.
struct BestJunta {
  TruthTable table;  // n-variable table, constant on the off-J coordinates
  rat dist;          // exact uniform distance to the input
};

BestJunta best_junta_on_set(const TruthTable& t, const std::vector<int>& vars);

/// End-to-end junta approximation of an Ltf.
struct JuntaApproximator {
  Ltf g;                      // the approximator
  std::vector<int> relevant;  // variables g's table actually depends on
  rat measured_dist;          // exact uniform Pr[f != g]
  bool met_target = false;    // measured_dist <= eps
  bool shortfall = false;     // draw budget ran out above eps
  int case_taken = 1;         // 1: junta on the head; 2: sampled-tail draw
  std::size_t head_size = 0;  // |H| of the split used
  std::uint64_t draw_count = 0;  // N per sampled form (0 when no sampling ran)
  std::uint64_t draws_used = 0;  // sampled-form draws actually taken
  rat kappa_sq;               // split threshold used
  rat l1_sq;                  // (sum_T |fhat(i)|)^2/sigma_t_sq, squared tail l1
  rat l1_bound_sq;            // (total influence)^2/sigma_t_sq
  bool l1_within_bound = true;  // l1_sq <= l1_bound_sq
};

/// Approximate f by a small junta within distance eps: split at kappa_sq (or
/// a per-instance default, the largest spectrum level whose tail regularity
/// is <= eps/5), build the optimal head junta and, when the tail spectrum is
/// live, up to `budget` sampled-tail draws, measure every candidate's exact
/// distance, and keep the best. A result above eps is returned with the
/// shortfall flag set, never silently. Inputs within eps of a constant short-
/// circuit to the constant 0-junta.
JuntaApproximator theorem1_pipeline(const Ltf& f, const rat& eps, Rng& rng,
                                    std::optional<rat> kappa_sq_override = {},
                                    int budget = 32, int cap = kDefaultEnumCap);

/// The hard instance sign(x_1+...+x_a + (1/(2b))(x_{a+1}+...+x_{a+b}) - a):
/// a head variables of weight 1 over a width-b majority tail. b must be odd,
/// which rules out sign(0) ties everywhere. Throws "bad_arity" or "cap".
Ltf prop14_witness(int a, int b, int cap = kDefaultEnumCap);

/// Whether the table's relevant-variable count is <= 2k-1 for k its Fourier
/// degree. True for every nonconstant threshold table; the constant table has
/// k = 0 and fails the literal inequality.
bool prop17_check(const TruthTable& t, int cap = kDefaultEnumCap);

}  // namespace ltf
