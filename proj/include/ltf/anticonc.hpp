#pragma once

#include "ltf/core.hpp"

#include <optional>
#include <vector>

namespace ltf {

/// Result of an anti-concentration query: the largest probability mass any
/// closed window [v-r, v+r] captures, plus a center attaining it.
struct LevyResult {
  rat p;       // sup_v Pr[|a.x - v| <= r]
  rat v_star;  // midpoint of the first maximizing window
};

/// Exact p_r(a, D): enumerate the a.x values with their probabilities, sort,
/// and slide a closed window of width 2r. The sup is attained by a window
/// whose left edge sits on a support value.
LevyResult levy_exact(const std::vector<rat>& a, const rat& r,
                      const InputDistribution& d, int cap = kDefaultEnumCap);

/// Empirical p_r from `samples` draws (uniform/product only); the window
/// slides over the sampled sums.
LevyResult levy_mc(const std::vector<rat>& a, const rat& r,
                   const InputDistribution& d, std::uint64_t samples, Rng& rng);

/// Exact Pr[|a.x - v| <= r] at a fixed center; rechecks a reported optimum.
rat mass_at_center(const std::vector<rat>& a, const rat& r, const rat& v,
                   const InputDistribution& d, int cap = kDefaultEnumCap);

struct ProfileRow {
  rat r;
  rat p;
  rat v_star;
};

/// p_r at each requested radius.
std::vector<ProfileRow> anticonc_profile(const std::vector<rat>& a,
                                         const std::vector<rat>& rs,
                                         const InputDistribution& d,
                                         int cap = kDefaultEnumCap);

struct ErdosReport {
  rat p;
  std::optional<rat> bound;  // binom(k, floor(k/2)) / 2^k; uniform only
  bool pass;                 // uniform: p <= bound; product: report-only true
  double trend;              // p * sqrt(k), the product-case trend value
};

/// Requires every |a_i| >= r. Uniform: checks the exact central-binomial
/// bound. Product: no constant is asserted; the sqrt(k)-normalized trend is
/// reported instead.
ErdosReport erdos_check(const std::vector<rat>& a, const rat& r,
                        const InputDistribution& d, int cap = kDefaultEnumCap);

struct ProbeRow {
  int k;
  rat p;
  double trend;  // p * k^{3/2}
};

/// Exact p_r for each member of a vector family with pairwise separated
/// entries (|a_i - a_j| >= r checked up front); emits the k^{3/2}-normalized
/// trend per row. dist_for(k) supplies the distribution at each size.
std::vector<ProbeRow> halasz_probe(
    const std::function<std::vector<rat>(int)>& family, const rat& r, int k_lo,
    int k_hi, const std::function<InputDistribution(int)>& dist_for,
    int cap = kDefaultEnumCap);

struct ExtensionReport {
  rat p_prefix;
  rat p_full;
  bool pass;  // p_full <= p_prefix
};

/// a_full must prefix-extend a (entrywise equal on the first |a| slots).
/// biases, when given, are the product parameters for the full length; the
/// prefix uses the first |a| of them. Empty biases means uniform.
ExtensionReport extension_check(const std::vector<rat>& a,
                                const std::vector<rat>& a_full, const rat& r,
                                const std::vector<rat>& biases = {},
                                int cap = kDefaultEnumCap);

struct GaussianBandReport {
  rat exact;            // Pr[alpha <= w.x <= beta], uniform, exact
  double band;          // Phi(beta/sigma) - Phi(alpha/sigma)
  double residual;      // |exact - band|
  double two_tau;       // 2 max|w_i| / sigma
  bool pass;            // residual <= two_tau
  double berry_esseen_c;  // recorded constant; the pass rule does not use it
};

/// Compares the exact interval mass of w.x against the Gaussian value with
/// the same variance. Phi comes from std::erf (correctly-rounded libm, error
/// well under 1e-10). The acceptance band 2*tau is constant-free.
GaussianBandReport gaussian_band(const std::vector<rat>& w, const rat& alpha,
                                 const rat& beta, int cap = kDefaultEnumCap);

struct KwiseTransferReport {
  rat p_dist;     // p_r(a, D)
  rat p_uniform;  // p_r(a, U)
  rat gap;        // p_dist - p_uniform, sign kept
};

/// D must pass K-wise validation; both anti-concentration values are exact and
/// the gap is reported for trend analysis (no constant asserted).
KwiseTransferReport kwise_transfer_check(const std::vector<rat>& a, const rat& r,
                                         const InputDistribution& d, int K,
                                         int cap = kDefaultEnumCap);

}  // namespace ltf
