#pragma once

#include "ltf/core.hpp"

#include <cstdint>
#include <vector>

namespace ltf {

/// Dense Walsh spectrum. Entry at mask S holds the scaled integer 2^n*fhat(S);
/// exact rationals are materialized only at the boundary via coeff().
struct Spectrum {
  int n = 0;
  std::vector<std::int64_t> scaled;  // scaled[S] = 2^n * fhat(S)

  rat coeff(std::uint64_t mask) const {
    return rat(bigint(scaled[mask]), bigint(1) << n);
  }
  /// fhat(S)^2 as an exact rational.
  rat coeff_sq(std::uint64_t mask) const {
    return rat(bigint(scaled[mask]) * scaled[mask], bigint(1) << (2 * n));
  }
};

/// Walsh transform of a +-1 table: fhat(S) = 2^{-n} sum_x f(x) prod_{i in S} x_i.
/// Fast butterfly, O(n 2^n), exact integers throughout.
Spectrum wht(const TruthTable& t, int cap = kDefaultEnumCap);

/// Inverse check helper: reconstructs the table from a spectrum (values must
/// be +-1; anything else reports a broken spectrum).
TruthTable table_from_spectrum(const Spectrum& s);

struct InfluenceProfile {
  std::vector<rat> inf;  // Inf_i = Pr[f(x) != f(x^{flip i})]
  rat total = 0;         // sum of the above
};

/// Influences by flip counting, cross-checked against the spectrum identity
/// Inf_i = sum_{S ∋ i} fhat(S)^2; a mismatch is an internal error.
InfluenceProfile influences(const TruthTable& t, int cap = kDefaultEnumCap);

/// Inf_i = sum_{S ∋ i} fhat(S)^2 read off a spectrum.
InfluenceProfile influences_from_spectrum(const Spectrum& s);

struct SpectrumStats {
  rat total_influence;  // sum_S |S| fhat(S)^2
  int degree;           // max |S| with fhat(S) != 0
};

SpectrumStats spectrum_stats(const Spectrum& s);

/// Regularity of a weight vector after unit 2-norm scaling: tau = max|w_i|.
/// Exact as the squared rational max w_i^2 / sum w_j^2; tau itself is the
/// decimal rendering.
struct RegularityReport {
  rat tau_squared;
  double tau;
  int argmax;  // index attaining max |w_i|, smallest on ties
};

RegularityReport regularity(const Ltf& f);

/// True iff f is tau-regular: max w_i^2 <= tau^2 sum w_j^2, exact.
bool is_tau_regular(const Ltf& f, const rat& tau);

struct MarginReport {
  std::uint64_t count_below;  // points with marg(f,x) < tau
  rat fraction_below;         // exact Pr_x[marg(f,x) < tau]
  bool tau_regular;           // is f tau-regular
  bool small_margin_ok;       // fraction_below <= 4*tau
  rat min_margin_sq;          // squared normalized margins, extremes
  rat max_margin_sq;
};

/// Margins marg(f,x) = |w.x - theta| / ||w||_2, compared against tau in
/// squared rationals; fraction of points strictly below tau.
MarginReport margin_stats(const Ltf& f, const rat& tau, int cap = kDefaultEnumCap);

struct CriticalIndexReport {
  rat tau;
  bool infinite;                  // no index qualifies
  int ell;                        // 1-based index into the sorted weights; 0 when infinite
  std::vector<rat> weight_sq;     // |w|^2 sorted descending (zeros dropped)
  std::vector<rat> tail_sq;       // tail_sq[i] = sum_{j >= i} weight_sq[j]
  std::vector<int> order;         // original index of each sorted entry
};

/// Critical index of the weight vector at tau: sort |w| descending (ties by
/// original index, zero weights dropped), then the smallest i with
/// w_i^2 <= tau^2 * sum_{j>=i} w_j^2; infinite when no index qualifies.
CriticalIndexReport critical_index(const Ltf& f, const rat& tau);

}  // namespace ltf
