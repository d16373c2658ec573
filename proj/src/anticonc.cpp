#include "ltf/anticonc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ltf {

namespace {

// Sorted (value, probability) pairs of a.x under d, duplicates merged.
std::vector<std::pair<rat, rat>> value_support(const std::vector<rat>& a,
                                               const InputDistribution& d,
                                               int cap) {
  if (static_cast<int>(a.size()) != d.n())
    throw error("dim_mismatch", "weight vector does not match the distribution arity");
  std::vector<std::pair<rat, rat>> vals;
  if (d.is_explicit()) {
    for (const auto& [pt, pr] : d.as_explicit().support) {
      rat s = 0;
      for (size_t i = 0; i < a.size(); ++i) s += (pt >> i & 1) ? a[i] : -a[i];
      vals.emplace_back(s, pr);
    }
  } else {
    rat s = 0;
    for (const rat& ai : a) s -= ai;
    std::uint64_t last = 0;
    bool first = true;
    vals.reserve(std::size_t{1} << a.size());
    d.for_each(
        [&](std::uint64_t point, const rat& pr) {
          if (!first) {
            int b = std::countr_zero(point ^ last);
            if (point >> b & 1)
              s += 2 * a[b];
            else
              s -= 2 * a[b];
          }
          first = false;
          last = point;
          vals.emplace_back(s, pr);
        },
        cap);
  }
  std::sort(vals.begin(), vals.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<rat, rat>> merged;
  for (auto& [v, p] : vals) {
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += p;
    else
      merged.emplace_back(std::move(v), std::move(p));
  }
  return merged;
}

LevyResult window_max(const std::vector<std::pair<rat, rat>>& vals, const rat& r) {
  rat width = 2 * r;
  rat best = -1, best_v = 0;
  size_t j = 0;
  rat mass = 0;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (j < i) {
      j = i;
      mass = 0;
    }
    while (j < vals.size() && vals[j].first <= vals[i].first + width) {
      mass += vals[j].second;
      ++j;
    }
    if (mass > best) {
      best = mass;
      best_v = vals[i].first + r;
    }
    mass -= vals[i].second;
  }
  return {best, best_v};
}

}  // namespace

LevyResult levy_exact(const std::vector<rat>& a, const rat& r,
                      const InputDistribution& d, int cap) {
  if (r < 0) throw error("out_of_range", "radius must be nonnegative");
  return window_max(value_support(a, d, cap), r);
}

LevyResult levy_mc(const std::vector<rat>& a, const rat& r,
                   const InputDistribution& d, std::uint64_t samples, Rng& rng) {
  if (r < 0) throw error("out_of_range", "radius must be nonnegative");
  if (d.is_explicit())
    throw error("unsampleable", "mc anti-concentration requires a sampleable distribution");
  if (static_cast<int>(a.size()) != d.n())
    throw error("dim_mismatch", "weight vector does not match the distribution arity");
  if (samples == 0) throw error("out_of_range", "sample count must be positive");
  std::vector<rat> sums;
  sums.reserve(samples);
  for (std::uint64_t t = 0; t < samples; ++t) {
    std::uint64_t x = d.sample(rng);
    rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (x >> i & 1) ? a[i] : -a[i];
    sums.push_back(std::move(s));
  }
  std::sort(sums.begin(), sums.end());
  std::vector<std::pair<rat, rat>> vals;
  rat unit(1, bigint(samples));
  for (rat& s : sums) {
    if (!vals.empty() && vals.back().first == s)
      vals.back().second += unit;
    else
      vals.emplace_back(std::move(s), unit);
  }
  return window_max(vals, r);
}

rat mass_at_center(const std::vector<rat>& a, const rat& r, const rat& v,
                   const InputDistribution& d, int cap) {
  rat mass = 0;
  for (const auto& [val, p] : value_support(a, d, cap))
    if (rat_abs(val - v) <= r) mass += p;
  return mass;
}

std::vector<ProfileRow> anticonc_profile(const std::vector<rat>& a,
                                         const std::vector<rat>& rs,
                                         const InputDistribution& d, int cap) {
  auto vals = value_support(a, d, cap);
  std::vector<ProfileRow> rows;
  for (const rat& r : rs) {
    if (r < 0) throw error("out_of_range", "radius must be nonnegative");
    LevyResult res = window_max(vals, r);
    rows.push_back({r, res.p, res.v_star});
  }
  return rows;
}

ErdosReport erdos_check(const std::vector<rat>& a, const rat& r,
                        const InputDistribution& d, int cap) {
  for (const rat& ai : a)
    if (rat_abs(ai) < r)
      throw error("hypothesis_violated", "some |a_i| is below the radius");
  unsigned k = static_cast<unsigned>(a.size());
  LevyResult res = levy_exact(a, r, d, cap);
  ErdosReport rep;
  rep.p = res.p;
  rep.trend = to_double(res.p) * std::sqrt(double(k));
  if (d.is_uniform()) {
    rep.bound = rat(binomial(k, k / 2), bigint(1) << k);
    rep.pass = res.p <= *rep.bound;
  } else {
    rep.bound = std::nullopt;
    rep.pass = true;
  }
  return rep;
}

std::vector<ProbeRow> halasz_probe(
    const std::function<std::vector<rat>(int)>& family, const rat& r, int k_lo,
    int k_hi, const std::function<InputDistribution(int)>& dist_for, int cap) {
  std::vector<ProbeRow> rows;
  for (int k = k_lo; k <= k_hi; ++k) {
    std::vector<rat> a = family(k);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = i + 1; j < a.size(); ++j)
        if (rat_abs(a[i] - a[j]) < r)
          throw error("hypothesis_violated",
                      "family member " + std::to_string(k) +
                          " has entries closer than the radius");
    LevyResult res = levy_exact(a, r, dist_for(k), cap);
    rows.push_back({k, res.p, to_double(res.p) * std::pow(double(k), 1.5)});
  }
  return rows;
}

ExtensionReport extension_check(const std::vector<rat>& a,
                                const std::vector<rat>& a_full, const rat& r,
                                const std::vector<rat>& biases, int cap) {
  if (a_full.size() < a.size())
    throw error("not_extension", "extended vector is shorter than the prefix");
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != a_full[i])
      throw error("not_extension", "vectors disagree on the shared prefix");
  InputDistribution small, full;
  if (biases.empty()) {
    small = InputDistribution::uniform(static_cast<int>(a.size()));
    full = InputDistribution::uniform(static_cast<int>(a_full.size()));
  } else {
    if (biases.size() != a_full.size())
      throw error("dim_mismatch", "bias vector must match the extended length");
    std::vector<rat> prefix(biases.begin(), biases.begin() + a.size());
    small = InputDistribution::product(prefix);
    full = InputDistribution::product(biases);
  }
  ExtensionReport rep;
  rep.p_prefix = levy_exact(a, r, small, cap).p;
  rep.p_full = levy_exact(a_full, r, full, cap).p;
  rep.pass = rep.p_full <= rep.p_prefix;
  return rep;
}

GaussianBandReport gaussian_band(const std::vector<rat>& w, const rat& alpha,
                                 const rat& beta, int cap) {
  rat norm_sq = 0, max_sq = 0;
  for (const rat& wi : w) {
    rat sq = wi * wi;
    norm_sq += sq;
    if (sq > max_sq) max_sq = sq;
  }
  if (norm_sq == 0) throw error("zero_weights", "gaussian comparison needs nonzero weights");

  rat exact = 0;
  auto u = InputDistribution::uniform(static_cast<int>(w.size()));
  for (const auto& [val, p] : value_support(w, u, cap))
    if (alpha <= val && val <= beta) exact += p;

  double sigma = std::sqrt(to_double(norm_sq));
  auto phi = [](double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); };
  double band = alpha > beta
                    ? 0.0
                    : phi(to_double(beta) / sigma) - phi(to_double(alpha) / sigma);
  GaussianBandReport rep;
  rep.exact = exact;
  rep.band = band;
  rep.residual = std::fabs(to_double(exact) - band);
  rep.two_tau = 2.0 * std::sqrt(to_double(max_sq / norm_sq));
  rep.pass = rep.residual <= rep.two_tau + 1e-12;
  rep.berry_esseen_c = 0.7915;
  return rep;
}

KwiseTransferReport kwise_transfer_check(const std::vector<rat>& a, const rat& r,
                                         const InputDistribution& d, int K,
                                         int cap) {
  if (!validate_kwise(d, K).ok)
    throw error("not_kwise", "distribution fails K-wise validation");
  KwiseTransferReport rep;
  rep.p_dist = levy_exact(a, r, d, cap).p;
  rep.p_uniform =
      levy_exact(a, r, InputDistribution::uniform(static_cast<int>(a.size())), cap).p;
  rep.gap = rep.p_dist - rep.p_uniform;
  return rep;
}

}  // namespace ltf
