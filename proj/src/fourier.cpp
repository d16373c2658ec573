#include "ltf/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace ltf {

Spectrum wht(const TruthTable& t, int cap) {
  int n = t.n();
  if (n > cap) throw error("cap_exceeded", "wht: n exceeds enumeration cap");
  std::uint64_t N = std::uint64_t{1} << n;
  std::vector<std::int64_t> a(N);
  for (std::uint64_t p = 0; p < N; ++p) a[p] = t.get(p);
  for (int bit = 0; bit < n; ++bit) {
    std::uint64_t half = std::uint64_t{1} << bit;
    for (std::uint64_t base = 0; base < N; base += 2 * half)
      for (std::uint64_t j = base; j < base + half; ++j) {
        std::int64_t u = a[j], v = a[j + half];
        a[j] = u + v;
        a[j + half] = u - v;
      }
  }
  // The butterfly pairs bit value 0 with +1; our encoding is the opposite,
  // so characters pick up a sign per odd-size mask.
  for (std::uint64_t S = 0; S < N; ++S)
    if (std::popcount(S) & 1) a[S] = -a[S];
  return Spectrum{n, std::move(a)};
}

TruthTable table_from_spectrum(const Spectrum& s) {
  std::uint64_t N = std::uint64_t{1} << s.n;
  std::vector<std::int64_t> a = s.scaled;
  for (std::uint64_t S = 0; S < N; ++S)
    if (std::popcount(S) & 1) a[S] = -a[S];
  for (int bit = 0; bit < s.n; ++bit) {
    std::uint64_t half = std::uint64_t{1} << bit;
    for (std::uint64_t base = 0; base < N; base += 2 * half)
      for (std::uint64_t j = base; j < base + half; ++j) {
        std::int64_t u = a[j], v = a[j + half];
        a[j] = u + v;
        a[j + half] = u - v;
      }
  }
  TruthTable t(s.n);
  for (std::uint64_t p = 0; p < N; ++p) {
    std::int64_t v = a[p];
    if (v != std::int64_t(N) && v != -std::int64_t(N))
      throw error("bad_spectrum", "spectrum does not describe a +-1 function");
    t.set(p, v > 0 ? 1 : -1);
  }
  return t;
}

InfluenceProfile influences_from_spectrum(const Spectrum& s) {
  std::uint64_t N = std::uint64_t{1} << s.n;
  InfluenceProfile prof;
  prof.inf.resize(s.n);
  bigint denom = bigint(1) << (2 * s.n);
  for (int i = 0; i < s.n; ++i) {
    std::int64_t acc = 0;
    for (std::uint64_t S = 0; S < N; ++S)
      if (S >> i & 1) acc += s.scaled[S] * s.scaled[S];
    prof.inf[i] = rat(bigint(acc), denom);
    prof.total += prof.inf[i];
  }
  return prof;
}

InfluenceProfile influences(const TruthTable& t, int cap) {
  int n = t.n();
  if (n > cap) throw error("cap_exceeded", "influences: n exceeds enumeration cap");
  std::uint64_t N = std::uint64_t{1} << n;
  InfluenceProfile prof;
  prof.inf.resize(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t bit = std::uint64_t{1} << i, cnt = 0;
    for (std::uint64_t p = 0; p < N; ++p)
      if (!(p & bit) && t.get(p) != t.get(p | bit)) cnt += 2;
    prof.inf[i] = rat(bigint(cnt), bigint(N));
    prof.total += prof.inf[i];
  }
  InfluenceProfile check = influences_from_spectrum(wht(t, cap));
  for (int i = 0; i < n; ++i)
    if (check.inf[i] != prof.inf[i])
      throw error("internal", "influence flip count disagrees with the spectrum");
  return prof;
}

SpectrumStats spectrum_stats(const Spectrum& s) {
  std::uint64_t N = std::uint64_t{1} << s.n;
  std::int64_t acc = 0;
  int degree = 0;
  for (std::uint64_t S = 0; S < N; ++S) {
    if (s.scaled[S] == 0) continue;
    int k = std::popcount(S);
    acc += k * s.scaled[S] * s.scaled[S];
    degree = std::max(degree, k);
  }
  return {rat(bigint(acc), bigint(1) << (2 * s.n)), degree};
}

RegularityReport regularity(const Ltf& f) {
  rat norm_sq = f.norm2_squared();
  if (norm_sq == 0) throw error("zero_weights", "regularity of an all-zero weight vector");
  rat best = -1;
  int arg = 0;
  for (int i = 0; i < f.n(); ++i) {
    rat sq = f.weights[i] * f.weights[i];
    if (sq > best) {
      best = sq;
      arg = i;
    }
  }
  rat tau_sq = best / norm_sq;
  return {tau_sq, std::sqrt(to_double(tau_sq)), arg};
}

bool is_tau_regular(const Ltf& f, const rat& tau) {
  return regularity(f).tau_squared <= tau * tau;
}

MarginReport margin_stats(const Ltf& f, const rat& tau, int cap) {
  if (f.n() > cap) throw error("cap_exceeded", "margin_stats: n exceeds enumeration cap");
  rat norm_sq = f.norm2_squared();
  if (norm_sq == 0) throw error("zero_weights", "margins of an all-zero weight vector");
  rat thresh = tau * tau * norm_sq;  // marg < tau  <=>  (w.x - theta)^2 < tau^2 ||w||^2
  std::uint64_t cnt = 0, N = std::uint64_t{1} << f.n();
  rat s = -f.theta;
  for (const rat& w : f.weights) s -= w;
  rat min_sq = s * s, max_sq = s * s;
  std::uint64_t point = 0;
  for (std::uint64_t i = 0; i < N; ++i) {
    if (i) {
      int b = std::countr_zero(i);
      point ^= std::uint64_t{1} << b;
      if (point >> b & 1)
        s += 2 * f.weights[b];
      else
        s -= 2 * f.weights[b];
    }
    rat sq = s * s;
    if (sq < thresh) ++cnt;
    if (sq < min_sq) min_sq = sq;
    if (sq > max_sq) max_sq = sq;
  }
  MarginReport rep;
  rep.count_below = cnt;
  rep.fraction_below = rat(bigint(cnt), bigint(N));
  rep.tau_regular = is_tau_regular(f, tau);
  rep.small_margin_ok = rep.fraction_below <= 4 * tau;
  rep.min_margin_sq = min_sq / norm_sq;
  rep.max_margin_sq = max_sq / norm_sq;
  return rep;
}

CriticalIndexReport critical_index(const Ltf& f, const rat& tau) {
  CriticalIndexReport rep;
  rep.tau = tau;
  std::vector<int> idx;
  for (int i = 0; i < f.n(); ++i)
    if (f.weights[i] != 0) idx.push_back(i);
  if (idx.empty()) throw error("zero_weights", "critical index of an all-zero weight vector");
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return cmp_abs(f.weights[a], f.weights[b]) > 0;
  });
  int m = static_cast<int>(idx.size());
  rep.order = idx;
  rep.weight_sq.resize(m);
  for (int i = 0; i < m; ++i) rep.weight_sq[i] = f.weights[idx[i]] * f.weights[idx[i]];
  rep.tail_sq.assign(m, 0);
  rat tail = 0;
  for (int i = m - 1; i >= 0; --i) {
    tail += rep.weight_sq[i];
    rep.tail_sq[i] = tail;
  }
  rat tau_sq = tau * tau;
  rep.infinite = true;
  rep.ell = 0;
  for (int i = 0; i < m; ++i)
    if (rep.weight_sq[i] <= tau_sq * rep.tail_sq[i]) {
      rep.infinite = false;
      rep.ell = i + 1;
      break;
    }
  return rep;
}

}  // namespace ltf
