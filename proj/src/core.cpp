#include "ltf/core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

namespace ltf {

// --------------------------------------------------------------------------
// rational.hpp implementations
// --------------------------------------------------------------------------

rat parse_rat(const std::string& s) {
  auto bad = [&] { throw error("bad_rational", "cannot parse rational: '" + s + "'"); };
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) bad();
  try {
    auto slash = t.find('/');
    if (slash != std::string::npos) {
      std::string num = t.substr(0, slash), den = t.substr(slash + 1);
      if (num.empty() || den.empty()) bad();
      bigint d(den);
      if (d == 0) throw error("zero_denominator", "zero denominator in '" + s + "'");
      return rat(bigint(num), d);
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
      std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
      if (fp.empty() || fp.find_first_not_of("0123456789") != std::string::npos) bad();
      bool neg = !ip.empty() && ip[0] == '-';
      if (ip == "-" || ip == "+") ip += "0";
      if (ip.empty()) ip = "0";
      bigint den = 1;
      for (size_t i = 0; i < fp.size(); ++i) den *= 10;
      bigint num = abs(bigint(ip)) * den + bigint(fp);
      if (neg) num = -num;
      return rat(num, den);
    }
    return rat(bigint(t));
  } catch (const error&) {
    throw;
  } catch (const std::runtime_error&) {
    bad();
  }
  return rat();  // unreachable
}

std::string format_rat(const rat& v) {
  bigint num = rat_num(v), den = rat_den(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

rat rat_pow(const rat& base, unsigned long e) {
  rat acc = 1, b = base;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

bigint round_ties_even(const rat& v) {
  bigint num = rat_num(v), den = rat_den(v);  // den > 0 canonical
  bigint q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r < 0) {
    q -= 1;
    r += den;
  }
  // v = q + r/den with 0 <= r < den
  bigint twice = 2 * r;
  if (twice > den) return q + 1;
  if (twice < den) return q;
  return (q % 2 == 0) ? q : q + 1;
}

bigint floor_rat(const rat& v) {
  bigint num = rat_num(v), den = rat_den(v);
  bigint q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r < 0) q -= 1;
  return q;
}

bigint ceil_rat(const rat& v) { return -floor_rat(-v); }

rat dyadic_floor(double v, int bits) {
  double scaled = std::floor(std::ldexp(v, bits));
  if (!std::isfinite(scaled))
    throw error("dyadic_overflow", "value too large for dyadic flooring");
  return rat(bigint(scaled), bigint(1) << bits);
}

bigint binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  bigint res = 1;
  for (unsigned i = 1; i <= k; ++i) {
    res *= n - k + i;
    res /= i;
  }
  return res;
}

// --------------------------------------------------------------------------
// Rng
// --------------------------------------------------------------------------

std::uint64_t Rng::below(std::uint64_t m) {
  if (m == 0) throw error("bad_range", "uniform draw from empty range");
  std::uint64_t lim = ~std::uint64_t{0} - (~std::uint64_t{0} % m);
  std::uint64_t r;
  do {
    r = next();
  } while (r >= lim);
  return r % m;
}

bigint Rng::below_big(const bigint& m) {
  if (m <= 0) throw error("bad_range", "uniform draw from empty range");
  if (m <= std::uint64_t(~std::uint64_t{0}))
    return bigint(below(m.convert_to<std::uint64_t>()));
  unsigned bits = boost::multiprecision::msb(m) + 1;
  unsigned words = (bits + 63) / 64;
  unsigned top_bits = bits - 64 * (words - 1);
  std::uint64_t top_mask =
      top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  while (true) {
    bigint r = 0;
    for (unsigned i = 0; i < words; ++i) {
      std::uint64_t w = next();
      if (i == 0) w &= top_mask;
      r <<= 64;
      r += w;
    }
    if (r < m) return r;
  }
}

// --------------------------------------------------------------------------
// Points and truth tables
// --------------------------------------------------------------------------

std::vector<int> decode_point(std::uint64_t point, int n) {
  std::vector<int> x(n);
  for (int i = 0; i < n; ++i) x[i] = coord(point, i);
  return x;
}

std::uint64_t encode_point(const std::vector<int>& x) {
  std::uint64_t p = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 1 && x[i] != -1)
      throw error("bad_point", "coordinates must be +-1");
    if (x[i] == 1) p |= std::uint64_t{1} << i;
  }
  return p;
}

TruthTable::TruthTable(int n, bool fill) : n_(n) {
  if (n < 0 || n > 63) throw error("bad_arity", "variable count out of range");
  std::uint64_t words = (size() + 63) / 64;
  words_.assign(words, fill ? ~std::uint64_t{0} : 0);
  if (fill && (size() & 63)) words_.back() = (std::uint64_t{1} << (size() & 63)) - 1;
}

void TruthTable::set(std::uint64_t point, int value) {
  if (value == 1)
    words_[point >> 6] |= std::uint64_t{1} << (point & 63);
  else
    words_[point >> 6] &= ~(std::uint64_t{1} << (point & 63));
}

std::uint64_t TruthTable::count_positive() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

TruthTable TruthTable::negation_mirror() const {
  TruthTable r(n_);
  std::uint64_t mask = size() - 1;
  for (std::uint64_t p = 0; p < size(); ++p)
    r.set(p, -get(~p & mask));
  return r;
}

bool TruthTable::ignores(int i) const {
  std::uint64_t bit = std::uint64_t{1} << i;
  for (std::uint64_t p = 0; p < size(); ++p)
    if (!(p & bit) && get(p) != get(p | bit)) return false;
  return true;
}

// --------------------------------------------------------------------------
// Ltf
// --------------------------------------------------------------------------

rat Ltf::affine_value(std::uint64_t point) const {
  rat s = -theta;
  for (int i = 0; i < n(); ++i)
    if (point >> i & 1)
      s += weights[i];
    else
      s -= weights[i];
  return s;
}

rat Ltf::affine_value(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != n())
    throw error("dim_mismatch", "point arity does not match weight count");
  rat s = -theta;
  for (int i = 0; i < n(); ++i) s += weights[i] * x[i];
  return s;
}

rat Ltf::norm2_squared() const {
  rat s = 0;
  for (const rat& w : weights) s += w * w;
  return s;
}

rat Ltf::l1_norm() const {
  rat s = 0;
  for (const rat& w : weights) s += rat_abs(w);
  return s;
}

Ltf majority(int n) {
  Ltf f;
  f.weights.assign(n, rat(1));
  f.theta = 0;
  return f;
}

Ltf dictator(int n, int i) {
  Ltf f;
  f.weights.assign(n, rat(0));
  f.weights.at(i) = 1;
  f.theta = 0;
  return f;
}

namespace {

// Walks all 2^n points in Gray-code order, calling step(point, flipped_bit)
// after each single-bit flip; visit(0) must be handled by the caller first.
template <class F>
void gray_walk(int n, F&& step) {
  std::uint64_t point = 0;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    int b = std::countr_zero(i);
    point ^= std::uint64_t{1} << b;
    step(point, b);
  }
}

void check_cap(int n, int cap, const char* what) {
  if (n > cap)
    throw error("cap_exceeded", std::string(what) + ": n exceeds enumeration cap");
}

}  // namespace

TruthTable truth_table(const Ltf& f, int cap) {
  check_cap(f.n(), cap, "truth_table");
  TruthTable t(f.n());
  rat s = -f.theta;
  for (const rat& w : f.weights) s -= w;
  t.set(0, s >= 0 ? 1 : -1);
  gray_walk(f.n(), [&](std::uint64_t point, int b) {
    if (point >> b & 1)
      s += 2 * f.weights[b];
    else
      s -= 2 * f.weights[b];
    t.set(point, s >= 0 ? 1 : -1);
  });
  return t;
}

std::vector<std::uint64_t> zero_margin_points(const Ltf& f, int cap) {
  check_cap(f.n(), cap, "zero_margin_points");
  std::vector<std::uint64_t> out;
  rat s = -f.theta;
  for (const rat& w : f.weights) s -= w;
  if (s == 0) out.push_back(0);
  gray_walk(f.n(), [&](std::uint64_t point, int b) {
    if (point >> b & 1)
      s += 2 * f.weights[b];
    else
      s -= 2 * f.weights[b];
    if (s == 0) out.push_back(point);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Ltf restrict_ltf(const Ltf& f, const Restriction& rho) {
  Ltf g;
  g.theta = f.theta;
  for (auto [i, v] : rho.fixed) {
    if (i < 0 || i >= f.n()) throw error("bad_index", "restriction index out of range");
    if (v != 1 && v != -1) throw error("bad_point", "restriction values must be +-1");
    g.theta -= f.weights[i] * v;
  }
  for (int i = 0; i < f.n(); ++i)
    if (!rho.fixed.count(i)) g.weights.push_back(f.weights[i]);
  return g;
}

TruthTable restrict_table(const TruthTable& t, const Restriction& rho) {
  std::vector<int> free_vars;
  std::uint64_t base = 0;
  for (int i = 0; i < t.n(); ++i) {
    auto it = rho.fixed.find(i);
    if (it == rho.fixed.end()) {
      free_vars.push_back(i);
    } else {
      if (it->second != 1 && it->second != -1)
        throw error("bad_point", "restriction values must be +-1");
      if (it->second == 1) base |= std::uint64_t{1} << i;
    }
  }
  for (auto [i, v] : rho.fixed)
    if (i < 0 || i >= t.n()) throw error("bad_index", "restriction index out of range");
  int m = static_cast<int>(free_vars.size());
  TruthTable r(m);
  for (std::uint64_t q = 0; q < (std::uint64_t{1} << m); ++q) {
    std::uint64_t p = base;
    for (int j = 0; j < m; ++j)
      if (q >> j & 1) p |= std::uint64_t{1} << free_vars[j];
    r.set(q, t.get(p));
  }
  return r;
}

// --------------------------------------------------------------------------
// InputDistribution
// --------------------------------------------------------------------------

InputDistribution::InputDistribution(ProductDist p) : v_(std::move(p)) {
  for (const rat& pi : as_product().p)
    if (pi <= 0 || pi >= 1)
      throw error("bad_distribution", "product biases must lie in (0,1)");
}

InputDistribution::InputDistribution(ExplicitDist e) : v_(std::move(e)) {
  auto& d = std::get<ExplicitDist>(v_);
  if (d.n < 0 || d.n > 63) throw error("bad_arity", "explicit support arity out of range");
  std::sort(d.support.begin(), d.support.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  rat sum = 0;
  std::uint64_t domain = std::uint64_t{1} << d.n;
  for (size_t i = 0; i < d.support.size(); ++i) {
    if (d.support[i].first >= domain)
      throw error("bad_distribution", "support point outside the domain");
    if (i && d.support[i].first == d.support[i - 1].first)
      throw error("bad_distribution", "duplicate support point");
    if (d.support[i].second < 0)
      throw error("bad_distribution", "negative probability");
    sum += d.support[i].second;
  }
  if (sum != 1) throw error("bad_distribution", "probabilities must sum exactly to 1");
}

InputDistribution InputDistribution::product(std::vector<rat> p) {
  return InputDistribution(ProductDist{std::move(p)});
}

InputDistribution InputDistribution::explicit_support(
    int n, std::vector<std::pair<std::uint64_t, rat>> s) {
  return InputDistribution(ExplicitDist{n, std::move(s)});
}

int InputDistribution::n() const {
  if (is_uniform()) return std::get<UniformDist>(v_).n;
  if (is_product()) return static_cast<int>(as_product().p.size());
  return as_explicit().n;
}

rat InputDistribution::prob(std::uint64_t point) const {
  if (is_uniform()) return rat(1, bigint(1) << n());
  if (is_product()) {
    rat pr = 1;
    const auto& p = as_product().p;
    for (size_t i = 0; i < p.size(); ++i)
      pr *= (point >> i & 1) ? p[i] : 1 - p[i];
    return pr;
  }
  for (const auto& [pt, pr] : as_explicit().support)
    if (pt == point) return pr;
  return 0;
}

rat InputDistribution::bias() const {
  if (is_uniform()) return rat(1, 2);
  if (!is_product())
    throw error("bias_undefined", "bias parameter is defined for uniform/product only");
  rat b = 1;
  for (const rat& pi : as_product().p) {
    rat q = 1 - pi;
    if (pi < b) b = pi;
    if (q < b) b = q;
  }
  return b;
}

std::uint64_t InputDistribution::sample(Rng& rng) const {
  if (is_explicit())
    throw error("unsampleable", "explicit distributions are exact-only; sampling rejected");
  if (is_uniform()) {
    int m = n();
    std::uint64_t mask = m == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    return rng.next() & mask;
  }
  const auto& p = as_product().p;
  std::uint64_t point = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    bigint den = rat_den(p[i]), num = rat_num(p[i]);
    if (rng.below_big(den) < num) point |= std::uint64_t{1} << i;
  }
  return point;
}

void InputDistribution::for_each(
    const std::function<void(std::uint64_t, const rat&)>& fn, int cap) const {
  if (is_explicit()) {
    for (const auto& [pt, pr] : as_explicit().support) fn(pt, pr);
    return;
  }
  check_cap(n(), cap, "distribution enumeration");
  if (is_uniform()) {
    rat pr(1, bigint(1) << n());
    fn(0, pr);
    gray_walk(n(), [&](std::uint64_t point, int) { fn(point, pr); });
    return;
  }
  const auto& p = as_product().p;
  rat pr = 1;
  for (const rat& pi : p) pr *= 1 - pi;
  fn(0, pr);
  gray_walk(n(), [&](std::uint64_t point, int b) {
    if (point >> b & 1)
      pr *= p[b] / (1 - p[b]);
    else
      pr *= (1 - p[b]) / p[b];
    fn(point, pr);
  });
}

// --------------------------------------------------------------------------
// Distance
// --------------------------------------------------------------------------

namespace {

// Incremental evaluator: keeps w.x - theta updated along a Gray walk when the
// function is an Ltf; falls back to table lookup otherwise.
class WalkEval {
 public:
  explicit WalkEval(const BoolFn& f) : f_(f) {
    if (const Ltf* l = f.as_ltf()) {
      s_ = -l->theta;
      for (const rat& w : l->weights) s_ -= w;
    }
  }
  void flip(std::uint64_t point, int b) {
    if (const Ltf* l = f_.as_ltf()) {
      if (point >> b & 1)
        s_ += 2 * l->weights[b];
      else
        s_ -= 2 * l->weights[b];
    }
  }
  int value(std::uint64_t point) const {
    if (f_.as_ltf()) return s_ >= 0 ? 1 : -1;
    return f_.eval(point);
  }

 private:
  const BoolFn& f_;
  rat s_;
};

}  // namespace

rat distance_exact(const BoolFn& f, const BoolFn& g, const InputDistribution& d,
                   int cap) {
  if (f.n() != g.n() || f.n() != d.n())
    throw error("dim_mismatch", "distance operands disagree on arity");
  if (d.is_explicit()) {
    rat sum = 0;
    for (const auto& [pt, pr] : d.as_explicit().support)
      if (f.eval(pt) != g.eval(pt)) sum += pr;
    return sum;
  }
  check_cap(f.n(), cap, "distance_exact");
  WalkEval ef(f), eg(g);
  if (d.is_uniform()) {
    std::uint64_t cnt = ef.value(0) != eg.value(0) ? 1 : 0;
    gray_walk(f.n(), [&](std::uint64_t point, int b) {
      ef.flip(point, b);
      eg.flip(point, b);
      if (ef.value(point) != eg.value(point)) ++cnt;
    });
    return rat(bigint(cnt), bigint(1) << f.n());
  }
  const auto& p = d.as_product().p;
  rat pr = 1;
  for (const rat& pi : p) pr *= 1 - pi;
  rat sum = ef.value(0) != eg.value(0) ? pr : rat(0);
  gray_walk(f.n(), [&](std::uint64_t point, int b) {
    ef.flip(point, b);
    eg.flip(point, b);
    if (point >> b & 1)
      pr *= p[b] / (1 - p[b]);
    else
      pr *= (1 - p[b]) / p[b];
    if (ef.value(point) != eg.value(point)) sum += pr;
  });
  return sum;
}

std::uint64_t hoeffding_samples(double delta, double confidence) {
  if (!(delta > 0 && delta < 1))
    throw error("out_of_range", "delta must lie in (0,1)");
  if (!(confidence > 0 && confidence < 2))
    throw error("out_of_range", "confidence must lie in (0,2)");
  double v = std::log(2.0 / confidence) / (2.0 * delta * delta);
  // Guard against floating-point round-up at exact integer boundaries.
  double guarded = v - 1e-9 * std::max(1.0, std::fabs(v));
  double c = std::ceil(guarded);
  if (c < 1) c = 1;
  return static_cast<std::uint64_t>(c);
}

McEstimate distance_mc(const BoolFn& f, const BoolFn& g, const InputDistribution& d,
                       double delta, double confidence, Rng& rng) {
  if (d.is_explicit())
    throw error("unsampleable", "mc distance requires a sampleable distribution");
  if (f.n() != g.n() || f.n() != d.n())
    throw error("dim_mismatch", "distance operands disagree on arity");
  std::uint64_t N = hoeffding_samples(delta, confidence);
  std::uint64_t cnt = 0;
  for (std::uint64_t i = 0; i < N; ++i) {
    std::uint64_t x = d.sample(rng);
    if (f.eval(x) != g.eval(x)) ++cnt;
  }
  return {static_cast<double>(cnt) / static_cast<double>(N), N, delta, confidence};
}

// --------------------------------------------------------------------------
// k-wise independence
// --------------------------------------------------------------------------

KwiseReport validate_kwise(const InputDistribution& d, int K, std::uint64_t work_cap) {
  if (!d.is_explicit())
    throw error("bad_distribution", "k-wise validation expects an explicit support");
  int n = d.n();
  if (K < 0 || K > n) throw error("out_of_range", "K must lie in [0, n]");
  if (K == 0) return {true, std::nullopt};

  bigint work = binomial(n, K) * (bigint(1) << K);
  if (work > work_cap) throw error("cap_exceeded", "k-wise validation work cap exceeded");

  rat want(1, bigint(1) << K);
  const auto& support = d.as_explicit().support;

  // Subsets of size K in increasing mask order.
  std::uint64_t mask = (std::uint64_t{1} << K) - 1;
  std::uint64_t limit = std::uint64_t{1} << n;
  while (mask < limit) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    std::vector<rat> marg(std::size_t{1} << K, rat(0));
    for (const auto& [pt, pr] : support) {
      std::uint64_t pattern = 0;
      for (int j = 0; j < K; ++j)
        if (pt >> idx[j] & 1) pattern |= std::uint64_t{1} << j;
      marg[pattern] += pr;
    }
    for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << K); ++pat)
      if (marg[pat] != want)
        return {false, KwiseViolation{mask, pat, marg[pat], want}};
    // Next mask with the same popcount (Gosper's hack).
    std::uint64_t c = mask & -mask;
    std::uint64_t r = mask + c;
    if (r >= limit || c == 0) break;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return {true, std::nullopt};
}

InputDistribution parity_closed_support(int n) {
  if (n < 1 || n > 24) throw error("bad_arity", "parity support arity out of range");
  std::vector<std::pair<std::uint64_t, rat>> s;
  rat pr(1, bigint(1) << (n - 1));
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
    int minus = n - std::popcount(p);
    if (minus % 2 == 0) s.emplace_back(p, pr);
  }
  return InputDistribution::explicit_support(n, std::move(s));
}

InputDistribution pairwise_hadamard_n3() {
  // Rows of the 4x4 Hadamard matrix without its constant column:
  // (+,+,+), (+,-,-), (-,+,-), (-,-,+); each with probability 1/4.
  std::vector<std::pair<std::uint64_t, rat>> s = {
      {0b111, rat(1, 4)}, {0b001, rat(1, 4)}, {0b010, rat(1, 4)}, {0b100, rat(1, 4)}};
  return InputDistribution::explicit_support(3, std::move(s));
}

}  // namespace ltf
