#pragma once

#include "ltf/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

namespace ltf {

/// Default exhaustive-enumeration cap: 2^24 points.
inline constexpr int kDefaultEnumCap = 24;

/// Deterministic randomness source. Every stochastic operation takes one of
/// these; all draws come from a single mt19937_64 stream seeded directly with
/// the user-supplied 64-bit seed, consumed in documented call order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform in [0, m), m > 0, via rejection (no modulo bias).
  std::uint64_t below(std::uint64_t m);

  /// Uniform in [0, m) for arbitrary-precision m > 0, via chunked rejection.
  bigint below_big(const bigint& m);

  /// Fair coin as +-1.
  int pm1() { return (next() & 1) ? 1 : -1; }

 private:
  std::mt19937_64 gen_;
};

// ---------------------------------------------------------------------------
// Point encoding: a point of {-1,+1}^n is the integer whose binary digit i
// (little-endian) encodes x_{i+1}: 0 -> -1, 1 -> +1.
// ---------------------------------------------------------------------------

inline int coord(std::uint64_t point, int i) { return (point >> i) & 1 ? 1 : -1; }

std::vector<int> decode_point(std::uint64_t point, int n);
std::uint64_t encode_point(const std::vector<int>& x);

/// Packed evaluation of a Boolean function on all 2^n hypercube points.
class TruthTable {
 public:
  TruthTable() : n_(0) {}
  TruthTable(int n, bool fill_with_plus_one = false);

  int n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  /// f at the point with the given code, as +-1.
  int get(std::uint64_t point) const {
    return (words_[point >> 6] >> (point & 63)) & 1 ? 1 : -1;
  }
  void set(std::uint64_t point, int value);

  std::uint64_t count_positive() const;

  bool operator==(const TruthTable& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }

  /// Table of x -> -f(-x); equals f iff f is odd.
  TruthTable negation_mirror() const;
  bool is_odd() const { return *this == negation_mirror(); }

  /// True iff the output never changes when variable i flips.
  bool ignores(int i) const;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

/// Threshold representation sign(w.x - theta) with exact rational weights.
/// Tie rule: sign(0) = +1, fixed project-wide.
struct Ltf {
  std::vector<rat> weights;
  rat theta = 0;

  int n() const { return static_cast<int>(weights.size()); }

  /// w.x - theta at an encoded point.
  rat affine_value(std::uint64_t point) const;
  rat affine_value(const std::vector<int>& x) const;

  int eval(std::uint64_t point) const { return affine_value(point) >= 0 ? 1 : -1; }
  int eval(const std::vector<int>& x) const { return affine_value(x) >= 0 ? 1 : -1; }

  rat norm2_squared() const;
  rat l1_norm() const;
};

Ltf majority(int n);
Ltf dictator(int n, int i);

/// All 2^n outputs of f, enumerated incrementally in Gray-code order
/// (one rational update per point). Requires n <= cap.
TruthTable truth_table(const Ltf& f, int cap = kDefaultEnumCap);

/// Points where w.x - theta = 0 exactly: the tie rule decided the output
/// there. Diagnostic for degenerate representations.
std::vector<std::uint64_t> zero_margin_points(const Ltf& f, int cap = kDefaultEnumCap);

/// Variable restriction: fixed variable index (0-based) -> +-1.
struct Restriction {
  std::map<int, int> fixed;
};

/// Folds fixed variables into the threshold: the result is an Ltf on the free
/// variables (in their original order) with threshold theta - sum w_i rho_i.
Ltf restrict_ltf(const Ltf& f, const Restriction& rho);

/// Restriction of a table: free variables keep their positions.
TruthTable restrict_table(const TruthTable& t, const Restriction& rho);

// ---------------------------------------------------------------------------
// Input distributions
// ---------------------------------------------------------------------------

struct UniformDist {
  int n;
};
struct ProductDist {
  std::vector<rat> p;  // p[i] = Pr[x_{i+1} = +1], each in (0,1)
};
struct ExplicitDist {
  int n;
  std::vector<std::pair<std::uint64_t, rat>> support;  // (point, probability)
};

class InputDistribution {
 public:
  InputDistribution() : v_(UniformDist{0}) {}
  explicit InputDistribution(UniformDist u) : v_(u) {}
  explicit InputDistribution(ProductDist p);
  explicit InputDistribution(ExplicitDist e);

  static InputDistribution uniform(int n) { return InputDistribution(UniformDist{n}); }
  static InputDistribution product(std::vector<rat> p);
  static InputDistribution explicit_support(int n, std::vector<std::pair<std::uint64_t, rat>> s);

  int n() const;
  bool is_uniform() const { return std::holds_alternative<UniformDist>(v_); }
  bool is_product() const { return std::holds_alternative<ProductDist>(v_); }
  bool is_explicit() const { return std::holds_alternative<ExplicitDist>(v_); }

  const ProductDist& as_product() const { return std::get<ProductDist>(v_); }
  const ExplicitDist& as_explicit() const { return std::get<ExplicitDist>(v_); }

  /// Exact probability of a single point.
  rat prob(std::uint64_t point) const;

  /// min over j of min(p_j, 1-p_j); 1/2 for uniform.
  rat bias() const;

  /// Draws a point; rejects Explicit (exact supports are never approximated).
  std::uint64_t sample(Rng& rng) const;

  /// Streams (point, probability) over the whole domain (uniform/product) or
  /// the support (explicit). Uniform/product visit points in Gray-code order
  /// (consecutive points differ in one bit; first point is 0), so callers can
  /// maintain running sums incrementally. Explicit streams its sorted support.
  void for_each(const std::function<void(std::uint64_t, const rat&)>& fn, int cap) const;

 private:
  std::variant<UniformDist, ProductDist, ExplicitDist> v_;
};

// ---------------------------------------------------------------------------
// Distance
// ---------------------------------------------------------------------------

/// A Boolean function given either as a table or as a threshold
/// representation; evaluation dispatches without materializing tables.
class BoolFn {
 public:
  BoolFn(const TruthTable& t) : n_(t.n()), table_(&t) {}
  BoolFn(const Ltf& f) : n_(f.n()), ltf_(&f) {}

  int n() const { return n_; }
  int eval(std::uint64_t point) const {
    return table_ ? table_->get(point) : ltf_->eval(point);
  }
  const Ltf* as_ltf() const { return ltf_; }

 private:
  int n_;
  const TruthTable* table_ = nullptr;
  const Ltf* ltf_ = nullptr;
};

/// Exact Pr_D[f != g] as a rational. Uniform/product distributions stream all
/// 2^n points (n <= cap); explicit distributions sum over the support only.
rat distance_exact(const BoolFn& f, const BoolFn& g, const InputDistribution& d,
                   int cap = kDefaultEnumCap);

struct McEstimate {
  double value;
  std::uint64_t samples;
  double delta;
  double confidence;
};

/// Monte-Carlo distance with N = hoeffding_samples(delta, confidence) draws;
/// |estimate - truth| <= delta with probability >= 1 - confidence.
McEstimate distance_mc(const BoolFn& f, const BoolFn& g, const InputDistribution& d,
                       double delta, double confidence, Rng& rng);

/// N = ceil(ln(2/confidence) / (2 delta^2)). delta in (0,1); the formula's
/// natural domain for confidence is (0,2) and that is what is enforced.
std::uint64_t hoeffding_samples(double delta, double confidence);

// ---------------------------------------------------------------------------
// k-wise independence validation
// ---------------------------------------------------------------------------

struct KwiseViolation {
  std::uint64_t subset_mask;
  std::uint64_t pattern;  // encoded on the subset's bits
  rat got;
  rat want;
};

struct KwiseReport {
  bool ok;
  std::optional<KwiseViolation> violation;
};

/// True iff every marginal on <= K coordinates assigns exactly 2^{-|S|} to
/// each pattern. Checks all size-K subsets (smaller marginals follow).
KwiseReport validate_kwise(const InputDistribution& d, int K,
                           std::uint64_t work_cap = std::uint64_t{1} << 28);

/// Uniform distribution on {x : x_1 x_2 ... x_n = +1}; (n-1)-wise independent.
InputDistribution parity_closed_support(int n);

/// The 4-point pairwise-independent support on n=3 derived from the rows of a
/// 4x4 Hadamard matrix (drop the constant column).
InputDistribution pairwise_hadamard_n3();

}  // namespace ltf
