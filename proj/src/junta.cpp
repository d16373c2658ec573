#include "ltf/junta.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ltf {
namespace {

[[noreturn]] void internal_error(const std::string& what) {
  throw error("internal", "internal error: " + what);
}

rat vec_l1(const std::vector<rat>& u) {
  rat s = 0;
  for (const auto& v : u) s += rat_abs(v);
  return s;
}

rat vec_l2_sq(const std::vector<rat>& u) {
  rat s = 0;
  for (const auto& v : u) s += v * v;
  return s;
}

constexpr std::uint64_t kDrawCap = std::uint64_t{1} << 30;

std::uint64_t draw_count_impl(const rat& l1, const rat& l2_sq, const rat& tau) {
  rat ratio = l1 * l1 / l2_sq;
  double td = to_double(tau);
  double raw = 2.0 * to_double(ratio) * std::log(2.0 / td) / (td * td);
  double up = std::ceil(raw);
  if (!(up >= 1.0)) return 1;
  if (up >= static_cast<double>(kDrawCap))
    throw error("cap", "draw count exceeds sampling cap");
  return static_cast<std::uint64_t>(up);
}

/// Exact rational Ltf realizing sign(A(x) + d*B(x)) with d = sqrt(d_sq) > 0,
/// A(x) = head.x - theta, B(x) = tail.x. The sign at every point is decided
/// exactly through d_sq; a rational stand-in for d on the same side of every
/// critical ratio then reproduces the table with rational weights.
struct AttachResult {
  Ltf fn;
  TruthTable table;
  rat d_used;
};

AttachResult attach_tail(const std::vector<rat>& head, const rat& theta,
                         const std::vector<rat>& tail, const rat& d_sq, int cap) {
  int n = static_cast<int>(head.size());
  if (static_cast<int>(tail.size()) != n) internal_error("attach_tail arity");
  if (n > cap) throw error("cap", "enumeration over 2^n exceeds cap");
  if (d_sq <= 0) internal_error("attach_tail scale");

  TruthTable decided(n);
  rat a = -theta, b = 0;
  for (int i = 0; i < n; ++i) {
    a -= head[i];
    b -= tail[i];
  }

  rat lo = 0;
  std::optional<rat> hi;
  std::optional<rat> exact;
  std::uint64_t cur = 0;
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t idx = 0;; ++idx) {
    int s;
    if (b == 0) {
      s = a >= 0 ? 1 : -1;
    } else {
      rat r = -a / b;
      if (r <= 0) {
        // d > 0 >= r, so the comparison with this ratio is settled for every
        // positive stand-in: b > 0 gives d >= r (sign +), b < 0 gives d > r
        // and a negative total.
        s = b > 0 ? 1 : -1;
      } else {
        rat r_sq = r * r;
        if (d_sq > r_sq) {
          s = b > 0 ? 1 : -1;  // d past the boundary: tail term dominates
          if (lo < r) lo = r;
        } else if (d_sq < r_sq) {
          s = b > 0 ? -1 : 1;  // d short of the boundary: head term dominates
          if (!hi || r < *hi) hi = r;
        } else {
          s = 1;  // A + d*B = 0 exactly: tie goes positive
          exact = r;
        }
      }
    }
    decided.set(cur, s);
    if (idx + 1 == total) break;
    std::uint64_t nxt = idx + 1;
    int j = std::countr_zero(nxt);
    std::uint64_t bit = std::uint64_t{1} << j;
    cur ^= bit;
    int dir = (cur & bit) ? 2 : -2;
    a += dir * head[j];
    b += dir * tail[j];
  }

  rat d_used;
  if (exact) {
    d_used = *exact;
  } else if (hi) {
    d_used = (lo + *hi) / 2;
  } else {
    d_used = lo + 1;
  }

  AttachResult out;
  out.d_used = d_used;
  out.fn.weights.resize(n);
  for (int i = 0; i < n; ++i) out.fn.weights[i] = head[i] + d_used * tail[i];
  out.fn.theta = theta;
  out.table = decided;
  if (truth_table(out.fn, cap) != decided) internal_error("tail attachment sign drift");
  return out;
}

std::vector<rat> singleton_coeffs(const Spectrum& s) {
  std::vector<rat> c(s.n);
  for (int i = 0; i < s.n; ++i) c[i] = s.coeff(std::uint64_t{1} << i);
  return c;
}

/// The optimal junta on `head` as an Ltf sharing f's head weights: conditional
/// expectations are monotone in the head affine value, so one threshold cut
/// reproduces the conditional-sign table.
Ltf head_junta_ltf(const Ltf& f, const TruthTable& t, const std::vector<int>& head,
                   const TruthTable& junta_table) {
  int n = f.n();
  std::vector<bool> in_head(n, false);
  for (int i : head) in_head[i] = true;

  // conditional sum of f per head assignment, keyed by the head affine value.
  std::map<rat, std::pair<long long, int>> by_value;  // value -> (sum, out)
  std::uint64_t total = std::uint64_t{1} << n;
  std::map<std::uint64_t, long long> coset_sum;
  for (std::uint64_t x = 0; x < total; ++x) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < head.size(); ++j)
      if ((x >> head[j]) & 1) key |= std::uint64_t{1} << j;
    coset_sum[key] += t.get(x);
  }
  for (const auto& [key, sum] : coset_sum) {
    rat v = -f.theta;
    for (std::size_t j = 0; j < head.size(); ++j)
      v += ((key >> j) & 1 ? f.weights[head[j]] : -f.weights[head[j]]);
    auto [it, fresh] = by_value.try_emplace(v, std::make_pair(sum, sum >= 0 ? 1 : -1));
    if (!fresh && it->second.first != sum) internal_error("head coset sum mismatch");
  }

  std::optional<rat> last_neg, first_pos;
  bool seen_pos = false;
  for (const auto& [v, rec] : by_value) {
    if (rec.second >= 0) {
      if (!first_pos) first_pos = v;
      seen_pos = true;
    } else {
      if (seen_pos) internal_error("conditional sign not monotone");
      last_neg = v;
    }
  }

  Ltf g;
  g.weights.assign(n, rat(0));
  if (!first_pos) {
    g.theta = 1;  // constant -1
  } else if (!last_neg) {
    g.theta = -1;  // constant +1
  } else {
    for (int i : head) g.weights[i] = f.weights[i];
    rat cut = (*last_neg + *first_pos) / 2;
    g.theta = f.theta + cut;
  }
  if (truth_table(g, n) != junta_table) internal_error("head junta cut drift");
  return g;
}

std::vector<int> table_relevant(const TruthTable& t) {
  std::vector<int> out;
  for (int i = 0; i < t.n(); ++i)
    if (!t.ignores(i)) out.push_back(i);
  return out;
}

}  // namespace

std::uint64_t sample_draw_count(const std::vector<rat>& u, const rat& tau) {
  rat l2 = vec_l2_sq(u);
  if (l2 == 0) throw error("zero_vector", "cannot sample from the zero vector");
  return draw_count_impl(vec_l1(u), l2, tau);
}

SampledLinearForm sample_linear_form(const std::vector<rat>& u, const rat& tau,
                                     Rng& rng,
                                     std::optional<std::uint64_t> n_override) {
  if (tau <= 0 || tau >= 1) throw error("bad_tau", "tau must lie in (0,1)");
  rat l2 = vec_l2_sq(u);
  if (l2 == 0) throw error("zero_vector", "cannot sample from the zero vector");
  rat tau_sq_scaled = tau * tau * l2;
  for (const auto& v : u)
    if (v * v > tau_sq_scaled)
      throw error("non_regular", "a coordinate exceeds the tau-regularity bound");

  SampledLinearForm form;
  form.source = u;
  form.l1 = vec_l1(u);
  form.draws = n_override ? *n_override : draw_count_impl(form.l1, l2, tau);
  if (form.draws > kDrawCap) throw error("cap", "draw count exceeds sampling cap");

  // Exact index distribution |u_i|/||u||_1: clear denominators and draw an
  // integer below the cleared total.
  bigint denom_lcm = 1;
  for (const auto& v : u)
    denom_lcm = boost::multiprecision::lcm(denom_lcm, rat_den(v));
  std::vector<int> support;
  std::vector<bigint> prefix;
  bigint running = 0;
  for (int i = 0; i < static_cast<int>(u.size()); ++i) {
    if (u[i] == 0) continue;
    rat scaled = rat_abs(u[i]) * rat(denom_lcm);
    if (rat_den(scaled) != 1) internal_error("denominator clearing");
    running += rat_num(scaled);
    support.push_back(i);
    prefix.push_back(running);
  }

  for (std::uint64_t d = 0; d < form.draws; ++d) {
    bigint x = rng.below_big(running);
    auto it = std::upper_bound(prefix.begin(), prefix.end(), x);
    int idx = support[static_cast<std::size_t>(it - prefix.begin())];
    form.counts[idx] += u[idx] > 0 ? 1 : -1;
  }
  return form;
}

long long sampled_value(const SampledLinearForm& form, std::uint64_t z) {
  long long s = 0;
  for (const auto& [i, c] : form.counts) s += c * coord(z, i);
  return s;
}

rat sampled_expectation(const SampledLinearForm& form, std::uint64_t z) {
  rat dot = 0;
  for (int i = 0; i < static_cast<int>(form.source.size()); ++i)
    dot += form.source[i] * coord(z, i);
  return rat(form.draws) / form.l1 * dot;
}

Ltf build_g_theta(const SampledLinearForm& form, const rat& theta) {
  if (form.draws == 0 || form.counts.empty())
    throw error("degenerate", "sampled form has no draws");
  Ltf g;
  g.weights.assign(form.source.size(), rat(0));
  for (const auto& [i, c] : form.counts)
    g.weights[i] = form.l1 * c / rat(form.draws);
  g.theta = -theta;
  return g;
}

HeadTailSplit head_tail_split(const Ltf& f, const rat& kappa_sq, int cap) {
  TruthTable t = truth_table(f, cap);
  Spectrum s = wht(t, cap);
  std::vector<rat> deg1 = singleton_coeffs(s);

  HeadTailSplit split;
  split.kappa_sq = kappa_sq;
  for (int i = 0; i < f.n(); ++i) {
    if (rat_abs(deg1[i]) >= kappa_sq)
      split.head.push_back(i);
    else
      split.tail.push_back(i);
  }

  rat max_sq = 0;
  for (int i : split.tail) {
    rat c_sq = deg1[i] * deg1[i];
    split.sigma_t_sq += c_sq;
    max_sq = std::max(max_sq, c_sq);
  }

  std::vector<rat> head_w(f.n(), rat(0));
  for (int i : split.head) head_w[i] = f.weights[i];

  if (split.sigma_t_sq == 0) {
    split.which_case = 1;
    split.tail_regularity_sq = 0;
    split.d_sq = 0;
    split.f_prime = Ltf{head_w, f.theta};
    return split;
  }

  split.which_case = 2;
  split.tail_regularity_sq = max_sq / split.sigma_t_sq;
  rat tail_w2 = 0;
  for (int i : split.tail) tail_w2 += f.weights[i] * f.weights[i];
  if (tail_w2 == 0) internal_error("live tail spectrum over zero weights");
  split.d_sq = tail_w2 / split.sigma_t_sq;

  std::vector<rat> tail_c(f.n(), rat(0));
  for (int i : split.tail) tail_c[i] = deg1[i];
  split.f_prime = attach_tail(head_w, f.theta, tail_c, split.d_sq, cap).fn;
  return split;
}

BestJunta best_junta_on_set(const TruthTable& t, const std::vector<int>& vars) {
  int n = t.n();
  std::set<int> seen;
  for (int i : vars) {
    if (i < 0 || i >= n) throw error("bad_index", "junta variable out of range");
    if (!seen.insert(i).second) throw error("bad_index", "junta variable repeated");
  }
  std::vector<int> idx(vars);
  std::sort(idx.begin(), idx.end());

  std::uint64_t total = std::uint64_t{1} << n;
  std::vector<long long> sums(std::uint64_t{1} << idx.size(), 0);
  for (std::uint64_t x = 0; x < total; ++x) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if ((x >> idx[j]) & 1) key |= std::uint64_t{1} << j;
    sums[key] += t.get(x);
  }

  long long coset = static_cast<long long>(total >> idx.size());
  long long disagreements = 0;
  std::vector<int> out(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) {
    out[k] = sums[k] >= 0 ? 1 : -1;
    disagreements += (coset - out[k] * sums[k]) / 2;
  }

  BestJunta best;
  best.table = TruthTable(n);
  for (std::uint64_t x = 0; x < total; ++x) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if ((x >> idx[j]) & 1) key |= std::uint64_t{1} << j;
    best.table.set(x, out[key]);
  }
  best.dist = rat(bigint(disagreements), bigint(total));
  return best;
}

JuntaApproximator theorem1_pipeline(const Ltf& f, const rat& eps, Rng& rng,
                                    std::optional<rat> kappa_sq_override,
                                    int budget, int cap) {
  if (eps <= 0) throw error("bad_eps", "eps must be positive");
  int n = f.n();
  TruthTable t = truth_table(f, cap);
  Spectrum s = wht(t, cap);
  std::vector<rat> deg1 = singleton_coeffs(s);
  InputDistribution uni = InputDistribution::uniform(n);

  JuntaApproximator out;

  // A function within eps of a constant needs no variables at all.
  rat mean = s.coeff(0);
  if (rat_abs(mean) >= 1 - eps) {
    out.g.weights.assign(n, rat(0));
    out.g.theta = mean >= 0 ? rat(-1) : rat(1);
    out.measured_dist = distance_exact(BoolFn(t), BoolFn(out.g), uni, cap);
    out.met_target = out.measured_dist <= eps;
    out.case_taken = 1;
    return out;
  }

  // Default split threshold: the largest degree-1 level whose tail is
  // regular at the eps/5 target (sampling error 5*tau then lands at eps).
  rat target_sq = eps * eps / 25;
  rat kappa_sq;
  if (kappa_sq_override) {
    kappa_sq = *kappa_sq_override;
  } else {
    std::set<rat, std::greater<rat>> levels;
    levels.insert(2);  // above every |fhat(i)|: the empty head
    for (const auto& c : deg1)
      if (c != 0) levels.insert(rat_abs(c));
    for (const auto& level : levels) {
      kappa_sq = level;
      rat sigma = 0, max_sq = 0;
      for (int i = 0; i < n; ++i) {
        if (rat_abs(deg1[i]) >= level) continue;
        rat c_sq = deg1[i] * deg1[i];
        sigma += c_sq;
        max_sq = std::max(max_sq, c_sq);
      }
      if (sigma == 0 || max_sq <= target_sq * sigma) break;
    }
  }

  HeadTailSplit split = head_tail_split(f, kappa_sq, cap);
  out.kappa_sq = kappa_sq;
  out.head_size = split.head.size();

  if (split.sigma_t_sq > 0) {
    rat tail_l1 = 0, total_inf = 0;
    for (int i : split.tail) tail_l1 += rat_abs(deg1[i]);
    for (const auto& c : deg1) total_inf += rat_abs(c);
    out.l1_sq = tail_l1 * tail_l1 / split.sigma_t_sq;
    out.l1_bound_sq = total_inf * total_inf / split.sigma_t_sq;
    out.l1_within_bound = out.l1_sq <= out.l1_bound_sq;
  }

  // Case (i) candidate: the optimal junta on the head, realized as a
  // threshold cut over f's own head weights.
  BestJunta head_best = best_junta_on_set(t, split.head);
  Ltf head_g = head_junta_ltf(f, t, split.head, head_best.table);
  rat head_dist = distance_exact(BoolFn(t), BoolFn(head_g), uni, cap);
  if (head_dist != head_best.dist) internal_error("head junta distance drift");

  // Case (ii) candidate: replace the tail with sampled linear forms until one
  // lands within eps or the budget runs out.
  std::optional<Ltf> draw_g;
  rat draw_dist;
  if (split.which_case == 2 && split.tail_regularity_sq < 1) {
    rat tau = eps / 5;
    if (tau * tau < split.tail_regularity_sq) {
      double rd = std::sqrt(to_double(split.tail_regularity_sq));
      tau = rat(static_cast<long long>(std::ceil(rd * (1 << 24))) + 1, 1 << 24);
      while (tau * tau < split.tail_regularity_sq) tau += rat(1, 1 << 16);
    }
    if (tau < 1) {
      std::vector<rat> u(n, rat(0));
      for (int i : split.tail) u[i] = deg1[i];
      std::vector<rat> head_w(n, rat(0));
      for (int i : split.head) head_w[i] = f.weights[i];

      for (int d = 0; d < budget; ++d) {
        SampledLinearForm form = sample_linear_form(u, tau, rng);
        out.draw_count = form.draws;
        ++out.draws_used;
        std::vector<rat> tail_c(n, rat(0));
        for (const auto& [i, c] : form.counts)
          tail_c[i] = form.l1 * c / rat(form.draws);
        AttachResult attached =
            attach_tail(head_w, f.theta, tail_c, split.d_sq, cap);
        rat dist = distance_exact(BoolFn(t), BoolFn(attached.fn), uni, cap);
        if (!draw_g || dist < draw_dist) {
          draw_g = attached.fn;
          draw_dist = dist;
        }
        if (dist <= eps) break;
      }
    }
  }

  if (draw_g && draw_dist < head_dist) {
    out.g = *draw_g;
    out.measured_dist = draw_dist;
    out.case_taken = 2;
  } else {
    out.g = head_g;
    out.measured_dist = head_dist;
    out.case_taken = 1;
  }
  out.relevant = table_relevant(truth_table(out.g, cap));
  out.met_target = out.measured_dist <= eps;
  out.shortfall = !out.met_target;
  return out;
}

Ltf prop14_witness(int a, int b, int cap) {
  if (a < 1 || b < 1) throw error("bad_arity", "head and tail must be nonempty");
  if (b % 2 == 0) throw error("bad_arity", "tail width must be odd");
  if (a + b > cap) throw error("cap", "witness arity exceeds cap");
  Ltf f;
  f.weights.assign(a, rat(1));
  f.weights.insert(f.weights.end(), b, rat(1, 2 * b));
  f.theta = a;
  return f;
}

bool prop17_check(const TruthTable& t, int cap) {
  Spectrum s = wht(t, cap);
  int degree = spectrum_stats(s).degree;
  int relevant = 0;
  for (int i = 0; i < t.n(); ++i)
    if (!t.ignores(i)) ++relevant;
  return relevant <= 2 * degree - 1;
}

}  // namespace ltf
