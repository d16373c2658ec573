#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltf {

using rat = boost::multiprecision::mpq_rational;
using bigint = boost::multiprecision::mpz_int;

/// Domain error carrying a stable machine-readable code for the CLI error JSON.
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline rat make_rat(long num, long den = 1) {
  if (den == 0) throw error("zero_denominator", "rational with zero denominator");
  return rat(num, den);
}

/// Parses "num/den" or "num" (arbitrary precision, optional leading '-').
rat parse_rat(const std::string& s);

/// Renders as "num/den", or "num" when the denominator is 1.
std::string format_rat(const rat& v);

inline bigint rat_num(const rat& v) { return boost::multiprecision::numerator(v); }
inline bigint rat_den(const rat& v) { return boost::multiprecision::denominator(v); }

inline rat rat_abs(const rat& v) { return v < 0 ? rat(-v) : v; }

inline double to_double(const rat& v) { return v.convert_to<double>(); }

/// b^e for rational b and nonnegative integer e.
rat rat_pow(const rat& base, unsigned long e);

/// Compares |a| vs |b| without square roots: works on the values themselves.
inline int cmp_abs(const rat& a, const rat& b) {
  rat aa = rat_abs(a), ab = rat_abs(b);
  if (aa < ab) return -1;
  if (aa > ab) return 1;
  return 0;
}

/// Nearest integer to v with ties to even.
bigint round_ties_even(const rat& v);

/// Smallest integer >= v.
bigint ceil_rat(const rat& v);

/// Largest integer <= v.
bigint floor_rat(const rat& v);

/// Largest dyadic rational k/2^bits <= v; used to fix irrational-valued
/// parameters (derived from logs/roots) as exact deterministic rationals.
rat dyadic_floor(double v, int bits = 32);

/// n choose k as an exact integer.
bigint binomial(unsigned n, unsigned k);

}  // namespace ltf
