#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "thetalab/errors.hpp"

namespace thetalab::exactnum {

using Int = mpz_class;
using Rat = mpq_class;

Rat rat_from_string(const std::string& s);  // "num" or "num/den"

// two-argument mpq construction does not reduce; this does
inline Rat ratio(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}
std::string rat_to_string(const Rat& q);

// Closed rational interval, lower <= upper.
struct Interval {
  Rat lower;
  Rat upper;

  Interval() : lower(0), upper(0) {}
  Interval(Rat lo, Rat hi);

  Rat width() const { return upper - lower; }
  Interval operator+(const Interval& o) const;
  Interval scaled(const Rat& c) const;
  bool contains(const Interval& o) const;
  bool strictly_positive() const { return lower > 0; }
  bool strictly_negative() const { return upper < 0; }
};

// Formal Q-linear combination of {ln p : p prime} plus a rational
// archimedean term. The currency for Arakelov degrees and log-volumes.
struct LogValue {
  std::map<unsigned long, Rat> terms;  // prime -> coefficient of ln p
  Rat archimedean = Rat(0);

  static LogValue ln_prime(unsigned long p, const Rat& coeff = Rat(1));
  static LogValue arch(const Rat& value);

  bool is_zero() const { return terms.empty() && archimedean == 0; }
  bool operator==(const LogValue& o) const {
    return terms == o.terms && archimedean == o.archimedean;
  }

  void normalize();  // drop zero coefficients
  LogValue& operator+=(const LogValue& o);
  LogValue& operator-=(const LogValue& o);
  LogValue operator+(const LogValue& o) const;
  LogValue operator-(const LogValue& o) const;
  LogValue operator-() const;
  LogValue scaled(const Rat& c) const;

  std::string to_human() const;  // e.g. "-(5/26)*ln(11)"
};

// a + c*b, componentwise, normalized.
LogValue logvalue_combine(const LogValue& a, const Rat& c, const LogValue& b);

// Enclosure of ln p with at least `precision` correct binary digits,
// endpoints obtained by directed rounding.
Interval ln_prime_enclosure(unsigned long p, unsigned precision);

Interval eval_interval(const LogValue& v, unsigned precision);

enum class Order { Less, Equal, Greater, Unresolved };

struct CompareResult {
  Order order;
  unsigned precision_used;  // cap reached when Unresolved
};

constexpr unsigned kDefaultPrecisionCap = 256;

// Formal equality first; single-basis differences compare rationally;
// otherwise interval refinement up to the precision cap.
CompareResult compare(const LogValue& a, const LogValue& b,
                      unsigned precision_cap = kDefaultPrecisionCap);

// Decimal approximation of the interval midpoint, `digits` significant digits.
std::string approx_decimal(const LogValue& v, unsigned digits = 12,
                           unsigned precision = 128);

}  // namespace thetalab::exactnum
