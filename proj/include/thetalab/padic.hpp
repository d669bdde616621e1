#pragma once

#include <vector>

#include "thetalab/exactnum.hpp"

namespace thetalab::padic {

using exactnum::Int;

// Truncated p-adic integer: a residue mod p^N with tracked precision.
class PadicInt {
public:
  PadicInt(unsigned long prime, unsigned precision, Int residue);

  unsigned long prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  const Int& residue() const { return residue_; }

  bool is_zero() const { return residue_ == 0; }
  // valuation of the residue, capped at the precision
  unsigned valuation() const;

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  bool operator==(const PadicInt& o) const;

  // multiplicative inverse; requires p not dividing the residue
  PadicInt unit_inverse() const;
  PadicInt pow(unsigned long e) const;

  // exact division by p^k; requires valuation >= k, loses k digits of precision
  PadicInt shift_down(unsigned k) const;
  // truncate to a lower precision
  PadicInt truncated(unsigned precision) const;

  static PadicInt from_rational(unsigned long prime, unsigned precision,
                                const exactnum::Rat& q);

private:
  unsigned long prime_;
  unsigned precision_;
  Int residue_;  // reduced into [0, p^precision)
  Int modulus_;

  void check_same(const PadicInt& o) const;
};

Int pow_ui(unsigned long base, unsigned exp);

// Base-p digits, least significant first; count <= precision.
std::vector<unsigned> padic_digits(const PadicInt& x, unsigned count);

std::string digits_to_string(const std::vector<unsigned>& digits);

}  // namespace thetalab::padic
