#pragma once

#include <vector>

#include "thetalab/padic.hpp"

namespace thetalab::series {

using exactnum::Int;
using padic::PadicInt;

// Truncated integer Laurent series: coefficients for exponents
// [lead_exponent, order), truncation explicit.
struct IntSeries {
  long lead_exponent = 0;
  std::vector<Int> coeffs;

  long order() const { return lead_exponent + (long)coeffs.size(); }
  Int coefficient(long e) const;
  void set_coefficient(long e, Int c);
  void trim_leading_zeros();

  static IntSeries zero(long order);
  static IntSeries monomial(long e, Int c, long order);
};

IntSeries series_mul(const IntSeries& a, const IntSeries& b);

// requires leading coefficient +-1
IntSeries series_invert(const IntSeries& a);

// substitute b into a; requires b.lead_exponent >= 1
IntSeries series_compose(const IntSeries& a, const IntSeries& b);

// requires a = q + c2 q^2 + ...; returns b with a(b(t)) = t + O(t^order)
IntSeries series_reversion(const IntSeries& a);

// Horner evaluation; result precision certified from the truncation-tail
// valuation bound order * val(x). Requires lead_exponent >= 0.
PadicInt evaluate_at_padic(const IntSeries& a, const PadicInt& x);

}  // namespace thetalab::series
