#include "thetalab/series.hpp"

#include <algorithm>

namespace thetalab::series {

Int IntSeries::coefficient(long e) const {
  if (e < lead_exponent || e >= order()) return Int(0);
  return coeffs[(size_t)(e - lead_exponent)];
}

void IntSeries::set_coefficient(long e, Int c) {
  if (e < lead_exponent || e >= order())
    throw computation_error("set_coefficient out of range");
  coeffs[(size_t)(e - lead_exponent)] = std::move(c);
}

void IntSeries::trim_leading_zeros() {
  size_t k = 0;
  while (k < coeffs.size() && coeffs[k] == 0) ++k;
  if (k > 0) {
    coeffs.erase(coeffs.begin(), coeffs.begin() + (long)k);
    lead_exponent += (long)k;
  }
}

IntSeries IntSeries::zero(long order) {
  IntSeries s;
  s.lead_exponent = order;
  return s;
}

IntSeries IntSeries::monomial(long e, Int c, long order) {
  IntSeries s;
  s.lead_exponent = e;
  if (order <= e) throw computation_error("monomial order <= exponent");
  s.coeffs.assign((size_t)(order - e), Int(0));
  s.coeffs[0] = std::move(c);
  return s;
}

IntSeries series_mul(const IntSeries& a, const IntSeries& b) {
  // truncation: the product is valid to min(la + ob, lb + oa)
  long lead = a.lead_exponent + b.lead_exponent;
  long ord = std::min(a.lead_exponent + b.order(), b.lead_exponent + a.order());
  IntSeries r;
  r.lead_exponent = lead;
  if (ord <= lead) {
    r.lead_exponent = ord;
    return r;
  }
  r.coeffs.assign((size_t)(ord - lead), Int(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    long ea = a.lead_exponent + (long)i;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      long e = ea + b.lead_exponent + (long)j;
      if (e >= ord) break;
      if (b.coeffs[j] == 0) continue;
      r.coeffs[(size_t)(e - lead)] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return r;
}

IntSeries series_invert(const IntSeries& a) {
  if (a.coeffs.empty() || (a.coeffs[0] != 1 && a.coeffs[0] != -1))
    throw computation_error(
        "NonUnitLeadingCoefficient: series_invert needs leading coefficient +-1");
  size_t n = a.coeffs.size();
  IntSeries r;
  r.lead_exponent = -a.lead_exponent;
  r.coeffs.assign(n, Int(0));
  Int u = a.coeffs[0];  // +-1, its own inverse
  r.coeffs[0] = u;
  for (size_t k = 1; k < n; ++k) {
    Int acc(0);
    for (size_t j = 1; j <= k && j < a.coeffs.size(); ++j)
      acc += a.coeffs[j] * r.coeffs[k - j];
    r.coeffs[k] = -u * acc;
  }
  return r;
}

IntSeries series_compose(const IntSeries& a, const IntSeries& b) {
  if (a.lead_exponent < 0)
    throw computation_error("series_compose: Laurent outer series unsupported");
  if (b.lead_exponent < 1)
    throw computation_error("series_compose: inner series needs positive lead");
  long ord = std::min((long)b.order(), a.order() * std::max(b.lead_exponent, 1L));
  IntSeries acc = IntSeries::zero(ord);
  // Horner over the outer coefficients, down to exponent 0 so the leading
  // power of b is fully applied
  for (long e = a.order() - 1; e >= 0; --e) {
    acc = series_mul(acc, b);
    // after multiplying, the series may have shrunk its window; re-extend
    if (acc.order() < ord && acc.coeffs.empty()) acc = IntSeries::zero(ord);
    Int c = a.coefficient(e);
    if (c != 0) {
      if (acc.coeffs.empty() || acc.lead_exponent > 0) {
        // ensure slot for exponent 0
        IntSeries widened;
        widened.lead_exponent = 0;
        widened.coeffs.assign((size_t)std::max(acc.order(), 1L), Int(0));
        for (size_t i = 0; i < acc.coeffs.size(); ++i)
          widened.coeffs[(size_t)(acc.lead_exponent + (long)i)] = acc.coeffs[i];
        acc = std::move(widened);
      }
      acc.coeffs[0] += c;
    }
  }
  return acc;
}

IntSeries series_reversion(const IntSeries& a) {
  if (a.lead_exponent != 1 || a.coeffs.empty() || a.coeffs[0] != 1)
    throw computation_error(
        "BadLeadingTerm: series_reversion needs a = q + c2 q^2 + ...");
  long ord = a.order();
  // successive substitution: b <- t - (a(b) - b) gains one order per pass
  IntSeries b = IntSeries::monomial(1, Int(1), ord);
  for (long pass = 0; pass < ord; ++pass) {
    IntSeries ab = series_compose(a, b);
    // correction = a(b) - t
    IntSeries corr = ab;
    if (corr.coeffs.empty() || corr.lead_exponent > 1) {
      IntSeries widened;
      widened.lead_exponent = 1;
      widened.coeffs.assign((size_t)std::max(corr.order() - 1, 1L), Int(0));
      for (size_t i = 0; i < corr.coeffs.size(); ++i)
        widened.coeffs[(size_t)(corr.lead_exponent - 1 + (long)i)] = corr.coeffs[i];
      corr = std::move(widened);
    }
    corr.coeffs[0] -= 1;
    bool done = true;
    for (const auto& c : corr.coeffs)
      if (c != 0) done = false;
    if (done) break;
    // b <- b - corr, aligned to window [1, ord)
    IntSeries nb;
    nb.lead_exponent = 1;
    nb.coeffs.assign((size_t)(ord - 1), Int(0));
    for (long e = 1; e < ord; ++e)
      nb.coeffs[(size_t)(e - 1)] = b.coefficient(e) - corr.coefficient(e);
    b = std::move(nb);
  }
  return b;
}

PadicInt evaluate_at_padic(const IntSeries& a, const PadicInt& x) {
  if (a.lead_exponent < 0)
    throw computation_error("evaluate_at_padic: negative lead exponent");
  unsigned val = x.valuation();
  unsigned long tail_order = (unsigned long)a.order();
  unsigned long certified =
      (val == 0) ? 0 : std::min<unsigned long>(x.precision(), tail_order * val);
  if (x.is_zero()) certified = x.precision();
  if (certified == 0)
    throw computation_error(
        "InsufficientOrder: truncation tail cannot certify any precision");
  PadicInt acc(x.prime(), x.precision(), Int(0));
  for (long e = a.order() - 1; e >= 0; --e) {
    acc = acc * x;
    Int c = a.coefficient(e);
    if (c != 0) acc = acc + PadicInt(x.prime(), x.precision(), c);
  }
  return acc.truncated((unsigned)certified);
}

}  // namespace thetalab::series
