#include "thetalab/tate.hpp"

#include <numeric>

namespace thetalab::tate {

namespace {

Int sigma_power(long n, unsigned k) {
  Int s(0);
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    Int dk, ck;
    mpz_ui_pow_ui(dk.get_mpz_t(), (unsigned long)d, k);
    s += dk;
    long c = n / d;
    if (c != d) {
      mpz_ui_pow_ui(ck.get_mpz_t(), (unsigned long)c, k);
      s += ck;
    }
  }
  return s;
}

// Delta/q = prod (1-q^n)^24, as a series with exponents [0, order).
IntSeries delta_over_q(long order) {
  IntSeries acc = IntSeries::monomial(0, Int(1), order);
  for (long n = 1; n < order; ++n) {
    IntSeries f = IntSeries::monomial(0, Int(1), order);
    f.set_coefficient(n, Int(-1));
    for (int k = 0; k < 24; ++k) acc = series_mul(acc, f);
  }
  return acc;
}

IntSeries eisenstein_e4(long order) {
  IntSeries e = IntSeries::monomial(0, Int(1), order);
  for (long n = 1; n < order; ++n)
    e.set_coefficient(n, Int(240) * sigma_power(n, 3));
  return e;
}

}  // namespace

IntSeries j_series(long order) {
  if (order < 2) throw computation_error("j_series: order must be >= 2");
  // j = E4^3 / Delta; work with Delta/q (unit lead) and shift by q^{-1}
  long n = order + 1;  // coefficient window [0, n) covers exponents [-1, order)
  IntSeries e4 = eisenstein_e4(n);
  IntSeries num = series_mul(series_mul(e4, e4), e4);
  IntSeries inv = series_invert(delta_over_q(n));
  IntSeries r = series_mul(num, inv);
  r.lead_exponent -= 1;
  if (r.order() > order) r.coeffs.resize((size_t)(order - r.lead_exponent));
  return r;
}

IntSeries inv_j_series(long order) {
  if (order < 2) throw computation_error("inv_j_series: order must be >= 2");
  long n = order;
  IntSeries e4 = eisenstein_e4(n);
  IntSeries num = series_mul(series_mul(e4, e4), e4);  // unit lead at 0
  IntSeries r = series_mul(delta_over_q(n), series_invert(num));
  r.lead_exponent += 1;  // restore the q factor of Delta
  r.trim_leading_zeros();
  if (r.order() > order) r.coeffs.resize((size_t)(order - r.lead_exponent));
  return r;
}

IntSeries tate_q_series(long order) {
  return series_reversion(inv_j_series(order));
}

IntSeries s4_series(long order) {
  IntSeries s = IntSeries::zero(order);
  if (order < 1) return s;
  s = IntSeries::monomial(0, Int(0), order);
  for (long m = 1; m < order; ++m)
    s.set_coefficient(m, Int(-5) * sigma_power(m, 3));
  s.trim_leading_zeros();
  return s;
}

IntSeries s6_series(long order) {
  IntSeries s = IntSeries::zero(order);
  if (order < 1) return s;
  s = IntSeries::monomial(0, Int(0), order);
  for (long m = 1; m < order; ++m) {
    Int num = Int(7) * sigma_power(m, 5) + Int(5) * sigma_power(m, 3);
    // 7 sigma5 + 5 sigma3 is always divisible by 12
    Int c;
    mpz_divexact_ui(c.get_mpz_t(), num.get_mpz_t(), 12);
    s.set_coefficient(m, -c);
  }
  s.trim_leading_zeros();
  return s;
}

PadicInt tate_parameter(const PadicInt& inv_j) {
  unsigned ord = inv_j.valuation();
  if (ord == 0 || inv_j.is_zero())
    throw computation_error(
        "NotPotentiallyMultiplicative: 1/j must have positive valuation");
  // tail of the reversion series has valuation >= order * ord; two guard digits
  long order = (long)((inv_j.precision() + 2 + ord - 1) / ord) + 1;
  if (order < 3) order = 3;
  IntSeries qs = tate_q_series(order);
  PadicInt q = series::evaluate_at_padic(qs, inv_j);
  return q.truncated(inv_j.precision());
}

TateCoefficients tate_coefficients(const PadicInt& q) {
  unsigned ord = q.valuation();
  if (ord == 0 || q.is_zero())
    throw computation_error("tate_coefficients: q must have positive valuation");
  long order = (long)((q.precision() + 2 + ord - 1) / ord) + 1;
  if (order < 2) order = 2;
  PadicInt s4 = series::evaluate_at_padic(s4_series(order), q);
  PadicInt s6 = series::evaluate_at_padic(s6_series(order), q);
  return {s4.truncated(q.precision()), s6.truncated(q.precision())};
}

LocalTorsionDegrees local_torsion_degrees(unsigned long p, unsigned long ord_q,
                                          unsigned long n) {
  if (n == 0 || std::gcd(n, p) != 1)
    throw computation_error("local_torsion_degrees: need gcd(n, p) = 1");
  unsigned long f = 1;
  unsigned long pw = p % n;
  while (pw != 1 % n) {
    pw = (pw * (p % n)) % n;
    ++f;
  }
  if (n == 1) f = 1;
  unsigned long e = n / std::gcd(n, ord_q);
  return {e, f};
}

Transvection transvection(unsigned long p, unsigned long ord_q, unsigned long l) {
  if (l < 3)
    throw computation_error("HypothesisViolation: l must be >= 3");
  if (l == p)
    throw computation_error("HypothesisViolation: l equals the residue characteristic");
  if (ord_q % l == 0)
    throw computation_error("HypothesisViolation: l divides ord_q");
  Transvection t;
  t.l = l;
  t.matrix = {{{1, 1}, {0, 1}}};
  t.basis_label_1 = "zeta_" + std::to_string(l);
  t.basis_label_2 = "q^(1/" + std::to_string(l) + ")";
  return t;
}

}  // namespace thetalab::tate
