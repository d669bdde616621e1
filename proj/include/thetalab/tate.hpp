#pragma once

#include <array>
#include <string>

#include "thetalab/series.hpp"

namespace thetalab::tate {

using exactnum::Int;
using padic::PadicInt;
using series::IntSeries;

// Local data at a multiplicative place: valuation of the Tate parameter
// (= minimal discriminant valuation) and whether the reduction is split.
struct TateLocalData {
  unsigned long prime;
  unsigned long ord_q;
  bool split;
};

// Unipotent Galois element on an l-torsion basis (image of a root of unity,
// image of an l-th root of the Tate parameter).
struct Transvection {
  unsigned long l;
  std::array<std::array<unsigned long, 2>, 2> matrix;  // [[1,1],[0,1]]
  std::string basis_label_1;  // zeta_l image
  std::string basis_label_2;  // q^{1/l} image
};

// Laurent series of j(q) = E4(q)^3 / Delta(q), exponents [-1, order).
IntSeries j_series(long order);

// 1/j as a power series in q: q - 744 q^2 + ...; exponents [1, order).
IntSeries inv_j_series(long order);

// q as a power series in t = 1/j: t + 744 t^2 + 750420 t^3 + ...
IntSeries tate_q_series(long order);

// s4 and s6 coefficient series of the Tate model
//   y^2 + xy = x^3 + s4 x + s6,
// s4 = -5 sum sigma3(m) q^m, s6 = -(1/12) sum (7 sigma5(m) + 5 sigma3(m)) q^m.
IntSeries s4_series(long order);
IntSeries s6_series(long order);

// Tate parameter from t = 1/j in Z_p; requires val(t) >= 1.
// Series order is chosen so the truncation tail certifies the precision.
PadicInt tate_parameter(const PadicInt& inv_j);

struct TateCoefficients {
  PadicInt s4;
  PadicInt s6;
};

// requires val(q) >= 1
TateCoefficients tate_coefficients(const PadicInt& q);

struct LocalTorsionDegrees {
  unsigned long e;
  unsigned long f;
};

// Ramification and residue degree of Q_p(zeta_n, q^{1/n}) / Q_p, gcd(n,p)=1:
// f = multiplicative order of p mod n, e = n / gcd(n, ord_q).
LocalTorsionDegrees local_torsion_degrees(unsigned long p, unsigned long ord_q,
                                          unsigned long n);

// requires l >= 3, l != p, l not dividing ord_q
Transvection transvection(unsigned long p, unsigned long ord_q, unsigned long l);

}  // namespace thetalab::tate
