#pragma once

#include <map>
#include <string>
#include <vector>

#include "thetalab/exactnum.hpp"
#include "thetalab/tate.hpp"

namespace thetalab::arakelov {

using exactnum::LogValue;
using exactnum::Rat;
using tate::TateLocalData;

// A place of the base field F0. Finite places carry the rational prime,
// the local degree [F0_v : Q_p] and the residue degree f_v (e_v = d_v / f_v).
struct BasePlace {
  bool finite = true;
  unsigned long prime = 0;       // finite places only
  unsigned long local_degree = 1;
  unsigned long residue_degree = 1;  // finite places only
  std::string label;

  auto operator<=>(const BasePlace&) const = default;

  static BasePlace rational_finite(unsigned long p);
  static BasePlace archimedean_real();
};

// Rational-coefficient Arakelov divisor over a fixed base field degree.
struct Divisor {
  std::map<BasePlace, Rat> entries;
  unsigned long base_field_degree = 1;

  void add(const BasePlace& v, const Rat& c);
  Divisor operator+(const Divisor& o) const;
};

// Tuple of divisors, degree = uniform average of component degrees.
struct LgpDivisor {
  std::vector<Divisor> components;  // indexed j = 1..r
};

LogValue degree(const Divisor& D);
LogValue normalized_degree(const Divisor& D);
LogValue degree_lgp(const LgpDivisor& P);

// ord_v(q_v) / (2l) at each bad place (2l-th root convention)
Divisor q_pilot(const std::map<BasePlace, TateLocalData>& tate_data,
                unsigned long l);

// components j = 1..(l-1)/2, coefficient j^2 * ord_v(q_v) / (2l)
LgpDivisor theta_pilot(const std::map<BasePlace, TateLocalData>& tate_data,
                       unsigned long l);

}  // namespace thetalab::arakelov
