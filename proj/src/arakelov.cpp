#include "thetalab/arakelov.hpp"

namespace thetalab::arakelov {

BasePlace BasePlace::rational_finite(unsigned long p) {
  BasePlace v;
  v.finite = true;
  v.prime = p;
  v.local_degree = 1;
  v.residue_degree = 1;
  v.label = "p=" + std::to_string(p);
  return v;
}

BasePlace BasePlace::archimedean_real() {
  BasePlace v;
  v.finite = false;
  v.prime = 0;
  v.local_degree = 1;
  v.residue_degree = 1;
  v.label = "inf";
  return v;
}

void Divisor::add(const BasePlace& v, const Rat& c) {
  Rat& slot = entries[v];
  slot += c;
  if (slot == 0) entries.erase(v);
}

Divisor Divisor::operator+(const Divisor& o) const {
  if (base_field_degree != o.base_field_degree)
    throw computation_error("divisor sum across different base fields");
  Divisor r = *this;
  for (const auto& [v, c] : o.entries) r.add(v, c);
  return r;
}

LogValue degree(const Divisor& D) {
  LogValue out;
  for (const auto& [v, c] : D.entries) {
    if (v.finite)
      out += LogValue::ln_prime(v.prime, c * Rat((long)v.residue_degree));
    else
      out += LogValue::arch(c);
  }
  return out;
}

LogValue normalized_degree(const Divisor& D) {
  return degree(D).scaled(exactnum::ratio(1, (long)D.base_field_degree));
}

LogValue degree_lgp(const LgpDivisor& P) {
  if (P.components.empty())
    throw computation_error("degree_lgp: empty component list");
  LogValue acc;
  for (const auto& D : P.components) acc += normalized_degree(D);
  return acc.scaled(exactnum::ratio(1, (long)P.components.size()));
}

namespace {

void check_pilot_input(const std::map<BasePlace, TateLocalData>& tate_data) {
  if (tate_data.empty()) throw validation_error("EmptyBadSet: no bad places");
  for (const auto& [v, t] : tate_data) {
    if (!v.finite || v.prime != t.prime)
      throw validation_error("pilot: place/Tate data mismatch");
    if (t.prime == 2)
      throw validation_error("pilot: residue characteristic must be odd");
  }
}

}  // namespace

Divisor q_pilot(const std::map<BasePlace, TateLocalData>& tate_data,
                unsigned long l) {
  check_pilot_input(tate_data);
  Divisor D;
  for (const auto& [v, t] : tate_data) {
    D.base_field_degree = 1;  // pilots are built over F0 = Q in this artifact
    D.add(v, exactnum::ratio((long)t.ord_q, 2 * (long)l));
  }
  return D;
}

LgpDivisor theta_pilot(const std::map<BasePlace, TateLocalData>& tate_data,
                       unsigned long l) {
  check_pilot_input(tate_data);
  LgpDivisor P;
  unsigned long r = (l - 1) / 2;
  Divisor base = q_pilot(tate_data, l);
  for (unsigned long j = 1; j <= r; ++j) {
    Divisor Dj;
    Dj.base_field_degree = base.base_field_degree;
    for (const auto& [v, c] : base.entries)
      Dj.add(v, c * Rat((long)(j * j)));
    P.components.push_back(std::move(Dj));
  }
  return P;
}

}  // namespace thetalab::arakelov
