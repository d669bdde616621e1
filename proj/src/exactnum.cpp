#include "thetalab/exactnum.hpp"

#include <mpfr.h>

#include <sstream>

namespace thetalab::exactnum {

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw validation_error("bad rational literal: " + s);
  q.canonicalize();
  if (q.get_den() <= 0) throw validation_error("bad rational literal: " + s);
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Interval::Interval(Rat lo, Rat hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower > upper) throw computation_error("interval bounds out of order");
}

Interval Interval::operator+(const Interval& o) const {
  return Interval(lower + o.lower, upper + o.upper);
}

Interval Interval::scaled(const Rat& c) const {
  if (c >= 0) return Interval(lower * c, upper * c);
  return Interval(upper * c, lower * c);
}

bool Interval::contains(const Interval& o) const {
  return lower <= o.lower && o.upper <= upper;
}

LogValue LogValue::ln_prime(unsigned long p, const Rat& coeff) {
  LogValue v;
  if (coeff != 0) v.terms[p] = coeff;
  return v;
}

LogValue LogValue::arch(const Rat& value) {
  LogValue v;
  v.archimedean = value;
  return v;
}

void LogValue::normalize() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0)
      it = terms.erase(it);
    else
      ++it;
  }
}

LogValue& LogValue::operator+=(const LogValue& o) {
  for (const auto& [p, c] : o.terms) terms[p] += c;
  archimedean += o.archimedean;
  normalize();
  return *this;
}

LogValue& LogValue::operator-=(const LogValue& o) {
  for (const auto& [p, c] : o.terms) terms[p] -= c;
  archimedean -= o.archimedean;
  normalize();
  return *this;
}

LogValue LogValue::operator+(const LogValue& o) const {
  LogValue r = *this;
  r += o;
  return r;
}

LogValue LogValue::operator-(const LogValue& o) const {
  LogValue r = *this;
  r -= o;
  return r;
}

LogValue LogValue::operator-() const { return scaled(Rat(-1)); }

LogValue LogValue::scaled(const Rat& c) const {
  LogValue r;
  if (c == 0) return r;
  for (const auto& [p, k] : terms) r.terms[p] = k * c;
  r.archimedean = archimedean * c;
  return r;
}

std::string LogValue::to_human() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rat& c, const std::string& sym) {
    Rat a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (sym.empty()) {
      os << a.get_str();
    } else if (a == 1) {
      os << sym;
    } else {
      os << "(" << a.get_str() << ")*" << sym;
    }
  };
  for (const auto& [p, c] : terms) emit(c, "ln(" + std::to_string(p) + ")");
  if (archimedean != 0) emit(archimedean, "");
  return os.str();
}

LogValue logvalue_combine(const LogValue& a, const Rat& c, const LogValue& b) {
  LogValue r = a;
  r += b.scaled(c);
  return r;
}

namespace {

Rat mpfr_to_rat(const mpfr_t x) {
  // mpfr values are binary rationals; the conversion is exact.
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, x);
  Rat r(q);
  mpq_clear(q);
  return r;
}

}  // namespace

Interval ln_prime_enclosure(unsigned long p, unsigned precision) {
  if (precision < 1) precision = 1;
  mpfr_t x, lo, hi;
  // a few guard bits so the enclosure width meets the request
  mpfr_prec_t bits = precision + 8;
  mpfr_init2(x, bits);
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  mpfr_set_ui(x, p, MPFR_RNDN);
  mpfr_log(lo, x, MPFR_RNDD);
  mpfr_log(hi, x, MPFR_RNDU);
  Interval out(mpfr_to_rat(lo), mpfr_to_rat(hi));
  mpfr_clears(x, lo, hi, (mpfr_ptr)nullptr);
  return out;
}

Interval eval_interval(const LogValue& v, unsigned precision) {
  Interval acc(v.archimedean, v.archimedean);
  for (const auto& [p, c] : v.terms)
    acc = acc + ln_prime_enclosure(p, precision).scaled(c);
  return acc;
}

CompareResult compare(const LogValue& a, const LogValue& b,
                      unsigned precision_cap) {
  if (a == b) return {Order::Equal, 0};
  LogValue d = a - b;
  // same-basis shortcut: a pure rational or a single ln p term has a sign
  if (d.terms.empty())
    return {d.archimedean < 0 ? Order::Less : Order::Greater, 0};
  if (d.terms.size() == 1 && d.archimedean == 0) {
    const Rat& c = d.terms.begin()->second;
    return {c < 0 ? Order::Less : Order::Greater, 0};
  }
  unsigned prec = 32;
  for (;;) {
    Interval iv = eval_interval(d, prec);
    if (iv.strictly_negative()) return {Order::Less, prec};
    if (iv.strictly_positive()) return {Order::Greater, prec};
    if (prec >= precision_cap) return {Order::Unresolved, prec};
    prec = std::min(prec * 2, precision_cap);
  }
}

std::string approx_decimal(const LogValue& v, unsigned digits,
                           unsigned precision) {
  Interval iv = eval_interval(v, precision);
  Rat mid = (iv.lower + iv.upper) / 2;
  mpfr_t x;
  mpfr_init2(x, precision + 16);
  mpfr_set_q(x, mid.get_mpq_t(), MPFR_RNDN);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", (int)digits, x);
  std::string out(s);
  mpfr_free_str(s);
  mpfr_clear(x);
  return out;
}

}  // namespace thetalab::exactnum
