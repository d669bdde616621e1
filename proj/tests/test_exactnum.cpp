#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "thetalab/exactnum.hpp"

using namespace thetalab::exactnum;
using thetalab::exactnum::Int;

namespace {

// Independent enclosure of ln p: ln p = 2 atanh(x) with x = (p-1)/(p+1),
// summed in exact rationals. The tail after the x^(2k+1) term is bounded by
// the geometric series 2 x^(2k+3) / (1 - x^2).
Interval ln_oracle(unsigned long p, unsigned bits) {
  Rat x((long)p - 1, (long)p + 1);
  x.canonicalize();
  Rat x2 = x * x;
  Rat eps(Int(1), Int(1) << bits);
  Rat sum(0);
  Rat pow = x;  // x^(2k+1)
  unsigned long k = 0;
  Rat tail;
  for (;;) {
    sum += pow / Rat((long)(2 * k + 1));
    pow *= x2;
    ++k;
    tail = Rat(2) * pow / (Rat(1) - x2);
    if (tail <= eps) break;
  }
  return Interval(Rat(2) * sum, Rat(2) * sum + tail);
}

std::mt19937_64 rng(20240817);

Rat random_rat(int num_range, int den_range) {
  long n = (long)(rng() % (2 * num_range + 1)) - num_range;
  long d = 1 + (long)(rng() % den_range);
  return ratio(n, d);
}

LogValue random_logvalue() {
  static const unsigned long primes[] = {2, 3, 5, 7, 11, 13};
  LogValue v;
  unsigned terms = (unsigned)(rng() % 4);
  for (unsigned i = 0; i < terms; ++i)
    v += LogValue::ln_prime(primes[rng() % 6], random_rat(20, 9));
  if (rng() % 2) v += LogValue::arch(random_rat(20, 9));
  return v;
}

}  // namespace

TEST_CASE("ln p enclosures agree with the atanh-series oracle") {
  const unsigned prec = 64;
  for (unsigned long p : {2ul, 3ul, 5ul, 11ul, 31ul, 97ul}) {
    Interval lib = ln_prime_enclosure(p, prec);
    Interval ora = ln_oracle(p, prec + 16);
    // both provably contain ln p, so they must intersect
    CHECK(lib.lower <= ora.upper);
    CHECK(ora.lower <= lib.upper);
    // and the library interval must actually be tight
    Rat width_cap(Int(1), Int(1) << (prec - 10));
    CHECK(lib.width() <= width_cap);
    CHECK(lib.lower < lib.upper);
  }
}

TEST_CASE("enclosures nest as precision grows") {
  LogValue v = LogValue::ln_prime(2) + LogValue::ln_prime(3) -
               LogValue::arch(Rat(2));
  Interval a = eval_interval(v, 32);
  Interval b = eval_interval(v, 64);
  Interval c = eval_interval(v, 128);
  CHECK(b.width() < a.width());
  CHECK(c.width() < b.width());
  // all contain the same real number
  CHECK(a.lower <= b.upper);
  CHECK(b.lower <= a.upper);
  CHECK(b.lower <= c.upper);
  CHECK(c.lower <= b.upper);
}

TEST_CASE("comparison resolves tight power inequalities") {
  // 2^3 < 3^2 and 2^10 > 3^6
  LogValue three_ln2 = LogValue::ln_prime(2, Rat(3));
  LogValue two_ln3 = LogValue::ln_prime(3, Rat(2));
  CHECK(compare(three_ln2, two_ln3).order == Order::Less);
  CHECK(compare(LogValue::ln_prime(2, Rat(10)),
                LogValue::ln_prime(3, Rat(6))).order == Order::Greater);
  // single-basis shortcut
  CHECK(compare(LogValue::ln_prime(5, ratio(1, 3)),
                LogValue::ln_prime(5, ratio(2, 7))).order == Order::Greater);
  // pure archimedean shortcut
  CHECK(compare(LogValue::arch(ratio(3, 2)), LogValue::arch(ratio(5, 3))).order ==
        Order::Less);
  // formal equality
  LogValue s = LogValue::ln_prime(2) + LogValue::ln_prime(3);
  CHECK(compare(s, s).order == Order::Equal);
}

TEST_CASE("combine matches operator arithmetic") {
  for (int i = 0; i < 500; ++i) {
    LogValue a = random_logvalue();
    LogValue b = random_logvalue();
    Rat c = random_rat(12, 7);
    CHECK(logvalue_combine(a, c, b) == a + b.scaled(c));
  }
}

TEST_CASE("comparison is antisymmetric and translation invariant") {
  int unresolved = 0;
  for (int i = 0; i < 10000; ++i) {
    LogValue a = random_logvalue();
    LogValue b = random_logvalue();
    LogValue c = random_logvalue();
    CompareResult ab = compare(a, b);
    CompareResult ba = compare(b, a);
    switch (ab.order) {
      case Order::Less: CHECK(ba.order == Order::Greater); break;
      case Order::Greater: CHECK(ba.order == Order::Less); break;
      case Order::Equal: CHECK(ba.order == Order::Equal); break;
      case Order::Unresolved: ++unresolved; continue;
    }
    // adding the same value to both sides preserves the order
    CompareResult shifted = compare(a + c, b + c);
    CHECK(shifted.order == ab.order);
  }
  // random small-coefficient combinations must all resolve under the cap
  CHECK(unresolved == 0);
}

TEST_CASE("reflexivity and zero detection") {
  for (int i = 0; i < 200; ++i) {
    LogValue a = random_logvalue();
    CHECK(compare(a, a).order == Order::Equal);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("rational string round trips") {
  CHECK(rat_to_string(ratio(-10, 4)) == "-5/2");
  CHECK(rat_from_string("-5/2") == ratio(-5, 2));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK_THROWS_AS(rat_from_string("x/y"), thetalab::Error);
}

TEST_CASE("human rendering of log values") {
  LogValue v = LogValue::ln_prime(11, ratio(-5, 26));
  CHECK(v.to_human() == "-(5/26)*ln(11)");
  CHECK(LogValue().to_human() == "0");
}
