#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "thetalab/regions.hpp"

using namespace thetalab::regions;
using thetalab::exactnum::LogValue;
using thetalab::exactnum::Rat;
using thetalab::exactnum::ratio;

namespace {

std::mt19937_64 rng(555000111);

// base field of the given degree: each fiber partitions the degree into
// local degrees, each with a residue degree dividing it
BaseField random_base(unsigned long deg, const std::vector<unsigned long>& primes) {
  BaseField b;
  b.degree = deg;
  int counter = 0;
  for (unsigned long p : primes) {
    unsigned long left = deg;
    std::vector<LiftedPlace> fiber;
    while (left > 0) {
      unsigned long d = 1 + rng() % left;
      std::vector<unsigned long> divisors;
      for (unsigned long f = 1; f <= d; ++f)
        if (d % f == 0) divisors.push_back(f);
      unsigned long f = divisors[rng() % divisors.size()];
      LiftedPlace v;
      v.base.finite = true;
      v.base.prime = p;
      v.base.local_degree = d;
      v.base.residue_degree = f;
      v.base.label = "p" + std::to_string(p) + "w" + std::to_string(counter++);
      fiber.push_back(v);
      left -= d;
    }
    b.fibers[p] = fiber;
  }
  return b;
}

Rat random_coeff() {
  long n = (long)(rng() % 61) - 30;
  long d = 1 + (long)(rng() % 60);
  return ratio(n, d);
}

}  // namespace

TEST_CASE("place weights over each prime sum to one") {
  for (int i = 0; i < 100; ++i) {
    unsigned long deg = 1 + rng() % 4;
    BaseField b = random_base(deg, {3, 7, 11});
    for (const auto& [p, fiber] : b.fibers) {
      Rat sum(0);
      for (const auto& v : fiber) sum += place_weight(v.base, b.degree);
      CHECK(sum == 1);
    }
  }
}

TEST_CASE("divisor regions have expected log-volume -deg(D), all peel indices") {
  static const std::vector<unsigned long> pool = {3, 5, 7, 11, 13, 17, 19};
  for (int trial = 0; trial < 1000; ++trial) {
    unsigned long deg = 1 + rng() % 4;
    // support of at most 5 primes
    std::vector<unsigned long> primes;
    unsigned np = 1 + (unsigned)(rng() % 5);
    for (unsigned i = 0; i < np; ++i) primes.push_back(pool[rng() % pool.size()]);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    BaseField base = random_base(deg, primes);

    thetalab::arakelov::Divisor D;
    D.base_field_degree = deg;
    for (unsigned long p : primes) {
      const auto& fiber = base.fiber(p);
      for (const auto& v : fiber)
        if (rng() % 2) D.add(v.base, random_coeff());
    }
    unsigned level = (unsigned)(rng() % 4);  // arity up to 4
    LogValue want = -thetalab::arakelov::normalized_degree(D);
    for (unsigned peel = 0; peel <= level; ++peel) {
      RegionDescriptor R = region_of_divisor(D, level, peel, base);
      CHECK(ln_nu(R) == want);
    }
  }
}

TEST_CASE("divisor regions reject archimedean support and bad peel indices") {
  BaseField base = BaseField::rationals({11});
  thetalab::arakelov::Divisor D;
  D.add(thetalab::arakelov::BasePlace::rational_finite(11), ratio(5, 26));
  CHECK_THROWS_AS(region_of_divisor(D, 1, 2, base), thetalab::Error);
  thetalab::arakelov::Divisor A;
  A.add(thetalab::arakelov::BasePlace::archimedean_real(), Rat(1));
  CHECK_THROWS_AS(region_of_divisor(A, 0, 0, base), thetalab::Error);
}

TEST_CASE("peel action shifts the expected volume by -a ln p") {
  for (int trial = 0; trial < 100; ++trial) {
    unsigned long deg = 1 + rng() % 3;
    BaseField base = random_base(deg, {5, 11});
    thetalab::arakelov::Divisor D;
    D.base_field_degree = deg;
    for (const auto& v : base.fiber(11)) D.add(v.base, random_coeff());
    unsigned level = 1 + (unsigned)(rng() % 2);
    RegionDescriptor R = region_of_divisor(D, level, 0, base);
    Rat a = random_coeff();
    Rat b = random_coeff();
    if (a + b == 0) b += 1;  // keep the composed action non-trivial
    unsigned i = (unsigned)(rng() % (level + 1));
    RegionDescriptor Ra = peel_act(a, 5, i, R);
    CHECK(ln_nu(Ra) == ln_nu(R) + LogValue::ln_prime(5, -a));
    // composing two scalings equals scaling by the sum
    RegionDescriptor Rab = peel_act(b, 5, i, Ra);
    RegionDescriptor Rsum = peel_act(a + b, 5, i, R);
    CHECK(Rab.summands == Rsum.summands);
  }
}

TEST_CASE("hull of a containment chain keeps the exact volume") {
  for (int trial = 0; trial < 100; ++trial) {
    size_t arity = 1 + rng() % 3;
    std::vector<LocalRegion> chain;
    Rat shift(0);
    for (int k = 0; k < 3; ++k) {
      shift += Rat(1 + (long)(rng() % 5));
      std::vector<Rat> shifts(arity, Rat(0));
      shifts[0] = shift;
      chain.push_back(LocalRegion::scaled_ring(shifts));
    }
    LocalRegion u = LocalRegion::union_of(chain);
    LogValue vol = local_volume(u, 7);
    CHECK(vol == local_volume(chain[0], 7));  // the largest member wins
    LocalRegion h = local_hull(u);
    CHECK(local_volume(h, 7) == vol);
    CHECK(local_hull(h) == h);  // idempotent
  }
}

TEST_CASE("incomparable polydisc unions are inexact but hullable") {
  LocalRegion a = LocalRegion::polydisc({Rat(1), Rat(0)});
  LocalRegion b = LocalRegion::polydisc({Rat(0), Rat(1)});
  LocalRegion u = LocalRegion::union_of({a, b});
  CHECK_THROWS_AS(local_volume(u, 5), thetalab::Error);
  // hull takes the componentwise best radius
  LocalRegion h = local_hull(u);
  CHECK(h == LocalRegion::polydisc({Rat(0), Rat(0)}));
  CHECK(local_volume_upper(u, 5) == LogValue());

  RegionDescriptor R;
  R.level = 1;
  R.base = BaseField::rationals({5});
  const auto& v = R.base.fiber(5)[0];
  R.summands[TensorIndex{{v, v}}] = u;
  CHECK_THROWS_AS(ln_nu(R), thetalab::Error);
  CHECK(ln_nu_upper(R) == LogValue());
  CHECK(ln_nu(hull(R)) == LogValue());
}

TEST_CASE("scalar scalings are invariant under factor permutation") {
  LocalRegion r = LocalRegion::scaled_ring({ratio(1, 2), ratio(1, 3)});
  CHECK(r.permuted({1, 0}) == r);
  CHECK(r.total_shift() == ratio(5, 6));
  LocalRegion d = LocalRegion::polydisc({ratio(1, 2), ratio(1, 3)});
  CHECK(d.permuted({1, 0}) == LocalRegion::polydisc({ratio(1, 3), ratio(1, 2)}));
}

TEST_CASE("log-shell volumes") {
  LiftedPlace unram;
  unram.base = thetalab::arakelov::BasePlace::rational_finite(11);
  unram.e = 1;
  unram.f = 12;
  CHECK(logshell_volume(unram).is_zero());

  LiftedPlace tame;
  tame.base = thetalab::arakelov::BasePlace::rational_finite(5);
  tame.e = 2;
  tame.f = 1;
  CHECK(logshell_volume(tame) == LogValue::ln_prime(5, ratio(1, 2)));

  LiftedPlace wild;
  wild.base = thetalab::arakelov::BasePlace::rational_finite(11);
  wild.e = 13;
  CHECK_THROWS_AS(logshell_volume(wild), thetalab::Error);

  LiftedPlace dyadic;
  dyadic.base = thetalab::arakelov::BasePlace::rational_finite(2);
  CHECK_THROWS_AS(logshell_volume(dyadic), thetalab::Error);
}
