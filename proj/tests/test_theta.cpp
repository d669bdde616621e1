#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "thetalab/theta.hpp"

using namespace thetalab::theta;
using thetalab::curve::WeierstrassModel;
using thetalab::exactnum::Int;

namespace {

std::mt19937_64 rng(271828);

const WeierstrassModel kRef{Int(0), Int(-1), Int(1), Int(-10), Int(-20)};

Mat2 random_invertible(unsigned long l) {
  for (;;) {
    Mat2 g{l, {{{rng() % l, rng() % l}, {rng() % l, rng() % l}}}};
    if (g.det() != 0) return g;
  }
}

Line random_line(unsigned long l) {
  auto lines = all_lines(l);
  return lines[rng() % lines.size()];
}

Attestations attested() {
  Attestations a;
  a.non_shimura = true;
  a.torsion_conditions = true;
  return a;
}

}  // namespace

TEST_CASE("GL2 orders over small prime fields") {
  CHECK(gl2_order_by_enumeration(2) == 6);
  CHECK(gl2_order_by_enumeration(3) == 48);
  CHECK(gl2_order_by_enumeration(5) == 480);
}

TEST_CASE("matrix inverses and line action are compatible") {
  for (unsigned long l : {5ul, 13ul}) {
    CHECK(all_lines(l).size() == l + 1);
    for (int i = 0; i < 100; ++i) {
      Mat2 g = random_invertible(l), h = random_invertible(l);
      CHECK(g * g.inverse() == Mat2::identity(l));
      Line L = random_line(l);
      CHECK(act(g * h, L) == act(g, act(h, L)));
      CHECK(act(g.inverse(), act(g, L)) == L);
    }
  }
}

TEST_CASE("symbolic Fricke involution") {
  for (unsigned long l : {5ul, 7ul, 13ul}) {
    for (const Line& M : all_lines(l)) {
      FrickeResult r = fricke(M);
      CHECK(r.input == M);
      CHECK(r.involute_in_quotient == Line::span(l, 1, 0));
      // applying the involution twice returns the original subgroup
      CHECK(r.double_involute == M);
      // the quotient is generated by a complement, never by M itself
      CHECK(r.quotient_generator != M);
    }
    FrickeResult x = fricke(Line::span(l, 1, 0));
    CHECK(x.quotient_generator == Line::span(l, 0, 1));
  }
}

TEST_CASE("natural fibers are equivariant") {
  for (int trial = 0; trial < 50; ++trial) {
    unsigned long l = (trial % 2) ? 5 : 13;
    std::vector<Mat2> gens;
    unsigned ng = 1 + (unsigned)(rng() % 3);
    for (unsigned i = 0; i < ng; ++i) gens.push_back(random_invertible(l));
    Fiber f = GaloisModel::natural_fiber(l, gens, random_line(l));
    for (size_t g = 0; g < gens.size(); ++g)
      for (const auto& w : f.labels)
        CHECK(f.mu.at(f.gen_action[g].at(w)) == act(gens[g], f.mu.at(w)));
  }
}

TEST_CASE("orbit search finds a multiplicative place over every base place") {
  for (unsigned long l : {5ul, 13ul}) {
    // the standard unipotent pair generates SL2, so every line is reachable
    std::vector<Mat2> gens = {Mat2{l, {{{1, 1}, {0, 1}}}},
                              Mat2{l, {{{1, 0}, {1, 1}}}}};
    for (int trial = 0; trial < 50; ++trial) {
      GaloisModel gm;
      gm.l = l;
      gm.generators = gens;
      unsigned nplaces = 1 + (unsigned)(rng() % 3);
      static const unsigned long primes[] = {7, 11, 17, 23};
      for (unsigned i = 0; i < nplaces; ++i) {
        BasePlace v = BasePlace::rational_finite(primes[i]);
        gm.fibers[v] = GaloisModel::natural_fiber(l, gens, random_line(l));
      }
      Line M = random_line(l);
      auto section = build_underline_V(gm, M);
      CHECK(section.size() == gm.fibers.size());
      for (const auto& [v, w] : section)
        CHECK(local_mult_subspace_test(M, w, gm));
    }
  }
}

TEST_CASE("orbit search reports unreachable targets") {
  GaloisModel gm;
  gm.l = 5;
  gm.generators = {Mat2::identity(5)};
  BasePlace v = BasePlace::rational_finite(7);
  gm.fibers[v] = GaloisModel::natural_fiber(5, gm.generators, Line::span(5, 1, 0));
  CHECK_THROWS_AS(build_underline_V(gm, Line::span(5, 0, 1)), thetalab::Error);
}

TEST_CASE("canonical generator check") {
  unsigned long l = 13;
  std::vector<Mat2> gens = {Mat2{l, {{{1, 1}, {0, 1}}}},
                            Mat2{l, {{{1, 0}, {1, 1}}}}};
  GaloisModel gm;
  gm.l = l;
  BasePlace v = BasePlace::rational_finite(11);
  gm.generators = gens;
  Line M = Line::span(l, 1, 0);
  gm.fibers[v] = GaloisModel::natural_fiber(l, gens, M);
  std::string w = "L(1,0)";
  CHECK(canonical_generator_check({0, 1}, w, gm, M));
  CHECK(canonical_generator_check({0, l - 1}, w, gm, M));  // -(0,1)
  CHECK(!canonical_generator_check({1, 2}, w, gm, M));
  CHECK_THROWS_AS(canonical_generator_check({0, 0}, w, gm, M), thetalab::Error);
  // w whose mu-line is not M
  CHECK_THROWS_AS(canonical_generator_check({0, 1}, "L(0,1)", gm, M),
                  thetalab::Error);
}

TEST_CASE("pre-theta checks pass for the reference scenario") {
  PreThetaReport rep = check_pre_theta(kRef, 13, {11}, attested());
  CHECK(rep.all_pass());
  CHECK(rep.conditions.at("l-at-least-5") == CheckStatus::ComputedPass);
  CHECK(rep.conditions.at("non-shimura") == CheckStatus::Attested);
  CHECK(rep.conditions.at("mod-l-image-contains-sl2") == CheckStatus::ComputedPass);
}

TEST_CASE("pre-theta checks fail for the documented bad choices of l") {
  // l = 5 divides ord(q) = 5 at 11
  PreThetaReport l5 = check_pre_theta(kRef, 5, {11}, attested());
  CHECK(!l5.all_pass());
  bool found = false;
  for (const auto& f : l5.failures)
    if (f == "l-not-dividing-ord-q at p=11") found = true;
  CHECK(found);

  // l = 11 equals the residue characteristic
  PreThetaReport l11 = check_pre_theta(kRef, 11, {11}, attested());
  CHECK(!l11.all_pass());
  found = false;
  for (const auto& f : l11.failures)
    if (f == "l-not-residue-characteristic at p=11") found = true;
  CHECK(found);
}

TEST_CASE("missing attestations are reported as failures") {
  Attestations none;
  PreThetaReport rep = check_pre_theta(kRef, 13, {11}, none);
  CHECK(!rep.all_pass());
  CHECK(rep.failures.size() >= 2);
  // attesting strictly shrinks the failure list
  PreThetaReport ok = check_pre_theta(kRef, 13, {11}, attested());
  CHECK(ok.failures.size() < rep.failures.size());
}

TEST_CASE("initial theta data assembles for the reference scenario") {
  E11a1Scenario sc = e11a1_scenario();
  CHECK(sc.data.pre.all_pass());
  CHECK(sc.data.epsilon == std::array<unsigned long, 2>{0, 1});
  CHECK(sc.data.M == Line::span(13, 1, 0));
  CHECK(sc.data.V_section.size() == 1);
  CHECK(sc.tv.matrix[0][1] == 1);

  // a failing computed check aborts assembly
  CHECK_THROWS_WITH_AS(
      build_initial_theta_data(sc.curve, 5, sc.S, attested(), sc.gm,
                               Line::span(13, 1, 0)),
      doctest::Contains("ConditionFailure"), thetalab::Error);
}
