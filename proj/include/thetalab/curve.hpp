#pragma once

#include <string>
#include <vector>

#include "thetalab/exactnum.hpp"

namespace thetalab::curve {

using exactnum::Int;
using exactnum::Rat;

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct WeierstrassModel {
  Int a1, a2, a3, a4, a6;
  bool operator==(const WeierstrassModel&) const = default;
};

struct Invariants {
  Int b2, b4, b6, b8;
  Int c4, c6;
  Int disc;
  Rat j;
};

// requires disc != 0 (SingularModel otherwise)
Invariants invariants(const WeierstrassModel& m);

// transform by (u, r, s, t): x = u^2 x' + r, y = u^3 y' + u^2 s x' + t
WeierstrassModel transformed(const WeierstrassModel& m, const Int& u,
                             const Int& r, const Int& s, const Int& t);

// Global minimal model (Laska-Kraus-Connell).
WeierstrassModel minimal_model(const WeierstrassModel& m);

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

struct ReductionReport {
  unsigned long prime;
  ReductionKind kind;
  std::string kodaira;          // "I0" for good, "In" for multiplicative
  unsigned long tamagawa;
  unsigned long disc_valuation;
  unsigned conductor_exponent;
};

// requires m minimal at p; additive types at p in {2,3} are unsupported
// beyond the `additive` kind (AdditiveUnsupportedDetail)
ReductionReport reduction_type(const WeierstrassModel& m, unsigned long p);

// a_p = p + 1 - #E(F_p); requires good reduction at p
long ap_trace(const WeierstrassModel& m, unsigned long p);

struct SurjectivityResult {
  bool verified = false;
  std::vector<unsigned long> witnesses;  // empty when inconclusive
};

// One-sided check that the mod-l image contains SL2: rules out Borel,
// normalizer-of-Cartan and exceptional images from sampled (a_p, p) pairs.
SurjectivityResult mod_l_image_contains_sl2(const WeierstrassModel& m,
                                            unsigned long l,
                                            unsigned long prime_bound = 10000);

// trial-division factorization (desk-scale inputs)
std::vector<std::pair<unsigned long, unsigned>> factor(Int n);

unsigned valuation(const Int& n, unsigned long p);

}  // namespace thetalab::curve
