#pragma once

#include <set>
#include <vector>

#include "thetalab/arakelov.hpp"

namespace thetalab::regions {

using arakelov::BasePlace;
using arakelov::Divisor;
using arakelov::LgpDivisor;
using exactnum::LogValue;
using exactnum::Rat;

// A place of the big field K chosen over a base place (the section of
// V(K) -> V(F0)); e, f are the invariants of K_v over Q_p.
struct LiftedPlace {
  BasePlace base;
  unsigned long e = 1;
  unsigned long f = 1;

  auto operator<=>(const LiftedPlace&) const = default;
  unsigned long prime() const { return base.prime; }
};

// Tuple of lifted places over one rational prime; indexes a tensor summand.
struct TensorIndex {
  std::vector<LiftedPlace> places;

  auto operator<=>(const TensorIndex&) const = default;
  unsigned long prime() const { return places.at(0).prime(); }
  size_t arity() const { return places.size(); }
};

// Symbolic subset of one local tensor summand. All geometry is valuation
// data; shift/radius entries are ord_p values, one per tensor factor.
struct LocalRegion {
  enum class Kind { ScaledRing, ScaledLattice, Polydisc, UnionOf };

  Kind kind = Kind::ScaledRing;
  std::vector<Rat> shifts;     // per-factor ord_p scaling (ring/lattice) or radii
  LogValue defect;             // lattice variants: full lattice log-volume at shift 0
  std::vector<LocalRegion> members;  // UnionOf

  bool operator==(const LocalRegion&) const = default;

  static LocalRegion full_ring(size_t arity);
  static LocalRegion scaled_ring(std::vector<Rat> shifts);
  static LocalRegion scaled_lattice(std::vector<Rat> shifts, LogValue defect);
  static LocalRegion polydisc(std::vector<Rat> radii);
  static LocalRegion union_of(std::vector<LocalRegion> members);

  size_t arity() const;
  Rat total_shift() const;
  LocalRegion permuted(const std::vector<size_t>& perm) const;  // factor i <- perm[i]
};

// Base-field data for the probability structure on place tuples.
struct BaseField {
  unsigned long degree = 1;
  std::map<unsigned long, std::vector<LiftedPlace>> fibers;  // prime -> places over it

  static BaseField rationals(const std::set<unsigned long>& primes);
  const std::vector<LiftedPlace>& fiber(unsigned long p) const;
};

Rat place_weight(const BasePlace& v, unsigned long base_degree);

// Region of one tensor level of the fake-adele space: summands absent from
// the map default to the full integral summand (log-volume 0).
struct RegionDescriptor {
  unsigned level = 0;  // tensor power level+1
  std::set<unsigned long> prime_support;
  std::map<TensorIndex, LocalRegion> summands;
  BaseField base;
  bool ind2_closed = false;
};

// log-volume of one summand, normalized so the full integral ring has 0
LogValue local_volume(const LocalRegion& r, unsigned long p);
// certified upper bound (exact when the region is exact)
LogValue local_volume_upper(const LocalRegion& r, unsigned long p);

// Expected normalized log-volume over the place-tuple probability space.
// Throws InexactRegion when a summand only supports upper bounds.
LogValue ln_nu(const RegionDescriptor& R);
LogValue ln_nu_upper(const RegionDescriptor& R);

// O(-D): integral summands scaled through tensor factor peel_index by an
// adele with the valuations of D. ln_nu equals -normalized_degree(D).
RegionDescriptor region_of_divisor(const Divisor& D, unsigned level,
                                   unsigned peel_index, const BaseField& base);

// component j (1-based) is region_of_divisor(P_j, level j, peel index j)
std::map<unsigned, RegionDescriptor> region_of_lgp(const LgpDivisor& P,
                                                   const BaseField& base);

// add a_ord to the factor-i scaling of every summand over p
RegionDescriptor peel_act(const Rat& a_ord, unsigned long p, unsigned i,
                          const RegionDescriptor& R);

// smallest enclosing polydisc-like region, summand-wise
RegionDescriptor hull(const RegionDescriptor& R);
LocalRegion local_hull(const LocalRegion& r);

// normalized log-volume of the log-shell (1/2p) log(O^x): ((e-1)/e) ln p
// for odd p with e < p - 1; WildRamification otherwise.
LogValue logshell_volume(const LiftedPlace& v);

}  // namespace thetalab::regions
