#pragma once

#include <optional>

#include "thetalab/regions.hpp"

namespace thetalab::indet {

using arakelov::BasePlace;
using arakelov::LgpDivisor;
using exactnum::LogValue;
using exactnum::Rat;
using regions::BaseField;
using regions::LiftedPlace;
using regions::RegionDescriptor;
using tate::TateLocalData;

struct Capsule {
  std::vector<std::string> slot_labels;  // index set 0..size-1
};

// chain of capsules of sizes 2, 3, ..., n+1
struct Procession {
  std::vector<Capsule> capsules;
  void validate() const;
};

// per-capsule bijections g_j of {0..j}, j = 1..n
struct ProcessionAutomorphism {
  std::vector<std::vector<size_t>> perms;

  size_t length() const { return perms.size(); }
  const std::vector<size_t>& perm_at_level(unsigned j) const;
};

// all tuples (g_1..g_n); count = prod (j+1)!. In strict mode each g_{j+1}
// must extend g_j along the standard inclusions (coherence reading).
std::vector<ProcessionAutomorphism> enumerate_procession_automorphisms(
    unsigned n, bool strict = false);

// transport summands along the capsule-level permutation; ln_nu invariant
RegionDescriptor ind1_act(const ProcessionAutomorphism& g,
                          const RegionDescriptor& R);

// union over the S_{level+1} orbit, summand-wise
RegionDescriptor ind1_orbit_union(const RegionDescriptor& R);

// isometry contract: requires lattice/disc-aligned summands; tags Ind2-closed
RegionDescriptor ind2_saturate(const RegionDescriptor& R);

struct Ind3Params {
  unsigned long l = 0;
  std::map<BasePlace, TateLocalData> tate_data;
  unsigned n0 = 1;
  // per base-place label: configured log-shell volume (overrides the formula;
  // required for wild ramification)
  std::map<std::string, LogValue> logshell_overrides;
};

LogValue lifted_logshell_volume(const LiftedPlace& v, const Ind3Params& params);

// union over N >= n0 of the log-shell tensor lattice scaled through the peel
// index by N * j^2 * ord_v(q)/(2l); represented by the first three terms
// (the tail is contained in them), hull = the N = n0 term
RegionDescriptor ind3_bound_region(const Ind3Params& params, unsigned j,
                                   const BaseField& base);

// per component j: ind2_saturate(ind1_orbit_union(ind3_bound_region(j)))
std::map<unsigned, RegionDescriptor> multiradial_bound(const LgpDivisor& theta,
                                                       const Ind3Params& params,
                                                       const BaseField& base);

struct InequalityReport {
  LogValue lhs;  // -normalized degree of the q-pilot
  LogValue rhs;  // average hull volume of the multiradial bound components
  std::map<unsigned, LogValue> component_volumes;
  exactnum::CompareResult cmp;
  std::string verdict;  // holds | fails | unresolved
};

InequalityReport evaluate_inequality(const Ind3Params& params,
                                     const BaseField& base,
                                     unsigned precision_cap =
                                         exactnum::kDefaultPrecisionCap);

}  // namespace thetalab::indet
