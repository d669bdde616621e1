#include "thetalab/indet.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "thetalab/arakelov.hpp"

namespace thetalab::indet {

using regions::LocalRegion;
using regions::TensorIndex;

void Procession::validate() const {
  if (capsules.empty()) throw validation_error("procession: no capsules");
  for (size_t j = 0; j < capsules.size(); ++j)
    if (capsules[j].slot_labels.size() != j + 2)
      throw validation_error("procession: capsule " + std::to_string(j + 1) +
                             " must have " + std::to_string(j + 2) + " slots");
}

const std::vector<size_t>& ProcessionAutomorphism::perm_at_level(unsigned j) const {
  if (j == 0 || j > perms.size())
    throw computation_error("LevelMismatch: no bijection at capsule " +
                            std::to_string(j));
  return perms[j - 1];
}

std::vector<ProcessionAutomorphism> enumerate_procession_automorphisms(
    unsigned n, bool strict) {
  if (n < 1 || n > 6)
    throw computation_error("CapExceeded: procession length must be in 1..6");
  // per-capsule permutation pools
  std::vector<std::vector<std::vector<size_t>>> pools(n);
  for (unsigned j = 1; j <= n; ++j) {
    std::vector<size_t> p(j + 1);
    std::iota(p.begin(), p.end(), 0);
    do {
      pools[j - 1].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<ProcessionAutomorphism> out;
  ProcessionAutomorphism cur;
  cur.perms.resize(n);
  std::function<void(unsigned)> rec = [&](unsigned j) {
    if (j > n) {
      out.push_back(cur);
      return;
    }
    for (const auto& p : pools[j - 1]) {
      if (strict && j > 1) {
        // coherence: g_j must extend g_{j-1} along the standard inclusion
        bool ok = true;
        for (size_t k = 0; k < j; ++k)
          if (p[k] != cur.perms[j - 2][k]) { ok = false; break; }
        if (!ok) continue;
      }
      cur.perms[j - 1] = p;
      rec(j + 1);
    }
  };
  rec(1);
  return out;
}

namespace {

std::vector<size_t> inverse_perm(const std::vector<size_t>& g) {
  std::vector<size_t> inv(g.size());
  for (size_t i = 0; i < g.size(); ++i) inv[g[i]] = i;
  return inv;
}

RegionDescriptor apply_perm(const std::vector<size_t>& g,
                            const RegionDescriptor& R) {
  std::vector<size_t> ginv = inverse_perm(g);
  RegionDescriptor out = R;
  out.summands.clear();
  for (const auto& [idx, reg] : R.summands) {
    TensorIndex nidx;
    nidx.places.resize(idx.places.size());
    for (size_t k = 0; k < ginv.size(); ++k)
      nidx.places[k] = idx.places[ginv[k]];
    out.summands[nidx] = reg.permuted(ginv);
  }
  return out;
}

// three-way comparison for canonical ordering of union members
int region_cmp(const LocalRegion& a, const LocalRegion& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.shifts != b.shifts) return a.shifts < b.shifts ? -1 : 1;
  if (!(a.defect == b.defect)) {
    if (a.defect.archimedean != b.defect.archimedean)
      return a.defect.archimedean < b.defect.archimedean ? -1 : 1;
    return a.defect.terms < b.defect.terms ? -1 : 1;
  }
  for (size_t i = 0; i < std::min(a.members.size(), b.members.size()); ++i)
    if (int c = region_cmp(a.members[i], b.members[i])) return c;
  if (a.members.size() != b.members.size())
    return a.members.size() < b.members.size() ? -1 : 1;
  return 0;
}

// flatten, sort, dedupe; collapse singleton unions
LocalRegion canonical_union(std::vector<LocalRegion> members) {
  std::vector<LocalRegion> flat;
  for (auto& m : members) {
    if (m.kind == LocalRegion::Kind::UnionOf)
      for (auto& inner : m.members) flat.push_back(std::move(inner));
    else
      flat.push_back(std::move(m));
  }
  std::sort(flat.begin(), flat.end(),
            [](const LocalRegion& a, const LocalRegion& b) {
              return region_cmp(a, b) < 0;
            });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.size() == 1) return flat[0];
  return LocalRegion::union_of(std::move(flat));
}

}  // namespace

RegionDescriptor ind1_act(const ProcessionAutomorphism& g,
                          const RegionDescriptor& R) {
  if (R.level == 0) return R;
  return apply_perm(g.perm_at_level(R.level), R);
}

RegionDescriptor ind1_orbit_union(const RegionDescriptor& R) {
  if (R.level > 6)
    throw computation_error("CapExceeded: orbit union limited to level <= 6");
  if (R.level == 0) return R;
  std::vector<size_t> g(R.level + 1);
  std::iota(g.begin(), g.end(), 0);
  // collect per-index member lists across the whole S_{level+1} orbit
  std::map<TensorIndex, std::vector<LocalRegion>> gathered;
  std::set<TensorIndex> touched;
  for (const auto& [idx, reg] : R.summands) touched.insert(idx);
  size_t orbit_size = 0;
  do {
    ++orbit_size;
    RegionDescriptor img = apply_perm(g, R);
    for (const auto& [idx, reg] : img.summands) {
      gathered[idx].push_back(reg);
      touched.insert(idx);
    }
  } while (std::next_permutation(g.begin(), g.end()));
  RegionDescriptor out = R;
  out.summands.clear();
  for (const auto& idx : touched) {
    auto members = gathered[idx];
    // images missing this index contribute the default full summand
    if (members.size() < orbit_size)
      members.push_back(LocalRegion::full_ring(idx.arity()));
    out.summands[idx] = canonical_union(std::move(members));
  }
  return out;
}

namespace {

bool ind2_aligned(const LocalRegion& r) {
  if (r.kind == LocalRegion::Kind::UnionOf) {
    for (const auto& m : r.members)
      if (!ind2_aligned(m)) return false;
    return true;
  }
  return r.kind == LocalRegion::Kind::ScaledLattice ||
         r.kind == LocalRegion::Kind::Polydisc;
}

}  // namespace

RegionDescriptor ind2_saturate(const RegionDescriptor& R) {
  for (const auto& [idx, reg] : R.summands)
    if (!ind2_aligned(reg))
      throw computation_error(
          "UnalignedRegion: summand is not expressed relative to the log-shell "
          "lattice");
  RegionDescriptor out = R;
  out.ind2_closed = true;
  return out;
}

LogValue lifted_logshell_volume(const LiftedPlace& v, const Ind3Params& params) {
  auto it = params.logshell_overrides.find(v.base.label);
  if (it != params.logshell_overrides.end()) return it->second;
  unsigned long p = v.prime();
  if (p == 2 || v.e >= p - 1)
    throw computation_error("MissingLogshellData: wild ramification at " +
                            v.base.label + " needs a configured volume");
  return regions::logshell_volume(v);
}

RegionDescriptor ind3_bound_region(const Ind3Params& params, unsigned j,
                                   const BaseField& base) {
  if (params.l < 5 || params.l % 2 == 0)
    throw validation_error("ind3_bound_region: l must be an odd prime >= 5");
  if (j < 1 || j > (params.l - 1) / 2)
    throw computation_error("ind3_bound_region: component index out of range");
  RegionDescriptor R;
  R.level = j;
  R.base = base;
  unsigned peel = j;  // default peel index for level j
  for (const auto& [p, fiber] : base.fibers) {
    R.prime_support.insert(p);
    // enumerate (j+1)-tuples over the fiber
    size_t arity = (size_t)j + 1;
    std::vector<size_t> pick(arity, 0);
    for (;;) {
      TensorIndex idx;
      idx.places.reserve(arity);
      for (size_t k = 0; k < arity; ++k) idx.places.push_back(fiber[pick[k]]);
      LogValue defect;
      for (const auto& w : idx.places) defect += lifted_logshell_volume(w, params);
      // ord_p shift through the peel factor when its place is bad
      Rat unit_shift(0);
      const BasePlace& bp = idx.places[peel].base;
      auto td = params.tate_data.find(bp);
      if (td != params.tate_data.end()) {
        Rat e_v((long)(bp.local_degree / bp.residue_degree));
        unit_shift = exactnum::ratio((long)(j * j) * (long)td->second.ord_q,
                                     2 * (long)params.l) /
                     e_v;
      }
      std::vector<LocalRegion> members;
      for (unsigned N = params.n0; N < params.n0 + 3; ++N) {
        std::vector<Rat> shifts(arity, Rat(0));
        shifts[peel] = unit_shift * Rat((long)N);
        members.push_back(LocalRegion::scaled_lattice(std::move(shifts), defect));
      }
      R.summands[idx] = canonical_union(std::move(members));
      // advance the tuple counter
      size_t k = 0;
      while (k < arity && ++pick[k] == fiber.size()) pick[k++] = 0;
      if (k == arity) break;
    }
  }
  return R;
}

std::map<unsigned, RegionDescriptor> multiradial_bound(const LgpDivisor& theta,
                                                       const Ind3Params& params,
                                                       const BaseField& base) {
  if (theta.components.size() != (params.l - 1) / 2)
    throw validation_error("multiradial_bound: component count disagrees with l");
  std::map<unsigned, RegionDescriptor> out;
  for (unsigned j = 1; j <= (unsigned)theta.components.size(); ++j)
    out[j] = ind2_saturate(ind1_orbit_union(ind3_bound_region(params, j, base)));
  return out;
}

InequalityReport evaluate_inequality(const Ind3Params& params,
                                     const BaseField& base,
                                     unsigned precision_cap) {
  if (params.tate_data.empty())
    throw validation_error("IncompleteScenario: empty bad-place set");
  if (base.fibers.empty())
    throw validation_error("IncompleteScenario: no lifted place data");
  for (const auto& [v, t] : params.tate_data)
    if (!base.fibers.count(v.prime))
      throw validation_error("IncompleteScenario: no lifted place over p=" +
                             std::to_string(v.prime));
  InequalityReport rep;
  arakelov::Divisor q = arakelov::q_pilot(params.tate_data, params.l);
  q.base_field_degree = base.degree;
  rep.lhs = -arakelov::normalized_degree(q);
  arakelov::LgpDivisor theta = arakelov::theta_pilot(params.tate_data, params.l);
  auto bound = multiradial_bound(theta, params, base);
  LogValue acc;
  for (const auto& [j, R] : bound) {
    LogValue vol = regions::ln_nu(regions::hull(R));
    rep.component_volumes[j] = vol;
    acc += vol;
  }
  rep.rhs = acc.scaled(exactnum::ratio(1, (long)bound.size()));
  rep.cmp = exactnum::compare(rep.lhs, rep.rhs, precision_cap);
  switch (rep.cmp.order) {
    case exactnum::Order::Less:
    case exactnum::Order::Equal:
      rep.verdict = "holds";
      break;
    case exactnum::Order::Greater:
      rep.verdict = "fails";
      break;
    default:
      rep.verdict = "unresolved";
  }
  return rep;
}

}  // namespace thetalab::indet
