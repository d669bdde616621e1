#include "thetalab/regions.hpp"

#include <algorithm>
#include <functional>

namespace thetalab::regions {

LocalRegion LocalRegion::full_ring(size_t arity) {
  LocalRegion r;
  r.kind = Kind::ScaledRing;
  r.shifts.assign(arity, Rat(0));
  return r;
}

namespace {

// A scalar pushed through any one tensor factor scales the whole module, so
// the subset only depends on the total shift; store it canonically in slot 0.
std::vector<Rat> canonical_scalar_shifts(std::vector<Rat> shifts) {
  Rat total(0);
  for (const auto& s : shifts) total += s;
  std::fill(shifts.begin(), shifts.end(), Rat(0));
  if (!shifts.empty()) shifts[0] = total;
  return shifts;
}

}  // namespace

LocalRegion LocalRegion::scaled_ring(std::vector<Rat> shifts) {
  LocalRegion r;
  r.kind = Kind::ScaledRing;
  r.shifts = canonical_scalar_shifts(std::move(shifts));
  return r;
}

LocalRegion LocalRegion::scaled_lattice(std::vector<Rat> shifts, LogValue defect) {
  LocalRegion r;
  r.kind = Kind::ScaledLattice;
  r.shifts = canonical_scalar_shifts(std::move(shifts));
  r.defect = std::move(defect);
  return r;
}

LocalRegion LocalRegion::polydisc(std::vector<Rat> radii) {
  LocalRegion r;
  r.kind = Kind::Polydisc;
  r.shifts = std::move(radii);
  return r;
}

LocalRegion LocalRegion::union_of(std::vector<LocalRegion> members) {
  if (members.empty())
    throw computation_error("union_of: empty union has no volume");
  LocalRegion r;
  r.kind = Kind::UnionOf;
  r.members = std::move(members);
  return r;
}

size_t LocalRegion::arity() const {
  if (kind == Kind::UnionOf) return members.at(0).arity();
  return shifts.size();
}

Rat LocalRegion::total_shift() const {
  Rat s(0);
  for (const auto& x : shifts) s += x;
  return s;
}

LocalRegion LocalRegion::permuted(const std::vector<size_t>& perm) const {
  LocalRegion r = *this;
  if (kind == Kind::UnionOf) {
    for (auto& m : r.members) m = m.permuted(perm);
    return r;
  }
  if (perm.size() != shifts.size())
    throw computation_error("permuted: arity mismatch");
  // scalar-scaled modules are pointwise invariant under factor permutation
  if (kind == Kind::ScaledRing || kind == Kind::ScaledLattice) return r;
  for (size_t i = 0; i < perm.size(); ++i) r.shifts[i] = shifts[perm[i]];
  return r;
}

BaseField BaseField::rationals(const std::set<unsigned long>& primes) {
  BaseField b;
  b.degree = 1;
  for (unsigned long p : primes) {
    LiftedPlace v;
    v.base = BasePlace::rational_finite(p);
    b.fibers[p] = {v};
  }
  return b;
}

const std::vector<LiftedPlace>& BaseField::fiber(unsigned long p) const {
  auto it = fibers.find(p);
  if (it == fibers.end() || it->second.empty())
    throw computation_error("no places over p=" + std::to_string(p));
  return it->second;
}

Rat place_weight(const BasePlace& v, unsigned long base_degree) {
  return exactnum::ratio((long)v.local_degree, (long)base_degree);
}

namespace {

std::vector<LocalRegion> flattened(const LocalRegion& u) {
  std::vector<LocalRegion> out;
  std::function<void(const LocalRegion&)> walk = [&](const LocalRegion& r) {
    if (r.kind == LocalRegion::Kind::UnionOf)
      for (const auto& m : r.members) walk(m);
    else
      out.push_back(r);
  };
  walk(u);
  return out;
}

// a contains b (set containment) for like-kind regions; larger shift means
// a smaller set, so containment is componentwise <=
bool contains(const LocalRegion& a, const LocalRegion& b) {
  if (a.kind != b.kind || a.defect != b.defect) return false;
  if (a.shifts.size() != b.shifts.size()) return false;
  for (size_t i = 0; i < a.shifts.size(); ++i)
    if (a.shifts[i] > b.shifts[i]) return false;
  return true;
}

}  // namespace

LogValue local_volume(const LocalRegion& r, unsigned long p) {
  switch (r.kind) {
    case LocalRegion::Kind::ScaledRing:
    case LocalRegion::Kind::Polydisc:
      return LogValue::ln_prime(p, -r.total_shift());
    case LocalRegion::Kind::ScaledLattice:
      return r.defect + LogValue::ln_prime(p, -r.total_shift());
    case LocalRegion::Kind::UnionOf: {
      auto flat = flattened(r);
      for (const auto& cand : flat) {
        bool top = true;
        for (const auto& other : flat)
          if (!contains(cand, other)) { top = false; break; }
        if (top) return local_volume(cand, p);
      }
      throw computation_error(
          "InexactRegion: union is not a containment chain; use ln_nu_upper");
    }
  }
  throw computation_error("unreachable region kind");
}

LogValue local_volume_upper(const LocalRegion& r, unsigned long p) {
  if (r.kind == LocalRegion::Kind::UnionOf)
    return local_volume(local_hull(r), p);
  return local_volume(r, p);
}

LocalRegion local_hull(const LocalRegion& r) {
  if (r.kind != LocalRegion::Kind::UnionOf) return r;
  auto flat = flattened(r);
  bool same_kind = true;
  for (const auto& m : flat)
    if (m.kind != flat[0].kind || m.defect != flat[0].defect ||
        m.arity() != flat[0].arity())
      same_kind = false;
  if (same_kind) {
    LocalRegion h = flat[0];
    for (const auto& m : flat)
      for (size_t i = 0; i < h.shifts.size(); ++i)
        h.shifts[i] = std::min(h.shifts[i], m.shifts[i]);
    return h;
  }
  // mixed ring/disc members share polydisc geometry; lattices do not mix
  std::vector<Rat> radii;
  for (const auto& m : flat) {
    if (m.kind == LocalRegion::Kind::ScaledLattice)
      throw computation_error("hull: heterogeneous union with lattice member");
    if (radii.empty())
      radii = m.shifts;
    else if (radii.size() != m.shifts.size())
      throw computation_error("hull: arity mismatch in union");
    else
      for (size_t i = 0; i < radii.size(); ++i)
        radii[i] = std::min(radii[i], m.shifts[i]);
  }
  return LocalRegion::polydisc(std::move(radii));
}

namespace {

Rat index_weight(const TensorIndex& idx, unsigned long base_degree) {
  Rat w(1);
  for (const auto& v : idx.places) w *= place_weight(v.base, base_degree);
  return w;
}

LogValue ln_nu_impl(const RegionDescriptor& R, bool upper) {
  LogValue acc;
  for (const auto& [idx, reg] : R.summands) {
    if (idx.arity() != (size_t)R.level + 1)
      throw computation_error("ln_nu: summand arity does not match level");
    unsigned long p = idx.prime();
    LogValue vol = upper ? local_volume_upper(reg, p) : local_volume(reg, p);
    acc += vol.scaled(index_weight(idx, R.base.degree));
  }
  return acc;
}

void enumerate_tuples(const std::vector<LiftedPlace>& fiber, size_t arity,
                      const std::function<void(const TensorIndex&)>& fn) {
  TensorIndex idx;
  idx.places.resize(arity, fiber[0]);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == arity) {
      fn(idx);
      return;
    }
    for (const auto& v : fiber) {
      idx.places[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace

LogValue ln_nu(const RegionDescriptor& R) { return ln_nu_impl(R, false); }
LogValue ln_nu_upper(const RegionDescriptor& R) { return ln_nu_impl(R, true); }

RegionDescriptor region_of_divisor(const Divisor& D, unsigned level,
                                   unsigned peel_index, const BaseField& base) {
  if (peel_index > level)
    throw computation_error("region_of_divisor: peel index exceeds level");
  RegionDescriptor R;
  R.level = level;
  R.base = base;
  for (const auto& [p, fiber] : base.fibers) R.prime_support.insert(p);
  // group divisor entries by prime; ramification of the base place converts
  // the v-adic coefficient into an ord_p shift
  std::map<unsigned long, std::map<BasePlace, Rat>> by_prime;
  for (const auto& [v, c] : D.entries) {
    if (!v.finite)
      throw computation_error("region_of_divisor: archimedean support");
    by_prime[v.prime][v] = c;
  }
  for (const auto& [p, supp] : by_prime) {
    const auto& fiber = base.fiber(p);
    enumerate_tuples(fiber, (size_t)level + 1, [&](const TensorIndex& idx) {
      const BasePlace& at_peel = idx.places[peel_index].base;
      auto it = supp.find(at_peel);
      if (it == supp.end()) return;  // scalar is a unit here: full summand
      Rat e_v((long)(at_peel.local_degree / at_peel.residue_degree));
      std::vector<Rat> shifts((size_t)level + 1, Rat(0));
      shifts[peel_index] = it->second / e_v;
      R.summands[idx] = LocalRegion::scaled_ring(std::move(shifts));
    });
  }
  return R;
}

std::map<unsigned, RegionDescriptor> region_of_lgp(const LgpDivisor& P,
                                                   const BaseField& base) {
  std::map<unsigned, RegionDescriptor> out;
  for (size_t j = 1; j <= P.components.size(); ++j)
    out[(unsigned)j] =
        region_of_divisor(P.components[j - 1], (unsigned)j, (unsigned)j, base);
  return out;
}

namespace {

void add_shift(LocalRegion& r, size_t i, const Rat& a) {
  if (r.kind == LocalRegion::Kind::UnionOf) {
    for (auto& m : r.members) add_shift(m, i, a);
    return;
  }
  if (r.kind == LocalRegion::Kind::Polydisc) {
    r.shifts.at(i) += a;
    return;
  }
  // scalar-scaled modules keep the canonical slot-0 form
  (void)r.shifts.at(i);  // bounds check only
  r.shifts.at(0) += a;
}

}  // namespace

RegionDescriptor peel_act(const Rat& a_ord, unsigned long p, unsigned i,
                          const RegionDescriptor& R) {
  if (i > R.level) throw computation_error("peel_act: index exceeds level");
  RegionDescriptor out = R;
  if (a_ord == 0) return out;
  out.prime_support.insert(p);
  const auto& fiber = out.base.fiber(p);
  enumerate_tuples(fiber, (size_t)R.level + 1, [&](const TensorIndex& idx) {
    auto it = out.summands.find(idx);
    if (it == out.summands.end())
      it = out.summands.emplace(idx, LocalRegion::full_ring((size_t)R.level + 1))
               .first;
    add_shift(it->second, i, a_ord);
  });
  return out;
}

RegionDescriptor hull(const RegionDescriptor& R) {
  RegionDescriptor out = R;
  for (auto& [idx, reg] : out.summands) reg = local_hull(reg);
  return out;
}

LogValue logshell_volume(const LiftedPlace& v) {
  unsigned long p = v.prime();
  if (p == 2)
    throw computation_error("logshell_volume: residue characteristic must be odd");
  if (v.e >= p - 1)
    throw computation_error(
        "WildRamification: e >= p-1 needs a configured log-shell volume");
  return LogValue::ln_prime(p, exactnum::ratio((long)v.e - 1, (long)v.e));
}

}  // namespace thetalab::regions
