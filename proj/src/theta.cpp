#include "thetalab/theta.hpp"

#include <deque>

namespace thetalab::theta {

Mat2 Mat2::identity(unsigned long l) { return Mat2{l, {{{1, 0}, {0, 1}}}}; }

Mat2 Mat2::operator*(const Mat2& o) const {
  if (l != o.l) throw computation_error("Mat2: modulus mismatch");
  Mat2 r{l, {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.a[i][j] = (a[i][0] * o.a[0][j] + a[i][1] * o.a[1][j]) % l;
  return r;
}

unsigned long Mat2::det() const {
  // avoid unsigned underflow: add a multiple of l before subtracting
  return (a[0][0] * a[1][1] % l + l * l - a[0][1] * a[1][0] % l) % l;
}

Mat2 Mat2::inverse() const {
  unsigned long d = det();
  if (d == 0) throw computation_error("Mat2: singular matrix");
  // Fermat inverse of the determinant
  unsigned long dinv = 1, base = d, e = l - 2;
  while (e) {
    if (e & 1) dinv = dinv * base % l;
    base = base * base % l;
    e >>= 1;
  }
  Mat2 r{l, {}};
  r.a[0][0] = a[1][1] * dinv % l;
  r.a[1][1] = a[0][0] * dinv % l;
  r.a[0][1] = (l - a[0][1] % l) % l * dinv % l;
  r.a[1][0] = (l - a[1][0] % l) % l * dinv % l;
  return r;
}

Line Line::span(unsigned long l, unsigned long x, unsigned long y) {
  x %= l;
  y %= l;
  if (x == 0 && y == 0) throw computation_error("Line: zero vector spans no line");
  Line L{l, {x, y}};
  // normalize: leading nonzero coordinate 1
  auto scale = [&](unsigned long c) {
    unsigned long cinv = 1, base = c, e = l - 2;
    while (e) {
      if (e & 1) cinv = cinv * base % l;
      base = base * base % l;
      e >>= 1;
    }
    L.rep = {x * cinv % l, y * cinv % l};
  };
  if (x != 0)
    scale(x);
  else
    scale(y);
  return L;
}

std::vector<Line> all_lines(unsigned long l) {
  std::vector<Line> out;
  for (unsigned long t = 0; t < l; ++t) out.push_back(Line::span(l, 1, t));
  out.push_back(Line::span(l, 0, 1));
  return out;
}

Line act(const Mat2& g, const Line& L) {
  if (g.l != L.l) throw computation_error("act: modulus mismatch");
  unsigned long x = (g.a[0][0] * L.rep[0] + g.a[0][1] * L.rep[1]) % g.l;
  unsigned long y = (g.a[1][0] * L.rep[0] + g.a[1][1] * L.rep[1]) % g.l;
  return Line::span(g.l, x, y);
}

unsigned long gl2_order_by_enumeration(unsigned long r) {
  unsigned long count = 0;
  for (unsigned long a = 0; a < r; ++a)
    for (unsigned long b = 0; b < r; ++b)
      for (unsigned long c = 0; c < r; ++c)
        for (unsigned long d = 0; d < r; ++d)
          if ((a * d % r + r - b * c % r) % r != 0) ++count;
  return count;
}

void GaloisModel::validate() const {
  if (l < 3) throw validation_error("galois model: l must be an odd prime >= 3");
  for (const auto& g : generators)
    if (g.l != l || g.det() == 0)
      throw validation_error("galois model: generator not invertible mod l");
  for (const auto& [v, fib] : fibers) {
    if (fib.labels.empty())
      throw validation_error("galois model: empty fiber at " + v.label);
    if (fib.gen_action.size() != generators.size())
      throw validation_error("galois model: fiber action arity mismatch");
    for (const auto& w : fib.labels)
      if (!fib.mu.count(w))
        throw validation_error("galois model: missing mu assignment");
    if (!fib.mu.count(fib.base_label))
      throw validation_error("galois model: base label not in fiber");
    for (const auto& action : fib.gen_action) {
      std::set<std::string> image;
      for (const auto& w : fib.labels) {
        auto it = action.find(w);
        if (it == action.end() || !fib.mu.count(it->second))
          throw validation_error("galois model: action not defined on fiber");
        image.insert(it->second);
      }
      if (image.size() != fib.labels.size())
        throw validation_error("galois model: action is not a bijection");
    }
  }
}

Fiber GaloisModel::natural_fiber(unsigned long l,
                                 const std::vector<Mat2>& generators,
                                 const Line& distinguished) {
  auto name = [](const Line& L) {
    return "L(" + std::to_string(L.rep[0]) + "," + std::to_string(L.rep[1]) + ")";
  };
  Fiber f;
  for (const auto& L : all_lines(l)) {
    f.labels.push_back(name(L));
    f.mu[name(L)] = L;
  }
  for (const auto& g : generators) {
    std::map<std::string, std::string> action;
    for (const auto& L : all_lines(l)) action[name(L)] = name(act(g, L));
    f.gen_action.push_back(std::move(action));
  }
  f.base_label = name(distinguished);
  return f;
}

namespace {

unsigned long mod_pow_inv(unsigned long c, unsigned long l) {
  unsigned long r = 1, base = c % l, e = l - 2;
  while (e) {
    if (e & 1) r = r * base % l;
    base = base * base % l;
    e >>= 1;
  }
  return r;
}

// canonical complement of a normalized line representative
std::array<unsigned long, 2> complement_of(const Line& M) {
  if (M.rep[0] != 0) return {0, 1};
  return {1, 0};
}

}  // namespace

FrickeResult fricke(const Line& M) {
  unsigned long l = M.l;
  FrickeResult r;
  r.input = M;
  auto c = complement_of(M);
  r.quotient_generator = Line::span(l, c[0], c[1]);
  // quotient basis (f1, f2) = (image of the complement, m / l); the involute
  // line E[l]/M is spanned by f1
  r.involute_in_quotient = Line::span(l, 1, 0);
  // second application quotients by span(f1); the new involute is the image
  // of f2, and multiplication by l identifies it with the class of m
  std::array<unsigned long, 2> f2 = {M.rep[0], M.rep[1]};
  r.double_involute = Line::span(l, f2[0], f2[1]);
  return r;
}

namespace {

const Fiber* find_fiber(const GaloisModel& gm, const std::string& w,
                        const BasePlace** place_out = nullptr) {
  for (const auto& [v, fib] : gm.fibers) {
    for (const auto& lab : fib.labels)
      if (lab == w) {
        if (place_out) *place_out = &v;
        return &fib;
      }
  }
  return nullptr;
}

}  // namespace

bool local_mult_subspace_test(const Line& M, const std::string& w,
                              const GaloisModel& gm) {
  const Fiber* fib = find_fiber(gm, w);
  if (!fib) throw computation_error("UnknownPlace: no fiber contains " + w);
  return fib->mu.at(w) == M;
}

std::map<BasePlace, std::string> build_underline_V(const GaloisModel& gm,
                                                   const Line& M) {
  gm.validate();
  std::map<BasePlace, std::string> out;
  for (const auto& [v, fib] : gm.fibers) {
    // inverse actions for backward steps
    std::vector<std::map<std::string, std::string>> inv_action;
    for (const auto& action : fib.gen_action) {
      std::map<std::string, std::string> inv;
      for (const auto& [a, b] : action) inv[b] = a;
      inv_action.push_back(std::move(inv));
    }
    std::vector<Mat2> inv_gen;
    for (const auto& g : gm.generators) inv_gen.push_back(g.inverse());

    std::set<std::pair<std::string, Line>> seen;
    std::deque<std::pair<std::string, Line>> queue;
    std::pair<std::string, Line> start{fib.base_label, fib.mu.at(fib.base_label)};
    queue.push_back(start);
    seen.insert(start);
    std::optional<std::string> found;
    while (!queue.empty() && !found) {
      auto [w, L] = queue.front();
      queue.pop_front();
      if (L == M) {
        found = w;
        break;
      }
      for (size_t g = 0; g < gm.generators.size(); ++g) {
        std::pair<std::string, Line> fwd{fib.gen_action[g].at(w),
                                         act(gm.generators[g], L)};
        std::pair<std::string, Line> bwd{inv_action[g].at(w), act(inv_gen[g], L)};
        for (auto& next : {fwd, bwd})
          if (seen.insert(next).second) queue.push_back(next);
      }
    }
    if (!found)
      throw computation_error("Unreachable: no group element transports mu(" +
                              fib.base_label + ") to the target line at " +
                              v.label);
    out[v] = *found;
  }
  return out;
}

bool canonical_generator_check(const std::array<unsigned long, 2>& eps,
                               const std::string& w, const GaloisModel& gm,
                               const Line& M) {
  if (!local_mult_subspace_test(M, w, gm))
    throw computation_error(
        "SubspaceNotMultiplicative: M is not the mu-line at " + w);
  unsigned long l = M.l;
  if (eps[0] % l == 0 && eps[1] % l == 0)
    throw computation_error("canonical_generator_check: eps is zero");
  // eps maps to +-(class of q^{1/l}) iff eps -+ (0,1) lies in M
  auto in_line = [&](long x, long y) {
    unsigned long ux = (unsigned long)(((x % (long)l) + (long)l) % (long)l);
    unsigned long uy = (unsigned long)(((y % (long)l) + (long)l) % (long)l);
    if (ux == 0 && uy == 0) return true;
    // cross product with the line's representative
    return (ux * M.rep[1] % l + l - uy * M.rep[0] % l) % l == 0;
  };
  long a = (long)(eps[0] % l), b = (long)(eps[1] % l);
  return in_line(a, b - 1) || in_line(a, b + 1);
}

PreThetaReport check_pre_theta(const curve::WeierstrassModel& m,
                               unsigned long l,
                               const std::set<unsigned long>& S,
                               const Attestations& att) {
  if (S.empty()) throw validation_error("EmptyBadSet: S must be nonempty");
  PreThetaReport rep;
  auto record = [&](const std::string& name, bool pass) {
    rep.conditions[name] = pass ? CheckStatus::ComputedPass
                                : CheckStatus::ComputedFail;
    if (!pass) rep.failures.push_back(name);
  };
  rep.conditions["non-shimura"] =
      att.non_shimura ? CheckStatus::Attested : CheckStatus::ComputedFail;
  if (!att.non_shimura) rep.failures.push_back("non-shimura (not attested)");
  rep.conditions["torsion-conditions"] =
      att.torsion_conditions ? CheckStatus::Attested : CheckStatus::ComputedFail;
  if (!att.torsion_conditions)
    rep.failures.push_back("torsion-conditions (not attested)");

  record("l-at-least-5", l >= 5);
  curve::WeierstrassModel mm = curve::minimal_model(m);
  for (unsigned long p : S) {
    std::string at = " at p=" + std::to_string(p);
    record("odd-residue-characteristic" + at, p != 2);
    bool mult = false;
    unsigned long ord_q = 0;
    if (p != 2) {
      curve::ReductionReport rr = curve::reduction_type(mm, p);
      mult = rr.kind == curve::ReductionKind::SplitMultiplicative ||
             rr.kind == curve::ReductionKind::NonsplitMultiplicative;
      ord_q = rr.disc_valuation;
    }
    record("multiplicative-reduction" + at, mult);
    record("l-not-residue-characteristic" + at, l != p);
    record("l-not-dividing-ord-q" + at, mult && ord_q % l != 0);
  }
  // [F : Q(j_E)] divides 2 * |GL2(F_2)| * |GL2(F_3)| * |GL2(F_5)| (30-torsion
  // with a quadratic twist); the test is one-sided
  unsigned long bound = 2;
  for (unsigned long r : {2ul, 3ul, 5ul}) bound *= gl2_order_by_enumeration(r);
  record("l-not-dividing-field-degree-bound", bound % l != 0);
  bool image_ok = false;
  if (l >= 5) image_ok = curve::mod_l_image_contains_sl2(mm, l).verified;
  record("mod-l-image-contains-sl2", image_ok);
  return rep;
}

InitialThetaData build_initial_theta_data(const curve::WeierstrassModel& m,
                                          unsigned long l,
                                          const std::set<unsigned long>& S,
                                          const Attestations& att,
                                          const GaloisModel& gm, const Line& M) {
  InitialThetaData d;
  d.pre = check_pre_theta(m, l, S, att);
  if (!d.pre.all_pass())
    throw validation_error("ConditionFailure: " + d.pre.failures.front());
  d.V_section = build_underline_V(gm, M);
  d.M = M;
  d.epsilon = {0, 1};  // the class of q^{1/l}
  for (const auto& [v, w] : d.V_section)
    if (!canonical_generator_check(d.epsilon, w, gm, M))
      throw validation_error("ConditionFailure: canonical generator at " + w);
  return d;
}

E11a1Scenario e11a1_scenario() {
  E11a1Scenario sc;
  sc.curve = {exactnum::Int(0), exactnum::Int(-1), exactnum::Int(1),
              exactnum::Int(-10), exactnum::Int(-20)};
  sc.l = 13;
  sc.S = {11};
  BasePlace v11 = BasePlace::rational_finite(11);
  sc.tate_data[v11] = TateLocalData{11, 5, true};
  sc.tv = tate::transvection(11, 5, sc.l);
  sc.gm.l = sc.l;
  sc.gm.generators = {Mat2{sc.l, {{{1, 1}, {0, 1}}}},
                      Mat2{sc.l, {{{1, 0}, {1, 1}}}}};
  Line zeta_line = Line::span(sc.l, 1, 0);
  sc.gm.fibers[v11] =
      GaloisModel::natural_fiber(sc.l, sc.gm.generators, zeta_line);
  Attestations att;
  att.non_shimura = true;
  att.torsion_conditions = true;
  sc.data =
      build_initial_theta_data(sc.curve, sc.l, sc.S, att, sc.gm, zeta_line);
  return sc;
}

}  // namespace thetalab::theta
