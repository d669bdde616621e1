#include "thetalab/curve.hpp"

#include <algorithm>

namespace thetalab::curve {

Invariants invariants(const WeierstrassModel& m) {
  Invariants iv;
  iv.b2 = m.a1 * m.a1 + 4 * m.a2;
  iv.b4 = 2 * m.a4 + m.a1 * m.a3;
  iv.b6 = m.a3 * m.a3 + 4 * m.a6;
  iv.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 +
          m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  iv.c4 = iv.b2 * iv.b2 - 24 * iv.b4;
  iv.c6 = -iv.b2 * iv.b2 * iv.b2 + 36 * iv.b2 * iv.b4 - 216 * iv.b6;
  iv.disc = -iv.b2 * iv.b2 * iv.b8 - 8 * iv.b4 * iv.b4 * iv.b4 -
            27 * iv.b6 * iv.b6 + 9 * iv.b2 * iv.b4 * iv.b6;
  if (iv.disc == 0) throw computation_error("SingularModel: discriminant is zero");
  iv.j = Rat(iv.c4 * iv.c4 * iv.c4) / Rat(iv.disc);
  iv.j.canonicalize();
  return iv;
}

WeierstrassModel transformed(const WeierstrassModel& m, const Int& u,
                             const Int& r, const Int& s, const Int& t) {
  if (u == 0) throw computation_error("transform: u must be nonzero");
  auto exact_div = [](const Int& num, const Int& den) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
      throw computation_error("transform: non-integral result");
    Int q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  };
  Int u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  WeierstrassModel n;
  n.a1 = exact_div(m.a1 + 2 * s, u);
  n.a2 = exact_div(m.a2 - s * m.a1 + 3 * r - s * s, u2);
  n.a3 = exact_div(m.a3 + r * m.a1 + 2 * t, u3);
  n.a4 = exact_div(m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 +
                       3 * r * r - 2 * s * t,
                   u4);
  n.a6 = exact_div(m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 -
                       t * t - r * t * m.a1,
                   u6);
  return n;
}

unsigned valuation(const Int& n, unsigned long p) {
  if (n == 0) throw computation_error("valuation of zero");
  unsigned v = 0;
  Int r = n;
  while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::vector<std::pair<unsigned long, unsigned>> factor(Int n) {
  std::vector<std::pair<unsigned long, unsigned>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (unsigned long p = 2; Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) {
    if (!n.fits_ulong_p())
      throw computation_error("factor: remaining cofactor too large");
    out.emplace_back(n.get_ui(), 1);
  }
  return out;
}

namespace {

// Kraus' criteria: does (c4, c6) come from an integral model at 2 and 3?
bool kraus_ok_3(const Int& c6) {
  return c6 == 0 || valuation(c6, 3) != 2;
}

bool kraus_ok_2(const Int& c4, const Int& c6) {
  Int m4, m32;
  mpz_fdiv_r_ui(m4.get_mpz_t(), c6.get_mpz_t(), 4);
  if (m4 == 3) return true;
  mpz_fdiv_r_ui(m32.get_mpz_t(), c6.get_mpz_t(), 32);
  return mpz_divisible_ui_p(c4.get_mpz_t(), 16) && (m32 == 0 || m32 == 8);
}

// Rebuild a model from minimal (c4, c6); a valid b2 exists by Kraus.
WeierstrassModel model_from_c4c6(const Int& c4, const Int& c6) {
  for (long b2c = -6; b2c <= 6; ++b2c) {
    Int b2(b2c);
    Int num4 = b2 * b2 - c4;
    if (!mpz_divisible_ui_p(num4.get_mpz_t(), 24)) continue;
    Int b4;
    mpz_divexact_ui(b4.get_mpz_t(), num4.get_mpz_t(), 24);
    Int num6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (!mpz_divisible_ui_p(num6.get_mpz_t(), 216)) continue;
    Int b6;
    mpz_divexact_ui(b6.get_mpz_t(), num6.get_mpz_t(), 216);
    WeierstrassModel m;
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), b2.get_mpz_t(), 2);
    m.a1 = r;
    if (!mpz_divisible_ui_p(Int(b2 - m.a1).get_mpz_t(), 4)) continue;
    m.a2 = (b2 - m.a1) / 4;
    mpz_fdiv_r_ui(r.get_mpz_t(), b6.get_mpz_t(), 2);
    m.a3 = r;
    if (!mpz_divisible_ui_p(Int(b6 - m.a3).get_mpz_t(), 4)) continue;
    m.a6 = (b6 - m.a3) / 4;
    Int num_a4 = b4 - m.a1 * m.a3;
    if (!mpz_divisible_ui_p(num_a4.get_mpz_t(), 2)) continue;
    m.a4 = num_a4 / 2;
    Invariants iv = invariants(m);
    if (iv.c4 == c4 && iv.c6 == c6) return m;
  }
  throw computation_error("model_from_c4c6: no integral model (Kraus violated)");
}

}  // namespace

WeierstrassModel minimal_model(const WeierstrassModel& m) {
  Invariants iv = invariants(m);
  // largest u with u^4 | c4, u^6 | c6, u^12 | disc, adjusted by Kraus at 2, 3
  Int u(1);
  for (const auto& [p, vd] : factor(iv.disc)) {
    unsigned g = vd / 12;
    if (iv.c4 != 0) g = std::min(g, valuation(iv.c4, p) / 4);
    if (iv.c6 != 0) g = std::min(g, valuation(iv.c6, p) / 6);
    if (p == 2 || p == 3) {
      while (g > 0) {
        Int pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, g);
        Int c4p = iv.c4 / (pk * pk * pk * pk);
        Int c6p = iv.c6 / (pk * pk * pk * pk * pk * pk);
        bool ok = (p == 3) ? kraus_ok_3(c6p) : kraus_ok_2(c4p, c6p);
        if (ok) break;
        --g;
      }
    }
    for (unsigned i = 0; i < g; ++i) u *= (long)p;
  }
  Int u4 = u * u * u * u;
  Int c4m = iv.c4 / u4;
  Int c6m = iv.c6 / (u4 * u * u);
  return model_from_c4c6(c4m, c6m);
}

namespace {

int legendre_ui(const Int& a, unsigned long p) {
  Int pp((long)p);
  return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

}  // namespace

ReductionReport reduction_type(const WeierstrassModel& m, unsigned long p) {
  Invariants iv = invariants(m);
  ReductionReport r;
  r.prime = p;
  r.disc_valuation = valuation(iv.disc, p);
  if (r.disc_valuation == 0) {
    r.kind = ReductionKind::Good;
    r.kodaira = "I0";
    r.tamagawa = 1;
    r.conductor_exponent = 0;
    return r;
  }
  bool multiplicative = !mpz_divisible_ui_p(iv.c4.get_mpz_t(), p);
  if (!multiplicative) {
    if (p < 5)
      throw computation_error(
          "AdditiveUnsupportedDetail: additive reduction at p in {2,3}");
    r.kind = ReductionKind::Additive;
    r.kodaira = "additive";
    r.tamagawa = 0;  // not computed
    r.conductor_exponent = 2;
    return r;
  }
  bool split;
  if (p == 2) {
    // count nonsingular points over F_2: split I_n has p - 1 = 1 of them
    unsigned long count = 0;
    for (unsigned long x = 0; x < 2; ++x)
      for (unsigned long y = 0; y < 2; ++y) {
        Int lhs = Int((long)(y * y)) + m.a1 * (long)(x * y) + m.a3 * (long)y;
        Int rhs = Int((long)(x * x * x)) + m.a2 * (long)(x * x) +
                  m.a4 * (long)x + m.a6;
        if (mpz_divisible_ui_p(Int(lhs - rhs).get_mpz_t(), 2)) {
          // singular iff both partials vanish
          Int fy = 2 * (long)y + m.a1 * (long)x + m.a3;
          Int fx = m.a1 * (long)y - 3 * (long)(x * x) - 2 * m.a2 * (long)x - m.a4;
          bool sing = mpz_divisible_ui_p(fy.get_mpz_t(), 2) &&
                      mpz_divisible_ui_p(fx.get_mpz_t(), 2);
          if (!sing) ++count;
        }
      }
    // split I_n over F_2 has #E^ns = p - 1 = 1, i.e. no affine smooth points
    split = (count == 0);
  } else {
    split = legendre_ui(-iv.c6, p) == 1;
  }
  r.kind = split ? ReductionKind::SplitMultiplicative
                 : ReductionKind::NonsplitMultiplicative;
  r.kodaira = "I" + std::to_string(r.disc_valuation);
  r.tamagawa = split ? r.disc_valuation : (r.disc_valuation % 2 == 0 ? 2 : 1);
  r.conductor_exponent = 1;
  return r;
}

long ap_trace(const WeierstrassModel& m, unsigned long p) {
  Invariants iv = invariants(m);
  if (mpz_divisible_ui_p(iv.disc.get_mpz_t(), p))
    throw computation_error("BadReduction: p divides the discriminant");
  if (p == 2) {
    long count = 1;  // point at infinity
    for (unsigned long x = 0; x < 2; ++x)
      for (unsigned long y = 0; y < 2; ++y) {
        Int lhs = Int((long)(y * y)) + m.a1 * (long)(x * y) + m.a3 * (long)y -
                  Int((long)(x * x * x)) - m.a2 * (long)(x * x) -
                  m.a4 * (long)x - m.a6;
        if (mpz_divisible_ui_p(lhs.get_mpz_t(), 2)) ++count;
      }
    return (long)p + 1 - count;
  }
  // complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  long sum = 0;
  Int pp((long)p);
  for (unsigned long x = 0; x < p; ++x) {
    Int xi((long)x);
    Int g = ((4 * xi + iv.b2) * xi + 2 * iv.b4) * xi + iv.b6;
    sum += mpz_legendre(g.get_mpz_t(), pp.get_mpz_t());
  }
  return -sum;
}

SurjectivityResult mod_l_image_contains_sl2(const WeierstrassModel& m,
                                            unsigned long l,
                                            unsigned long prime_bound) {
  if (l < 5) throw computation_error("mod_l_image_contains_sl2: need l >= 5");
  Invariants iv = invariants(m);
  SurjectivityResult res;
  // witnesses: an element with irreducible characteristic polynomial, one
  // with split semisimple regular polynomial, and one ruling out the
  // exceptional (Dickson) images via u = a_p^2 / p
  unsigned long w_irred = 0, w_split = 0, w_exc = 0;
  Int ll((long)l);
  for (unsigned long p = 2; p <= prime_bound; ++p) {
    bool prime = p >= 2;
    for (unsigned long d = 2; d * d <= p; ++d)
      if (p % d == 0) { prime = false; break; }
    if (!prime || p == l) continue;
    if (mpz_divisible_ui_p(iv.disc.get_mpz_t(), p)) continue;
    long ap = ap_trace(m, p);
    Int t = Int(ap) % ll;
    if (t < 0) t += ll;
    Int disc = (Int(ap) * ap - 4 * Int((long)p)) % ll;
    if (disc < 0) disc += ll;
    if (t != 0 && w_irred == 0 && legendre_ui(disc, l) == -1) w_irred = p;
    if (t != 0 && w_split == 0 && legendre_ui(disc, l) == 1) w_split = p;
    if (w_exc == 0) {
      Int pinv;
      Int pl = Int((long)p) % ll;
      if (mpz_invert(pinv.get_mpz_t(), pl.get_mpz_t(), ll.get_mpz_t()) != 0) {
        Int u = (t * t * pinv) % ll;
        if (u != 0 && u != 1 && u != 2 && u != 4 &&
            (u * u - 3 * u + 1) % ll != 0)
          w_exc = p;
      }
    }
    if (w_irred && w_split && w_exc) break;
  }
  if (w_irred && w_split && w_exc) {
    res.verified = true;
    res.witnesses = {w_irred, w_split, w_exc};
    std::sort(res.witnesses.begin(), res.witnesses.end());
    res.witnesses.erase(
        std::unique(res.witnesses.begin(), res.witnesses.end()),
        res.witnesses.end());
  }
  return res;
}

}  // namespace thetalab::curve
