#pragma once

#include <array>
#include <optional>
#include <set>

#include "thetalab/arakelov.hpp"
#include "thetalab/curve.hpp"

namespace thetalab::theta {

using arakelov::BasePlace;
using tate::TateLocalData;

// 2x2 matrix over Z/l
struct Mat2 {
  unsigned long l;
  std::array<std::array<unsigned long, 2>, 2> a;

  bool operator==(const Mat2&) const = default;
  Mat2 operator*(const Mat2& o) const;
  unsigned long det() const;
  Mat2 inverse() const;
  static Mat2 identity(unsigned long l);
};

// line in (Z/l)^2, normalized representative (1, t) or (0, 1)
struct Line {
  unsigned long l;
  std::array<unsigned long, 2> rep;

  auto operator<=>(const Line&) const = default;
  static Line span(unsigned long l, unsigned long x, unsigned long y);
};

std::vector<Line> all_lines(unsigned long l);
Line act(const Mat2& g, const Line& L);

// |GL2(F_r)| by direct enumeration of invertible matrices
unsigned long gl2_order_by_enumeration(unsigned long r);

// fiber of the modeled Galois action over one base place: abstract lifted
// place labels, generator action, decomposition assignment mu, and the
// distinguished starting place
struct Fiber {
  std::vector<std::string> labels;
  std::vector<std::map<std::string, std::string>> gen_action;  // per generator
  std::map<std::string, Line> mu;
  std::string base_label;  // the place v-tilde the search starts from
};

struct GaloisModel {
  unsigned long l = 0;
  std::vector<Mat2> generators;
  std::map<BasePlace, Fiber> fibers;

  void validate() const;
  // natural model: labels are the l+1 lines, mu is the identity
  static Fiber natural_fiber(unsigned long l,
                             const std::vector<Mat2>& generators,
                             const Line& distinguished);
};

// symbolic Fricke data: quotient by M, generated by the image of the
// canonical complement; double_involute realizes the canonical
// identification after a second application
struct FrickeResult {
  Line input;
  Line quotient_generator;
  Line involute_in_quotient;  // always span(1,0) in the quotient basis
  Line double_involute;
};

FrickeResult fricke(const Line& M);

// true iff M is the distinguished mu-line of the lifted place w
bool local_mult_subspace_test(const Line& M, const std::string& w,
                              const GaloisModel& gm);

// section v -> lifted place label with mu(label) = M, found by orbit search
std::map<BasePlace, std::string> build_underline_V(const GaloisModel& gm,
                                                   const Line& M);

// eps in the Tate-aligned basis (zeta, q^{1/l}); true iff its image in the
// quotient by M equals +-1 times the q^{1/l} class
bool canonical_generator_check(const std::array<unsigned long, 2>& eps,
                               const std::string& w, const GaloisModel& gm,
                               const Line& M);

enum class CheckStatus { ComputedPass, ComputedFail, Attested };

struct Attestations {
  bool non_shimura = false;
  bool torsion_conditions = false;
};

struct PreThetaReport {
  std::map<std::string, CheckStatus> conditions;
  std::vector<std::string> failures;  // failing sub-check names, in order

  bool all_pass() const { return failures.empty(); }
};

PreThetaReport check_pre_theta(const curve::WeierstrassModel& m,
                               unsigned long l,
                               const std::set<unsigned long>& S,
                               const Attestations& att);

struct InitialThetaData {
  PreThetaReport pre;
  std::map<BasePlace, std::string> V_section;
  Line M;
  std::array<unsigned long, 2> epsilon;  // stored up to sign
};

// validates and assembles; ConditionFailure when a computed check fails
InitialThetaData build_initial_theta_data(const curve::WeierstrassModel& m,
                                          unsigned long l,
                                          const std::set<unsigned long>& S,
                                          const Attestations& att,
                                          const GaloisModel& gm, const Line& M);

struct E11a1Scenario {
  curve::WeierstrassModel curve;
  unsigned long l;
  std::set<unsigned long> S;
  std::map<BasePlace, TateLocalData> tate_data;
  GaloisModel gm;
  tate::Transvection tv;
  InitialThetaData data;
};

E11a1Scenario e11a1_scenario();

}  // namespace thetalab::theta
