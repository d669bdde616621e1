#include "thetalab/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace thetalab::scenario {

namespace {

using exactnum::LogValue;
using exactnum::Rat;

[[noreturn]] void bad(const std::string& what) { throw validation_error(what); }

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
  if (!obj.is_object()) bad(where + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) bad(where + ": unknown key \"" + k + "\"");
  for (const auto& k : required)
    if (!obj.contains(k)) bad(where + ": missing key \"" + k + "\"");
}

exactnum::Int int_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return exactnum::Int((long)v.get<long long>());
  if (v.is_string()) {
    try {
      return exactnum::Int(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  bad(where + ": expected an integer (number or decimal string)");
}

unsigned long ulong_from_json(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(where + ": expected a nonnegative integer");
  return v.get<unsigned long>();
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  require_keys(doc, "scenario",
               {"schema", "curve", "l", "S", "attestations", "galois_model",
                "lifted_places", "ind3", "precision"},
               {"schema", "curve", "l", "S"});
  if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != 1)
    bad("scenario: unsupported schema version");
  Scenario sc;
  const json& c = doc["curve"];
  require_keys(c, "curve", {"a1", "a2", "a3", "a4", "a6"},
               {"a1", "a2", "a3", "a4", "a6"});
  sc.curve_model.a1 = int_from_json(c["a1"], "curve.a1");
  sc.curve_model.a2 = int_from_json(c["a2"], "curve.a2");
  sc.curve_model.a3 = int_from_json(c["a3"], "curve.a3");
  sc.curve_model.a4 = int_from_json(c["a4"], "curve.a4");
  sc.curve_model.a6 = int_from_json(c["a6"], "curve.a6");
  sc.l = ulong_from_json(doc["l"], "l");
  if (!doc["S"].is_array() || doc["S"].empty())
    bad("S: expected a nonempty array of primes");
  for (const auto& p : doc["S"]) sc.S.insert(ulong_from_json(p, "S[]"));
  if (doc.contains("attestations")) {
    const json& a = doc["attestations"];
    require_keys(a, "attestations", {"non_shimura", "torsion_conditions"}, {});
    if (a.contains("non_shimura")) {
      if (!a["non_shimura"].is_boolean()) bad("attestations.non_shimura: expected bool");
      sc.att.non_shimura = a["non_shimura"].get<bool>();
    }
    if (a.contains("torsion_conditions")) {
      if (!a["torsion_conditions"].is_boolean())
        bad("attestations.torsion_conditions: expected bool");
      sc.att.torsion_conditions = a["torsion_conditions"].get<bool>();
    }
  }
  if (doc.contains("galois_model")) {
    const json& g = doc["galois_model"];
    require_keys(g, "galois_model", {"generators"}, {"generators"});
    if (!g["generators"].is_array()) bad("galois_model.generators: expected array");
    for (const auto& m : g["generators"]) {
      if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
          !m[1].is_array() || m[1].size() != 2)
        bad("galois_model.generators[]: expected a 2x2 matrix");
      theta::Mat2 mat{sc.l,
                      {{{ulong_from_json(m[0][0], "generator entry") % sc.l,
                         ulong_from_json(m[0][1], "generator entry") % sc.l},
                        {ulong_from_json(m[1][0], "generator entry") % sc.l,
                         ulong_from_json(m[1][1], "generator entry") % sc.l}}}};
      sc.generators.push_back(mat);
    }
  }
  if (sc.generators.empty()) {
    // default: the standard unipotent pair, which generates SL2
    sc.generators = {theta::Mat2{sc.l, {{{1, 1}, {0, 1}}}},
                     theta::Mat2{sc.l, {{{1, 0}, {1, 1}}}}};
  }
  if (doc.contains("lifted_places")) {
    const json& lp = doc["lifted_places"];
    if (!lp.is_object()) bad("lifted_places: expected an object keyed by prime");
    for (const auto& [key, val] : lp.items()) {
      unsigned long p = 0;
      try {
        size_t pos = 0;
        p = std::stoul(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        bad("lifted_places: key \"" + key + "\" is not a prime");
      }
      require_keys(val, "lifted_places." + key, {"e", "f", "logshell"},
                   {"e", "f"});
      LiftedConfig lc;
      lc.e = ulong_from_json(val["e"], "lifted_places." + key + ".e");
      lc.f = ulong_from_json(val["f"], "lifted_places." + key + ".f");
      if (lc.e == 0 || lc.f == 0) bad("lifted_places." + key + ": e, f >= 1");
      if (val.contains("logshell")) {
        if (!val["logshell"].is_string())
          bad("lifted_places." + key + ".logshell: expected a rational string");
        lc.logshell_coeff =
            exactnum::rat_from_string(val["logshell"].get<std::string>());
      }
      sc.lifted[p] = lc;
    }
  }
  for (unsigned long p : sc.S)
    if (!sc.lifted.count(p)) sc.lifted[p] = LiftedConfig{};
  if (doc.contains("ind3")) {
    const json& i3 = doc["ind3"];
    require_keys(i3, "ind3", {"n0"}, {});
    if (i3.contains("n0")) {
      unsigned long n0 = ulong_from_json(i3["n0"], "ind3.n0");
      if (n0 > 1) bad("ind3.n0: must be 0 or 1");
      sc.n0 = (unsigned)n0;
    }
  }
  if (doc.contains("precision")) {
    sc.precision = (unsigned)ulong_from_json(doc["precision"], "precision");
    if (sc.precision < 1 || sc.precision > 10000) bad("precision: out of range");
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open scenario file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    bad("scenario JSON parse error: " + std::string(e.what()));
  }
  return parse_scenario(doc);
}

Options parse_options(const json& doc) {
  require_keys(doc, "options",
               {"digits", "precision", "n0", "cache", "strict_processions",
                "precision_cap", "approx_digits"},
               {});
  Options opt;
  if (doc.contains("digits"))
    opt.digits = (unsigned)ulong_from_json(doc["digits"], "options.digits");
  if (doc.contains("precision"))
    opt.precision = (unsigned)ulong_from_json(doc["precision"], "options.precision");
  if (doc.contains("n0")) {
    unsigned long n0 = ulong_from_json(doc["n0"], "options.n0");
    if (n0 > 1) bad("options.n0: must be 0 or 1");
    opt.n0 = (unsigned)n0;
  }
  if (doc.contains("cache")) {
    if (!doc["cache"].is_string()) bad("options.cache: expected a string");
    opt.cache_dir = doc["cache"].get<std::string>();
  }
  if (doc.contains("strict_processions")) {
    if (!doc["strict_processions"].is_boolean())
      bad("options.strict_processions: expected bool");
    opt.strict_processions = doc["strict_processions"].get<bool>();
  }
  if (doc.contains("precision_cap"))
    opt.precision_cap =
        (unsigned)ulong_from_json(doc["precision_cap"], "options.precision_cap");
  if (doc.contains("approx_digits"))
    opt.approx_digits =
        (unsigned)ulong_from_json(doc["approx_digits"], "options.approx_digits");
  return opt;
}

json logvalue_json(const LogValue& v, unsigned approx_digits) {
  json terms = json::object();
  for (const auto& [p, c] : v.terms)
    terms[std::to_string(p)] = exactnum::rat_to_string(c);
  return json{{"ln_terms", terms},
              {"arch", exactnum::rat_to_string(v.archimedean)},
              {"human", v.to_human()},
              {"approx", exactnum::approx_decimal(v, approx_digits)}};
}

std::map<arakelov::BasePlace, tate::TateLocalData> scenario_tate_data(
    const Scenario& sc) {
  std::map<arakelov::BasePlace, tate::TateLocalData> out;
  curve::WeierstrassModel mm = curve::minimal_model(sc.curve_model);
  for (unsigned long p : sc.S) {
    if (p == 2) bad("S: residue characteristic must be odd");
    curve::ReductionReport rr = curve::reduction_type(mm, p);
    bool split = rr.kind == curve::ReductionKind::SplitMultiplicative;
    if (!split && rr.kind != curve::ReductionKind::NonsplitMultiplicative)
      bad("S: reduction at p=" + std::to_string(p) + " is not multiplicative");
    out[arakelov::BasePlace::rational_finite(p)] =
        tate::TateLocalData{p, rr.disc_valuation, split};
  }
  return out;
}

regions::BaseField scenario_base_field(const Scenario& sc) {
  regions::BaseField base;
  base.degree = 1;  // F0 = Q
  for (const auto& [p, lc] : sc.lifted) {
    regions::LiftedPlace v;
    v.base = arakelov::BasePlace::rational_finite(p);
    v.e = lc.e;
    v.f = lc.f;
    base.fibers[p] = {v};
  }
  return base;
}

indet::Ind3Params scenario_ind3_params(const Scenario& sc, unsigned n0) {
  indet::Ind3Params params;
  params.l = sc.l;
  params.tate_data = scenario_tate_data(sc);
  params.n0 = n0;
  for (const auto& [p, lc] : sc.lifted)
    if (lc.logshell_coeff)
      params.logshell_overrides[arakelov::BasePlace::rational_finite(p).label] =
          LogValue::ln_prime(p, *lc.logshell_coeff);
  return params;
}

namespace {

// FNV-1a over the serialized coefficient block
unsigned long long fnv1a(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

series::IntSeries compute_series(const std::string& kind, long order) {
  if (kind == "j") return tate::j_series(order);
  if (kind == "inv-j") return tate::inv_j_series(order);
  if (kind == "tate-q") return tate::tate_q_series(order);
  if (kind == "s4") return tate::s4_series(order);
  if (kind == "s6") return tate::s6_series(order);
  throw computation_error("unknown series kind: " + kind);
}

std::string serialize_coeffs(const series::IntSeries& s) {
  std::ostringstream os;
  os << s.lead_exponent << "\n" << s.coeffs.size() << "\n";
  for (const auto& c : s.coeffs) os << c.get_str() << "\n";
  return os.str();
}

}  // namespace

std::string effective_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("THETALAB_CACHE")) return env;
  return "";
}

series::IntSeries cached_series(const std::string& kind, long order,
                                const std::string& cache_dir) {
  if (cache_dir.empty()) return compute_series(kind, order);
  namespace fs = std::filesystem;
  fs::path dir(cache_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path file = dir / (kind + "-" + std::to_string(order) + ".series");
  if (fs::exists(file)) {
    std::ifstream in(file);
    std::string header;
    unsigned long long sum = 0;
    if (in && std::getline(in, header)) {
      std::istringstream hs(header);
      std::string tag, k;
      long ord = 0;
      if (hs >> tag >> k >> ord >> sum && tag == "thetalab-series" &&
          k == kind && ord == order) {
        std::ostringstream body;
        body << in.rdbuf();
        if (fnv1a(body.str()) == sum) {
          std::istringstream bs(body.str());
          series::IntSeries s;
          size_t n = 0;
          if (bs >> s.lead_exponent >> n) {
            s.coeffs.reserve(n);
            std::string line;
            bool ok = true;
            for (size_t i = 0; i < n; ++i) {
              if (!(bs >> line)) {
                ok = false;
                break;
              }
              try {
                s.coeffs.emplace_back(line);
              } catch (const std::invalid_argument&) {
                ok = false;
                break;
              }
            }
            if (ok && s.order() == (long)(s.lead_exponent + (long)n)) return s;
          }
        }
      }
    }
    // corrupt or mismatched: fall through and recompute
  }
  series::IntSeries s = compute_series(kind, order);
  std::string body = serialize_coeffs(s);
  std::ofstream out(file, std::ios::trunc);
  if (out) {
    out << "thetalab-series " << kind << " " << order << " " << fnv1a(body)
        << "\n"
        << body;
  }
  return s;
}

namespace {

json config_echo(const Scenario& sc, const Options& opt, unsigned n0) {
  return json{{"precision", opt.precision.value_or(sc.precision)},
              {"n0", n0},
              {"peel_index", "level"},
              {"strict_processions", opt.strict_processions},
              {"precision_cap", opt.precision_cap},
              {"approx_digits", opt.approx_digits},
              {"cache", effective_cache_dir(opt.cache_dir)}};
}

json divisor_json(const arakelov::Divisor& D, unsigned approx_digits) {
  json entries = json::array();
  for (const auto& [v, c] : D.entries)
    entries.push_back(json{{"place", v.label + ",d=" + std::to_string(v.local_degree)},
                           {"coeff", exactnum::rat_to_string(c)}});
  return json{{"base_degree", D.base_field_degree},
              {"entries", entries},
              {"degree", logvalue_json(arakelov::degree(D), approx_digits)},
              {"normalized_degree",
               logvalue_json(arakelov::normalized_degree(D), approx_digits)}};
}

json digits_json(const std::vector<unsigned>& digits) {
  json arr = json::array();
  for (unsigned d : digits) arr.push_back(d);
  return arr;
}

json report_curve_info(const Scenario& sc, const Options& opt) {
  curve::Invariants iv = curve::invariants(sc.curve_model);
  curve::WeierstrassModel mm = curve::minimal_model(sc.curve_model);
  curve::Invariants miv = curve::invariants(mm);
  json reductions = json::array();
  for (const auto& [p, e] : curve::factor(miv.disc)) {
    curve::ReductionReport rr = curve::reduction_type(mm, p);
    const char* kind = "good";
    switch (rr.kind) {
      case curve::ReductionKind::Good: kind = "good"; break;
      case curve::ReductionKind::SplitMultiplicative: kind = "split-multiplicative"; break;
      case curve::ReductionKind::NonsplitMultiplicative: kind = "nonsplit-multiplicative"; break;
      case curve::ReductionKind::Additive: kind = "additive"; break;
    }
    reductions.push_back(json{{"prime", p},
                              {"kind", kind},
                              {"kodaira", rr.kodaira},
                              {"tamagawa", rr.tamagawa},
                              {"disc_valuation", rr.disc_valuation},
                              {"conductor_exponent", rr.conductor_exponent}});
  }
  auto model_json = [](const curve::WeierstrassModel& m) {
    return json{{"a1", m.a1.get_str()}, {"a2", m.a2.get_str()},
                {"a3", m.a3.get_str()}, {"a4", m.a4.get_str()},
                {"a6", m.a6.get_str()}};
  };
  return json{{"input_model", model_json(sc.curve_model)},
              {"minimal_model", model_json(mm)},
              {"invariants",
               json{{"b2", iv.b2.get_str()}, {"b4", iv.b4.get_str()},
                    {"b6", iv.b6.get_str()}, {"b8", iv.b8.get_str()},
                    {"c4", iv.c4.get_str()}, {"c6", iv.c6.get_str()},
                    {"disc", iv.disc.get_str()},
                    {"j", exactnum::rat_to_string(iv.j)}}},
              {"minimal_disc", miv.disc.get_str()},
              {"reductions", reductions}};
}

json report_tate(const Scenario& sc, const Options& opt) {
  unsigned precision = opt.precision.value_or(sc.precision);
  unsigned digits = std::min(opt.digits, precision);
  std::string cache = effective_cache_dir(opt.cache_dir);
  curve::WeierstrassModel mm = curve::minimal_model(sc.curve_model);
  curve::Invariants iv = curve::invariants(mm);
  json places = json::object();
  for (unsigned long p : sc.S) {
    exactnum::Rat inv_j = Rat(1) / iv.j;
    inv_j.canonicalize();
    padic::PadicInt t = padic::PadicInt::from_rational(p, precision, inv_j);
    unsigned ord = t.valuation();
    if (ord == 0)
      bad("tate: 1/j has valuation 0 at p=" + std::to_string(p));
    long order = (long)((precision + 2 + ord - 1) / ord) + 1;
    if (order < 3) order = 3;
    padic::PadicInt q =
        series::evaluate_at_padic(cached_series("tate-q", order, cache), t)
            .truncated(precision);
    tate::TateCoefficients tc{
        series::evaluate_at_padic(cached_series("s4", order, cache), q)
            .truncated(precision),
        series::evaluate_at_padic(cached_series("s6", order, cache), q)
            .truncated(precision)};
    unsigned coeff_digits = digits > 0 ? digits - 1 : 0;
    places[std::to_string(p)] =
        json{{"ord_q", q.valuation()},
             {"q_digits", digits_json(padic::padic_digits(q, digits))},
             {"s4_digits",
              digits_json(padic::padic_digits(tc.s4, coeff_digits))},
             {"s6_digits",
              digits_json(padic::padic_digits(tc.s6, coeff_digits))}};
  }
  return json{{"digits", digits}, {"places", places}};
}

json report_theta_data(const Scenario& sc, const Options& opt) {
  theta::PreThetaReport pre =
      theta::check_pre_theta(sc.curve_model, sc.l, sc.S, sc.att);
  json conditions = json::object();
  for (const auto& [name, st] : pre.conditions) {
    const char* s = st == theta::CheckStatus::ComputedPass ? "computed-pass"
                    : st == theta::CheckStatus::ComputedFail ? "computed-fail"
                                                             : "attested";
    conditions[name] = s;
  }
  json out{{"pre_theta", conditions}, {"all_pass", pre.all_pass()},
           {"failures", pre.failures}};
  if (pre.all_pass()) {
    theta::GaloisModel gm;
    gm.l = sc.l;
    gm.generators = sc.generators;
    theta::Line zeta = theta::Line::span(sc.l, 1, 0);
    for (unsigned long p : sc.S)
      gm.fibers[arakelov::BasePlace::rational_finite(p)] =
          theta::GaloisModel::natural_fiber(sc.l, gm.generators, zeta);
    theta::InitialThetaData d = theta::build_initial_theta_data(
        sc.curve_model, sc.l, sc.S, sc.att, gm, zeta);
    json section = json::object();
    for (const auto& [v, w] : d.V_section) section[v.label] = w;
    out["initial_theta_data"] =
        json{{"V_section", section},
             {"M", json::array({d.M.rep[0], d.M.rep[1]})},
             {"epsilon", json::array({d.epsilon[0], d.epsilon[1]})}};
  }
  return out;
}

json report_pilots(const Scenario& sc, const Options& opt) {
  auto tdata = scenario_tate_data(sc);
  arakelov::Divisor q = arakelov::q_pilot(tdata, sc.l);
  arakelov::LgpDivisor th = arakelov::theta_pilot(tdata, sc.l);
  json comps = json::array();
  for (const auto& D : th.components)
    comps.push_back(divisor_json(D, opt.approx_digits));
  return json{
      {"q_pilot", divisor_json(q, opt.approx_digits)},
      {"q_pilot_neg_degree",
       logvalue_json(-arakelov::normalized_degree(q), opt.approx_digits)},
      {"theta_pilot", comps},
      {"theta_pilot_degree_lgp",
       logvalue_json(arakelov::degree_lgp(th), opt.approx_digits)},
      {"theta_pilot_neg_degree_lgp",
       logvalue_json(-arakelov::degree_lgp(th), opt.approx_digits)}};
}

json report_indet(const Scenario& sc, const Options& opt, unsigned n0) {
  json counts = json::object();
  for (unsigned n = 1; n <= 4; ++n)
    counts[std::to_string(n)] =
        indet::enumerate_procession_automorphisms(n, opt.strict_processions)
            .size();
  indet::Ind3Params params = scenario_ind3_params(sc, n0);
  regions::BaseField base = scenario_base_field(sc);
  json hulls = json::object();
  for (unsigned j = 1; j <= (unsigned)((sc.l - 1) / 2); ++j) {
    regions::RegionDescriptor R = indet::ind2_saturate(
        indet::ind1_orbit_union(indet::ind3_bound_region(params, j, base)));
    hulls[std::to_string(j)] =
        logvalue_json(regions::ln_nu(regions::hull(R)), opt.approx_digits);
  }
  return json{{"automorphism_counts", counts}, {"bound_hull_volumes", hulls}};
}

json report_inequality(const Scenario& sc, const Options& opt, unsigned n0) {
  indet::Ind3Params params = scenario_ind3_params(sc, n0);
  regions::BaseField base = scenario_base_field(sc);
  indet::InequalityReport rep =
      indet::evaluate_inequality(params, base, opt.precision_cap);
  json comps = json::object();
  for (const auto& [j, v] : rep.component_volumes)
    comps[std::to_string(j)] = logvalue_json(v, opt.approx_digits);
  return json{{"lhs", logvalue_json(rep.lhs, opt.approx_digits)},
              {"rhs", logvalue_json(rep.rhs, opt.approx_digits)},
              {"component_volumes", comps},
              {"verdict", rep.verdict},
              {"compare_precision_used", rep.cmp.precision_used}};
}

}  // namespace

json report(const Scenario& sc, const std::string& command, const Options& opt) {
  unsigned n0 = opt.n0.value_or(sc.n0);
  json body;
  if (command == "curve-info")
    body = report_curve_info(sc, opt);
  else if (command == "tate")
    body = report_tate(sc, opt);
  else if (command == "theta-data")
    body = report_theta_data(sc, opt);
  else if (command == "pilots")
    body = report_pilots(sc, opt);
  else if (command == "indet")
    body = report_indet(sc, opt, n0);
  else if (command == "inequality")
    body = report_inequality(sc, opt, n0);
  else
    throw Error(Errc::Usage, "unknown command: " + command);
  body["schema"] = 1;
  body["command"] = command;
  body["config_echo"] = config_echo(sc, opt, n0);
  return body;
}

namespace {

regions::LocalRegion region_from_json(const json& r, const std::string& where) {
  require_keys(r, where, {"kind", "shifts", "radii", "defect", "members"},
               {"kind"});
  if (!r["kind"].is_string()) bad(where + ".kind: expected string");
  std::string kind = r["kind"].get<std::string>();
  auto rats = [&](const char* key) {
    std::vector<Rat> out;
    if (!r.contains(key) || !r[key].is_array())
      bad(where + "." + key + ": expected array of rational strings");
    for (const auto& x : r[key]) {
      if (!x.is_string()) bad(where + "." + key + ": expected rational strings");
      out.push_back(exactnum::rat_from_string(x.get<std::string>()));
    }
    return out;
  };
  if (kind == "scaled-ring") return regions::LocalRegion::scaled_ring(rats("shifts"));
  if (kind == "polydisc") return regions::LocalRegion::polydisc(rats("radii"));
  if (kind == "scaled-lattice") {
    LogValue defect;
    if (r.contains("defect")) {
      const json& d = r["defect"];
      require_keys(d, where + ".defect", {"ln_terms", "arch"}, {});
      if (d.contains("ln_terms"))
        for (const auto& [p, c] : d["ln_terms"].items())
          defect += LogValue::ln_prime(std::stoul(p),
                                       exactnum::rat_from_string(c.get<std::string>()));
      if (d.contains("arch"))
        defect += LogValue::arch(
            exactnum::rat_from_string(d["arch"].get<std::string>()));
    }
    return regions::LocalRegion::scaled_lattice(rats("shifts"), defect);
  }
  if (kind == "union") {
    if (!r.contains("members") || !r["members"].is_array())
      bad(where + ".members: expected array");
    std::vector<regions::LocalRegion> members;
    for (const auto& m : r["members"])
      members.push_back(region_from_json(m, where + ".members[]"));
    return regions::LocalRegion::union_of(std::move(members));
  }
  bad(where + ".kind: unknown region kind \"" + kind + "\"");
}

}  // namespace

json region_volume(const json& doc, unsigned approx_digits) {
  require_keys(doc, "region", {"schema", "level", "base", "summands"},
               {"schema", "level", "base", "summands"});
  if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != 1)
    bad("region: unsupported schema version");
  regions::RegionDescriptor R;
  R.level = (unsigned)ulong_from_json(doc["level"], "region.level");
  const json& b = doc["base"];
  require_keys(b, "region.base", {"degree", "fibers"}, {"degree", "fibers"});
  R.base.degree = ulong_from_json(b["degree"], "region.base.degree");
  std::map<std::string, regions::LiftedPlace> by_label;
  for (const auto& [pkey, fiber] : b["fibers"].items()) {
    unsigned long p = std::stoul(pkey);
    R.prime_support.insert(p);
    if (!fiber.is_array() || fiber.empty())
      bad("region.base.fibers: expected nonempty arrays");
    for (const auto& pl : fiber) {
      require_keys(pl, "region.base.fibers[]", {"label", "d", "f", "e", "fk"},
                   {"label", "d", "f"});
      regions::LiftedPlace v;
      v.base.finite = true;
      v.base.prime = p;
      v.base.local_degree = ulong_from_json(pl["d"], "place.d");
      v.base.residue_degree = ulong_from_json(pl["f"], "place.f");
      v.base.label = pl["label"].get<std::string>();
      if (pl.contains("e")) v.e = ulong_from_json(pl["e"], "place.e");
      if (pl.contains("fk")) v.f = ulong_from_json(pl["fk"], "place.fk");
      R.base.fibers[p].push_back(v);
      by_label[v.base.label] = v;
    }
  }
  if (!doc["summands"].is_array()) bad("region.summands: expected array");
  for (const auto& s : doc["summands"]) {
    require_keys(s, "region.summands[]", {"index", "region"},
                 {"index", "region"});
    regions::TensorIndex idx;
    if (!s["index"].is_array() || s["index"].size() != (size_t)R.level + 1)
      bad("region.summands[].index: expected level+1 place labels");
    for (const auto& lab : s["index"]) {
      auto it = by_label.find(lab.get<std::string>());
      if (it == by_label.end())
        bad("region.summands[].index: unknown place label");
      idx.places.push_back(it->second);
    }
    R.summands[idx] = region_from_json(s["region"], "region.summands[].region");
  }
  LogValue exact;
  bool is_exact = true;
  try {
    exact = regions::ln_nu(R);
  } catch (const Error&) {
    is_exact = false;
  }
  json out{{"schema", 1},
           {"command", "volume"},
           {"exact", is_exact},
           {"ln_nu_upper", logvalue_json(regions::ln_nu_upper(R), approx_digits)}};
  if (is_exact) out["ln_nu"] = logvalue_json(exact, approx_digits);
  return out;
}

}  // namespace thetalab::scenario
