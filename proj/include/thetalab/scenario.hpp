#pragma once

#include <nlohmann/json.hpp>
#include <optional>

#include "thetalab/indet.hpp"
#include "thetalab/theta.hpp"

namespace thetalab::scenario {

using nlohmann::json;

struct LiftedConfig {
  unsigned long e = 1;
  unsigned long f = 1;
  // optional coefficient c: log-shell volume override c * ln p
  std::optional<exactnum::Rat> logshell_coeff;
};

struct Scenario {
  curve::WeierstrassModel curve_model;
  unsigned long l = 0;
  std::set<unsigned long> S;
  theta::Attestations att;
  std::vector<theta::Mat2> generators;
  std::map<unsigned long, LiftedConfig> lifted;
  unsigned n0 = 1;
  unsigned precision = 25;
};

Scenario parse_scenario(const json& doc);
Scenario load_scenario_file(const std::string& path);

// options accepted by every command: digits, precision, n0, cache,
// strict_processions, precision_cap
struct Options {
  unsigned digits = 24;
  std::optional<unsigned> precision;
  std::optional<unsigned> n0;
  std::string cache_dir;  // empty: no cache (THETALAB_CACHE still applies)
  bool strict_processions = false;
  unsigned precision_cap = exactnum::kDefaultPrecisionCap;
  unsigned approx_digits = 12;
};

Options parse_options(const json& doc);

json logvalue_json(const exactnum::LogValue& v, unsigned approx_digits);

// commands: curve-info, tate, theta-data, pilots, indet, inequality
json report(const Scenario& sc, const std::string& command, const Options& opt);

// ln_nu of a standalone region document
json region_volume(const json& region_doc, unsigned approx_digits = 12);

// derived inputs shared by commands
std::map<arakelov::BasePlace, tate::TateLocalData> scenario_tate_data(
    const Scenario& sc);
regions::BaseField scenario_base_field(const Scenario& sc);
indet::Ind3Params scenario_ind3_params(const Scenario& sc, unsigned n0);

// on-disk series cache; returns the series for kind in
// {"tate-q", "s4", "s6"} at the given order, recomputing on miss or
// checksum mismatch. Empty dir disables caching.
series::IntSeries cached_series(const std::string& kind, long order,
                                const std::string& cache_dir);

std::string effective_cache_dir(const std::string& flag_value);

}  // namespace thetalab::scenario
