// Command-line workbench over the thetalab C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "thetalab.h"

using nlohmann::json;

namespace {

struct CommonOpts {
  std::string scenario_path;
  std::string format = "human";
  unsigned digits = 24;
  int precision = -1;
  int n0 = -1;
  bool strict_processions = false;
  std::string cache_dir;
};

std::string options_json(const CommonOpts& o) {
  json opt;
  opt["digits"] = o.digits;
  if (o.precision >= 0) opt["precision"] = o.precision;
  if (o.n0 >= 0) opt["n0"] = o.n0;
  if (!o.cache_dir.empty()) opt["cache"] = o.cache_dir;
  if (o.strict_processions) opt["strict_processions"] = true;
  return opt.dump();
}

bool is_logvalue(const json& v) {
  return v.is_object() && v.contains("human") && v.contains("approx") &&
         v.contains("ln_terms");
}

void render_human(const json& v, const std::string& key, int depth) {
  std::string pad(2 * depth, ' ');
  std::string head = key.empty() ? "" : key + ": ";
  if (is_logvalue(v)) {
    std::cout << pad << head << v["human"].get<std::string>() << "  (~ "
              << v["approx"].get<std::string>() << ")\n";
    return;
  }
  if (v.is_object()) {
    if (!key.empty()) std::cout << pad << key << ":\n";
    for (const auto& [k, val] : v.items()) render_human(val, k, depth + (key.empty() ? 0 : 1));
    return;
  }
  if (v.is_array()) {
    bool scalar = true;
    for (const auto& x : v)
      if (x.is_object() || x.is_array()) scalar = false;
    if (scalar) {
      std::cout << pad << head;
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) std::cout << ",";
        if (v[i].is_string())
          std::cout << v[i].get<std::string>();
        else
          std::cout << v[i].dump();
      }
      std::cout << "\n";
      return;
    }
    std::cout << pad << key << ":\n";
    for (size_t i = 0; i < v.size(); ++i)
      render_human(v[i], "[" + std::to_string(i) + "]", depth + 1);
    return;
  }
  std::cout << pad << head
            << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

int emit(const char* raw, const std::string& format) {
  json rep = json::parse(raw);
  if (format == "json") {
    std::cout << rep.dump(2) << "\n";
  } else {
    render_human(rep, "", 0);
  }
  return 0;
}

int run_report(const CommonOpts& o, const std::string& command) {
  tl_scenario* sc = nullptr;
  int rc = tl_scenario_load_file(o.scenario_path.c_str(), &sc);
  if (rc != 0) {
    std::cerr << "error (" << tl_errname(rc) << "): " << tl_last_error() << "\n";
    return rc;
  }
  char* out = nullptr;
  std::string opts = options_json(o);
  rc = tl_report(sc, command.c_str(), opts.c_str(), &out);
  if (rc != 0) {
    std::cerr << "error (" << tl_errname(rc) << "): " << tl_last_error() << "\n";
    tl_scenario_free(sc);
    return rc;
  }
  emit(out, o.format);
  tl_string_free(out);
  tl_scenario_free(sc);
  return 0;
}

int run_volume(const CommonOpts& o, const std::string& region_path) {
  std::ifstream in(region_path);
  if (!in) {
    std::cerr << "error (validation): cannot open region file: " << region_path
              << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  char* out = nullptr;
  int rc = tl_region_volume_json(buf.str().c_str(), &out);
  if (rc != 0) {
    std::cerr << "error (" << tl_errname(rc) << "): " << tl_last_error() << "\n";
    return rc;
  }
  emit(out, o.format);
  tl_string_free(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thetalab: exact pilot degrees, fake-adele log-volumes, "
               "indeterminacy bounds and theta-data validation"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string region_path;
  auto add_common = [&](CLI::App* cmd, bool needs_scenario = true) {
    if (needs_scenario)
      cmd->add_option("--scenario", o.scenario_path, "scenario JSON file")
          ->required();
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"human", "json"}));
    cmd->add_option("--digits", o.digits, "p-adic digits to print");
    cmd->add_option("--precision", o.precision, "p-adic working precision");
    cmd->add_option("--n0", o.n0, "Ind3 monoid starting exponent")
        ->check(CLI::Range(0, 1));
    cmd->add_flag("--strict-processions", o.strict_processions,
                  "require procession coherence");
    cmd->add_option("--cache", o.cache_dir,
                    "series cache directory (or THETALAB_CACHE)");
  };

  for (const char* name : {"curve-info", "tate", "theta-data", "pilots",
                           "indet", "inequality"})
    add_common(app.add_subcommand(name));
  CLI::App* vol = app.add_subcommand("volume", "ln_nu of a region file");
  add_common(vol, false);
  vol->add_option("--region", region_path, "region JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "volume") return run_volume(o, region_path);
  return run_report(o, cmd);
}
