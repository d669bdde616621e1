#include "thetalab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "thetalab/scenario.hpp"

using thetalab::Errc;
using thetalab::Error;
namespace sc = thetalab::scenario;

struct tl_scenario {
  sc::Scenario data;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return 0;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return static_cast<int>(Errc::Validation);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return static_cast<int>(Errc::Computation);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return static_cast<int>(Errc::Computation);
  }
}

}  // namespace

extern "C" {

int tl_scenario_load_file(const char* path, tl_scenario** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return static_cast<int>(Errc::Usage);
  }
  *out = nullptr;
  return guarded([&] {
    auto* handle = new tl_scenario{sc::load_scenario_file(path)};
    *out = handle;
  });
}

int tl_scenario_load_json(const char* text, tl_scenario** out) {
  if (!text || !out) {
    g_last_error = "null argument";
    return static_cast<int>(Errc::Usage);
  }
  *out = nullptr;
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw thetalab::validation_error(std::string("scenario JSON parse error: ") +
                                       e.what());
    }
    *out = new tl_scenario{sc::parse_scenario(doc)};
  });
}

void tl_scenario_free(tl_scenario* s) { delete s; }

int tl_report(const tl_scenario* s, const char* command,
              const char* options_json, char** out_json) {
  if (!s || !command || !out_json) {
    g_last_error = "null argument";
    return static_cast<int>(Errc::Usage);
  }
  *out_json = nullptr;
  return guarded([&] {
    sc::Options opt;
    if (options_json && *options_json) {
      nlohmann::json odoc;
      try {
        odoc = nlohmann::json::parse(options_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::Usage,
                    std::string("options JSON parse error: ") + e.what());
      }
      try {
        opt = sc::parse_options(odoc);
      } catch (const Error& e) {
        // malformed options are a usage error regardless of inner category
        throw Error(Errc::Usage, e.what());
      }
    }
    nlohmann::json rep = sc::report(s->data, command, opt);
    *out_json = dup_string(rep.dump(2));
    if (!*out_json) throw std::bad_alloc();
  });
}

int tl_region_volume_json(const char* region_json, char** out_json) {
  if (!region_json || !out_json) {
    g_last_error = "null argument";
    return static_cast<int>(Errc::Usage);
  }
  *out_json = nullptr;
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(region_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw thetalab::validation_error(std::string("region JSON parse error: ") +
                                       e.what());
    }
    nlohmann::json rep = sc::region_volume(doc);
    *out_json = dup_string(rep.dump(2));
    if (!*out_json) throw std::bad_alloc();
  });
}

void tl_string_free(char* s) { std::free(s); }

const char* tl_errname(int code) {
  switch (code) {
    case 0: return "ok";
    case 1: return "computation";
    case 2: return "validation";
    case 64: return "usage";
    default: return "unknown";
  }
}

const char* tl_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
