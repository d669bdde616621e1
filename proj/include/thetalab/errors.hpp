#pragma once

#include <stdexcept>
#include <string>

namespace thetalab {

// Error codes shared with the C API (see include/thetalab.h).
enum class Errc : int {
  Ok = 0,
  Computation = 1,   // domain/precondition failure during computation
  Validation = 2,    // scenario or input validation failure
  Usage = 64,        // malformed request (unknown command, bad options)
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

inline Error computation_error(const std::string& what) {
  return Error(Errc::Computation, what);
}
inline Error validation_error(const std::string& what) {
  return Error(Errc::Validation, what);
}

}  // namespace thetalab
