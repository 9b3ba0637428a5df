#pragma once

#include <stdexcept>
#include <string>

namespace artrec {

/// Failure category; the CLI maps these onto exit codes and the HTTP layer
/// onto status codes.
enum class ErrorKind {
  Usage,       // bad flags / arguments
  Data,        // malformed or inconsistent input data
  NotFound,    // unknown id
  Validation,  // request payload rejected
  Sequence,    // operation out of order for the session flow
  Conflict,    // duplicate submission
  Unauthorized,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

[[noreturn]] inline void data_error(const std::string& what) {
  throw Error(ErrorKind::Data, what);
}

}  // namespace artrec
