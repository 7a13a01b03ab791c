#pragma once
#include <stdexcept>
#include <string>

namespace ahscat {

enum class ErrorKind {
  invalid_argument,  // bad inputs / preconditions
  domain,            // evaluation outside the valid domain
  numeric,           // solver / quadrature / fit failure
  io,                // file parsing
  internal           // inconsistency that should never happen
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace ahscat
