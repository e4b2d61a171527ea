#pragma once

#include <stdexcept>
#include <string>

namespace gfold {

// Error categories map onto the CLI exit-code contract:
// parse -> 2, guard (budget) -> 3, precondition -> 4.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct GuardError : Error {
  explicit GuardError(const std::string& what) : Error(what) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

}  // namespace gfold
