#pragma once

#include <stdexcept>
#include <string>

namespace mod2betti {

/// Inputs violate a documented precondition or invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of matrices or diagram pieces do not fit together.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (profile files, CLI arguments).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No linear maps realize the requested ranks and side constraints.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two routes to the same quantity disagree. Never expected on valid data.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mod2betti
