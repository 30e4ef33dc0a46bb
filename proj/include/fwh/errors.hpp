#pragma once

#include <stdexcept>
#include <string>

namespace fwh {

/// Precondition or invariant violated by a caller-supplied value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A family parameter that collapses the group to a different catalog class.
class DegenerateParameter : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The supplied line or geodesic is not a fiber of the fibration.
class NotAFiber : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical solver missed its residual target. Indicates a bug for valid input.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fwh
