#pragma once

#include <stdexcept>

namespace fsc {

/// Raised when an argument violates an operation's precondition
/// (non-finite values, shape mismatches, bad parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a Cartesian pair is too close to the origin for arctan2 to
/// carry phase information.
class DegenerateModulus : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fsc
