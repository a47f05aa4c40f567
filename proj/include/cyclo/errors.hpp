#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A generator list that spans only {0}.
class ZeroIdeal : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// N(A) = 1, i.e. A is the whole ring.
class UnitIdeal : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// A theorem-range precondition does not hold (e.g. t outside 1..floor((a+b-1)/2)).
class RangeError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// An arithmetic hypothesis required by a construction failed; the message names it.
class HypothesisViolation : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Raised when an internal certificate that must hold (e.g. a bridge
// isomorphism) fails to verify.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace cyclo
