#pragma once

#include <stdexcept>
#include <string>

namespace splinezero {

// Every failure raised by the library derives from Error so the CLI can map
// all of them to the "bad input" exit code in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class SingularMatrixError : public Error { using Error::Error; };
class RankError : public Error { using Error::Error; };
class IntervalError : public Error { using Error::Error; };
class InfiniteRootsError : public Error { using Error::Error; };
class OrderingError : public Error { using Error::Error; };
class DegreeError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };
class DuplicateError : public Error { using Error::Error; };
class CapabilityError : public Error { using Error::Error; };
class SmoothnessError : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };

// Raised when an invariant that the mathematics guarantees is observed broken.
// Seeing one of these means a bug in this library, not in the caller's input.
class ConsistencyError : public Error { using Error::Error; };

}  // namespace splinezero
