#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ech {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A floor could not be certified: the argument is within the guard band of an
// integer (or is a degenerate integer iterate).  `k` is the offending index.
struct AmbiguousFloor : Error {
  std::int64_t k;
  explicit AmbiguousFloor(const std::string& msg, std::int64_t k_ = -1)
      : Error(msg), k(k_) {}
};

// Two action values are too close to order at the working precision.
struct AmbiguousComparison : Error {
  using Error::Error;
};

// An integer result exceeded the supported width.  Never wraps.
struct OverflowError : Error {
  using Error::Error;
};

// A precondition on the inputs was violated.
struct InvalidArgument : Error {
  using Error::Error;
};

// Phase point with |p| below the smoothness cutoff of the Hamiltonian.
struct DegeneratePoint : Error {
  using Error::Error;
};

// An iterative solve exceeded its iteration cap.
struct NoConvergence : Error {
  using Error::Error;
};

// A finite-difference linearization failed its stability checks.
struct IllConditioned : Error {
  using Error::Error;
};

// No (or no unique) generator with the requested degree inside the search
// bound.  Signals a bijectivity violation, not an expected runtime condition.
struct NotFound : Error {
  using Error::Error;
};

// Internal consistency failure: a grading came out negative.
struct NegativeGrading : Error {
  using Error::Error;
};

}  // namespace ech
