#pragma once

#include <cstdint>

#include "echkatok/param.hpp"

namespace ech {

// Multiplicities (m1, m2) of the two simple orbits.
struct Weights {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t total() const { return m1 + m2; }
  friend bool operator==(const Weights&, const Weights&) = default;
};

enum class Ordering { Less, Equal, Greater };

// Result of a guarded floor evaluation.  `margin` is the distance from the
// argument to the nearest integer; it is zero only for results flagged exact
// (zero input, or an exact integer in rational mode).
struct CertifiedFloor {
  std::int64_t value = 0;
  double margin = 0.0;
  bool exact = false;
};

// floor(k * r) for a derived ratio r of the parameter.  In real mode the
// result is rejected (AmbiguousFloor) when k*r lies within 2^-64 * |k*r| of
// an integer, rather than guessed.
CertifiedFloor floor_certified(std::int64_t k, Ratio r, const Param& param);

// Exact sum_{k=1..n} floor(k*p/q) in O(log max(n,p,q)) arithmetic steps,
// 128-bit internal accumulators.  Overflow of the result raises, never wraps.
std::int64_t floor_sum_fast(std::int64_t n, std::int64_t p, std::int64_t q);

// Same sum for a real-mode derived ratio, one certified floor per term.
// Propagates AmbiguousFloor with the offending k.  Works in both modes.
std::int64_t floor_sum_real(std::int64_t n, Ratio r, const Param& param);

// Orders the total actions m1*2pi/(1+a) + m2*2pi/(1-a).  Exact in rational
// mode; certified in real mode, where Equal occurs only for equal weights.
Ordering compare_actions(const Weights& w1, const Weights& w2,
                         const Param& param);

}  // namespace ech
