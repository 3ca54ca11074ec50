#pragma once

#include <cstdint>
#include <string>

#include "echkatok/bigfloat.hpp"
#include "echkatok/rational.hpp"

namespace ech {

// Derived scalars of the Katok parameter that the index formulas consume.
enum class Ratio {
  InvOnePlusA,    // 1/(1+a)
  InvOneMinusA,   // 1/(1-a)
  AOverOnePlusA,  // a/(1+a)
  AOverOneMinusA  // a/(1-a)
};

// The Katok parameter a in (0,1), carried either as an exact rational or as a
// recipe for a certified high-precision real.  Real-mode parameters remember
// how to rebuild themselves at any precision, so raising the precision is
// always possible and never changes an already certified result.
class Param {
 public:
  enum class Mode { Rational, Real };

  static constexpr unsigned kMinRealPrecision = 128;
  static constexpr unsigned kDefaultRealPrecision = 192;

  static Param rational(std::int64_t p, std::int64_t q);
  // recipe: a decimal literal, "sqrt2/2" or "1/pi".
  static Param real(const std::string& recipe,
                    unsigned precision_bits = kDefaultRealPrecision);
  // Dispatches "p/q" to rational mode, everything else to real mode.
  static Param parse(const std::string& text,
                     unsigned precision_bits = kDefaultRealPrecision);

  Mode mode() const { return mode_; }
  unsigned precision() const { return prec_; }
  // Same parameter value at a different working precision (real mode).
  Param with_precision(unsigned precision_bits) const;

  const Rational& rat() const;          // rational mode only
  Rational rat_ratio(Ratio r) const;    // rational mode only
  BigFloat value(unsigned prec) const;  // a, materialized at prec
  BigFloat ratio(Ratio r, unsigned prec) const;

  double a_double() const;
  // An upper bound on a as a double (used for search bounds).
  double a_upper_double() const;

  std::string describe() const;

 private:
  enum class Recipe { None, Decimal, Sqrt2Over2, OneOverPi };

  Param() = default;
  void check_range() const;

  Mode mode_ = Mode::Rational;
  Rational a_rat_;
  Recipe recipe_ = Recipe::None;
  std::string decimal_;
  unsigned prec_ = kDefaultRealPrecision;
};

}  // namespace ech
