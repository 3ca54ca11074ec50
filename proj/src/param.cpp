#include "echkatok/param.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "echkatok/errors.hpp"

namespace ech {

namespace {

bool parse_int64(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  out = v;
  return true;
}

}  // namespace

Param Param::rational(std::int64_t p, std::int64_t q) {
  Param r;
  r.mode_ = Mode::Rational;
  r.a_rat_ = Rational(p, q);
  r.check_range();
  return r;
}

Param Param::real(const std::string& recipe, unsigned precision_bits) {
  Param r;
  r.mode_ = Mode::Real;
  r.prec_ = precision_bits < kMinRealPrecision ? kMinRealPrecision
                                               : precision_bits;
  if (recipe == "sqrt2/2") {
    r.recipe_ = Recipe::Sqrt2Over2;
  } else if (recipe == "1/pi") {
    r.recipe_ = Recipe::OneOverPi;
  } else {
    r.recipe_ = Recipe::Decimal;
    r.decimal_ = recipe;
    BigFloat probe = BigFloat::from_decimal(recipe, 64);  // syntax check
    (void)probe;
  }
  r.check_range();
  return r;
}

Param Param::parse(const std::string& text, unsigned precision_bits) {
  if (text == "sqrt2/2" || text == "1/pi") return real(text, precision_bits);
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t p = 0, q = 0;
    if (parse_int64(text.substr(0, slash), p) &&
        parse_int64(text.substr(slash + 1), q))
      return rational(p, q);
    throw InvalidArgument("cannot parse parameter: " + text);
  }
  return real(text, precision_bits);
}

Param Param::with_precision(unsigned precision_bits) const {
  Param r = *this;
  if (mode_ == Mode::Real)
    r.prec_ = precision_bits < kMinRealPrecision ? kMinRealPrecision
                                                 : precision_bits;
  return r;
}

void Param::check_range() const {
  if (mode_ == Mode::Rational) {
    if (!(Rational(0) < a_rat_ && a_rat_ < Rational(1)))
      throw InvalidArgument("parameter a must satisfy 0 < a < 1, got " +
                            a_rat_.str());
    return;
  }
  BigFloat a = value(prec_);
  if (!(a.cmp_int(0) > 0 && a.cmp_int(1) < 0))
    throw InvalidArgument("parameter a must satisfy 0 < a < 1, got " +
                          describe());
}

const Rational& Param::rat() const {
  if (mode_ != Mode::Rational)
    throw InvalidArgument("param is not in rational mode");
  return a_rat_;
}

Rational Param::rat_ratio(Ratio r) const {
  const Rational& a = rat();
  std::int64_t p = a.num(), q = a.den();
  switch (r) {
    case Ratio::InvOnePlusA:
      return Rational(q, q + p);
    case Ratio::InvOneMinusA:
      return Rational(q, q - p);
    case Ratio::AOverOnePlusA:
      return Rational(p, q + p);
    case Ratio::AOverOneMinusA:
      return Rational(p, q - p);
  }
  throw InvalidArgument("bad ratio");
}

BigFloat Param::value(unsigned prec) const {
  if (mode_ == Mode::Rational)
    return BigFloat::from_ratio(a_rat_.num(), a_rat_.den(), prec);
  switch (recipe_) {
    case Recipe::Sqrt2Over2:
      return BigFloat::sqrt2_over_2(prec);
    case Recipe::OneOverPi:
      return BigFloat::one_over_pi(prec);
    case Recipe::Decimal:
      return BigFloat::from_decimal(decimal_, prec);
    case Recipe::None:
      break;
  }
  throw InvalidArgument("uninitialized real parameter");
}

BigFloat Param::ratio(Ratio r, unsigned prec) const {
  BigFloat a = value(prec);
  BigFloat one = BigFloat::from_int(1, prec);
  switch (r) {
    case Ratio::InvOnePlusA:
      return one / (one + a);
    case Ratio::InvOneMinusA:
      return one / (one - a);
    case Ratio::AOverOnePlusA:
      return a / (one + a);
    case Ratio::AOverOneMinusA:
      return a / (one - a);
  }
  throw InvalidArgument("bad ratio");
}

double Param::a_double() const {
  if (mode_ == Mode::Rational) return a_rat_.to_double();
  return value(prec_).to_double();
}

double Param::a_upper_double() const {
  if (mode_ == Mode::Rational) {
    double d = a_rat_.to_double();
    return std::nextafter(d, 2.0);
  }
  return value(prec_).to_double_up();
}

std::string Param::describe() const {
  if (mode_ == Mode::Rational) return a_rat_.str();
  switch (recipe_) {
    case Recipe::Sqrt2Over2:
      return "sqrt2/2";
    case Recipe::OneOverPi:
      return "1/pi";
    default:
      return decimal_;
  }
}

}  // namespace ech
