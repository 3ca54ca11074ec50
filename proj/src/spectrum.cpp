#include "echkatok/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "echkatok/ech_rp3.hpp"
#include "echkatok/errors.hpp"

namespace ech {

ActionPair ActionPair::rationals(Rational x, Rational y, bool times_pi) {
  if (!(Rational(0) < x) || !(Rational(0) < y))
    throw InvalidArgument("generators must be positive");
  ActionPair g;
  g.mode_ = Mode::Rational;
  g.rx_ = x;
  g.ry_ = y;
  g.times_pi_ = times_pi;
  return g;
}

ActionPair ActionPair::reals(BigFloat x, BigFloat y) {
  if (x.cmp_int(0) <= 0 || y.cmp_int(0) <= 0)
    throw InvalidArgument("generators must be positive");
  ActionPair g;
  g.mode_ = Mode::Real;
  g.bx_ = std::move(x);
  g.by_ = std::move(y);
  return g;
}

ActionPair ActionPair::katok(const Param& param) {
  if (param.mode() == Param::Mode::Rational) {
    std::int64_t p = param.rat().num(), q = param.rat().den();
    return rationals(Rational(2 * q, q + p), Rational(2 * q, q - p),
                     /*times_pi=*/true);
  }
  unsigned work = param.precision() + 32;
  BigFloat two_pi = BigFloat::pi(work) * 2;
  return reals(two_pi * param.ratio(Ratio::InvOnePlusA, work),
               two_pi * param.ratio(Ratio::InvOneMinusA, work));
}

Ordering ActionPair::compare(const Weights& w1, const Weights& w2) const {
  if (w1 == w2) return Ordering::Equal;
  if (mode_ == Mode::Rational) {
    Rational v1 = rx_ * Rational(w1.m1) + ry_ * Rational(w1.m2);
    Rational v2 = rx_ * Rational(w2.m1) + ry_ * Rational(w2.m2);
    int c = cmp(v1, v2);
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
  }
  BigFloat v1 = bx_ * w1.m1 + by_ * w1.m2;
  BigFloat v2 = bx_ * w2.m1 + by_ * w2.m2;
  BigFloat diff = v1 - v2;
  BigFloat scale = cmp(v1, v2) >= 0 ? v1 : v2;
  if (scale.cmp_int(1) < 0) scale = BigFloat::from_int(1, scale.prec());
  if (diff.within_scaled_eps(scale, -64))
    throw AmbiguousComparison(
        "combination values of (" + std::to_string(w1.m1) + "," +
        std::to_string(w1.m2) + ") and (" + std::to_string(w2.m1) + "," +
        std::to_string(w2.m2) + ") are indistinguishable");
  return diff.sign() < 0 ? Ordering::Less : Ordering::Greater;
}

double ActionPair::value(const Weights& w) const {
  if (mode_ == Mode::Rational) {
    Rational v = rx_ * Rational(w.m1) + ry_ * Rational(w.m2);
    double d = static_cast<double>(v.num()) / static_cast<double>(v.den());
    return times_pi_ ? d * std::numbers::pi : d;
  }
  return (bx_ * w.m1 + by_ * w.m2).to_double();
}

std::string ActionPair::exact_string(const Weights& w) const {
  if (mode_ != Mode::Rational)
    throw InvalidArgument("exact values require rational-mode generators");
  Rational v = rx_ * Rational(w.m1) + ry_ * Rational(w.m2);
  if (v.is_zero()) return "0";
  return times_pi_ ? v.str() + "*pi" : v.str();
}

bool ActionPair::precedes(const Weights& w1, const Weights& w2) const {
  switch (compare(w1, w2)) {
    case Ordering::Less:
      return true;
    case Ordering::Greater:
      return false;
    case Ordering::Equal:
      break;
  }
  if (w1.total() != w2.total()) return w1.total() > w2.total();
  return w1.m1 > w2.m1;
}

NabStream::NabStream(ActionPair gens) : gens_(std::move(gens)), heap_(Cmp{&gens_}) {
  heap_.push(Weights{0, 0});
}

SpectrumEntry NabStream::next() {
  Weights w = heap_.top();
  heap_.pop();
  heap_.push(Weights{w.m1 + 1, w.m2});
  if (w.m1 == 0) heap_.push(Weights{0, w.m2 + 1});
  return SpectrumEntry{next_index_++, w, gens_.value(w), std::nullopt};
}

SpectrumEntry M2Stream::next() {
  for (;;) {
    SpectrumEntry e = inner_.next();
    if (e.weights.total() % 2 != 0) continue;
    e.k = next_index_++;
    return e;
  }
}

std::vector<SpectrumEntry> nab_stream(const ActionPair& gens,
                                      std::int64_t count) {
  if (count < 1) throw InvalidArgument("count must be positive");
  NabStream s(gens);
  std::vector<SpectrumEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(s.next());
  return out;
}

std::vector<SpectrumEntry> m2_stream(const ActionPair& gens,
                                     std::int64_t count) {
  if (count < 1) throw InvalidArgument("count must be positive");
  M2Stream s(gens);
  std::vector<SpectrumEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(s.next());
  return out;
}

std::vector<SpectrumEntry> ellipsoid_spectrum(const ActionPair& gens,
                                              std::int64_t count) {
  return nab_stream(gens, count);
}

std::vector<SpectrumEntry> katok_spectrum(const Param& param,
                                          std::int64_t count) {
  auto entries = m2_stream(ActionPair::katok(param), count);
  for (auto& e : entries)
    e.grading = grading(OrbitSet{e.weights.m1, e.weights.m2}, param);
  return entries;
}

}  // namespace ech
