#include "echkatok/arithmetic.hpp"

#include <numeric>

#include "echkatok/errors.hpp"

namespace ech {

namespace {

using uint128 = unsigned __int128;

constexpr long kGuardLog2 = -64;  // relative guard band for certification

uint128 checked_mul(uint128 a, uint128 b) {
  if (a != 0 && b > ~uint128(0) / a)
    throw OverflowError("floor-sum accumulator overflow");
  return a * b;
}

uint128 checked_add(uint128 a, uint128 b) {
  if (b > ~uint128(0) - a)
    throw OverflowError("floor-sum accumulator overflow");
  return a + b;
}

// sum_{k=1..n} floor(k*p/q) for gcd(p,q) = 1, Euclidean descent.
uint128 floor_sum_coprime(uint128 n, uint128 p, uint128 q) {
  if (n == 0 || p == 0) return 0;
  if (p >= q) {
    uint128 d = p / q;
    // d * n(n+1)/2 + S(n, p mod q, q)
    uint128 tri = (n % 2 == 0) ? checked_mul(n / 2, n + 1)
                               : checked_mul(n, (n + 1) / 2);
    return checked_add(checked_mul(d, tri), floor_sum_coprime(n, p % q, q));
  }
  // Lattice-point swap: S(n,p,q) = n*M + n/q - S(M,q,p), M = floor(np/q).
  uint128 m = checked_mul(n, p) / q;
  uint128 head = checked_add(checked_mul(n, m), n / q);
  return head - floor_sum_coprime(m, q, p);
}

}  // namespace

CertifiedFloor floor_certified(std::int64_t k, Ratio r, const Param& param) {
  if (k < 0) throw InvalidArgument("floor_certified requires k >= 0");
  if (k == 0) return CertifiedFloor{0, 0.0, true};

  if (param.mode() == Param::Mode::Rational) {
    Rational x = param.rat_ratio(r) * Rational(k);
    std::int64_t f = x.floor();
    if (x.is_integer()) return CertifiedFloor{f, 0.0, true};
    Rational lo = x - Rational(f);
    Rational hi = Rational(1) - lo;
    double margin = (lo <= hi ? lo : hi).to_double();
    return CertifiedFloor{f, margin, false};
  }

  unsigned work = param.precision() + 32;
  BigFloat x = param.ratio(r, work) * k;
  BigFloat dist = x.nearest_int_distance();
  if (dist.within_scaled_eps(x, kGuardLog2))
    throw AmbiguousFloor("floor of " + std::to_string(k) +
                             "*r within guard band of an integer",
                         k);
  return CertifiedFloor{x.floor_int(), dist.to_double(), false};
}

std::int64_t floor_sum_fast(std::int64_t n, std::int64_t p, std::int64_t q) {
  if (n < 0 || p < 0 || q <= 0)
    throw InvalidArgument("floor_sum_fast requires n >= 0, p >= 0, q >= 1");
  std::int64_t g = std::gcd(p, q);
  uint128 s = floor_sum_coprime(uint128(n), uint128(p / g), uint128(q / g));
  if (s > uint128(INT64_MAX)) throw OverflowError("floor sum exceeds 64 bits");
  return static_cast<std::int64_t>(s);
}

std::int64_t floor_sum_real(std::int64_t n, Ratio r, const Param& param) {
  if (n < 0) throw InvalidArgument("floor_sum_real requires n >= 0");
  std::int64_t sum = 0;
  for (std::int64_t k = 1; k <= n; ++k) sum += floor_certified(k, r, param).value;
  return sum;
}

Ordering compare_actions(const Weights& w1, const Weights& w2,
                         const Param& param) {
  if (w1 == w2) return Ordering::Equal;

  if (param.mode() == Param::Mode::Rational) {
    // Actions are 2*pi*q * (m1/(q+p) + m2/(q-p)); cross-multiply exactly.
    std::int64_t p = param.rat().num(), q = param.rat().den();
    int128 lhs = int128(w1.m1) * (q - p) + int128(w1.m2) * (q + p);
    int128 rhs = int128(w2.m1) * (q - p) + int128(w2.m2) * (q + p);
    if (lhs < rhs) return Ordering::Less;
    if (lhs > rhs) return Ordering::Greater;
    return Ordering::Equal;
  }

  unsigned work = param.precision() + 32;
  BigFloat r1 = param.ratio(Ratio::InvOnePlusA, work);
  BigFloat r2 = param.ratio(Ratio::InvOneMinusA, work);
  BigFloat v1 = r1 * w1.m1 + r2 * w1.m2;
  BigFloat v2 = r1 * w2.m1 + r2 * w2.m2;
  BigFloat diff = v1 - v2;
  BigFloat scale = cmp(v1, v2) >= 0 ? v1 : v2;
  if (scale.cmp_int(1) < 0) scale = BigFloat::from_int(1, work);
  if (diff.within_scaled_eps(scale, kGuardLog2))
    throw AmbiguousComparison(
        "actions of (" + std::to_string(w1.m1) + "," + std::to_string(w1.m2) +
        ") and (" + std::to_string(w2.m1) + "," + std::to_string(w2.m2) +
        ") are indistinguishable at the working precision");
  return diff.sign() < 0 ? Ordering::Less : Ordering::Greater;
}

}  // namespace ech
