#include "echkatok/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "echkatok/arithmetic.hpp"
#include "echkatok/errors.hpp"

namespace ech {

namespace {

void check_region(const LatticeRegion& r) {
  if (r.n < 0 || r.m < 0 || r.m > 2 * r.n)
    throw InvalidArgument("lattice anchor must satisfy 0 <= m <= 2n");
}

// Certified side of a lattice point relative to the slanted line through the
// anchor: sign of (1-a)(x-n) + a(y-m).
class LineSide {
 public:
  LineSide(const LatticeRegion& r, const Param& param)
      : n_(r.n), m_(r.m), rational_(param.mode() == Param::Mode::Rational) {
    if (rational_) {
      qp_ = param.rat().den() - param.rat().num();
      p_ = param.rat().num();
    } else {
      unsigned work = param.precision() + 32;
      a_ = param.value(work);
      one_minus_a_ = BigFloat::from_int(1, work) - a_;
    }
  }

  int operator()(std::int64_t x, std::int64_t y) const {
    if (rational_) {
      int128 s = int128(qp_) * (x - n_) + int128(p_) * (y - m_);
      return s < 0 ? -1 : (s > 0 ? 1 : 0);
    }
    BigFloat s = one_minus_a_ * (x - n_) + a_ * (y - m_);
    std::int64_t mag = std::llabs(x - n_) + std::llabs(y - m_) + 1;
    BigFloat scale = BigFloat::from_int(mag, 64);
    if (s.within_scaled_eps(scale, -64)) {
      if (x == n_ && y == m_) return 0;  // the anchor lies on the line
      throw AmbiguousComparison(
          "lattice point (" + std::to_string(x) + "," + std::to_string(y) +
          ") indistinguishably close to the boundary line");
    }
    return s.sign();
  }

 private:
  std::int64_t n_, m_;
  bool rational_;
  std::int64_t qp_ = 0, p_ = 0;
  BigFloat a_{64}, one_minus_a_{64};
};

std::int64_t ratio_floor_sum(std::int64_t count, Ratio r, const Param& param) {
  if (param.mode() == Param::Mode::Rational) {
    Rational rr = param.rat_ratio(r);
    return floor_sum_fast(count, rr.num(), rr.den());
  }
  return floor_sum_real(count, r, param);
}

}  // namespace

std::int64_t count_bruteforce(const LatticeRegion& region,
                              const Param& param) {
  check_region(region);
  LineSide side(region, param);
  std::int64_t count = 0;
  for (std::int64_t x = 0;; ++x) {
    std::int64_t col = 0;
    for (std::int64_t y = 0; y <= 2 * x; ++y) {
      int s = side(x, y);
      if (s > 0) break;  // s grows with y; the rest of the column is outside
      if (s < 0 || x >= region.n) ++col;
    }
    count += col;
    if (col == 0 && x > region.n) break;
  }
  return count;
}

std::int64_t count_decomposed(const LatticeRegion& region,
                              const Param& param) {
  check_region(region);
  std::int64_t t1 = region.n * region.n;
  std::int64_t t2 = ratio_floor_sum(region.m, Ratio::AOverOneMinusA, param);
  std::int64_t t3 =
      ratio_floor_sum(2 * region.n - region.m, Ratio::AOverOnePlusA, param);
  std::int64_t s = region.m + 1;
  return t1 + t2 - t3 + s;
}

std::int64_t f_a_closed_form(std::int64_t n, std::int64_t m,
                             const Param& param) {
  check_region(LatticeRegion{n, m});
  std::int64_t a_sum = ratio_floor_sum(2 * n - m, Ratio::AOverOnePlusA, param);
  std::int64_t b_sum = ratio_floor_sum(m, Ratio::AOverOneMinusA, param);
  return n * n + m - a_sum + b_sum;
}

std::int64_t count_t3_bruteforce(const LatticeRegion& region,
                                 const Param& param) {
  check_region(region);
  LineSide side(region, param);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < region.n; ++x) {
    for (std::int64_t y = 2 * x; y >= 0; --y) {
      if (side(x, y) < 0) break;  // below the line; the rest of the column too
      ++count;
    }
  }
  return count;
}

BijectionReport verify_bijection(const Param& param, std::int64_t bound) {
  if (bound < 0) throw InvalidArgument("bound must be nonnegative");
  BijectionReport report;
  std::unordered_map<std::int64_t, LatticeRegion> seen;
  std::int64_t max_value = -1;
  for (std::int64_t n = 0; n <= bound; ++n) {
    for (std::int64_t m = 0; m <= 2 * n; ++m) {
      std::int64_t f = f_a_closed_form(n, m, param);
      ++report.regions_checked;
      max_value = std::max(max_value, f);
      auto [it, inserted] = seen.emplace(f, LatticeRegion{n, m});
      if (!inserted) {
        report.injective = false;
        report.collisions.push_back(
            {it->second.n, it->second.m, n, m, f});
      }
    }
  }

  // Values strictly below the quadratic lower bound at n = bound+1 cannot be
  // attained outside the bound.
  double a = param.a_upper_double();
  double nb = static_cast<double>(bound) + 1.0;
  double lb = (nb * nb * (1.0 - a) - nb * a) / (1.0 + a);
  std::int64_t provable_cap =
      lb <= 0 ? -1 : static_cast<std::int64_t>(std::ceil(lb)) - 1;

  std::int64_t prefix = -1;
  while (prefix + 1 <= std::min(max_value, provable_cap) &&
         seen.count(prefix + 1) > 0)
    ++prefix;
  report.covered_prefix = prefix + 1;
  return report;
}

}  // namespace ech
