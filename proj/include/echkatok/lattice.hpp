#pragma once

#include <cstdint>
#include <vector>

#include "echkatok/param.hpp"

namespace ech {

// The region of the cone D = {(x,y) : 0 <= y <= 2x} on or below the line of
// slope -(1-a)/a through the anchor (n,m).  Lattice points exactly on the
// line are counted only for x >= n; for irrational a the anchor is the only
// such point, and this rule is what makes the decomposed count exact for
// rational a as well.
struct LatticeRegion {
  std::int64_t n = 0;
  std::int64_t m = 0;
};

// Direct enumeration of the lattice points of the region.
std::int64_t count_bruteforce(const LatticeRegion& region, const Param& param);

// n^2 + sum_{k<=m} floor(ka/(1-a)) - sum_{k<=2n-m} floor(ka/(1+a)) + (m+1),
// the triangle/segment decomposition evaluated with fast floor sums.
std::int64_t count_decomposed(const LatticeRegion& region, const Param& param);

// f_a(n,m) = n^2 + m - sum_{k<=2n-m} floor(ka/(1+a)) + sum_{k<=m} floor(ka/(1-a)).
std::int64_t f_a_closed_form(std::int64_t n, std::int64_t m,
                             const Param& param);

// Lattice points of the upper triangle (x < n, y <= 2x, on or above the
// slanted line), counted directly in the original coordinates.  Equals the
// sheared-triangle floor sum sum_{k<=2n-m} floor(ka/(1+a)).
std::int64_t count_t3_bruteforce(const LatticeRegion& region,
                                 const Param& param);

struct BijectionReport {
  struct Collision {
    std::int64_t n1, m1, n2, m2;
    std::int64_t value;
  };
  bool injective = true;
  // Number of consecutive values 0,1,...,covered_prefix-1 that are attained
  // within the bound and provably unattainable outside it.
  std::int64_t covered_prefix = 0;
  std::vector<Collision> collisions;
  std::int64_t regions_checked = 0;
};

// Checks distinctness and prefix coverage of f_a over all (n,m) in D with
// n <= bound.  Report-valued; collisions are findings, not errors.
BijectionReport verify_bijection(const Param& param, std::int64_t bound);

}  // namespace ech
