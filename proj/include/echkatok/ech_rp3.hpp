#pragma once

#include <cstdint>
#include <vector>

#include "echkatok/arithmetic.hpp"
#include "echkatok/spectrum.hpp"

namespace ech {

// Formal product gamma1^m1 gamma2^m2; its homology class is the parity of
// the total multiplicity.
struct OrbitSet {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t total() const { return m1 + m2; }
  int gamma() const { return static_cast<int>((m1 + m2) & 1); }
  Weights weights() const { return Weights{m1, m2}; }
  friend bool operator==(const OrbitSet&, const OrbitSet&) = default;
};

enum class KatokOrbit { Gamma1, Gamma2 };

// Index data of an elliptic iterate: cz = 2*floor(n*rotation) + 1.
struct IndexData {
  std::int64_t cz = 1;
  double rotation = 0.0;  // rotation number per period, in revolutions
};

// Conley-Zehnder index 2*floor(n*theta) + 1 of the n-th iterate of an
// elliptic orbit with rotation number theta in {1/(1+a), 1/(1-a)}.
// Rejects degenerate iterates (n*theta an integer).
std::int64_t cz_elliptic(Ratio theta, std::int64_t n, const Param& param);

// The index together with the rotation number of the chosen Katok orbit.
IndexData katok_index_data(KatokOrbit orbit, std::int64_t n,
                           const Param& param);

// n*k for a hyperbolic orbit whose eigenvector rotates by pi*k per period.
std::int64_t cz_hyperbolic(std::int64_t k, std::int64_t n);

// cz_elliptic with the rotation number of the chosen Katok orbit.
std::int64_t cz_katok(KatokOrbit orbit, std::int64_t n, const Param& param);

// Relative intersection contribution -m1^2/2 + m1*m2 - m2^2/2.
Rational q_tau(const OrbitSet& orbit_set);

// Absolute grading of the orbit set (even, nonnegative) in its class.
std::int64_t grading(const OrbitSet& orbit_set, const Param& param);

// Inverts the grading within the class: the unique orbit set of the given
// even degree, found by bounded enumeration.
OrbitSet generator_of_degree(int gamma, std::int64_t degree,
                             const Param& param);

// The c_k ladder realized through the degree-2k generators, independent of
// the streaming generator.
std::vector<SpectrumEntry> spectrum_via_grading(const Param& param,
                                                std::int64_t count);

// 1 iff degree is an even nonnegative integer, for either class.
int homology_rank(int gamma, std::int64_t degree);

// The U map sends the degree-2k generator to the degree-2(k-1) one.
std::int64_t u_map_degree(std::int64_t k);

// Total action m1*2pi/(1+a) + m2*2pi/(1-a).
double action(const OrbitSet& orbit_set, const Param& param);

}  // namespace ech
