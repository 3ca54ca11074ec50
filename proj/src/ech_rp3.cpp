#include "echkatok/ech_rp3.hpp"

#include <cmath>
#include <optional>

#include "echkatok/errors.hpp"
#include "echkatok/lattice.hpp"

namespace ech {

namespace {

// Prefix sums F[j] = sum_{k<=j} floor(k*r).
std::vector<std::int64_t> floor_prefix(std::int64_t n, Ratio r,
                                       const Param& param) {
  std::vector<std::int64_t> f(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t k = 1; k <= n; ++k)
    f[static_cast<std::size_t>(k)] =
        f[static_cast<std::size_t>(k - 1)] + floor_certified(k, r, param).value;
  return f;
}

std::int64_t grading_from_sums(std::int64_t m1, std::int64_t m2,
                               std::int64_t s1, std::int64_t s2) {
  std::int64_t d = m1 - m2;
  std::int64_t g;
  if ((m1 + m2) % 2 == 0) {
    g = (m1 + m2) - (d * d) / 2 + 2 * (s1 + s2);
  } else {
    g = (m1 + m2) - (d * d - 1) / 2 - 1 + 2 * (s1 + s2);
  }
  if (g < 0)
    throw NegativeGrading("grading of (" + std::to_string(m1) + "," +
                          std::to_string(m2) + ") came out negative");
  return g;
}

// Smallest N such that every orbit set of the class with half-total beyond N
// provably has half-grading > half_degree.  Uses the quadratic lower bound
// f(n, .) >= (n^2 (1-a) - n c - d) / (1+a) with a rounded up.
std::int64_t n_search_bound(const Param& param, std::int64_t half_degree,
                            int gamma) {
  double a = param.a_upper_double();
  if (a >= 1.0 - 1e-9)
    throw InvalidArgument("parameter too close to 1 for bounded search");
  double c = gamma == 0 ? a : std::max(0.0, 2.0 * a - 1.0);
  double d = gamma == 0 ? 0.0 : a;
  double rhs = static_cast<double>(half_degree) * (1.0 + a) + d;
  double n = (c + std::sqrt(c * c + 4.0 * (1.0 - a) * rhs)) / (2.0 * (1.0 - a));
  return static_cast<std::int64_t>(std::ceil(n)) + 2;
}

}  // namespace

std::int64_t cz_elliptic(Ratio theta, std::int64_t n, const Param& param) {
  if (n < 1) throw InvalidArgument("cz_elliptic requires n >= 1");
  CertifiedFloor f = floor_certified(n, theta, param);
  if (f.exact)
    throw AmbiguousFloor("degenerate iterate: n*theta is an integer at n = " +
                             std::to_string(n),
                         n);
  return 2 * f.value + 1;
}

std::int64_t cz_hyperbolic(std::int64_t k, std::int64_t n) {
  if (n < 1) throw InvalidArgument("cz_hyperbolic requires n >= 1");
  int128 r = int128(k) * n;
  if (r > INT64_MAX || r < INT64_MIN)
    throw OverflowError("Conley-Zehnder index exceeds 64 bits");
  return static_cast<std::int64_t>(r);
}

std::int64_t cz_katok(KatokOrbit orbit, std::int64_t n, const Param& param) {
  return cz_elliptic(
      orbit == KatokOrbit::Gamma1 ? Ratio::InvOnePlusA : Ratio::InvOneMinusA,
      n, param);
}

IndexData katok_index_data(KatokOrbit orbit, std::int64_t n,
                           const Param& param) {
  double a = param.a_double();
  double theta = orbit == KatokOrbit::Gamma1 ? 1.0 / (1.0 + a) : 1.0 / (1.0 - a);
  return IndexData{cz_katok(orbit, n, param), theta};
}

Rational q_tau(const OrbitSet& orbit_set) {
  int128 d = int128(orbit_set.m1) - orbit_set.m2;
  int128 sq = d * d;
  if (sq > INT64_MAX) throw OverflowError("q_tau out of range");
  return Rational(-static_cast<std::int64_t>(sq), 2);
}

std::int64_t grading(const OrbitSet& orbit_set, const Param& param) {
  if (orbit_set.m1 < 0 || orbit_set.m2 < 0)
    throw InvalidArgument("multiplicities must be nonnegative");
  std::int64_t s1 = 0, s2 = 0;
  for (std::int64_t k = 1; k <= orbit_set.m1; ++k)
    s1 += floor_certified(k, Ratio::InvOnePlusA, param).value;
  for (std::int64_t k = 1; k <= orbit_set.m2; ++k)
    s2 += floor_certified(k, Ratio::InvOneMinusA, param).value;
  return grading_from_sums(orbit_set.m1, orbit_set.m2, s1, s2);
}

OrbitSet generator_of_degree(int gamma, std::int64_t degree,
                             const Param& param) {
  if (gamma != 0 && gamma != 1)
    throw InvalidArgument("homology class must be 0 or 1");
  if (degree < 0 || degree % 2 != 0)
    throw InvalidArgument("degree must be an even nonnegative integer");
  std::int64_t n_max = n_search_bound(param, degree / 2, gamma);
  std::int64_t top = 2 * n_max + gamma;
  auto f1 = floor_prefix(top, Ratio::InvOnePlusA, param);
  auto f2 = floor_prefix(top, Ratio::InvOneMinusA, param);

  std::optional<OrbitSet> found;
  for (std::int64_t total = gamma; total <= top; total += 2) {
    for (std::int64_t m1 = 0; m1 <= total; ++m1) {
      std::int64_t m2 = total - m1;
      std::int64_t g = grading_from_sums(
          m1, m2, f1[static_cast<std::size_t>(m1)],
          f2[static_cast<std::size_t>(m2)]);
      if (g != degree) continue;
      if (found)
        throw NotFound("degree " + std::to_string(degree) +
                       " attained by more than one orbit set");
      found = OrbitSet{m1, m2};
    }
  }
  if (!found)
    throw NotFound("no orbit set of degree " + std::to_string(degree) +
                   " within the search bound");
  return *found;
}

std::vector<SpectrumEntry> spectrum_via_grading(const Param& param,
                                                std::int64_t count) {
  if (count < 1) throw InvalidArgument("count must be positive");
  // The ladder position of gamma1^(2n-m) gamma2^m is the lattice bijection
  // value f_a(n, m); on irrational parameters this is exactly half the
  // grading.  (Rational parameters have degenerate iterates where the raw
  // index sums shift by the number of integer hits; the ladder stays defined
  // through f_a, which is injective for every a.)
  std::int64_t n_max = n_search_bound(param, count - 1, 0);
  std::vector<std::optional<LatticeRegion>> slot(
      static_cast<std::size_t>(count));
  auto fa = floor_prefix(2 * n_max, Ratio::AOverOnePlusA, param);
  auto fb = floor_prefix(2 * n_max, Ratio::AOverOneMinusA, param);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    for (std::int64_t m = 0; m <= 2 * n; ++m) {
      std::int64_t f = n * n + m - fa[static_cast<std::size_t>(2 * n - m)] +
                       fb[static_cast<std::size_t>(m)];
      if (f < 0 || f >= count) continue;
      auto& s = slot[static_cast<std::size_t>(f)];
      if (s)
        throw NotFound("ladder position " + std::to_string(f) +
                       " attained twice");
      s = LatticeRegion{n, m};
    }
  }
  ActionPair gens = ActionPair::katok(param);
  std::vector<SpectrumEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    const auto& s = slot[static_cast<std::size_t>(k)];
    if (!s)
      throw NotFound("no generator at ladder position " + std::to_string(k));
    OrbitSet orbit{2 * s->n - s->m, s->m};
    SpectrumEntry e;
    e.k = k;
    e.weights = orbit.weights();
    e.value = gens.value(e.weights);
    e.grading = grading(orbit, param);
    out.push_back(e);
  }
  return out;
}

int homology_rank(int gamma, std::int64_t degree) {
  if (gamma != 0 && gamma != 1)
    throw InvalidArgument("homology class must be 0 or 1");
  return (degree >= 0 && degree % 2 == 0) ? 1 : 0;
}

std::int64_t u_map_degree(std::int64_t k) {
  if (k < 1) throw InvalidArgument("the generator ladder starts at k = 1");
  return k - 1;
}

double action(const OrbitSet& orbit_set, const Param& param) {
  if (orbit_set.m1 < 0 || orbit_set.m2 < 0)
    throw InvalidArgument("multiplicities must be nonnegative");
  return ActionPair::katok(param).value(orbit_set.weights());
}

}  // namespace ech
