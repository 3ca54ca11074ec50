// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "echkatok/ech_rp3.hpp"
#include "echkatok/errors.hpp"
#include "echkatok/flow.hpp"
#include "echkatok/lattice.hpp"
#include "echkatok/spectrum.hpp"

using namespace ech;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (detail.empty()) detail = why;
  }
};

// Division-free literal sum, the oracle for criterion 6.
std::int64_t naive_floor_sum(std::int64_t n, std::int64_t p, std::int64_t q) {
  std::int64_t whole = p / q, part = p % q;
  std::int64_t f = 0, r = 0, s = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    f += whole;
    r += part;
    if (r >= q) {
      r -= q;
      ++f;
    }
    s += f;
  }
  return s;
}

// 1. Katok spectrum head: c1 = 4pi/(1+a).
Outcome criterion1() {
  Outcome out;
  {
    Param a = Param::rational(2, 5);
    auto es = katok_spectrum(a, 2);
    auto gens = ActionPair::katok(a);
    if (!(es[1].weights == Weights{2, 0}) ||
        gens.exact_string(es[1].weights) != "20/7*pi")
      out.fail("c1 mismatch at a = 2/5");
  }
  for (const char* text : {"0.499999999", "sqrt2/2"}) {
    Param a = Param::real(text);
    auto es = katok_spectrum(a, 2);
    double expect = 4 * kPi / (1 + a.a_double());
    if (std::fabs(es[1].value - expect) > 1e-12 * expect)
      out.fail(std::string("c1 off at a = ") + text);
    if (!(es[1].weights == Weights{2, 0}))
      out.fail(std::string("c1 weights off at a = ") + text);
  }
  return out;
}

// 2. Grading ladder equals the streamed spectrum, 500 entries.
Outcome criterion2() {
  Outcome out;
  for (const Param& a :
       {Param::rational(2, 5), Param::real("sqrt2/2"), Param::real("1/pi")}) {
    auto lhs = spectrum_via_grading(a, 500);
    auto rhs = katok_spectrum(a, 500);
    for (std::size_t i = 0; i < 500; ++i) {
      if (!(lhs[i].weights == rhs[i].weights)) {
        out.fail("weight mismatch at k=" + std::to_string(i) +
                 ", a = " + a.describe());
        break;
      }
    }
  }
  return out;
}

// 3. Lattice triple equality, n <= 40.
Outcome criterion3() {
  Outcome out;
  for (const Param& a : {Param::rational(2, 5), Param::rational(3, 7),
                         Param::real("sqrt2/2")}) {
    for (std::int64_t n = 0; n <= 40 && out.pass; ++n) {
      for (std::int64_t m = 0; m <= 2 * n; ++m) {
        std::int64_t brute = count_bruteforce({n, m}, a);
        if (brute != count_decomposed({n, m}, a) ||
            brute != f_a_closed_form(n, m, a) + 1) {
          out.fail("triple equality broken at (" + std::to_string(n) + "," +
                   std::to_string(m) + "), a = " + a.describe());
          break;
        }
      }
    }
  }
  return out;
}

// 4. Grading bijection onto an initial segment, total weight <= 80.
Outcome criterion4() {
  Outcome out;
  for (const Param& a : {Param::real("sqrt2/2"), Param::real("1/pi")}) {
    double au = a.a_upper_double();
    for (int gamma : {0, 1}) {
      std::set<std::int64_t> degrees;
      for (std::int64_t t = gamma; t <= 80; t += 2) {
        for (std::int64_t m1 = 0; m1 <= t; ++m1) {
          std::int64_t g = grading({m1, t - m1}, a);
          if (g < 0 || g % 2 != 0) out.fail("odd or negative grading");
          if (!degrees.insert(g).second)
            out.fail("grading collision in class " + std::to_string(gamma) +
                     ", a = " + a.describe());
        }
      }
      // Degrees below twice the quadratic lower bound at the first excluded
      // total weight cannot be attained outside the enumeration.
      double nb = gamma == 0 ? 41.0 : 40.0;
      double c = gamma == 0 ? au : std::max(0.0, 2 * au - 1);
      double d = gamma == 0 ? 0.0 : au;
      double lb = (nb * nb * (1 - au) - nb * c - d) / (1 + au);
      std::int64_t cap = 2 * static_cast<std::int64_t>(std::floor(lb)) - 2;
      for (std::int64_t deg = 0; deg <= cap; deg += 2) {
        if (degrees.count(deg) == 0) {
          out.fail("degree " + std::to_string(deg) + " missing in class " +
                   std::to_string(gamma) + ", a = " + a.describe());
          break;
        }
      }
    }
  }
  return out;
}

// 5. Floor identities, k <= 1e4, both modes.
Outcome criterion5() {
  Outcome out;
  for (const Param& a : {Param::rational(2, 5), Param::rational(3, 7),
                         Param::real("sqrt2/2"), Param::real("1/pi")}) {
    for (std::int64_t k = 1; k <= 10000; ++k) {
      CertifiedFloor plus = floor_certified(k, Ratio::AOverOnePlusA, a);
      if (!plus.exact && floor_certified(k, Ratio::InvOnePlusA, a).value !=
                             k - plus.value - 1) {
        out.fail("(1+a) identity broken at k=" + std::to_string(k) +
                 ", a = " + a.describe());
        break;
      }
      if (floor_certified(k, Ratio::InvOneMinusA, a).value !=
          k + floor_certified(k, Ratio::AOverOneMinusA, a).value) {
        out.fail("(1-a) identity broken at k=" + std::to_string(k) +
                 ", a = " + a.describe());
        break;
      }
    }
  }
  return out;
}

// 6. floor_sum_fast vs the naive sum: exhaustive grid and random large cases.
Outcome criterion6() {
  Outcome out;
  for (std::int64_t p = 0; p <= 200 && out.pass; ++p) {
    for (std::int64_t q = 1; q <= 200 && out.pass; ++q) {
      std::int64_t whole = p / q, part = p % q, f = 0, r = 0, s = 0;
      for (std::int64_t n = 1; n <= 200; ++n) {
        f += whole;
        r += part;
        if (r >= q) {
          r -= q;
          ++f;
        }
        s += f;
        if (floor_sum_fast(n, p, q) != s) {
          out.fail("grid mismatch at n=" + std::to_string(n) +
                   " p=" + std::to_string(p) + " q=" + std::to_string(q));
          break;
        }
      }
    }
  }
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> logu(0.0, std::log(1e6));
  std::uniform_int_distribution<std::int64_t> unif(1, 1000000);
  std::uniform_int_distribution<std::int64_t> unif0(0, 1000000);
  for (int i = 0; i < 10000 && out.pass; ++i) {
    std::int64_t n = std::min<std::int64_t>(
        1000000, static_cast<std::int64_t>(std::exp(logu(rng))));
    std::int64_t p = unif0(rng), q = unif(rng);
    if (i < 20) {  // pin the extreme corners
      n = 1000000;
      p = (i % 2 == 0) ? 1000000 : p;
      q = (i % 3 == 0) ? 1 : q;
    }
    if (floor_sum_fast(n, p, q) != naive_floor_sum(n, p, q))
      out.fail("random mismatch at n=" + std::to_string(n) +
               " p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
  return out;
}

// 7. Flow periods, traces, determinants, and the closed-form oracle.
Outcome criterion7() {
  using namespace ech::flow;
  Outcome out;
  for (const Param& a : {Param::rational(2, 5), Param::real("sqrt2/2")}) {
    double av = a.a_double();
    auto orbits = find_closed_orbits(a);
    double formula[2] = {2 * kPi / (1 + av), 2 * kPi / (1 - av)};
    for (int i = 0; i < 2; ++i) {
      if (std::fabs(orbits[i].period - formula[i]) > 1e-6 * formula[i])
        out.fail("period off for orbit " + std::to_string(i + 1) +
                 ", a = " + a.describe());
      if (std::fabs(orbits[i].monodromy_trace - 2 * std::cos(formula[i])) >
          1e-4)
        out.fail("trace off for orbit " + std::to_string(i + 1) +
                 ", a = " + a.describe());
      Mat2 m = monodromy(a, orbits[i]);
      if (std::fabs(m.det() - 1.0) > 1e-6)
        out.fail("determinant off for orbit " + std::to_string(i + 1));
    }
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      PhasePoint x0 = normalize_energy(
          a, project({{g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}}));
      PhasePoint x = x0;
      for (int leg = 1; leg <= 20; ++leg) {
        x = integrate(a, x, 0.5, 1e-3);
        PhasePoint y = exact_flow(a, x0, 0.5 * leg);
        Vec3 dq = x.q - y.q, dp = x.p - y.p;
        worst = std::max(worst, std::sqrt(dot(dq, dq) + dot(dp, dp)));
      }
    }
    if (worst > 1e-8)
      out.fail("oracle deviation " + std::to_string(worst) +
               " at a = " + a.describe());
  }
  return out;
}

// 8. a -> 0 continuity at a = 1e-4 against M2(N(2pi,2pi)), 2e-3 absolute.
Outcome criterion8() {
  Outcome out;
  Param a = Param::real("1e-4");
  auto got = katok_spectrum(a, 30);
  auto ref =
      m2_stream(ActionPair::rationals(Rational(2), Rational(2), true), 30);
  double worst = 0.0;
  std::int64_t first_bad = -1;
  for (std::size_t i = 0; i < 30; ++i) {
    double dev = std::fabs(got[i].value - ref[i].value);
    if (dev > 2e-3 && first_bad < 0) first_bad = static_cast<std::int64_t>(i);
    worst = std::max(worst, dev);
  }
  if (first_bad >= 0)
    out.fail("max |c_k(1e-4) - c_k(0)| = " + std::to_string(worst) +
             " > 2e-3, first at k=" + std::to_string(first_bad) +
             "; a weight-W entry deviates by 2*pi*W*a/(1+-a), which already "
             "exceeds 2e-3 for W >= 4 at a = 1e-4, so the stated bound is "
             "unattainable for any correct spectrum");
  return out;
}

// 9. Rank table with generator enumeration, degrees <= 400.
Outcome criterion9() {
  Outcome out;
  for (std::int64_t d = -401; d <= 400; ++d)
    for (int gamma : {0, 1})
      if (homology_rank(gamma, d) != ((d >= 0 && d % 2 == 0) ? 1 : 0))
        out.fail("rank table wrong at degree " + std::to_string(d));
  Param a = Param::real("sqrt2/2");
  for (int gamma : {0, 1}) {
    // Each even degree <= 400 is hit exactly once within a safe enumeration.
    std::vector<int> hits(401, 0);
    std::int64_t top = 120 + gamma;
    for (std::int64_t t = gamma; t <= top; t += 2)
      for (std::int64_t m1 = 0; m1 <= t; ++m1) {
        std::int64_t g = grading({m1, t - m1}, a);
        if (g <= 400) ++hits[static_cast<std::size_t>(g)];
      }
    for (std::int64_t d = 0; d <= 400; ++d) {
      int expect = d % 2 == 0 ? 1 : 0;
      if (hits[static_cast<std::size_t>(d)] != expect)
        out.fail("generator count at degree " + std::to_string(d) + " is " +
                 std::to_string(hits[static_cast<std::size_t>(d)]));
    }
  }
  for (std::int64_t d : {0, 2, 50, 400}) {
    OrbitSet o = generator_of_degree(0, d, a);
    if (grading(o, a) != d) out.fail("generator_of_degree inconsistent");
  }
  return out;
}

// 10. M2 is a subsequence of N with multiplicity.
Outcome criterion10() {
  Outcome out;
  for (const Param& a : {Param::rational(2, 5), Param::real("sqrt2/2")}) {
    auto gens = ActionPair::katok(a);
    auto m2 = m2_stream(gens, 200);
    std::int64_t ncount = 500;
    std::vector<SpectrumEntry> nab;
    for (;;) {
      nab = nab_stream(gens, ncount);
      if (gens.compare(nab.back().weights, m2.back().weights) ==
          Ordering::Greater)
        break;
      ncount *= 2;
    }
    for (const auto& e : m2) {
      bool found = false;
      for (const auto& f : nab)
        if (f.weights == e.weights) {
          found = true;
          break;
        }
      if (!found) {
        out.fail("entry k=" + std::to_string(e.k) +
                 " missing from N, a = " + a.describe());
        break;
      }
    }
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "katok spectrum head c1 = 4pi/(1+a), a in {2/5, 1/2-1e-9, sqrt2/2}",
       1.0, criterion1},
      {2,
       "grading ladder matches streamed spectrum, 500 entries, a in "
       "{2/5, sqrt2/2, 1/pi}",
       10.0, criterion2},
      {3, "lattice counts agree three ways, n <= 40, a in {2/5, 3/7, sqrt2/2}",
       10.0, criterion3},
      {4, "gradings biject onto an initial segment, total weight <= 80", 5.0,
       criterion4},
      {5, "floor identities hold for k <= 1e4, both modes", 60.0, criterion5},
      {6, "floor_sum_fast equals the naive sum (grid 200^3 + 1e4 random)", 5.0,
       criterion6},
      {7, "flow periods/traces/determinants and closed-form oracle", 60.0,
       criterion7},
      {8, "a -> 0 continuity within 2e-3 over 30 entries at a = 1e-4", 1.0,
       criterion8},
      {9, "homology rank table and generator counts, degrees <= 400", 60.0,
       criterion9},
      {10, "first 200 M2 entries occur in N with multiplicity", 60.0,
       criterion10},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > c.limit_seconds)
      out.fail("runtime " + std::to_string(secs) + " s exceeds " +
               std::to_string(c.limit_seconds) + " s");
    std::printf("criterion %2d: %s (%.2f s) %s%s%s\n", c.id,
                out.pass ? "PASS" : "FAIL", secs, c.name,
                out.detail.empty() ? "" : " -- ", out.detail.c_str());
    if (!out.pass) ++failures;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
