// Python bindings for the core operations.  Parameters are passed as the
// same strings the CLI accepts ("2/5", "0.25", "sqrt2/2", "1/pi").

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "echkatok/ech_rp3.hpp"
#include "echkatok/errors.hpp"
#include "echkatok/flow.hpp"
#include "echkatok/lattice.hpp"
#include "echkatok/spectrum.hpp"

namespace py = pybind11;
using namespace ech;

namespace {

Param make_param(const std::string& text, unsigned precision) {
  return Param::parse(text, precision);
}

py::list entries_to_list(const std::vector<SpectrumEntry>& entries) {
  py::list out;
  for (const auto& e : entries) {
    py::dict d;
    d["k"] = e.k;
    d["m1"] = e.weights.m1;
    d["m2"] = e.weights.m2;
    d["value"] = e.value;
    d["grading"] = e.grading ? py::cast(*e.grading) : py::none();
    out.append(std::move(d));
  }
  return out;
}

ActionPair pair_from_strings(const std::string& x, const std::string& y,
                             unsigned precision) {
  auto parse_one = [&](const std::string& t) -> Rational {
    auto slash = t.find('/');
    if (slash != std::string::npos)
      return Rational(std::stoll(t.substr(0, slash)),
                      std::stoll(t.substr(slash + 1)));
    return Rational(std::stoll(t));
  };
  auto is_rational = [](const std::string& t) {
    if (t == "sqrt2/2" || t == "1/pi") return false;
    return t.find_first_of(".eE") == std::string::npos;
  };
  if (is_rational(x) && is_rational(y))
    return ActionPair::rationals(parse_one(x), parse_one(y));
  auto real_one = [&](const std::string& t) {
    if (t == "sqrt2/2") return BigFloat::sqrt2_over_2(precision);
    if (t == "1/pi") return BigFloat::one_over_pi(precision);
    return BigFloat::from_decimal(t, precision);
  };
  return ActionPair::reals(real_one(x), real_one(y));
}

flow::PhasePoint point_from_tuples(const std::array<double, 3>& q,
                                   const std::array<double, 3>& p) {
  return flow::PhasePoint{{q[0], q[1], q[2]}, {p[0], p[1], p[2]}};
}

py::tuple point_to_tuples(const flow::PhasePoint& x) {
  return py::make_tuple(py::make_tuple(x.q.x, x.q.y, x.q.z),
                        py::make_tuple(x.p.x, x.p.y, x.p.z));
}

}  // namespace

PYBIND11_MODULE(echkatok, m) {
  m.doc() = "ECH spectrum of the Katok sphere: sequences, gradings, lattice "
            "counts and the geodesic flow";

  py::register_exception<AmbiguousFloor>(m, "AmbiguousFloorError");
  py::register_exception<AmbiguousComparison>(m, "AmbiguousComparisonError");
  py::register_exception<OverflowError>(m, "FloorSumOverflowError");
  py::register_exception<InvalidArgument>(m, "InvalidArgumentError");
  py::register_exception<NotFound>(m, "NotFoundError");

  const unsigned kDefault = Param::kDefaultRealPrecision;

  m.def(
      "floor_sum_fast",
      [](std::int64_t n, std::int64_t p, std::int64_t q) {
        return floor_sum_fast(n, p, q);
      },
      py::arg("n"), py::arg("p"), py::arg("q"),
      "sum_{k=1..n} floor(k*p/q), Euclidean-style, exact");

  m.def(
      "katok_spectrum",
      [](const std::string& a, std::int64_t count, unsigned precision) {
        return entries_to_list(katok_spectrum(make_param(a, precision), count));
      },
      py::arg("a"), py::arg("count"), py::arg("precision") = kDefault);

  m.def(
      "spectrum_via_grading",
      [](const std::string& a, std::int64_t count, unsigned precision) {
        return entries_to_list(
            spectrum_via_grading(make_param(a, precision), count));
      },
      py::arg("a"), py::arg("count"), py::arg("precision") = kDefault);

  m.def(
      "ellipsoid_spectrum",
      [](const std::string& x, const std::string& y, std::int64_t count,
         unsigned precision) {
        return entries_to_list(
            ellipsoid_spectrum(pair_from_strings(x, y, precision), count));
      },
      py::arg("x"), py::arg("y"), py::arg("count"),
      py::arg("precision") = kDefault);

  m.def(
      "nab_stream",
      [](const std::string& x, const std::string& y, std::int64_t count,
         unsigned precision) {
        return entries_to_list(
            nab_stream(pair_from_strings(x, y, precision), count));
      },
      py::arg("x"), py::arg("y"), py::arg("count"),
      py::arg("precision") = kDefault);

  m.def(
      "m2_stream",
      [](const std::string& x, const std::string& y, std::int64_t count,
         unsigned precision) {
        return entries_to_list(
            m2_stream(pair_from_strings(x, y, precision), count));
      },
      py::arg("x"), py::arg("y"), py::arg("count"),
      py::arg("precision") = kDefault);

  m.def(
      "cz_katok",
      [](const std::string& orbit, std::int64_t n, const std::string& a,
         unsigned precision) {
        if (orbit != "g1" && orbit != "g2")
          throw InvalidArgument("orbit must be 'g1' or 'g2'");
        return cz_katok(orbit == "g1" ? KatokOrbit::Gamma1 : KatokOrbit::Gamma2,
                        n, make_param(a, precision));
      },
      py::arg("orbit"), py::arg("n"), py::arg("a"),
      py::arg("precision") = kDefault);

  m.def(
      "cz_hyperbolic",
      [](std::int64_t k, std::int64_t n) { return cz_hyperbolic(k, n); },
      py::arg("k"), py::arg("n"));

  m.def(
      "grading",
      [](std::int64_t m1, std::int64_t m2, const std::string& a,
         unsigned precision) {
        return grading(OrbitSet{m1, m2}, make_param(a, precision));
      },
      py::arg("m1"), py::arg("m2"), py::arg("a"),
      py::arg("precision") = kDefault);

  m.def(
      "q_tau",
      [](std::int64_t m1, std::int64_t m2) {
        Rational r = q_tau(OrbitSet{m1, m2});
        return py::make_tuple(r.num(), r.den());
      },
      py::arg("m1"), py::arg("m2"), "numerator/denominator pair");

  m.def(
      "generator_of_degree",
      [](int gamma, std::int64_t degree, const std::string& a,
         unsigned precision) {
        OrbitSet o = generator_of_degree(gamma, degree, make_param(a, precision));
        return py::make_tuple(o.m1, o.m2);
      },
      py::arg("gamma"), py::arg("degree"), py::arg("a"),
      py::arg("precision") = kDefault);

  m.def(
      "action",
      [](std::int64_t m1, std::int64_t m2, const std::string& a,
         unsigned precision) {
        return action(OrbitSet{m1, m2}, make_param(a, precision));
      },
      py::arg("m1"), py::arg("m2"), py::arg("a"),
      py::arg("precision") = kDefault);

  m.def("homology_rank", &homology_rank, py::arg("gamma"), py::arg("degree"));
  m.def("u_map_degree", &u_map_degree, py::arg("k"));

  m.def(
      "count_bruteforce",
      [](std::int64_t n, std::int64_t mm, const std::string& a,
         unsigned precision) {
        return count_bruteforce({n, mm}, make_param(a, precision));
      },
      py::arg("n"), py::arg("m"), py::arg("a"), py::arg("precision") = kDefault);

  m.def(
      "count_decomposed",
      [](std::int64_t n, std::int64_t mm, const std::string& a,
         unsigned precision) {
        return count_decomposed({n, mm}, make_param(a, precision));
      },
      py::arg("n"), py::arg("m"), py::arg("a"), py::arg("precision") = kDefault);

  m.def(
      "f_a_closed_form",
      [](std::int64_t n, std::int64_t mm, const std::string& a,
         unsigned precision) {
        return f_a_closed_form(n, mm, make_param(a, precision));
      },
      py::arg("n"), py::arg("m"), py::arg("a"), py::arg("precision") = kDefault);

  m.def(
      "verify_bijection",
      [](const std::string& a, std::int64_t bound, unsigned precision) {
        BijectionReport r = verify_bijection(make_param(a, precision), bound);
        py::dict d;
        d["injective"] = r.injective;
        d["covered_prefix"] = r.covered_prefix;
        d["regions_checked"] = r.regions_checked;
        py::list cols;
        for (const auto& c : r.collisions)
          cols.append(py::make_tuple(c.n1, c.m1, c.n2, c.m2, c.value));
        d["collisions"] = std::move(cols);
        return d;
      },
      py::arg("a"), py::arg("bound"), py::arg("precision") = kDefault);

  m.def(
      "hamiltonian",
      [](const std::array<double, 3>& q, const std::array<double, 3>& p,
         const std::string& a, unsigned precision) {
        return flow::hamiltonian(make_param(a, precision),
                                 point_from_tuples(q, p));
      },
      py::arg("q"), py::arg("p"), py::arg("a"), py::arg("precision") = kDefault);

  m.def(
      "integrate",
      [](const std::array<double, 3>& q, const std::array<double, 3>& p,
         double t, double step, const std::string& a, unsigned precision) {
        return point_to_tuples(flow::integrate(
            make_param(a, precision), point_from_tuples(q, p), t, step));
      },
      py::arg("q"), py::arg("p"), py::arg("t"), py::arg("step"), py::arg("a"),
      py::arg("precision") = kDefault);

  m.def(
      "exact_flow",
      [](const std::array<double, 3>& q, const std::array<double, 3>& p,
         double t, const std::string& a, unsigned precision) {
        return point_to_tuples(flow::exact_flow(make_param(a, precision),
                                                point_from_tuples(q, p), t));
      },
      py::arg("q"), py::arg("p"), py::arg("t"), py::arg("a"),
      py::arg("precision") = kDefault);

  m.def(
      "find_closed_orbits",
      [](const std::string& a, unsigned precision) {
        auto orbits = flow::find_closed_orbits(make_param(a, precision));
        py::list out;
        for (const auto& o : orbits) {
          py::dict d;
          d["orbit"] = o.label == KatokOrbit::Gamma1 ? "g1" : "g2";
          d["period"] = o.period;
          d["trace"] = o.monodromy_trace;
          d["rotation_angle"] = o.rotation_angle;
          d["initial_point"] = point_to_tuples(o.initial_point);
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("a"), py::arg("precision") = kDefault);

  m.def(
      "rotation_to_cz",
      [](double theta, std::int64_t n) { return flow::rotation_to_cz(theta, n); },
      py::arg("theta"), py::arg("n"));
}
