// Command-line surface: spectrum tables, verification suites and flow
// experiments, with deterministic JSON/CSV output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "echkatok/ech_rp3.hpp"
#include "echkatok/errors.hpp"
#include "echkatok/flow.hpp"
#include "echkatok/lattice.hpp"
#include "echkatok/spectrum.hpp"

using json = nlohmann::ordered_json;
using namespace ech;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitCertification = 3;

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GeneratorValue {
  bool rational = true;
  Rational rat;
  std::string text;
};

GeneratorValue parse_generator(const std::string& text) {
  GeneratorValue g;
  g.text = text;
  if (text == "sqrt2/2" || text == "1/pi") {
    g.rational = false;
    return g;
  }
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      g.rat = Rational(std::stoll(text.substr(0, slash)),
                       std::stoll(text.substr(slash + 1)));
      return g;
    }
    if (text.find_first_of(".eE") == std::string::npos) {
      g.rat = Rational(std::stoll(text));
      return g;
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse generator: " + text);
  }
  g.rational = false;
  return g;
}

BigFloat generator_real(const GeneratorValue& g, unsigned prec) {
  if (g.rational) return BigFloat::from_ratio(g.rat.num(), g.rat.den(), prec);
  if (g.text == "sqrt2/2") return BigFloat::sqrt2_over_2(prec);
  if (g.text == "1/pi") return BigFloat::one_over_pi(prec);
  return BigFloat::from_decimal(g.text, prec);
}

ActionPair make_pair_from(const std::string& xs, const std::string& ys,
                          unsigned prec) {
  GeneratorValue x = parse_generator(xs), y = parse_generator(ys);
  if (x.rational && y.rational)
    return ActionPair::rationals(x.rat, y.rat);
  return ActionPair::reals(generator_real(x, prec), generator_real(y, prec));
}

std::string echo_command(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOptions {
  std::string kind;
  std::string a_text;
  std::string x_text, y_text;
  std::int64_t count = 10;
  std::string format = "json";
  bool exact = false;
  unsigned precision = Param::kDefaultRealPrecision;
  double a_limit = -1.0;
  bool has_a_limit = false;
};

void emit_rows(const std::vector<SpectrumEntry>& entries,
               const ActionPair* exact_gens, const std::string& command,
               const std::string& format, const json& extra) {
  if (format == "csv") {
    std::printf("k,m1,m2,value,grading\n");
    for (const auto& e : entries) {
      std::printf("%lld,%lld,%lld,%s,", static_cast<long long>(e.k),
                  static_cast<long long>(e.weights.m1),
                  static_cast<long long>(e.weights.m2),
                  csv_double(e.value).c_str());
      if (e.grading) std::printf("%lld", static_cast<long long>(*e.grading));
      std::printf("\n");
    }
    return;
  }
  json out;
  out["schema_version"] = "1";
  out["command"] = command;
  json rows = json::array();
  for (const auto& e : entries) {
    json row;
    row["k"] = e.k;
    row["m1"] = e.weights.m1;
    row["m2"] = e.weights.m2;
    row["value"] = e.value;
    if (exact_gens && exact_gens->exact_available())
      row["value_exact"] = exact_gens->exact_string(e.weights);
    if (e.grading) row["grading"] = *e.grading;
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = *it;
  std::printf("%s\n", out.dump(2).c_str());
}

int run_spectrum(const SpectrumOptions& opt, const std::string& command) {
  if (opt.count < 1) throw InvalidArgument("--count must be >= 1");
  if (opt.format != "json" && opt.format != "csv")
    throw InvalidArgument("--format must be json or csv");

  std::vector<SpectrumEntry> entries;
  ActionPair gens = ActionPair::rationals(Rational(1), Rational(1));
  json extra;

  if (opt.kind == "katok" || opt.kind == "m2" || opt.kind == "nab") {
    bool katok_kind = opt.kind == "katok";
    if (katok_kind) {
      Param a = Param::parse(opt.a_text, opt.precision);
      if (opt.exact && a.mode() != Param::Mode::Rational)
        throw InvalidArgument("--exact requires a rational parameter a = p/q");
      gens = ActionPair::katok(a);
      entries = katok_spectrum(a, opt.count);
      if (opt.has_a_limit) {
        // Continuity comparison against the round-metric spectrum.
        auto reference = m2_stream(
            ActionPair::rationals(Rational(2), Rational(2), true), opt.count);
        json cmp_rows = json::array();
        double max_dev = 0.0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
          double dev = std::fabs(entries[i].value - reference[i].value);
          max_dev = std::max(max_dev, dev);
          cmp_rows.push_back(json{{"k", entries[i].k},
                                  {"value", entries[i].value},
                                  {"reference_value", reference[i].value},
                                  {"abs_deviation", dev}});
        }
        extra["a_limit_reference"] = "M2(N(2pi,2pi))";
        extra["a_limit_rows"] = std::move(cmp_rows);
        extra["max_abs_deviation"] = max_dev;
      }
    } else {
      gens = make_pair_from(opt.x_text, opt.y_text, opt.precision);
      if (opt.exact && !gens.exact_available())
        throw InvalidArgument("--exact requires rational generators");
      entries = opt.kind == "m2" ? m2_stream(gens, opt.count)
                                 : nab_stream(gens, opt.count);
    }
  } else if (opt.kind == "ellipsoid") {
    gens = make_pair_from(opt.x_text, opt.y_text, opt.precision);
    if (opt.exact && !gens.exact_available())
      throw InvalidArgument("--exact requires rational generators");
    entries = ellipsoid_spectrum(gens, opt.count);
  } else {
    throw InvalidArgument("unknown spectrum kind: " + opt.kind);
  }

  emit_rows(entries, &gens, command, opt.format, extra);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string suite;
  std::string a_text = "2/5";
  std::int64_t n_max = -1;
  std::int64_t count = 500;
  std::int64_t k_max = 10000;
  std::int64_t seeds = 20;
  unsigned precision = Param::kDefaultRealPrecision;
};

int verify_lattice(const Param& a, std::int64_t n_max) {
  std::int64_t checked = 0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    for (std::int64_t m = 0; m <= 2 * n; ++m) {
      std::int64_t brute = count_bruteforce({n, m}, a);
      std::int64_t dec = count_decomposed({n, m}, a);
      std::int64_t closed = f_a_closed_form(n, m, a) + 1;
      ++checked;
      if (brute != dec || brute != closed) {
        std::printf(
            "lattice: FAIL at (n,m)=(%lld,%lld): brute=%lld decomposed=%lld "
            "closed+1=%lld\n",
            static_cast<long long>(n), static_cast<long long>(m),
            static_cast<long long>(brute), static_cast<long long>(dec),
            static_cast<long long>(closed));
        return kExitVerifyFailed;
      }
    }
  }
  std::printf("lattice: PASS, %lld regions checked, a = %s\n",
              static_cast<long long>(checked), a.describe().c_str());
  return kExitOk;
}

int verify_bijection_suite(const Param& a, std::int64_t n_max) {
  BijectionReport r = verify_bijection(a, n_max);
  std::printf("bijection: %s, %lld regions, covered prefix {0..%lld}, %zu "
              "collisions\n",
              r.injective ? "injective" : "NOT injective",
              static_cast<long long>(r.regions_checked),
              static_cast<long long>(r.covered_prefix - 1),
              r.collisions.size());
  for (const auto& c : r.collisions)
    std::printf("  collision: f(%lld,%lld) = f(%lld,%lld) = %lld\n",
                static_cast<long long>(c.n1), static_cast<long long>(c.m1),
                static_cast<long long>(c.n2), static_cast<long long>(c.m2),
                static_cast<long long>(c.value));
  if (!r.injective) {
    if (a.mode() == Param::Mode::Rational) {
      std::printf("bijection: collisions are expected-degenerate (rational "
                  "slope); not counted as failure\n");
      return kExitOk;
    }
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int verify_spectrum_agreement(const Param& a, std::int64_t count) {
  auto via_grading = spectrum_via_grading(a, count);
  auto streamed = katok_spectrum(a, count);
  for (std::int64_t i = 0; i < count; ++i) {
    if (!(via_grading[static_cast<std::size_t>(i)].weights ==
          streamed[static_cast<std::size_t>(i)].weights)) {
      std::printf("spectrum-agreement: FAIL at k=%lld\n",
                  static_cast<long long>(i));
      return kExitVerifyFailed;
    }
  }
  std::printf("spectrum-agreement: PASS, %lld entries, a = %s\n",
              static_cast<long long>(count), a.describe().c_str());
  return kExitOk;
}

int verify_floor_identity(const Param& a, std::int64_t k_max) {
  std::int64_t skipped = 0;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    CertifiedFloor plus = floor_certified(k, Ratio::AOverOnePlusA, a);
    CertifiedFloor inv_plus = floor_certified(k, Ratio::InvOnePlusA, a);
    if (plus.exact) {
      ++skipped;  // k*a/(1+a) an integer: the -1 identity does not apply
    } else if (inv_plus.value != k - plus.value - 1) {
      std::printf("floor-identity: FAIL (1+a side) at k=%lld\n",
                  static_cast<long long>(k));
      return kExitVerifyFailed;
    }
    CertifiedFloor minus = floor_certified(k, Ratio::AOverOneMinusA, a);
    CertifiedFloor inv_minus = floor_certified(k, Ratio::InvOneMinusA, a);
    if (inv_minus.value != k + minus.value) {
      std::printf("floor-identity: FAIL (1-a side) at k=%lld\n",
                  static_cast<long long>(k));
      return kExitVerifyFailed;
    }
  }
  std::printf(
      "floor-identity: PASS, k <= %lld (%lld degenerate cases skipped), a = "
      "%s\n",
      static_cast<long long>(k_max), static_cast<long long>(skipped),
      a.describe().c_str());
  return kExitOk;
}

int verify_flow(const Param& a, std::int64_t seeds) {
  using namespace ech::flow;
  double av = a.a_double();
  auto orbits = find_closed_orbits(a);
  const double pi = std::numbers::pi;
  double expected[2] = {2 * pi / (1 + av), 2 * pi / (1 - av)};
  for (int i = 0; i < 2; ++i) {
    double rel = std::fabs(orbits[i].period - expected[i]) / expected[i];
    double trace_err =
        std::fabs(orbits[i].monodromy_trace - 2 * std::cos(expected[i]));
    Mat2 m = monodromy(a, orbits[i]);
    if (rel > 1e-6 || trace_err > 1e-4 || std::fabs(m.det() - 1.0) > 1e-6) {
      std::printf("flow: FAIL orbit %d: period rel err %.3g, trace err %.3g, "
                  "det err %.3g\n",
                  i + 1, rel, trace_err, std::fabs(m.det() - 1.0));
      return kExitVerifyFailed;
    }
  }
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (std::int64_t s = 0; s < seeds; ++s) {
    PhasePoint x0 = normalize_energy(
        a, project({{g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}}));
    PhasePoint x = x0;
    for (int leg = 1; leg <= 100; ++leg) {
      x = integrate(a, x, 0.1, 1e-3);
      Vec3 dq = x.q - exact_flow(a, x0, 0.1 * leg).q;
      Vec3 dp = x.p - exact_flow(a, x0, 0.1 * leg).p;
      worst = std::max(worst, std::sqrt(dot(dq, dq) + dot(dp, dp)));
    }
  }
  if (worst > 1e-8) {
    std::printf("flow: FAIL oracle deviation %.3g > 1e-8\n", worst);
    return kExitVerifyFailed;
  }
  std::printf("flow: PASS, periods/traces/determinants within tolerance, "
              "oracle deviation %.3g over %lld seeds, a = %s\n",
              worst, static_cast<long long>(seeds), a.describe().c_str());
  return kExitOk;
}

int run_verify(const VerifyOptions& opt) {
  Param a = Param::parse(opt.a_text, opt.precision);
  if (opt.suite == "lattice")
    return verify_lattice(a, opt.n_max < 0 ? 40 : opt.n_max);
  if (opt.suite == "bijection")
    return verify_bijection_suite(a, opt.n_max < 0 ? 30 : opt.n_max);
  if (opt.suite == "spectrum-agreement")
    return verify_spectrum_agreement(a, opt.count);
  if (opt.suite == "floor-identity") return verify_floor_identity(a, opt.k_max);
  if (opt.suite == "flow") return verify_flow(a, opt.seeds);
  throw InvalidArgument("unknown verify suite: " + opt.suite);
}

// ---------------------------------------------------------------------------
// flow

struct FlowOptions {
  std::string action;
  std::string a_text;
  std::string orbit = "g1";
  std::string format = "json";
  double t_max = 10.0;
  double step = 1e-3;
  double offset = 1e-6;
  std::int64_t seeds = 100;
  unsigned precision = Param::kDefaultRealPrecision;
};

void emit_table(const std::vector<json>& rows, const std::string& command,
                const std::string& format) {
  if (format == "csv") {
    if (!rows.empty()) {
      std::string header;
      for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        if (!header.empty()) header += ',';
        header += it.key();
      }
      std::printf("%s\n", header.c_str());
    }
    for (const auto& row : rows) {
      std::string line;
      for (auto it = row.begin(); it != row.end(); ++it) {
        if (!line.empty()) line += ',';
        if (it->is_number_float())
          line += csv_double(it->get<double>());
        else if (it->is_string())
          line += it->get<std::string>();
        else
          line += it->dump();
      }
      std::printf("%s\n", line.c_str());
    }
    return;
  }
  json out;
  out["schema_version"] = "1";
  out["command"] = command;
  out["rows"] = rows;
  std::printf("%s\n", out.dump(2).c_str());
}

int run_flow(const FlowOptions& opt, const std::string& command) {
  using namespace ech::flow;
  Param a = Param::parse(opt.a_text, opt.precision);
  double av = a.a_double();
  const double pi = std::numbers::pi;

  if (opt.action == "orbits") {
    auto orbits = find_closed_orbits(a);
    std::vector<json> rows;
    for (int i = 0; i < 2; ++i) {
      double formula = i == 0 ? 2 * pi / (1 + av) : 2 * pi / (1 - av);
      rows.push_back(json{
          {"orbit", i == 0 ? "g1" : "g2"},
          {"period", orbits[i].period},
          {"period_formula", formula},
          {"period_abs_err", std::fabs(orbits[i].period - formula)},
          {"trace", orbits[i].monodromy_trace},
          {"trace_formula", 2 * std::cos(formula)},
          {"rotation_angle", orbits[i].rotation_angle},
      });
    }
    emit_table(rows, command, opt.format);
    return kExitOk;
  }

  if (opt.action == "monodromy") {
    if (opt.orbit != "g1" && opt.orbit != "g2")
      throw InvalidArgument("--orbit must be g1 or g2");
    auto orbits = find_closed_orbits(a);
    const OrbitRecord& orb = opt.orbit == "g1" ? orbits[0] : orbits[1];
    Mat2 m = monodromy(a, orb, opt.offset);
    double formula =
        2 * std::cos(opt.orbit == "g1" ? 2 * pi / (1 + av) : 2 * pi / (1 - av));
    std::vector<json> rows{json{
        {"orbit", opt.orbit},
        {"trace", m.trace()},
        {"trace_formula", formula},
        {"trace_abs_err", std::fabs(m.trace() - formula)},
        {"det", m.det()},
        {"rotation_angle", orb.rotation_angle},
    }};
    emit_table(rows, command, opt.format);
    return kExitOk;
  }

  if (opt.action == "compare-oracle") {
    if (!(opt.step > 0 && opt.step <= 0.1))
      throw InvalidArgument("--step must lie in (0, 0.1]");
    if (!(opt.t_max > 0)) throw InvalidArgument("--t must be positive");
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (std::int64_t s = 0; s < opt.seeds; ++s) {
      PhasePoint x0 = normalize_energy(
          a, project({{g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}}));
      PhasePoint x = x0;
      int legs = static_cast<int>(std::ceil(opt.t_max / 0.5));
      double leg_t = opt.t_max / legs;
      for (int leg = 1; leg <= legs; ++leg) {
        x = integrate(a, x, leg_t, opt.step);
        PhasePoint y = exact_flow(a, x0, leg_t * leg);
        Vec3 dq = x.q - y.q, dp = x.p - y.p;
        worst = std::max(worst, std::sqrt(dot(dq, dq) + dot(dp, dp)));
      }
    }
    std::vector<json> rows{json{{"seeds", opt.seeds},
                                {"t_max", opt.t_max},
                                {"step", opt.step},
                                {"max_deviation", worst}}};
    emit_table(rows, command, opt.format);
    return kExitOk;
  }

  throw InvalidArgument("unknown flow action: " + opt.action);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ECH spectrum of the Katok sphere and supporting checks"};
  app.require_subcommand(1);
  std::string command = echo_command(argc, argv);

  SpectrumOptions sopt;
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "sorted action spectra");
  spectrum_cmd
      ->add_option("kind", sopt.kind, "one of: katok, ellipsoid, nab, m2")
      ->required();
  spectrum_cmd->add_option("--a", sopt.a_text,
                           "Katok parameter (p/q, decimal, sqrt2/2, 1/pi)");
  spectrum_cmd->add_option("--x", sopt.x_text, "first generator");
  spectrum_cmd->add_option("--y", sopt.y_text, "second generator");
  spectrum_cmd->add_option("--count", sopt.count, "number of entries");
  spectrum_cmd->add_option("--format", sopt.format, "json or csv");
  spectrum_cmd->add_flag("--exact", sopt.exact,
                         "require exact rational output");
  spectrum_cmd->add_option("--precision", sopt.precision,
                           "working precision in bits for real mode");
  spectrum_cmd->add_option("--a-limit", sopt.a_limit,
                           "compare against the a -> 0 spectrum (only 0)");

  VerifyOptions vopt;
  CLI::App* verify_cmd = app.add_subcommand("verify", "verification suites");
  verify_cmd
      ->add_option("suite", vopt.suite,
                   "one of: lattice, bijection, spectrum-agreement, "
                   "floor-identity, flow")
      ->required();
  verify_cmd->add_option("--a", vopt.a_text, "Katok parameter");
  verify_cmd->add_option("--n-max", vopt.n_max, "anchor bound");
  verify_cmd->add_option("--count", vopt.count, "entries to compare");
  verify_cmd->add_option("--k-max", vopt.k_max, "floor identity range");
  verify_cmd->add_option("--seeds", vopt.seeds, "random seeds for flow");
  verify_cmd->add_option("--precision", vopt.precision, "precision in bits");

  FlowOptions fopt;
  CLI::App* flow_cmd = app.add_subcommand("flow", "geodesic flow experiments");
  flow_cmd
      ->add_option("action", fopt.action,
                   "one of: orbits, monodromy, compare-oracle")
      ->required();
  flow_cmd->add_option("--a", fopt.a_text, "Katok parameter")->required();
  flow_cmd->add_option("--orbit", fopt.orbit, "g1 or g2");
  flow_cmd->add_option("--format", fopt.format, "json or csv");
  flow_cmd->add_option("--t", fopt.t_max, "comparison horizon");
  flow_cmd->add_option("--step", fopt.step, "integration step");
  flow_cmd->add_option("--offset", fopt.offset, "finite-difference offset");
  flow_cmd->add_option("--seeds", fopt.seeds, "number of random seeds");
  flow_cmd->add_option("--precision", fopt.precision, "precision in bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum_cmd->parsed()) {
      sopt.has_a_limit = spectrum_cmd->count("--a-limit") > 0;
      if (sopt.has_a_limit && sopt.a_limit != 0.0)
        throw InvalidArgument("--a-limit only supports the value 0");
      if (sopt.kind == "katok" && sopt.a_text.empty())
        throw InvalidArgument("spectrum katok requires --a");
      if (sopt.kind != "katok" && (sopt.x_text.empty() || sopt.y_text.empty()))
        throw InvalidArgument("spectrum " + sopt.kind +
                              " requires --x and --y");
      return run_spectrum(sopt, command);
    }
    if (verify_cmd->parsed()) return run_verify(vopt);
    if (flow_cmd->parsed()) return run_flow(fopt, command);
  } catch (const AmbiguousFloor& e) {
    std::cerr << "certification failure: " << e.what() << " (offending index "
              << e.k << ")\n";
    return kExitCertification;
  } catch (const AmbiguousComparison& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kExitCertification;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
