#include "echkatok/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "echkatok/errors.hpp"

namespace ech {
namespace flow {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr double kMonodromyStep = 1e-4;
constexpr double kOrbitStep = 1e-4;

using Vec6 = std::array<double, 6>;

Vec6 pack(const PhasePoint& x) {
  return {x.q.x, x.q.y, x.q.z, x.p.x, x.p.y, x.p.z};
}
PhasePoint unpack(const Vec6& v) {
  return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}
Vec6 sub6(const Vec6& a, const Vec6& b) {
  Vec6 r;
  for (int i = 0; i < 6; ++i) r[i] = a[i] - b[i];
  return r;
}
double dot6(const Vec6& a, const Vec6& b) {
  double s = 0;
  for (int i = 0; i < 6; ++i) s += a[i] * b[i];
  return s;
}
double norm6(const Vec6& a) { return std::sqrt(dot6(a, a)); }

// Hamiltonian vector field of H_a constrained to T*S^2: the Lagrange
// multiplier |p| on the q-constraint keeps both |q| = 1 and q.p = 0
// invariant, and H_a is conserved exactly.
PhasePoint field(double a, const PhasePoint& x) {
  double pn = norm(x.p);
  if (pn < kDegenerateNorm)
    throw DegeneratePoint("phase point at the zero section");
  Vec3 dq = (1.0 / pn) * x.p + a * rot_z_field(x.q);
  Vec3 dp = a * rot_z_field(x.p) - pn * x.q;
  return {dq, dp};
}

PhasePoint rk4_step(double a, const PhasePoint& x, double h) {
  PhasePoint k1 = field(a, x);
  PhasePoint x2{x.q + (h / 2) * k1.q, x.p + (h / 2) * k1.p};
  PhasePoint k2 = field(a, x2);
  PhasePoint x3{x.q + (h / 2) * k2.q, x.p + (h / 2) * k2.p};
  PhasePoint k3 = field(a, x3);
  PhasePoint x4{x.q + h * k3.q, x.p + h * k3.p};
  PhasePoint k4 = field(a, x4);
  Vec3 q = x.q + (h / 6) * (k1.q + 2 * k2.q + 2 * k3.q + k4.q);
  Vec3 p = x.p + (h / 6) * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
  return project(PhasePoint{q, p});
}

// Signed angle swept in the equatorial plane between consecutive base points.
double planar_angle(const Vec3& from, const Vec3& to) {
  double cross = from.x * to.y - from.y * to.x;
  double d = from.x * to.x + from.y * to.y;
  return std::atan2(cross, d);
}

struct Frame {
  PhasePoint base;
  Vec6 e1, e2;
  std::array<Vec6, 6> columns;  // [e1 e2 X G1 G2 G3]
};

// Solves the 6x6 system with columns from the frame; Gaussian elimination
// with partial pivoting.
std::array<double, 6> solve6(const std::array<Vec6, 6>& cols, Vec6 rhs) {
  double m[6][7];
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) m[r][c] = cols[c][r];
    m[r][6] = rhs[r];
  }
  for (int c = 0; c < 6; ++c) {
    int piv = c;
    for (int r = c + 1; r < 6; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (std::fabs(m[piv][c]) < 1e-14)
      throw IllConditioned("transverse frame is singular");
    if (piv != c)
      for (int k = c; k < 7; ++k) std::swap(m[piv][k], m[c][k]);
    for (int r = c + 1; r < 6; ++r) {
      double f = m[r][c] / m[c][c];
      for (int k = c; k < 7; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::array<double, 6> x{};
  for (int r = 5; r >= 0; --r) {
    double s = m[r][6];
    for (int c = r + 1; c < 6; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return x;
}

// Canonical two-form dp ^ dq evaluated on tangent 6-vectors.
double omega6(const Vec6& u, const Vec6& v) {
  double s = 0;
  for (int i = 0; i < 3; ++i) s += u[3 + i] * v[i] - u[i] * v[3 + i];
  return s;
}

// Builds an omega-positive orthonormal basis (e1, e2) of the 2-plane inside
// the energy level that is orthogonal to the flow direction, plus the full
// coordinate frame used to read displacements.
Frame transverse_frame(double a, const PhasePoint& x) {
  double pn = norm(x.p);
  PhasePoint xdot = field(a, x);
  Vec6 X = pack(xdot);
  Vec6 g1 = {x.q.x, x.q.y, x.q.z, 0, 0, 0};
  Vec6 g2 = {x.p.x, x.p.y, x.p.z, x.q.x, x.q.y, x.q.z};
  Vec3 hq = -a * rot_z_field(x.p);
  Vec3 hp = (1.0 / pn) * x.p + a * rot_z_field(x.q);
  Vec6 g3 = {hq.x, hq.y, hq.z, hp.x, hp.y, hp.z};

  std::array<Vec6, 4> ortho{};
  int no = 0;
  for (const Vec6& src : {g1, g2, g3, X}) {
    Vec6 v = src;
    for (int j = 0; j < no; ++j) {
      double c = dot6(v, ortho[j]);
      for (int i = 0; i < 6; ++i) v[i] -= c * ortho[j][i];
    }
    double nv = norm6(v);
    if (nv < 1e-10) throw IllConditioned("degenerate constraint frame");
    for (int i = 0; i < 6; ++i) v[i] /= nv;
    ortho[no++] = v;
  }

  std::array<Vec6, 2> es{};
  int ne = 0;
  for (int axis = 0; axis < 6 && ne < 2; ++axis) {
    Vec6 v{};
    v[axis] = 1.0;
    for (int j = 0; j < 4; ++j) {
      double c = dot6(v, ortho[j]);
      for (int i = 0; i < 6; ++i) v[i] -= c * ortho[j][i];
    }
    for (int j = 0; j < ne; ++j) {
      double c = dot6(v, es[j]);
      for (int i = 0; i < 6; ++i) v[i] -= c * es[j][i];
    }
    double nv = norm6(v);
    if (nv < 1e-6) continue;
    for (int i = 0; i < 6; ++i) v[i] /= nv;
    es[ne++] = v;
  }
  if (ne != 2) throw IllConditioned("could not build a transverse 2-plane");
  if (omega6(es[0], es[1]) < 0) std::swap(es[0], es[1]);

  Frame f;
  f.base = x;
  f.e1 = es[0];
  f.e2 = es[1];
  f.columns = {f.e1, f.e2, X, g1, g2, g3};
  return f;
}

PhasePoint chart_point(const Param& param, const Frame& fr, double u,
                       double v) {
  Vec6 b = pack(fr.base);
  for (int i = 0; i < 6; ++i) b[i] += u * fr.e1[i] + v * fr.e2[i];
  return normalize_energy(param, project(unpack(b)));
}

Mat2 monodromy_at_offset(const Param& param, const Frame& fr, double period,
                         double h) {
  Mat2 m;
  for (int dir = 0; dir < 2; ++dir) {
    double du = dir == 0 ? h : 0.0;
    double dv = dir == 0 ? 0.0 : h;
    PhasePoint plus =
        integrate(param, chart_point(param, fr, du, dv), period, kMonodromyStep);
    PhasePoint minus = integrate(param, chart_point(param, fr, -du, -dv),
                                 period, kMonodromyStep);
    Vec6 d = sub6(pack(plus), pack(minus));
    for (int i = 0; i < 6; ++i) d[i] /= 2 * h;
    auto c = solve6(fr.columns, d);
    if (dir == 0) {
      m.a00 = c[0];
      m.a10 = c[1];
    } else {
      m.a01 = c[0];
      m.a11 = c[1];
    }
  }
  return m;
}

}  // namespace

double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
Vec3 rot_z_field(Vec3 v) { return {-v.y, v.x, 0.0}; }

double hamiltonian(const Param& param, const PhasePoint& x) {
  double pn = norm(x.p);
  if (pn < kDegenerateNorm)
    throw DegeneratePoint("Hamiltonian undefined at the zero section");
  return pn + param.a_double() * dot(x.p, rot_z_field(x.q));
}

PhasePoint project(PhasePoint x) {
  double qn = norm(x.q);
  if (qn < kDegenerateNorm) throw DegeneratePoint("base point at the origin");
  x.q = (1.0 / qn) * x.q;
  x.p = x.p - dot(x.p, x.q) * x.q;
  return x;
}

PhasePoint normalize_energy(const Param& param, PhasePoint x) {
  double h = hamiltonian(param, x);
  if (h < kDegenerateNorm)
    throw DegeneratePoint("cannot normalize nonpositive energy");
  x.p = (1.0 / h) * x.p;
  return x;
}

PhasePoint integrate(const Param& param, PhasePoint x0, double t,
                     double step) {
  if (!(step > 0)) throw InvalidArgument("step must be positive");
  double a = param.a_double();
  x0 = project(x0);
  if (t == 0) return x0;
  double sign = t > 0 ? 1.0 : -1.0;
  auto nsteps = static_cast<std::int64_t>(std::floor(std::fabs(t) / step + 1e-9));
  double h = sign * step;
  PhasePoint x = x0;
  for (std::int64_t i = 0; i < nsteps; ++i) x = rk4_step(a, x, h);
  double rem = t - sign * static_cast<double>(nsteps) * step;
  if (std::fabs(rem) > 1e-12) x = rk4_step(a, x, rem);
  return x;
}

PhasePoint exact_flow(const Param& param, PhasePoint x0, double t) {
  double a = param.a_double();
  x0 = project(x0);
  double w = norm(x0.p);
  if (w < kDegenerateNorm)
    throw DegeneratePoint("flow undefined at the zero section");
  Vec3 u = (1.0 / w) * x0.p;
  double c = std::cos(t), s = std::sin(t);
  Vec3 q{c * x0.q.x + s * u.x, c * x0.q.y + s * u.y, c * x0.q.z + s * u.z};
  Vec3 p = (-w * s) * x0.q + c * x0.p;
  double phi = a * t;
  double cr = std::cos(phi), sr = std::sin(phi);
  auto rot = [cr, sr](Vec3 v) {
    return Vec3{cr * v.x - sr * v.y, sr * v.x + cr * v.y, v.z};
  };
  return {rot(q), rot(p)};
}

std::array<OrbitRecord, 2> find_closed_orbits(const Param& param) {
  double a = param.a_double();
  std::array<OrbitRecord, 2> out;
  for (int idx = 0; idx < 2; ++idx) {
    double dir = idx == 0 ? 1.0 : -1.0;
    KatokOrbit label = idx == 0 ? KatokOrbit::Gamma1 : KatokOrbit::Gamma2;
    PhasePoint x0{{1, 0, 0}, {0, dir, 0}};
    x0 = normalize_energy(param, x0);

    // March along the orbit until a full revolution of the base point, then
    // bisect the last step down to relative tolerance 1e-10.
    double target = 2.0 * std::numbers::pi;
    double swept = 0.0;
    double t = 0.0;
    PhasePoint x = x0;
    std::int64_t cap = static_cast<std::int64_t>(
        std::ceil(target / ((1.0 - std::fabs(a)) * kOrbitStep))) + 16;
    PhasePoint prev = x;
    double prev_swept = 0.0, prev_t = 0.0;
    bool bracketed = false;
    for (std::int64_t i = 0; i < cap; ++i) {
      prev = x;
      prev_swept = swept;
      prev_t = t;
      PhasePoint nxt = rk4_step(a, x, kOrbitStep);
      swept += std::fabs(planar_angle(x.q, nxt.q));
      t += kOrbitStep;
      x = nxt;
      if (swept >= target) {
        bracketed = true;
        break;
      }
    }
    if (!bracketed)
      throw NoConvergence("closed orbit shooting did not complete a turn");

    double lo = 0.0, hi = kOrbitStep;
    int iters = 0;
    while ((hi - lo) > 1e-10 * (prev_t + hi)) {
      if (++iters > 100)
        throw NoConvergence("return-condition bisection exceeded 100 steps");
      double mid = 0.5 * (lo + hi);
      PhasePoint xm = integrate(param, prev, mid, mid);
      double sw = prev_swept + std::fabs(planar_angle(prev.q, xm.q));
      (sw >= target ? hi : lo) = mid;
    }
    OrbitRecord rec;
    rec.label = label;
    rec.period = prev_t + 0.5 * (lo + hi);
    rec.initial_point = x0;
    Mat2 m = monodromy(param, rec);
    rec.monodromy_trace = m.trace();
    // trace fixes cos(angle); the antisymmetric part of the matrix has the
    // sign of sin(angle) in the omega-oriented frame (its magnitude is frame
    // dependent and unusable).
    double angle = std::acos(std::clamp(0.5 * m.trace(), -1.0, 1.0));
    if (m.a10 - m.a01 < 0) angle = 2.0 * std::numbers::pi - angle;
    rec.rotation_angle = angle;
    out[idx] = rec;
  }
  return out;
}

Mat2 monodromy(const Param& param, const OrbitRecord& orbit,
               double perturbation) {
  if (!(perturbation >= 1e-7 && perturbation <= 1e-5))
    throw InvalidArgument("finite-difference offset must lie in [1e-7, 1e-5]");
  double a = param.a_double();
  PhasePoint x = normalize_energy(param, project(orbit.initial_point));
  Frame fr = transverse_frame(a, x);
  Mat2 coarse = monodromy_at_offset(param, fr, orbit.period, perturbation);
  Mat2 fine = monodromy_at_offset(param, fr, orbit.period, perturbation / 2);
  if (std::fabs(coarse.trace() - fine.trace()) > 1e-5)
    throw IllConditioned("monodromy trace unstable under offset halving");
  if (std::fabs(fine.det() - 1.0) > 1e-3)
    throw IllConditioned("monodromy determinant far from 1");
  return fine;
}

std::int64_t rotation_to_cz(double theta, std::int64_t n) {
  if (n < 1) throw InvalidArgument("rotation_to_cz requires n >= 1");
  if (!(theta > 0)) throw InvalidArgument("rotation number must be positive");
  double x = theta * static_cast<double>(n);
  double f = std::floor(x);
  double dist = std::min(x - f, f + 1.0 - x);
  if (dist <= 1e-9 * std::max(1.0, x))
    throw AmbiguousFloor("n*theta within guard band of an integer", n);
  return 2 * static_cast<std::int64_t>(f) + 1;
}

}  // namespace flow
}  // namespace ech
