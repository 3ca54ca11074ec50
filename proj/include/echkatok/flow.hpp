#pragma once

#include <array>
#include <cstdint>

#include "echkatok/ech_rp3.hpp"
#include "echkatok/param.hpp"

namespace ech {
namespace flow {

struct Vec3 {
  double x = 0, y = 0, z = 0;
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
};
double dot(Vec3 a, Vec3 b);
double norm(Vec3 v);
// The Killing field of z-axis rotations: (-v_y, v_x, 0).
Vec3 rot_z_field(Vec3 v);

// Point of T*S^2 in ambient coordinates: |q| = 1, q.p = 0.
struct PhasePoint {
  Vec3 q, p;
};

struct Mat2 {
  double a00 = 0, a01 = 0, a10 = 0, a11 = 0;
  double trace() const { return a00 + a11; }
  double det() const { return a00 * a11 - a01 * a10; }
};

struct OrbitRecord {
  KatokOrbit label = KatokOrbit::Gamma1;
  double period = 0.0;
  PhasePoint initial_point;
  double monodromy_trace = 0.0;
  double rotation_angle = 0.0;  // in (0, 2pi)
};

// H_a(q,p) = |p| + a * p . (dtheta at q).  Throws DegeneratePoint for
// |p| below 1e-12, where the Hamiltonian is not smooth.
double hamiltonian(const Param& param, const PhasePoint& x);

// Re-projects onto |q| = 1, q.p = 0.
PhasePoint project(PhasePoint x);
// Scales p so that H_a = 1 (the Hamiltonian is 1-homogeneous in p).
PhasePoint normalize_energy(const Param& param, PhasePoint x);

// Classical fixed-step 4th-order integration of the constrained Hamiltonian
// field, re-projecting after every step.  Deterministic for fixed inputs.
PhasePoint integrate(const Param& param, PhasePoint x0, double t, double step);

// Closed-form flow: unit-speed great-circle transport composed with rotation
// about the z-axis by angle a*t.  Serves as the oracle for `integrate`.
PhasePoint exact_flow(const Param& param, PhasePoint x0, double t);

// Locates the two closed orbits by shooting from the equator in both
// directions and root-solving the first-return condition.
std::array<OrbitRecord, 2> find_closed_orbits(const Param& param);

// Linearized first-return map on a 2-plane transverse to the orbit inside
// the energy level, by central finite differences of the period-T flow.
// Only trace and determinant are frame-independent.
Mat2 monodromy(const Param& param, const OrbitRecord& orbit,
               double perturbation = 1e-6);

// Bridges a measured rotation number (in revolutions per period) to the
// Conley-Zehnder index 2*floor(n*theta) + 1.
std::int64_t rotation_to_cz(double theta, std::int64_t n);

}  // namespace flow
}  // namespace ech
