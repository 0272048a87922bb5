#pragma once

#include <array>
#include <functional>
#include <vector>

#include <stdexcept>

// Classical mechanics checks: symplectic (velocity-Verlet) trajectories for
// one particle in a central potential or two particles with a pairwise
// central interaction, Noether charge drifts, and the two time-average
// theorems (virial and the 1/r^3 relation used in fine-structure work).

namespace qaction {

using Vec3 = std::array<double, 3>;

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& a);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

struct CentralPotential {
  // V(r) and dV/dr; the Coulomb attraction is V = -k/r.
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static CentralPotential coulomb(double k);
  static CentralPotential harmonic(double k);  // V = k r^2 / 2
  static CentralPotential custom(std::function<double(double)> v,
                                 std::function<double(double)> dv);
};

struct MechSystem {
  std::vector<double> masses;     // one or two particles
  std::vector<Vec3> positions;
  std::vector<Vec3> momenta;
  CentralPotential potential;     // external central (1 body) or pairwise (2)

  MechSystem(std::vector<double> masses_, std::vector<Vec3> positions_,
             std::vector<Vec3> momenta_, CentralPotential potential_);
};

struct TrajectorySample {
  double t = 0.0;
  std::vector<Vec3> positions;
  std::vector<Vec3> momenta;
  double kinetic = 0.0;
  double potential = 0.0;
  double energy = 0.0;
  Vec3 angular_momentum{0.0, 0.0, 0.0};
  Vec3 total_momentum{0.0, 0.0, 0.0};
  Vec3 boost_charge{0.0, 0.0, 0.0};  // N = P t - M R
  double r_dot_p = 0.0;              // sum_i r_i . p_i (virial generator)
  double rhat_dot_p = 0.0;           // (r/r) . p of the separation coordinate
  double separation = 0.0;           // |r| (1 body) or |r_a - r_b|
  double r_grad_v = 0.0;             // r V'(r) at the sample
};

struct Trajectory {
  double dt = 0.0;
  std::vector<TrajectorySample> samples;
  const TrajectorySample& at_time(double t) const;
};

struct ConservationReport {
  double energy_drift = 0.0;        // max |E - E_0|
  double angular_momentum_drift = 0.0;
  double momentum_drift = 0.0;      // max |P - P_0|
  double boost_drift = 0.0;         // max |N - N_0|
  double momentum_step_drift = 0.0; // max |P_{j+1} - P_j|
  double angular_momentum_step_drift = 0.0;
};

// Velocity-Verlet with fixed step; aborts with a diagnostic when the
// separation falls below collision_fraction times its initial value.
Trajectory integrate(const MechSystem& sys, double dt, std::size_t steps,
                     double collision_fraction = 1e-6);

ConservationReport conservation_report(const Trajectory& traj);

struct AverageReport {
  double lhs = 0.0;       // 2 T-bar (virial) or L^2/m <1/r^3> (fine structure)
  double rhs = 0.0;       // <r . grad V> resp. -<V/r>
  double residual = 0.0;  // |lhs - rhs|
};

// Windowed time average of 2T and r.grad V over [0, window]; for the Coulomb
// potential r.grad V = -V, giving the 2 T-bar = -V-bar form.
AverageReport virial_average(const Trajectory& traj, double window);

// L^2/m <1/r^3> versus -<V/r> over [0, window]; bound Coulomb orbits only.
AverageReport fine_structure_average(const Trajectory& traj, double window,
                                     const CentralPotential& potential, double mass);

// Kepler helper: perihelion start for semi-major axis a and eccentricity e,
// V = -k/r, single particle of mass m. Period is 2 pi sqrt(m a^3 / k).
MechSystem kepler_orbit(double mass, double k, double a, double eccentricity);

}  // namespace qaction
