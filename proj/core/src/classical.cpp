#include "qaction/classical.hpp"

#include <cmath>
#include <string>

namespace qaction {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

CentralPotential CentralPotential::coulomb(double k) {
  return {[k](double r) { return -k / r; }, [k](double r) { return k / (r * r); }};
}

CentralPotential CentralPotential::harmonic(double k) {
  return {[k](double r) { return 0.5 * k * r * r; }, [k](double r) { return k * r; }};
}

CentralPotential CentralPotential::custom(std::function<double(double)> v,
                                          std::function<double(double)> dv) {
  return {std::move(v), std::move(dv)};
}

MechSystem::MechSystem(std::vector<double> masses_, std::vector<Vec3> positions_,
                       std::vector<Vec3> momenta_, CentralPotential potential_)
    : masses(std::move(masses_)),
      positions(std::move(positions_)),
      momenta(std::move(momenta_)),
      potential(std::move(potential_)) {
  if (masses.empty() || masses.size() > 2) {
    throw std::invalid_argument("MechSystem: one or two particles supported");
  }
  if (positions.size() != masses.size() || momenta.size() != masses.size()) {
    throw std::invalid_argument("MechSystem: state size does not match particle count");
  }
  for (double m : masses) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("MechSystem: masses must be > 0");
    }
  }
}

namespace {

// Force on each particle: central about the origin (one body) or pairwise
// central along the separation (two bodies, equal and opposite).
void forces(const MechSystem& sys, const std::vector<Vec3>& pos, std::vector<Vec3>& f,
            double* separation) {
  if (sys.masses.size() == 1) {
    const double r = norm(pos[0]);
    *separation = r;
    const double dv = sys.potential.derivative(r);
    f[0] = (-dv / r) * pos[0];
  } else {
    const Vec3 rel = pos[0] - pos[1];
    const double r = norm(rel);
    *separation = r;
    const double dv = sys.potential.derivative(r);
    f[0] = (-dv / r) * rel;
    f[1] = (dv / r) * rel;
  }
}

TrajectorySample make_sample(const MechSystem& sys, double t, const std::vector<Vec3>& pos,
                             const std::vector<Vec3>& mom) {
  TrajectorySample s;
  s.t = t;
  s.positions = pos;
  s.momenta = mom;
  double mass_total = 0.0;
  Vec3 weighted{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < sys.masses.size(); ++i) {
    s.kinetic += 0.5 * dot(mom[i], mom[i]) / sys.masses[i];
    s.angular_momentum = s.angular_momentum + cross(pos[i], mom[i]);
    s.total_momentum = s.total_momentum + mom[i];
    s.r_dot_p += dot(pos[i], mom[i]);
    mass_total += sys.masses[i];
    weighted = weighted + sys.masses[i] * pos[i];
  }
  const Vec3 rel = sys.masses.size() == 1 ? pos[0] : pos[0] - pos[1];
  s.separation = norm(rel);
  s.potential = sys.potential.value(s.separation);
  s.r_grad_v = s.separation * sys.potential.derivative(s.separation);
  s.energy = s.kinetic + s.potential;
  s.boost_charge = s.t * s.total_momentum - weighted;
  const Vec3 prel = sys.masses.size() == 1 ? mom[0] : mom[0];  // relative momentum (2-body: p_a)
  s.rhat_dot_p = dot(rel, prel) / s.separation;
  return s;
}

}  // namespace

const TrajectorySample& Trajectory::at_time(double t) const {
  const double x = t / dt;
  const auto j = static_cast<std::size_t>(std::llround(x));
  if (j >= samples.size()) {
    throw std::invalid_argument("Trajectory: time beyond the stored span");
  }
  return samples[j];
}

Trajectory integrate(const MechSystem& sys, double dt, std::size_t steps,
                     double collision_fraction) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("integrate: dt must be > 0");
  }
  std::vector<Vec3> pos = sys.positions;
  std::vector<Vec3> mom = sys.momenta;
  std::vector<Vec3> f(sys.masses.size());
  double separation = 0.0;
  forces(sys, pos, f, &separation);
  const double r_min = collision_fraction * separation;

  Trajectory traj;
  traj.dt = dt;
  traj.samples.reserve(steps + 1);
  traj.samples.push_back(make_sample(sys, 0.0, pos, mom));

  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      mom[i] = mom[i] + (0.5 * dt) * f[i];
      pos[i] = pos[i] + (dt / sys.masses[i]) * mom[i];
    }
    forces(sys, pos, f, &separation);
    if (separation < r_min) {
      throw std::runtime_error("integrate: collision at t = " +
                               std::to_string(static_cast<double>(step + 1) * dt) +
                               ", separation " + std::to_string(separation));
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
      mom[i] = mom[i] + (0.5 * dt) * f[i];
    }
    traj.samples.push_back(make_sample(sys, static_cast<double>(step + 1) * dt, pos, mom));
  }
  return traj;
}

ConservationReport conservation_report(const Trajectory& traj) {
  ConservationReport rep;
  const TrajectorySample& first = traj.samples.front();
  for (std::size_t j = 0; j < traj.samples.size(); ++j) {
    const TrajectorySample& s = traj.samples[j];
    rep.energy_drift = std::max(rep.energy_drift, std::abs(s.energy - first.energy));
    rep.angular_momentum_drift = std::max(
        rep.angular_momentum_drift, norm(s.angular_momentum - first.angular_momentum));
    rep.momentum_drift =
        std::max(rep.momentum_drift, norm(s.total_momentum - first.total_momentum));
    rep.boost_drift = std::max(rep.boost_drift, norm(s.boost_charge - first.boost_charge));
    if (j > 0) {
      const TrajectorySample& prev = traj.samples[j - 1];
      rep.momentum_step_drift = std::max(rep.momentum_step_drift,
                                         norm(s.total_momentum - prev.total_momentum));
      rep.angular_momentum_step_drift =
          std::max(rep.angular_momentum_step_drift,
                   norm(s.angular_momentum - prev.angular_momentum));
    }
  }
  return rep;
}

namespace {

// trapezoid window average of a sample functional over [0, window]
template <typename F>
double window_average(const Trajectory& traj, double window, F&& f) {
  const auto last = static_cast<std::size_t>(std::floor(window / traj.dt + 1e-9));
  if (last < 1 || last >= traj.samples.size()) {
    throw std::invalid_argument("window average: window outside the trajectory span");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j <= last; ++j) {
    const double w = (j == 0 || j == last) ? 0.5 : 1.0;
    acc += w * f(traj.samples[j]);
  }
  return acc / static_cast<double>(last);
}

}  // namespace

AverageReport virial_average(const Trajectory& traj, double window) {
  AverageReport rep;
  rep.lhs = 2.0 * window_average(traj, window, [](const TrajectorySample& s) { return s.kinetic; });
  // <r . grad V>, which is -V-bar for the Coulomb potential and 2 V-bar for
  // the harmonic one
  rep.rhs = window_average(traj, window, [](const TrajectorySample& s) { return s.r_grad_v; });
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

AverageReport fine_structure_average(const Trajectory& traj, double window,
                                     const CentralPotential& potential, double mass) {
  const Vec3 L = traj.samples.front().angular_momentum;
  const double L_sq = dot(L, L);
  AverageReport rep;
  rep.lhs = (L_sq / mass) * window_average(traj, window, [](const TrajectorySample& s) {
    return 1.0 / (s.separation * s.separation * s.separation);
  });
  rep.rhs = -window_average(traj, window, [&potential](const TrajectorySample& s) {
    return potential.value(s.separation) / s.separation;
  });
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

MechSystem kepler_orbit(double mass, double k, double a, double eccentricity) {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw std::invalid_argument("kepler_orbit: eccentricity must lie in [0, 1)");
  }
  const double r_p = a * (1.0 - eccentricity);
  const double v_p = std::sqrt(k / (mass * a) * (1.0 + eccentricity) / (1.0 - eccentricity));
  return MechSystem({mass}, {Vec3{r_p, 0.0, 0.0}}, {Vec3{0.0, mass * v_p, 0.0}},
                    CentralPotential::coulomb(k));
}

}  // namespace qaction
