#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>

#include "qaction/signal.hpp"

// Nonrelativistic source theory on a 1D space grid: free-particle
// propagators, vacuum persistence for space-time sources, multi-particle
// emission statistics, fixed-energy T-matrix scattering and two-particle
// bound-state channels. All numerics are one-dimensional; the momentum-space
// transform kernel e^{-i p x + i E t} is the only place the higher-
// dimensional structure shows through.

namespace qaction {

struct SpaceGrid {
  double x_start = 0.0;
  double dx = 0.0;
  std::size_t n = 0;

  SpaceGrid() = default;
  SpaceGrid(double x_start_, double dx_, std::size_t n_);
  double position(std::size_t i) const { return x_start + static_cast<double>(i) * dx; }
  double x_end() const { return position(n - 1); }
};

class SpaceTimeSource {
 public:
  SpaceTimeSource(SpaceGrid space, TimeGrid time, std::vector<complexd> samples, double mass);

  const SpaceGrid& space() const { return space_; }
  const TimeGrid& time() const { return time_; }
  double mass() const { return mass_; }
  complexd at(std::size_t ix, std::size_t it) const { return samples_[ix * time_.n + it]; }
  std::size_t cell_count() const { return samples_.size(); }

 private:
  SpaceGrid space_;
  TimeGrid time_;
  std::vector<complexd> samples_;  // row-major in x
  double mass_;
};

// Separable A f(x) g(t) gaussian source with optional plane-wave carrier.
SpaceTimeSource gaussian_source(const SpaceGrid& sg, const TimeGrid& tg, double mass,
                                complexd amplitude, double x0, double sigma_x, double t0,
                                double sigma_t, double p0 = 0.0, double e0 = 0.0);

struct MomentumCell {
  double p = 0.0;
  double weight = 0.0;   // dp / 2 pi
  complexd K_p{0.0, 0.0};  // sqrt(weight) K(p, E_p)
};

// K(p, E) = integral dx dt e^{-i p x + i E t} K(x, t).
complexd source_transform(const SpaceTimeSource& K, double p, double E);
// On-shell variant, E = p^2 / 2m.
complexd source_transform(const SpaceTimeSource& K, double p);

// Discretized on-shell momentum decomposition over [p_min, p_max].
std::vector<MomentumCell> momentum_cells(const SpaceTimeSource& K, double p_min, double p_max,
                                         std::size_t n_p);

// Free 1D retarded propagator -i eta(t) sqrt(m/(2 pi i t)) e^{i m x^2/(2t)};
// zero for t < 0, and the coincidence limit t = 0 is the caller's delta.
complexd free_propagator(double x, double t, double mass);

struct PersistenceResult {
  complexd value{0.0, 0.0};
  double mod_sq = 0.0;
  // honest error scale of the double quadrature: the skipped equal-time
  // band O(dt) plus the O(dx^2) spatial rule
  double quadrature_tolerance = 0.0;
};

// exp(-i sum K^* G K dx dt dx' dt') over the strictly retarded half t > t'.
PersistenceResult vacuum_persistence_st(const SpaceTimeSource& K,
                                        std::size_t max_cells = 40000);

// Occupation pattern {n_p} keyed by momentum-cell index.
using OccupationPattern = std::map<std::size_t, unsigned>;

// <{n}|0>^K = prod_p (-i K_p)^{n_p} / sqrt(n_p!) <0|0>^K.
complexd multi_particle_amplitude(const OccupationPattern& pattern,
                                  const std::vector<MomentumCell>& cells,
                                  complexd persistence);

// <{n + 1_p}|{n}>^K = -i K_p sqrt(n_p + 1) for a weak source.
complexd stimulated_emission_amplitude(const OccupationPattern& pattern, std::size_t cell_index,
                                       const std::vector<MomentumCell>& cells);

// Total probability over patterns with n_p <= n_cap in every cell.
double pattern_probability_mass(const std::vector<MomentumCell>& cells, complexd persistence,
                                unsigned n_cap);

// Potentials ------------------------------------------------------------------

struct PotentialSpec {
  enum class Kind { delta, square_well, harmonic, custom } kind = Kind::delta;
  double strength = 0.0;  // delta: lambda; well: depth (negative binds)
  double width = 0.0;     // well only
  double omega = 0.0;     // harmonic: mu omega^2 r^2 / 2 uses this omega
  std::function<double(double)> custom;  // custom central V(x)

  static PotentialSpec delta(double lambda);
  static PotentialSpec square_well(double depth, double width);
  static PotentialSpec harmonic(double omega);
  static PotentialSpec custom_potential(std::function<double(double)> v);

  // Sample on a grid; the delta becomes a strength/dx spike at the node
  // nearest the origin, well edges are area-averaged.
  std::vector<double> sample(const SpaceGrid& grid, double reduced_mass) const;
};

// Scattering ------------------------------------------------------------------

struct ScatterResult {
  double energy = 0.0;
  double k = 0.0;
  complexd r{0.0, 0.0};
  complexd t{0.0, 0.0};
  double unitarity_defect = 0.0;  // | |r|^2 + |t|^2 - 1 |
  Eigen::VectorXcd psi;           // scattered field on the grid
};

// Dense solve of T = V + V G0(E + i0) T on the grid restricted to the
// support of V; G0(x,x') = (m/(i k)) e^{i k |x - x'|}, k = sqrt(2 m E).
// Enforces >= 16 grid points per wavelength across the potential support.
Eigen::MatrixXcd t_matrix(const PotentialSpec& V, double E, double mass, const SpaceGrid& grid);

// Born-series partial sums T_N = V + V G0 V + ... (for convergence reports).
std::vector<Eigen::MatrixXcd> born_series(const PotentialSpec& V, double E, double mass,
                                          const SpaceGrid& grid, int orders);

// psi = psi0 + G0 V psi for an incident plane wave e^{i k x}; reflection and
// transmission read off the asymptotic tails.
ScatterResult scattered_field(const PotentialSpec& V, double E, double mass,
                              const SpaceGrid& grid);

// Bound states ----------------------------------------------------------------

struct BoundChannel {
  int n = 0;
  double energy = 0.0;
  bool bound = false;           // E_n < 0
  std::vector<double> phi;      // normalized channel function on the grid
};

struct BoundStateResult {
  std::vector<BoundChannel> channels;      // lowest states, ascending energy
  double total_mass = 0.0;                  // M = 2 m
  double reduced_mass = 0.0;                // mu = m / 2
};

// Relative-coordinate spectrum of p^2/(2 mu) + V for two equal masses;
// eigenpairs from the symmetric tridiagonal finite-difference operator.
// n_states = 0 returns every grid eigenpair.
BoundStateResult bound_state_channels(const PotentialSpec& V12, double mass,
                                      const SpaceGrid& grid, std::size_t n_states = 8);

// Center-of-mass channel propagator G_n(X - X', t - t') =
// free_propagator(X - X', t - t', M) e^{-i E_n (t - t')}.
complexd channel_propagator(const BoundStateResult& bs, std::size_t channel, double X,
                            double t);

// Energy-domain kernel 1/(E - T) is real for E < 0: largest imaginary part
// of the outgoing G0 row at the given separation (diagnostic for tests).
double energy_kernel_imag_part(double E, double mass, double x);

}  // namespace qaction
