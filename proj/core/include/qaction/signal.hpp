#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

// Time grids, complex drive signals and single-frequency spectral
// projections shared by the oscillator, time-cycle and lattice code.
// Units: hbar = 1, all phases dimensionless.

namespace qaction {

using complexd = std::complex<double>;

constexpr double kGridSnapTolerance = 1e-6;  // |T/dt - round(T/dt)| allowed

struct TimeGrid {
  double t_start = 0.0;
  double dt = 0.0;
  std::size_t n = 0;

  TimeGrid() = default;
  TimeGrid(double t_start_, double dt_, std::size_t n_);

  double time(std::size_t j) const { return t_start + static_cast<double>(j) * dt; }
  double t_end() const { return time(n - 1); }
  double span() const { return t_end() - t_start; }

  // Nearest sample index for a time on the grid; throws if t is not a grid
  // node within the snap tolerance.
  std::size_t index_of(double t) const;

  bool operator==(const TimeGrid& o) const;
  bool operator!=(const TimeGrid& o) const { return !(*this == o); }
};

enum class QuadratureRule {
  trapezoid,  // default everywhere; composes with the lattice scheme
  simpson,    // requires an odd sample count
};

// Composite quadrature weights over the full grid.
std::vector<double> quadrature_weights(const TimeGrid& grid,
                                       QuadratureRule rule = QuadratureRule::trapezoid);

struct OscillatorParams {
  double omega = 0.0;
  explicit OscillatorParams(double omega_);
};

struct SpectralAmplitude {
  complexd gamma{0.0, 0.0};  // integral of e^{+i omega t} K(t) dt
  double abs_squared() const { return std::norm(gamma); }
};

// K(t) sampled on a uniform grid. Immutable after construction.
class ComplexSignal {
 public:
  ComplexSignal(TimeGrid grid, std::vector<complexd> samples);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<complexd>& samples() const { return samples_; }
  complexd operator[](std::size_t j) const { return samples_[j]; }
  std::size_t size() const { return samples_.size(); }

  // Largest |K| at the two outermost samples; the contract assumes drives
  // switch off inside the grid, so a nonzero value here is reported by the
  // loaders as a warning rather than an error.
  double edge_magnitude() const;

 private:
  TimeGrid grid_;
  std::vector<complexd> samples_;
};

// Builders ------------------------------------------------------------------

ComplexSignal zero_signal(const TimeGrid& grid);

// Square pulse kappa on [t_on, t_off]. Each sample carries the mean of the
// pulse over its grid cell, so edges falling between nodes keep the
// quadrature second order; grid-aligned edges get half-height samples.
ComplexSignal square_pulse(const TimeGrid& grid, complexd kappa, double t_on, double t_off);

// A exp(-(t-t0)^2 / (2 sigma^2)) exp(i (phase + carrier (t-t0))).
ComplexSignal gaussian_pulse(const TimeGrid& grid, complexd amplitude, double t0, double sigma,
                             double carrier = 0.0, double phase = 0.0);

ComplexSignal signal_from_samples(const TimeGrid& grid, std::vector<complexd> samples);

// Pointwise combinations on a shared grid.
ComplexSignal add_scaled(const ComplexSignal& a, complexd ca, const ComplexSignal& b, complexd cb);

// Operations ----------------------------------------------------------------

// gamma(omega) = sum_j w_j e^{+i omega t_j} K_j. The +i omega t sign is the
// convention used for the oscillator throughout; the nonrelativistic source
// transform uses e^{-i p x + i E t} (see source_nr.hpp).
SpectralAmplitude fourier_at_frequency(const ComplexSignal& K, double omega,
                                       QuadratureRule rule = QuadratureRule::trapezoid);

// output(t) = K(t + T); support translated off the grid is dropped as zeros.
// T must be an integer multiple of dt (no interpolation).
ComplexSignal shift_signal(const ComplexSignal& K, double T);

// Rounds T to an integer number of grid steps, throwing std::invalid_argument
// when T is not a multiple of dt within the snap tolerance.
long long steps_for_shift(const TimeGrid& grid, double T);

}  // namespace qaction
