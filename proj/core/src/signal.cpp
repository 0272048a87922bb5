#include "qaction/signal.hpp"

#include <algorithm>
#include <cmath>

namespace qaction {

TimeGrid::TimeGrid(double t_start_, double dt_, std::size_t n_)
    : t_start(t_start_), dt(dt_), n(n_) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t_start)) {
    throw std::invalid_argument("TimeGrid: dt must be finite and > 0");
  }
  if (n < 2) {
    throw std::invalid_argument("TimeGrid: need at least two samples");
  }
}

std::size_t TimeGrid::index_of(double t) const {
  const double x = (t - t_start) / dt;
  const double r = std::round(x);
  if (std::abs(x - r) > kGridSnapTolerance || r < 0.0 || r >= static_cast<double>(n)) {
    throw std::invalid_argument("TimeGrid: time is not a grid node");
  }
  return static_cast<std::size_t>(r);
}

bool TimeGrid::operator==(const TimeGrid& o) const {
  return t_start == o.t_start && dt == o.dt && n == o.n;
}

std::vector<double> quadrature_weights(const TimeGrid& grid, QuadratureRule rule) {
  std::vector<double> w(grid.n, grid.dt);
  switch (rule) {
    case QuadratureRule::trapezoid:
      w.front() = 0.5 * grid.dt;
      w.back() = 0.5 * grid.dt;
      break;
    case QuadratureRule::simpson: {
      if (grid.n % 2 == 0) {
        throw std::invalid_argument("simpson rule needs an odd sample count");
      }
      const double h3 = grid.dt / 3.0;
      for (std::size_t j = 0; j < grid.n; ++j) {
        w[j] = (j == 0 || j + 1 == grid.n) ? h3 : (j % 2 == 1 ? 4.0 * h3 : 2.0 * h3);
      }
      break;
    }
  }
  return w;
}

OscillatorParams::OscillatorParams(double omega_) : omega(omega_) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("OscillatorParams: omega must be finite and > 0");
  }
}

ComplexSignal::ComplexSignal(TimeGrid grid, std::vector<complexd> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.n) {
    throw std::invalid_argument("ComplexSignal: sample count does not match grid");
  }
  for (const complexd& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw std::invalid_argument("ComplexSignal: non-finite sample");
    }
  }
}

double ComplexSignal::edge_magnitude() const {
  return std::max(std::abs(samples_.front()), std::abs(samples_.back()));
}

ComplexSignal zero_signal(const TimeGrid& grid) {
  return ComplexSignal(grid, std::vector<complexd>(grid.n, complexd{0.0, 0.0}));
}

ComplexSignal square_pulse(const TimeGrid& grid, complexd kappa, double t_on, double t_off) {
  if (!(t_off > t_on)) {
    throw std::invalid_argument("square_pulse: t_off must exceed t_on");
  }
  std::vector<complexd> s(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double lo = grid.time(j) - 0.5 * grid.dt;
    const double hi = grid.time(j) + 0.5 * grid.dt;
    if (lo >= t_on && hi <= t_off) {
      s[j] = kappa;  // fully covered cell, no rounding in the ratio
    } else {
      const double overlap = std::max(0.0, std::min(hi, t_off) - std::max(lo, t_on));
      s[j] = kappa * (overlap / grid.dt);
    }
  }
  return ComplexSignal(grid, std::move(s));
}

ComplexSignal gaussian_pulse(const TimeGrid& grid, complexd amplitude, double t0, double sigma,
                             double carrier, double phase) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_pulse: sigma must be > 0");
  }
  std::vector<complexd> s(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double u = grid.time(j) - t0;
    const double env = std::exp(-0.5 * u * u / (sigma * sigma));
    s[j] = amplitude * env * std::polar(1.0, phase + carrier * u);
  }
  return ComplexSignal(grid, std::move(s));
}

ComplexSignal signal_from_samples(const TimeGrid& grid, std::vector<complexd> samples) {
  return ComplexSignal(grid, std::move(samples));
}

ComplexSignal add_scaled(const ComplexSignal& a, complexd ca, const ComplexSignal& b, complexd cb) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("add_scaled: signals live on different grids");
  }
  std::vector<complexd> s(a.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    s[j] = ca * a[j] + cb * b[j];
  }
  return ComplexSignal(a.grid(), std::move(s));
}

SpectralAmplitude fourier_at_frequency(const ComplexSignal& K, double omega, QuadratureRule rule) {
  if (!std::isfinite(omega)) {
    throw std::invalid_argument("fourier_at_frequency: omega must be finite");
  }
  const std::vector<double> w = quadrature_weights(K.grid(), rule);
  complexd acc{0.0, 0.0};
  for (std::size_t j = 0; j < K.size(); ++j) {
    acc += w[j] * std::polar(1.0, omega * K.grid().time(j)) * K[j];
  }
  return SpectralAmplitude{acc};
}

long long steps_for_shift(const TimeGrid& grid, double T) {
  const double x = T / grid.dt;
  const double r = std::round(x);
  if (!std::isfinite(x) || std::abs(x - r) > kGridSnapTolerance) {
    throw std::invalid_argument("shift: T is not an integer multiple of dt");
  }
  return static_cast<long long>(r);
}

ComplexSignal shift_signal(const ComplexSignal& K, double T) {
  const long long m = steps_for_shift(K.grid(), T);
  const long long n = static_cast<long long>(K.size());
  std::vector<complexd> s(K.size(), complexd{0.0, 0.0});
  for (long long j = 0; j < n; ++j) {
    const long long src = j + m;
    if (src >= 0 && src < n) {
      s[static_cast<std::size_t>(j)] = K[static_cast<std::size_t>(src)];
    }
  }
  return ComplexSignal(K.grid(), std::move(s));
}

}  // namespace qaction
