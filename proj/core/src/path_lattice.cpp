#include "qaction/path_lattice.hpp"

#include <cmath>

namespace qaction {

namespace {
const complexd kI{0.0, 1.0};
}

FrequencyGrid::FrequencyGrid(double nu_min_, double nu_max_, std::size_t n_nu_, double epsilon_)
    : nu_min(nu_min_), nu_max(nu_max_), n_nu(n_nu_), epsilon(epsilon_) {
  if (!(nu_min < nu_max) || n_nu < 2) {
    throw std::invalid_argument("FrequencyGrid: need nu_min < nu_max and n_nu >= 2");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("FrequencyGrid: epsilon must be > 0");
  }
}

LatticeAction::LatticeAction(TimeGrid grid, double omega) : grid_(grid), omega_(omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("LatticeAction: omega must be finite and > 0");
  }
  decay_ = 1.0 / (1.0 + kI * omega * grid_.dt);
  if (!(std::abs(1.0 + kI * omega * grid_.dt) > 0.0)) {
    throw std::domain_error("LatticeAction: singular difference operator");
  }
}

complexd LatticeAction::green_entry(std::size_t j, std::size_t k) const {
  if (k > j) return complexd{0.0, 0.0};
  return -kI * std::pow(decay_, static_cast<double>(j - k + 1));
}

std::vector<complexd> LatticeAction::solve(const ComplexSignal& K) const {
  if (K.grid() != grid_) {
    throw std::invalid_argument("LatticeAction: signal grid mismatch");
  }
  std::vector<complexd> y(grid_.n);
  complexd prev{0.0, 0.0};
  for (std::size_t j = 0; j < grid_.n; ++j) {
    prev = (prev - kI * grid_.dt * K[j]) * decay_;
    y[j] = prev;
  }
  return y;
}

complexd lattice_persistence(const ComplexSignal& K, double omega) {
  const LatticeAction action(K.grid(), omega);
  const std::vector<complexd> y = action.solve(K);
  complexd exponent{0.0, 0.0};
  for (std::size_t j = 0; j < K.size(); ++j) {
    exponent += std::conj(K[j]) * y[j];
  }
  exponent *= -kI * K.grid().dt;
  return std::exp(exponent);
}

namespace {

// |K(nu)|^2 on the nu grid; K(nu + dnu) picks up one extra phase factor per
// sample, so the whole table costs one rotation per (sample, frequency).
std::vector<double> spectrum_table(const ComplexSignal& K, const FrequencyGrid& fg) {
  const double dnu = (fg.nu_max - fg.nu_min) / static_cast<double>(fg.n_nu - 1);
  const std::vector<double> w = quadrature_weights(K.grid());
  const std::size_t n = K.size();
  std::vector<complexd> phase(n), step(n);
  std::vector<complexd> weighted(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = K.grid().time(j);
    phase[j] = std::polar(1.0, fg.nu_min * t);
    step[j] = std::polar(1.0, dnu * t);
    weighted[j] = w[j] * K[j];
  }
  std::vector<double> table(fg.n_nu);
  for (std::size_t i = 0; i < fg.n_nu; ++i) {
    complexd acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      acc += phase[j] * weighted[j];
      phase[j] *= step[j];
    }
    table[i] = std::norm(acc);
  }
  return table;
}

complexd spectral_exponent(const std::vector<double>& mod_sq, double omega,
                           const FrequencyGrid& fg, double eps) {
  const double dnu = (fg.nu_max - fg.nu_min) / static_cast<double>(fg.n_nu - 1);
  complexd integral{0.0, 0.0};
  for (std::size_t i = 0; i < fg.n_nu; ++i) {
    const double nu = fg.nu_min + static_cast<double>(i) * dnu;
    const double w = (i == 0 || i + 1 == fg.n_nu) ? 0.5 * dnu : dnu;
    integral += w * mod_sq[i] / complexd{nu - omega, eps};
  }
  return -kI * integral / (2.0 * M_PI);
}

}  // namespace

SpectralResult spectral_persistence(const ComplexSignal& K, double omega,
                                    const FrequencyGrid& fg) {
  if (!(fg.nu_min < omega && omega < fg.nu_max)) {
    throw std::invalid_argument("spectral_persistence: frequency grid must bracket omega");
  }
  SpectralResult result;
  const std::vector<double> mod_sq = spectrum_table(K, fg);
  const complexd e_full = spectral_exponent(mod_sq, omega, fg, fg.epsilon);
  const complexd e_half = spectral_exponent(mod_sq, omega, fg, 0.5 * fg.epsilon);
  // Lorentzian smoothing of both the pole and the delta part is first order
  // in eps, so the two-value extrapolation is the linear one.
  const complexd e_extrap = 2.0 * e_half - e_full;
  result.value_eps = std::exp(e_full);
  result.value_eps_half = std::exp(e_half);
  result.value = std::exp(e_extrap);

  const std::vector<double> w = quadrature_weights(K.grid());
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < K.size(); ++j) {
    norm_sq += w[j] * std::norm(K[j]);
  }
  const double distance = std::min(omega - fg.nu_min, fg.nu_max - omega);
  result.tail_bound = norm_sq / (M_PI * distance);
  return result;
}

}  // namespace qaction
