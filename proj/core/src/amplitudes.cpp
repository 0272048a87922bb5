#include "qaction/amplitudes.hpp"

#include <cmath>

namespace qaction {

namespace {
const complexd kI{0.0, 1.0};

void require_finite(const complexd& z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}
}  // namespace

complexd free_transformation(const CoherentLabel& label, double omega, double t1, double t2) {
  require_finite(label.y_dag_prime, "free_transformation");
  require_finite(label.y_double_prime, "free_transformation");
  if (!(t1 >= t2)) {
    throw std::invalid_argument("free_transformation: requires t1 >= t2");
  }
  return std::exp(label.y_dag_prime * std::polar(1.0, -omega * (t1 - t2)) * label.y_double_prime);
}

complexd persistence_exponent(const ComplexSignal& K, double omega) {
  return -kI * bilinear(K, PropagatorKernel(omega, KernelKind::retarded), K);
}

complexd vacuum_persistence(const ComplexSignal& K, double omega) {
  return std::exp(persistence_exponent(K, omega));
}

complexd forced_transformation(const CoherentLabel& label, const ComplexSignal& K, double omega,
                               double t1, double t2) {
  if (!(t1 >= t2)) {
    throw std::invalid_argument("forced_transformation: requires t1 >= t2");
  }
  const TimeGrid& grid = K.grid();
  const std::vector<double> w = quadrature_weights(grid);
  complexd linear_right{0.0, 0.0};  // integral e^{-i omega (t1-t)} K(t)
  complexd linear_left{0.0, 0.0};   // integral e^{-i omega (t-t2)} K^*(t)
  for (std::size_t j = 0; j < K.size(); ++j) {
    const double t = grid.time(j);
    if ((t < t2 - kGridSnapTolerance || t > t1 + kGridSnapTolerance) &&
        std::abs(K[j]) > 0.0) {
      throw std::invalid_argument("forced_transformation: K has support outside [t2, t1]");
    }
    linear_right += w[j] * std::polar(1.0, -omega * (t1 - t)) * K[j];
    linear_left += w[j] * std::polar(1.0, -omega * (t - t2)) * std::conj(K[j]);
  }
  const complexd free_term =
      label.y_dag_prime * std::polar(1.0, -omega * (t1 - t2)) * label.y_double_prime;
  const complexd exponent = free_term - kI * label.y_dag_prime * linear_right -
                            kI * linear_left * label.y_double_prime +
                            persistence_exponent(K, omega);
  return std::exp(exponent);
}

complexd transition_amplitude(const ComplexSignal& K, double omega, unsigned n, double t1) {
  const complexd gamma = fourier_at_frequency(K, omega).gamma;
  complexd amp = vacuum_persistence(K, omega) * std::polar(1.0, -static_cast<double>(n) * omega * t1);
  for (unsigned m = 1; m <= n; ++m) {
    amp *= -kI * gamma / std::sqrt(static_cast<double>(m));
  }
  return amp;
}

TransitionTable transition_probabilities(const ComplexSignal& K, double omega, std::size_t n_max) {
  TransitionTable table;
  table.omega = omega;
  table.gamma = fourier_at_frequency(K, omega);
  table.persistence = vacuum_persistence(K, omega);
  const double lambda = table.gamma.abs_squared();
  table.p_n.resize(n_max + 1);
  table.cumulative.resize(n_max + 1);
  double p = std::exp(-lambda);
  double cum = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    table.p_n[n] = p;
    cum += p;
    table.cumulative[n] = cum;
    p *= lambda / static_cast<double>(n + 1);
  }
  table.tail_mass = std::max(0.0, 1.0 - cum);
  return table;
}

}  // namespace qaction
