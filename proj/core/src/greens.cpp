#include "qaction/greens.hpp"

#include <cmath>

namespace qaction {

namespace {
const complexd kI{0.0, 1.0};
}

complexd kernel_value(KernelKind kind, double omega, double t, double t_prime) {
  if (!std::isfinite(t) || !std::isfinite(t_prime) || !std::isfinite(omega)) {
    throw std::invalid_argument("kernel_value: non-finite argument");
  }
  const double tau = t - t_prime;
  const complexd phase = std::polar(1.0, -omega * tau);
  switch (kind) {
    case KernelKind::retarded:
      return tau >= 0.0 ? -kI * phase : complexd{0.0, 0.0};  // eta(0) = 1
    case KernelKind::advanced:
      return tau < 0.0 ? kI * phase : complexd{0.0, 0.0};  // eta(0) = 0
    case KernelKind::onshell:
      return phase;
  }
  throw std::invalid_argument("kernel_value: unknown kernel kind");
}

complexd bilinear(const ComplexSignal& K_left, const PropagatorKernel& kernel,
                  const ComplexSignal& K_right) {
  if (K_left.grid() != K_right.grid()) {
    throw std::invalid_argument("bilinear: signals live on different grids");
  }
  const TimeGrid& grid = K_left.grid();
  const std::vector<double> w = quadrature_weights(grid);
  const std::size_t n = grid.n;
  const double omega = kernel.omega;

  // exp(-i omega (t_j - t_k)) = exp(-i omega t_j) exp(+i omega t_k); the
  // phases are tabulated once and the triangle is accumulated row by row.
  std::vector<complexd> em(n), ep(n);
  for (std::size_t j = 0; j < n; ++j) {
    em[j] = std::polar(1.0, -omega * grid.time(j));
    ep[j] = std::conj(em[j]);
  }

  complexd acc{0.0, 0.0};
  switch (kernel.kind) {
    case KernelKind::retarded: {
      // t' <= t, equal-time cell at half weight (triangle boundary).
      for (std::size_t j = 0; j < n; ++j) {
        complexd inner{0.0, 0.0};
        for (std::size_t k = 0; k < j; ++k) {
          inner += w[k] * ep[k] * K_right[k];
        }
        inner += 0.5 * w[j] * ep[j] * K_right[j];
        acc += w[j] * std::conj(K_left[j]) * em[j] * inner;
      }
      acc *= -kI;
      break;
    }
    case KernelKind::advanced: {
      for (std::size_t j = 0; j < n; ++j) {
        complexd inner{0.0, 0.0};
        inner += 0.5 * w[j] * ep[j] * K_right[j];
        for (std::size_t k = j + 1; k < n; ++k) {
          inner += w[k] * ep[k] * K_right[k];
        }
        acc += w[j] * std::conj(K_left[j]) * em[j] * inner;
      }
      acc *= kI;
      break;
    }
    case KernelKind::onshell: {
      for (std::size_t j = 0; j < n; ++j) {
        complexd inner{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
          inner += w[k] * ep[k] * K_right[k];
        }
        acc += w[j] * std::conj(K_left[j]) * em[j] * inner;
      }
      break;
    }
  }
  return acc;
}

}  // namespace qaction
