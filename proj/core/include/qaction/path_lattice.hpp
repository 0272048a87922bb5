#pragma once

#include "qaction/signal.hpp"

// Third route to <0|0>^K: the discretized Gaussian path integral. Two
// evaluations are provided.
//
//  * lattice_persistence: the quadratic action is integrated exactly on the
//    time lattice. The difference operator i d/dt - omega is discretized as
//    (i/dt)(y_j - y_{j-1}) - omega y_j, a lower-bidiagonal matrix whose
//    inverse is lower triangular by construction -- the contour choice that
//    puts the pole in the lower half plane, realized combinatorially. The
//    free determinant is normalized away by dividing out the K = 0 value.
//
//  * spectral_persistence: the frequency-space form
//    exp{ -i int dnu/2pi |K(nu)|^2 / (nu - omega + i eps) },
//    evaluated on a finite nu grid and Richardson-extrapolated in eps.

namespace qaction {

struct FrequencyGrid {
  double nu_min = 0.0;
  double nu_max = 0.0;
  std::size_t n_nu = 0;
  double epsilon = 0.0;

  FrequencyGrid(double nu_min_, double nu_max_, std::size_t n_nu_, double epsilon_);
};

class LatticeAction {
 public:
  LatticeAction(TimeGrid grid, double omega);

  const TimeGrid& grid() const { return grid_; }
  double omega() const { return omega_; }

  // Inverse of the difference operator: G_lat(j,k) for k <= j, zero above
  // the diagonal. Rows tend to -i e^{-i omega (t_j - t_k)} as dt -> 0.
  complexd green_entry(std::size_t j, std::size_t k) const;

  // y = G_lat K dt via forward substitution on the bidiagonal operator.
  std::vector<complexd> solve(const ComplexSignal& K) const;

 private:
  TimeGrid grid_;
  double omega_;
  complexd decay_;  // 1/(1 + i omega dt), the per-step retarded factor
};

struct SpectralResult {
  complexd value{0.0, 0.0};       // eps-extrapolated persistence
  complexd value_eps{0.0, 0.0};   // at the requested eps
  complexd value_eps_half{0.0, 0.0};
  double tail_bound = 0.0;        // |K|^2 / (pi * distance to the nu edge)
};

// exp(-i K^dag G_lat K dt^2), normalized so K = 0 gives exactly 1.
complexd lattice_persistence(const ComplexSignal& K, double omega);

SpectralResult spectral_persistence(const ComplexSignal& K, double omega,
                                    const FrequencyGrid& fg);

}  // namespace qaction
