#pragma once

#include <Eigen/Dense>
#include <optional>

#include "qaction/keldysh.hpp"
#include "qaction/signal.hpp"

// Brute-force oracle: truncated number-basis evolution under
// H(t) = omega y^dag y + y K^*(t) + y^dag K(t), time-cycle traces and
// thermal averages. Nothing here touches the closed forms it is used to
// check. Between samples the drive is the piecewise-linear interpolant of
// K, which is exactly the source the trapezoid quadratures integrate.

namespace qaction {

struct Propagation {
  TimeGrid grid;
  Eigen::MatrixXcd U;        // time-ordered propagator over the grid span
  double unitarity_defect = 0.0;  // max |(U^dag U - 1)_{ij}|
  double leakage = 0.0;           // sum_{n >= n_trunc-4} |U_{n,0}|^2
  bool leakage_flagged = false;   // leakage above 1e-6
};

// Dense tridiagonal H(t): diag n omega, <n+1|H|n> = sqrt(n+1) K(t).
// K(t) is evaluated by linear interpolation between samples.
Eigen::MatrixXcd hamiltonian_at(double t, const ComplexSignal& K, double omega, int n_trunc);

// Fixed-step commutator-free fourth-order exponential integrator with two
// Gauss-point samples per step; `substeps` subdivides each grid cell.
Propagation evolve(const ComplexSignal& K, double omega, int n_trunc, int substeps = 1);

// tr-weighted <n| U_-^dag U_+ |n>: vacuum keeps only n = 0, a thermal state
// weights with e^{-beta n omega} (beta = 0 diverges and is rejected).
complexd time_cycle_trace(const KeldyshScenario& s, int n_trunc, int substeps = 1);

enum class Observable { N, N2 };

// Heisenberg-picture average of the observable after evolving under the
// scenario's physical source (K_plus) from the grid start to `at_time`
// (grid end when omitted), in the scenario's initial state.
double observable_average(const KeldyshScenario& s, Observable obs, int n_trunc,
                          std::optional<double> at_time = std::nullopt, int substeps = 1);

struct NumberStatistics {
  double mean_excess = 0.0;  // <N> - <n>_initial
  double variance = 0.0;     // initial-state-resolved dispersion of N
};

// Mean excess occupation and dispersion after the drive; for a thermal
// initial state the dispersion is the ensemble average of the per-state
// variance, the quantity the generating-function expansion produces.
NumberStatistics number_statistics(const KeldyshScenario& s, int n_trunc, int substeps = 1);

}  // namespace qaction
