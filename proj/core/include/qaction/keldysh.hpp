#pragma once

#include <variant>

#include "qaction/amplitudes.hpp"
#include "qaction/greens.hpp"
#include "qaction/signal.hpp"

// Time-cycle generating functionals: the system runs forward from t2 to t1
// under K_+ and backward under K_-, with vacuum, number-state, thermal or
// complex-time-displaced boundary weighting. Everything here is closed-form
// arithmetic in the two spectral amplitudes and the three source bilinears;
// fock.hpp provides the independent brute-force route.

namespace qaction {

struct VacuumInitial {};
struct NumberInitial {
  unsigned n = 0;
};
struct ThermalInitial {
  double beta = 0.0;  // >= 0
};
struct ComplexTauInitial {
  complexd tau{0.0, 0.0};  // Im(tau) <= 0; trace weights e^{-i n omega tau}
};
using InitialState = std::variant<VacuumInitial, NumberInitial, ThermalInitial, ComplexTauInitial>;

struct KeldyshScenario {
  ComplexSignal K_plus;
  ComplexSignal K_minus;
  OscillatorParams osc;
  InitialState initial = VacuumInitial{};

  KeldyshScenario(ComplexSignal K_plus_, ComplexSignal K_minus_, OscillatorParams osc_,
                  InitialState initial_ = VacuumInitial{});
};

// Convenience: K_- = K, K_+ = K(t + T) (shift must land on the grid).
KeldyshScenario displaced_scenario(const ComplexSignal& K, OscillatorParams osc, double T,
                                   InitialState initial = VacuumInitial{});

struct MomentReport {
  double mean_n = 0.0;   // excess quanta over the initial occupation
  double var_n = 0.0;
  double gamma_sq = 0.0; // |gamma|^2
};

// <0 t2|0 t2>^{K+,K-}: product of the retarded K_+ bilinear, the advanced
// K_- bilinear and the on-shell cross term. Requires a vacuum initial state.
complexd time_cycle_functional(const KeldyshScenario& s);

// e^{|gamma|^2 (e^{-i omega T} - 1)}; equals time_cycle_functional with the
// displaced pair by construction. T must be an integer multiple of dt.
complexd displaced_generator(const ComplexSignal& K, double omega, double T);

// Trace-weighted generalization. tau = -i beta for a thermal state; the
// geometric trace requires Im(tau) <= 0 and |Re(tau) omega| <= 2 pi.
// The backward-branch kernel is the advanced one, fixed by requiring the
// functional to reduce to 1 at K_+ = K_-.
complexd thermal_generator(const KeldyshScenario& s);

// Closed-form mean/variance of produced quanta for the scenario's physical
// source (K_plus) and initial state:
//   vacuum:     mean = var = |gamma|^2
//   number n:   mean = |gamma|^2, var = |gamma|^2 (1 + 2 n)
//   thermal:    mean = |gamma|^2, var = |gamma|^2 (1 + 2 <n>_beta),
// where the thermal variance is the ensemble average of the per-state
// dispersion <(N - n - |gamma|^2)^2>_n.
MomentReport moments(const KeldyshScenario& s);

// <y^dag(t) y(t')> via central finite differences of the discretized
// time-cycle functional with respect to one-sample perturbations of K_-(t)
// and K_+^*(t'), Richardson-extrapolated over two step sizes. t, t' must be
// grid nodes; vacuum initial state only.
complexd correlation_fd(const KeldyshScenario& s, double t, double t_prime, double h = 1e-4);

double thermal_occupation(double beta, double omega);  // 1/(e^{beta omega}-1)

}  // namespace qaction
