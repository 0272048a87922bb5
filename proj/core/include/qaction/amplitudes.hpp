#pragma once

#include "qaction/greens.hpp"
#include "qaction/signal.hpp"

// Closed-form forced-oscillator transformation functions between coherent
// labels, the ground-state persistence amplitude, and the Poisson transition
// statistics they imply. Zero-point energy is dropped throughout, so phases
// (not just moduli) are directly comparable with the Fock-space oracle.

namespace qaction {

struct CoherentLabel {
  complexd y_dag_prime{0.0, 0.0};   // left eigenvalue of y^dagger
  complexd y_double_prime{0.0, 0.0};  // right eigenvalue of y
};

struct TransitionTable {
  double omega = 0.0;
  SpectralAmplitude gamma;
  complexd persistence{0.0, 0.0};
  std::vector<double> p_n;       // p(n,0), n = 0..n_max
  std::vector<double> cumulative;
  double tail_mass = 0.0;        // 1 - sum p_n (Poisson tail beyond n_max)
};

// <y'+,t1 | y'',t2> for the free oscillator: exp[y'+ e^{-i omega (t1-t2)} y''].
complexd free_transformation(const CoherentLabel& label, double omega, double t1, double t2);

// <0,t1|0,t2>^K = exp(-i * bilinear(K, retarded, K)).
complexd vacuum_persistence(const ComplexSignal& K, double omega);

// Exponent of the persistence amplitude, -i * bilinear(K, G_r, K); exposed
// so convergence studies can extrapolate before exponentiating.
complexd persistence_exponent(const ComplexSignal& K, double omega);

// Four-term closed form: free part, the two linear source terms, and the
// retarded source bilinear. K must be supported inside [t2, t1]; samples
// outside are an error (no extrapolation).
complexd forced_transformation(const CoherentLabel& label, const ComplexSignal& K, double omega,
                               double t1, double t2);

// <n,t1|0,t2>^K = (-i)^n / sqrt(n!) e^{-i n omega t1} gamma^n <0,t1|0,t2>^K.
complexd transition_amplitude(const ComplexSignal& K, double omega, unsigned n, double t1);

// Poisson table p_n = |gamma|^{2n} e^{-|gamma|^2} / n!.
TransitionTable transition_probabilities(const ComplexSignal& K, double omega,
                                         std::size_t n_max = 64);

}  // namespace qaction
