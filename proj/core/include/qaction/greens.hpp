#pragma once

#include "qaction/signal.hpp"

// Oscillator Green's functions G_r(t-t') = -i eta(t-t') e^{-i omega (t-t')},
// G_a(t-t') = +i eta(t'-t) e^{-i omega (t-t')}, and the on-shell kernel
// e^{-i omega (t-t')}, together with the double-quadrature bilinears
//   integral K_left^*(t) G(t-t') K_right(t') dt dt'
// that build every generating functional.
//
// Step convention at coincidence: eta(0) = 1 for the retarded kernel and 0
// for the advanced one, matching the equal-time entry of the causal lattice
// inverse (path_lattice.hpp). Inside the double quadrature the equal-time
// cell sits on the boundary of the triangular domain, so the trapezoid rule
// gives it half weight on each side; that split is what makes
// -i B_r + i B_a + (on-shell bilinear) vanish identically for K_left =
// K_right at the discrete level.
//
// Sign note: the retarded kernel here equals the single-branch Green's
// function of the forced-oscillator chapter; the forward/backward-branch
// pair {G_a, G_r} of the time-cycle chapter carries an overall i with the
// step selecting eta(t'-t) vs -eta(t-t'), which is the same normalization.

namespace qaction {

enum class KernelKind { retarded, advanced, onshell };

struct PropagatorKernel {
  double omega;
  KernelKind kind;
  PropagatorKernel(double omega_, KernelKind kind_) : omega(omega_), kind(kind_) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
      throw std::invalid_argument("PropagatorKernel: omega must be finite and > 0");
    }
  }
};

complexd kernel_value(KernelKind kind, double omega, double t, double t_prime);

inline complexd kernel_value(const PropagatorKernel& k, double t, double t_prime) {
  return kernel_value(k.kind, k.omega, t, t_prime);
}

// Triangular (causally masked) double quadrature of
// K_left^*(t) G(t-t') K_right(t') with trapezoid weights in both variables.
// O(n^2) time, O(1) extra space. Both signals must share one grid.
complexd bilinear(const ComplexSignal& K_left, const PropagatorKernel& kernel,
                  const ComplexSignal& K_right);

}  // namespace qaction
