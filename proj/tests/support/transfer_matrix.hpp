#pragma once

#include <complex>
#include <vector>

#include "qaction/source_nr.hpp"

// Independent scattering oracle: piecewise-constant transfer matrices for
// the wavefunction value/derivative pair. Flux conservation is exact here
// (unit Wronskian per cell), so it checks the Lippmann-Schwinger solve
// without sharing any code with it.

namespace qaction::testing {

struct TransferCoefficients {
  complexd r;
  complexd t;
};

inline TransferCoefficients transfer_matrix_rt(const std::vector<double>& v_cells, double x_left,
                                               double dx, double E, double mass) {
  const double k = std::sqrt(2.0 * mass * E);
  // M maps (psi, psi') at the left edge to the right edge
  complexd M[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
  for (double v : v_cells) {
    const complexd q = std::sqrt(complexd{2.0 * mass * (E - v), 1e-300});
    const complexd c = std::cos(q * dx);
    const complexd s = std::sin(q * dx);
    const complexd cell[2][2] = {{c, s / q}, {-q * s, c}};
    const complexd m00 = cell[0][0] * M[0][0] + cell[0][1] * M[1][0];
    const complexd m01 = cell[0][0] * M[0][1] + cell[0][1] * M[1][1];
    const complexd m10 = cell[1][0] * M[0][0] + cell[1][1] * M[1][0];
    const complexd m11 = cell[1][0] * M[0][1] + cell[1][1] * M[1][1];
    M[0][0] = m00;
    M[0][1] = m01;
    M[1][0] = m10;
    M[1][1] = m11;
  }
  const double x_right = x_left + dx * static_cast<double>(v_cells.size());
  const complexd I{0.0, 1.0};
  const complexd el = std::polar(1.0, k * x_left);
  const complexd er = std::polar(1.0, k * x_right);
  // left: psi = e^{ikx} + r e^{-ikx}; right: psi = t e^{ikx}
  // unknowns (r, t): two equations from the value/derivative transfer
  const complexd a11 = -(M[0][0] - I * k * M[0][1]) * std::conj(el);
  const complexd a21 = -(M[1][0] - I * k * M[1][1]) * std::conj(el);
  const complexd b1 = -(M[0][0] + I * k * M[0][1]) * el;
  const complexd b2 = -(M[1][0] + I * k * M[1][1]) * el;
  // [er, a11; I k er, a21] [t; r] = [-b1; -b2]
  const complexd det = er * a21 - a11 * (I * k * er);
  TransferCoefficients out;
  out.t = (-b1 * a21 + a11 * b2) / det;
  out.r = (er * (-b2) + b1 * (I * k * er)) / det;
  return out;
}

}  // namespace qaction::testing
