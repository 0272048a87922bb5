#include "qaction/keldysh.hpp"

#include <cmath>

namespace qaction {

namespace {
const complexd kI{0.0, 1.0};

complexd cycle_exponent(const ComplexSignal& K_plus, const ComplexSignal& K_minus, double omega) {
  const complexd b_ret = bilinear(K_plus, PropagatorKernel(omega, KernelKind::retarded), K_plus);
  const complexd b_adv = bilinear(K_minus, PropagatorKernel(omega, KernelKind::advanced), K_minus);
  const complexd cross = bilinear(K_minus, PropagatorKernel(omega, KernelKind::onshell), K_plus);
  return -kI * b_ret + kI * b_adv + cross;
}
}  // namespace

KeldyshScenario::KeldyshScenario(ComplexSignal K_plus_, ComplexSignal K_minus_,
                                 OscillatorParams osc_, InitialState initial_)
    : K_plus(std::move(K_plus_)), K_minus(std::move(K_minus_)), osc(osc_), initial(initial_) {
  if (K_plus.grid() != K_minus.grid()) {
    throw std::invalid_argument("KeldyshScenario: sources live on different grids");
  }
  if (const auto* th = std::get_if<ThermalInitial>(&initial)) {
    if (!(th->beta >= 0.0)) {
      throw std::invalid_argument("KeldyshScenario: thermal beta must be >= 0");
    }
  }
}

KeldyshScenario displaced_scenario(const ComplexSignal& K, OscillatorParams osc, double T,
                                   InitialState initial) {
  return KeldyshScenario(shift_signal(K, T), K, osc, initial);
}

complexd time_cycle_functional(const KeldyshScenario& s) {
  if (!std::holds_alternative<VacuumInitial>(s.initial)) {
    throw std::invalid_argument("time_cycle_functional: vacuum initial state required");
  }
  return std::exp(cycle_exponent(s.K_plus, s.K_minus, s.osc.omega));
}

complexd displaced_generator(const ComplexSignal& K, double omega, double T) {
  steps_for_shift(K.grid(), T);  // same grid-multiple contract as shift_signal
  const double gamma_sq = fourier_at_frequency(K, omega).abs_squared();
  return std::exp(gamma_sq * (std::polar(1.0, -omega * T) - 1.0));
}

double thermal_occupation(double beta, double omega) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("thermal_occupation: beta must be > 0");
  }
  return 1.0 / std::expm1(beta * omega);
}

complexd thermal_generator(const KeldyshScenario& s) {
  complexd tau;
  if (const auto* th = std::get_if<ThermalInitial>(&s.initial)) {
    tau = complexd{0.0, -th->beta};
  } else if (const auto* ct = std::get_if<ComplexTauInitial>(&s.initial)) {
    tau = ct->tau;
  } else {
    throw std::invalid_argument("thermal_generator: needs a thermal or complex-tau initial state");
  }
  if (tau.imag() > 0.0) {
    throw std::invalid_argument("thermal_generator: Im(tau) must be <= 0");
  }
  const double omega = s.osc.omega;
  if (std::abs(tau.real() * omega) > 2.0 * M_PI) {
    throw std::invalid_argument("thermal_generator: |Re(tau) omega| > 2 pi is not supported");
  }
  const complexd gp = fourier_at_frequency(s.K_plus, omega).gamma;
  const complexd gm = fourier_at_frequency(s.K_minus, omega).gamma;
  const double diff_sq = std::norm(gp - gm);
  // 1/(e^{i omega tau} - 1); for tau = -i beta this is <n>_beta.
  const complexd denom = std::exp(kI * omega * tau) - 1.0;
  complexd extra{0.0, 0.0};
  if (diff_sq > 0.0) {
    if (std::abs(denom) < 1e-12) {
      throw std::domain_error("thermal_generator: geometric trace diverges (beta -> 0)");
    }
    extra = -diff_sq / denom;
  }
  return std::exp(cycle_exponent(s.K_plus, s.K_minus, omega) + extra);
}

MomentReport moments(const KeldyshScenario& s) {
  const double gamma_sq = fourier_at_frequency(s.K_plus, s.osc.omega).abs_squared();
  MomentReport report;
  report.gamma_sq = gamma_sq;
  report.mean_n = gamma_sq;
  if (std::holds_alternative<VacuumInitial>(s.initial)) {
    report.var_n = gamma_sq;
  } else if (const auto* num = std::get_if<NumberInitial>(&s.initial)) {
    report.var_n = gamma_sq * (1.0 + 2.0 * static_cast<double>(num->n));
  } else if (const auto* th = std::get_if<ThermalInitial>(&s.initial)) {
    report.var_n = gamma_sq * (1.0 + 2.0 * thermal_occupation(th->beta, s.osc.omega));
  } else {
    throw std::invalid_argument("moments: complex-tau initial state has no moment formula here");
  }
  return report;
}

namespace {

// d^2 T / dK_-(t_j) dK_+^*(t_j'), Wirtinger derivatives through central
// differences. Each perturbation is a one-sample bump of quadrature mass h
// (sample height h / weight), so the functional derivative is the plain
// second difference over h^2; bumping by bare sample height and dividing by
// the cell weights afterwards amplifies rounding of the O(1) functional by
// 1/(h dt)^2 and drowns the signal.
complexd mixed_fd(const KeldyshScenario& s, std::size_t j_minus, std::size_t j_plus, double h) {
  const std::vector<double> w = quadrature_weights(s.K_plus.grid());
  const complexd dirs[2] = {complexd{1.0, 0.0}, complexd{0.0, 1.0}};
  // c_re, c_im for d/dK (unconjugated) and d/dK^* respectively
  const complexd cm[2] = {complexd{0.5, 0.0}, complexd{0.0, -0.5}};
  const complexd cp[2] = {complexd{0.5, 0.0}, complexd{0.0, 0.5}};
  const double bump_minus = h / w[j_minus];
  const double bump_plus = h / w[j_plus];
  complexd acc{0.0, 0.0};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      complexd second{0.0, 0.0};
      for (int sa = -1; sa <= 1; sa += 2) {
        for (int sb = -1; sb <= 1; sb += 2) {
          std::vector<complexd> km = s.K_minus.samples();
          std::vector<complexd> kp = s.K_plus.samples();
          km[j_minus] += static_cast<double>(sa) * bump_minus * dirs[a];
          kp[j_plus] += static_cast<double>(sb) * bump_plus * dirs[b];
          const complexd val =
              std::exp(cycle_exponent(ComplexSignal(s.K_plus.grid(), std::move(kp)),
                                      ComplexSignal(s.K_minus.grid(), std::move(km)),
                                      s.osc.omega));
          second += static_cast<double>(sa * sb) * val;
        }
      }
      acc += cm[a] * cp[b] * second / (4.0 * h * h);
    }
  }
  return acc;
}

}  // namespace

complexd correlation_fd(const KeldyshScenario& s, double t, double t_prime, double h) {
  if (!std::holds_alternative<VacuumInitial>(s.initial)) {
    throw std::invalid_argument("correlation_fd: vacuum initial state required");
  }
  const std::size_t j_minus = s.K_plus.grid().index_of(t);
  const std::size_t j_plus = s.K_plus.grid().index_of(t_prime);
  // Richardson over h and h/2: error model c h^2 + O(h^4).
  const complexd coarse = mixed_fd(s, j_minus, j_plus, h);
  const complexd fine = mixed_fd(s, j_minus, j_plus, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace qaction
