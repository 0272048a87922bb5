#include "qaction/fock.hpp"

#include <cmath>

namespace qaction {

namespace {

const complexd kI{0.0, 1.0};

complexd interp_sample(const ComplexSignal& K, double t) {
  const TimeGrid& g = K.grid();
  const double x = (t - g.t_start) / g.dt;
  if (x < -kGridSnapTolerance || x > static_cast<double>(g.n - 1) + kGridSnapTolerance) {
    throw std::invalid_argument("fock: time outside the signal grid");
  }
  const double xc = std::clamp(x, 0.0, static_cast<double>(g.n - 1));
  const std::size_t j = std::min(static_cast<std::size_t>(xc), g.n - 2);
  const double f = xc - static_cast<double>(j);
  return (1.0 - f) * K[j] + f * K[j + 1];
}

// Tridiagonal skew-Hermitian exponent A = -i h H, applied as exp(A) X by a
// Taylor series; ||A|| is a fraction of unity at the step sizes used, so the
// series terminates quickly and preserves unitarity to truncation level.
struct TridiagExponent {
  Eigen::VectorXcd diag;  // A_{n,n}
  Eigen::VectorXcd lower; // A_{n+1,n}
  Eigen::VectorXcd upper; // A_{n,n+1}
};

void tridiag_times(const TridiagExponent& A, const Eigen::MatrixXcd& X, Eigen::MatrixXcd& out) {
  const Eigen::Index n = X.rows();
  const Eigen::Index cols = X.cols();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const complexd* x = X.col(c).data();
    complexd* y = out.col(c).data();
    y[0] = A.diag[0] * x[0] + A.upper[0] * x[1];
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      y[i] = A.lower[i - 1] * x[i - 1] + A.diag[i] * x[i] + A.upper[i] * x[i + 1];
    }
    y[n - 1] = A.lower[n - 2] * x[n - 2] + A.diag[n - 1] * x[n - 1];
  }
}

void apply_exponential(const TridiagExponent& A, Eigen::MatrixXcd& U, Eigen::MatrixXcd& term,
                       Eigen::MatrixXcd& scratch) {
  term = U;
  double base = U.norm();
  for (int k = 1; k <= 40; ++k) {
    tridiag_times(A, term, scratch);
    term = scratch / static_cast<double>(k);
    U += term;
    const double tn = term.norm();
    if (tn <= 1e-16 * base) {
      return;
    }
  }
  throw std::runtime_error("fock: exponential series did not converge (step too large)");
}

}  // namespace

Eigen::MatrixXcd hamiltonian_at(double t, const ComplexSignal& K, double omega, int n_trunc) {
  if (n_trunc < 2) {
    throw std::invalid_argument("hamiltonian_at: n_trunc must be at least 2");
  }
  const complexd k = interp_sample(K, t);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n_trunc, n_trunc);
  for (int n = 0; n < n_trunc; ++n) {
    H(n, n) = static_cast<double>(n) * omega;
    if (n + 1 < n_trunc) {
      const double root = std::sqrt(static_cast<double>(n + 1));
      H(n + 1, n) = root * k;             // <n+1| y^dag K |n>
      H(n, n + 1) = root * std::conj(k);  // <n| y K^* |n+1>
    }
  }
  return H;
}

Propagation evolve(const ComplexSignal& K, double omega, int n_trunc, int substeps) {
  if (n_trunc < 2 || n_trunc > 256) {
    throw std::invalid_argument("evolve: n_trunc must lie in [2, 256]");
  }
  if (substeps < 1) {
    throw std::invalid_argument("evolve: substeps must be >= 1");
  }
  const TimeGrid& g = K.grid();
  const double h = g.dt / static_cast<double>(substeps);

  // Gauss-Legendre nodes and the fourth-order commutator-free weights.
  const double root3 = std::sqrt(3.0);
  const double c1 = 0.5 - root3 / 6.0;
  const double c2 = 0.5 + root3 / 6.0;
  const double f1 = 0.25 + root3 / 6.0;
  const double f2 = 0.25 - root3 / 6.0;

  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(n_trunc, n_trunc);
  Eigen::MatrixXcd term(n_trunc, n_trunc), scratch(n_trunc, n_trunc);

  TridiagExponent A;
  A.diag.resize(n_trunc);
  A.lower.resize(n_trunc - 1);
  A.upper.resize(n_trunc - 1);
  Eigen::VectorXd roots(n_trunc - 1);
  for (int n = 0; n + 1 < n_trunc; ++n) {
    roots[n] = std::sqrt(static_cast<double>(n + 1));
  }

  auto load_exponent = [&](double ka_w, double kb_w, complexd ka, complexd kb, double diag_w) {
    // A = -i h [ diag_w * n omega  +  (ka_w ka + kb_w kb) ladder terms ]
    const complexd mix = ka_w * ka + kb_w * kb;
    for (int n = 0; n < n_trunc; ++n) {
      A.diag[n] = -kI * h * diag_w * static_cast<double>(n) * omega;
    }
    for (int n = 0; n + 1 < n_trunc; ++n) {
      A.lower[n] = -kI * h * roots[n] * mix;
      A.upper[n] = -kI * h * roots[n] * std::conj(mix);
    }
  };

  for (std::size_t cell = 0; cell + 1 < g.n; ++cell) {
    const double t0 = g.time(cell);
    for (int s = 0; s < substeps; ++s) {
      const double a = t0 + static_cast<double>(s) * h;
      const complexd k1 = interp_sample(K, a + c1 * h);
      const complexd k2 = interp_sample(K, a + c2 * h);
      load_exponent(f1, f2, k1, k2, f1 + f2);
      apply_exponential(A, U, term, scratch);
      load_exponent(f2, f1, k1, k2, f1 + f2);
      apply_exponential(A, U, term, scratch);
    }
  }

  Propagation prop{g, std::move(U), 0.0, 0.0, false};
  const Eigen::MatrixXcd defect =
      prop.U.adjoint() * prop.U - Eigen::MatrixXcd::Identity(n_trunc, n_trunc);
  prop.unitarity_defect = defect.cwiseAbs().maxCoeff();
  for (int n = std::max(0, n_trunc - 4); n < n_trunc; ++n) {
    prop.leakage += std::norm(prop.U(n, 0));
  }
  prop.leakage_flagged = prop.leakage > 1e-6;
  return prop;
}

namespace {

// Weights over initial number states for the scenario's initial state.
std::vector<double> initial_weights(const InitialState& initial, double omega, int n_trunc) {
  std::vector<double> w(static_cast<std::size_t>(n_trunc), 0.0);
  if (std::holds_alternative<VacuumInitial>(initial)) {
    w[0] = 1.0;
  } else if (const auto* num = std::get_if<NumberInitial>(&initial)) {
    if (static_cast<int>(num->n) >= n_trunc) {
      throw std::invalid_argument("fock: initial number state beyond truncation");
    }
    w[num->n] = 1.0;
  } else if (const auto* th = std::get_if<ThermalInitial>(&initial)) {
    if (!(th->beta > 0.0)) {
      throw std::domain_error("fock: beta = 0 gives a divergent uniform-weight trace");
    }
    double total = 0.0;
    for (int n = 0; n < n_trunc; ++n) {
      const double wn = std::exp(-th->beta * omega * static_cast<double>(n));
      if (wn < 1e-18) break;
      w[n] = wn;
      total += wn;
    }
    for (double& x : w) x /= total;
  } else {
    throw std::invalid_argument("fock: complex-tau initial state not supported by the oracle");
  }
  return w;
}

}  // namespace

complexd time_cycle_trace(const KeldyshScenario& s, int n_trunc, int substeps) {
  const std::vector<double> w = initial_weights(s.initial, s.osc.omega, n_trunc);
  const Propagation up = evolve(s.K_plus, s.osc.omega, n_trunc, substeps);
  const Propagation um = evolve(s.K_minus, s.osc.omega, n_trunc, substeps);
  complexd acc{0.0, 0.0};
  for (int n = 0; n < n_trunc; ++n) {
    if (w[n] == 0.0) continue;
    acc += w[n] * (um.U.col(n).adjoint() * up.U.col(n))(0, 0);
  }
  return acc;
}

double observable_average(const KeldyshScenario& s, Observable obs, int n_trunc,
                          std::optional<double> at_time, int substeps) {
  const TimeGrid& g = s.K_plus.grid();
  ComplexSignal K = s.K_plus;
  if (at_time) {
    const std::size_t j_end = g.index_of(*at_time);
    if (j_end < 1) {
      throw std::invalid_argument("observable_average: at_time must lie past the grid start");
    }
    TimeGrid sub(g.t_start, g.dt, j_end + 1);
    std::vector<complexd> samples(s.K_plus.samples().begin(),
                                  s.K_plus.samples().begin() + static_cast<long>(j_end) + 1);
    K = ComplexSignal(sub, std::move(samples));
  }
  const std::vector<double> w = initial_weights(s.initial, s.osc.omega, n_trunc);
  const Propagation prop = evolve(K, s.osc.omega, n_trunc, substeps);
  double acc = 0.0;
  for (int n = 0; n < n_trunc; ++n) {
    if (w[n] == 0.0) continue;
    double val = 0.0;
    for (int m = 0; m < n_trunc; ++m) {
      const double occ = std::norm(prop.U(m, n));
      const double mm = static_cast<double>(m);
      val += occ * (obs == Observable::N ? mm : mm * mm);
    }
    acc += w[n] * val;
  }
  return acc;
}

NumberStatistics number_statistics(const KeldyshScenario& s, int n_trunc, int substeps) {
  const std::vector<double> w = initial_weights(s.initial, s.osc.omega, n_trunc);
  const Propagation prop = evolve(s.K_plus, s.osc.omega, n_trunc, substeps);
  NumberStatistics stats;
  for (int n = 0; n < n_trunc; ++n) {
    if (w[n] == 0.0) continue;
    double mean = 0.0, mean_sq = 0.0;
    for (int m = 0; m < n_trunc; ++m) {
      const double occ = std::norm(prop.U(m, n));
      mean += occ * static_cast<double>(m);
      mean_sq += occ * static_cast<double>(m) * static_cast<double>(m);
    }
    stats.mean_excess += w[n] * (mean - static_cast<double>(n));
    stats.variance += w[n] * (mean_sq - mean * mean);
  }
  return stats;
}

}  // namespace qaction
