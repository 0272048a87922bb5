#include <doctest.h>

#include <cmath>

#include "qaction/amplitudes.hpp"

using namespace qaction;

namespace {

const complexd kI{0.0, 1.0};

ComplexSignal standard_pulse(double dt, double margin = 0.1) {
  const auto n = static_cast<std::size_t>(std::llround((M_PI + 2.0 * margin) / dt)) + 1;
  return square_pulse(TimeGrid(-margin, dt, n), 0.5, 0.0, M_PI);
}

}  // namespace

TEST_CASE("free transformation boundary values") {
  // <0|0> = 1 whenever either label vanishes
  CHECK(free_transformation({complexd{0.0, 0.0}, complexd{2.0, 1.0}}, 1.0, 3.0, 1.0) ==
        complexd{1.0, 0.0});
  CHECK(free_transformation({complexd{1.0, -2.0}, complexd{0.0, 0.0}}, 1.0, 3.0, 1.0) ==
        complexd{1.0, 0.0});
  // coincident times: exp(y'+ y'')
  CHECK(std::abs(free_transformation({1.0, 1.0}, 1.0, 2.0, 2.0) - std::exp(1.0)) < 1e-15);
  // omega = 1, t1 - t2 = pi: exp(e^{-i pi}) = 1/e
  const complexd v = free_transformation({1.0, 1.0}, 1.0, M_PI, 0.0);
  CHECK(std::abs(v - std::exp(-1.0)) < 1e-13);
  CHECK_THROWS_AS(free_transformation({1.0, 1.0}, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("vacuum persistence: zero source and the standard pulse") {
  auto K = standard_pulse(1e-3);
  CHECK(vacuum_persistence(zero_signal(K.grid()), 1.0) == complexd{1.0, 0.0});
  // e^{-1/2} e^{i pi/4} = 0.42888... (1 + i)
  const complexd expected = std::exp(complexd{-0.5, M_PI / 4.0});
  CHECK(std::abs(vacuum_persistence(K, 1.0) - expected) < 2e-7);
  CHECK(expected.real() == doctest::Approx(0.42888).epsilon(1e-4));
}

TEST_CASE("vacuum persistence: modulus law |<0|0>|^2 = e^{-|gamma|^2}") {
  auto K = standard_pulse(1e-3);
  const double mod_sq = std::norm(vacuum_persistence(K, 1.0));
  const double gamma_sq = fourier_at_frequency(K, 1.0).abs_squared();
  CHECK(std::abs(mod_sq - std::exp(-gamma_sq)) < 1e-13);
  CHECK(mod_sq <= 1.0);
}

TEST_CASE("forced transformation reduces to the free and vacuum cases") {
  auto K = standard_pulse(1e-3);
  const double t2 = K.grid().t_start;
  const double t1 = K.grid().t_end();
  const CoherentLabel label{complexd{0.3, -0.2}, complexd{-0.1, 0.5}};
  // K = 0: free value
  const complexd free_only =
      forced_transformation(label, zero_signal(K.grid()), 1.0, t1, t2);
  CHECK(std::abs(free_only - free_transformation(label, 1.0, t1, t2)) < 1e-14);
  // label (0,0): the ground state is y'' = y'+ = 0
  const complexd vac = forced_transformation(CoherentLabel{}, K, 1.0, t1, t2);
  CHECK(std::abs(vac - vacuum_persistence(K, 1.0)) < 1e-14);
}

TEST_CASE("forced transformation rejects support outside [t2, t1]") {
  auto K = standard_pulse(1e-3);
  CHECK_THROWS_AS(forced_transformation(CoherentLabel{}, K, 1.0, 2.0, K.grid().t_start),
                  std::invalid_argument);
}

// The coherent labels can be traded for impulsive sources: the right slot of
// the persistence bilinear picks up i y'' delta(t - t2), the left (starred)
// slot i y'+ delta(t - t1), each delta realized as a one-sample 1/dt spike at
// the node. The two slots are independent arguments, not conjugates.
TEST_CASE("forced transformation agrees with the impulse-source route as dt -> 0") {
  const CoherentLabel label{complexd{0.25, 0.1}, complexd{-0.15, 0.3}};
  // endpoints (t2, t1); deltas snap to the nearest node
  auto mismatch = [&](double dt, double t2, double t1) {
    auto K = standard_pulse(dt, 0.2);
    const TimeGrid& g = K.grid();
    const std::size_t j2 = static_cast<std::size_t>(std::llround((t2 - g.t_start) / dt));
    const std::size_t j1 = static_cast<std::size_t>(std::llround((t1 - g.t_start) / dt));
    std::vector<complexd> right = K.samples();
    std::vector<complexd> left = K.samples();
    right[j2] += kI * label.y_double_prime / dt;
    // left slot enters the bilinear conjugated: conj(left) += i y'+ delta
    left[j1] += std::conj(kI * label.y_dag_prime) / dt;
    const complexd via_impulse =
        std::exp(-kI * bilinear(ComplexSignal(g, std::move(left)),
                                PropagatorKernel(1.0, KernelKind::retarded),
                                ComplexSignal(g, std::move(right))));
    const complexd direct = forced_transformation(label, K, 1.0, t1, t2);
    return std::abs(via_impulse - direct);
  };

  // node-aligned endpoints: the discrete identity is exact
  {
    const double dt = 2e-3;
    CHECK(mismatch(dt, -0.2 + 4.0 * dt, -0.2 + 4.0 * dt + std::floor((M_PI + 0.3) / dt) * dt) <
          1e-12);
  }
  // off-node endpoints: nearest-node deltas converge at first order
  const double t2 = -0.11937, t1 = M_PI + 0.10411;
  const double e1 = mismatch(2e-3, t2, t1);
  const double e2 = mismatch(1e-3, t2, t1);
  const double e3 = mismatch(5e-4, t2, t1);
  CHECK(e3 < e2);
  CHECK(e2 < e1);
  const double order = std::log2(e1 / e3) / 2.0;
  CHECK(order == doctest::Approx(1.0).epsilon(0.5));
}

TEST_CASE("transition probabilities: zero source") {
  auto K = zero_signal(TimeGrid(0.0, 1e-2, 128));
  auto table = transition_probabilities(K, 1.0, 16);
  CHECK(table.p_n[0] == doctest::Approx(1.0));
  for (std::size_t n = 1; n < table.p_n.size(); ++n) {
    CHECK(table.p_n[n] == 0.0);
  }
}

TEST_CASE("transition probabilities: |gamma|^2 = 1 Poisson values") {
  auto K = standard_pulse(1e-3);
  auto table = transition_probabilities(K, 1.0, 40);
  CHECK(table.gamma.abs_squared() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(table.p_n[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(table.p_n[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(table.p_n[2] == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-6));
  CHECK(table.p_n[2] == doctest::Approx(0.18394).epsilon(1e-4));
}

TEST_CASE("transition probabilities: normalization tail bound") {
  // sum_{n<=40} p_n = 1 within 1e-12 for |gamma|^2 <= 4
  for (double lam : {0.5, 1.0, 2.0, 4.0}) {
    TimeGrid g(-0.5, 1e-2, 451);
    auto K = square_pulse(g, std::sqrt(lam) * 0.5, 0.0, M_PI);  // scaled pulse
    auto table = transition_probabilities(K, 1.0, 40);
    (void)lam;
    CHECK(std::abs(table.cumulative.back() - 1.0) < 1e-12);
    CHECK(table.tail_mass < 1e-12);
  }
}

TEST_CASE("poisson mean matches |gamma|^2") {
  auto K = standard_pulse(1e-3);
  auto table = transition_probabilities(K, 1.0, 64);
  double mean = 0.0;
  for (std::size_t n = 0; n < table.p_n.size(); ++n) {
    mean += static_cast<double>(n) * table.p_n[n];
  }
  CHECK(mean == doctest::Approx(table.gamma.abs_squared()).epsilon(1e-10));
}
