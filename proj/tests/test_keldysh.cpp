#include <doctest.h>

#include <cmath>
#include <random>

#include "qaction/fock.hpp"
#include "qaction/keldysh.hpp"

using namespace qaction;

namespace {

const complexd kI{0.0, 1.0};

// Grid covering [-pi, pi] with pi an exact multiple of dt, so the displaced
// pair K_-(t) = K(t), K_+(t) = K(t + pi) stays on the grid.
struct DisplacedSetup {
  // 64 cells of margin on both sides keep the shifted pulse interior.
  ComplexSignal K;
  double dt;
  DisplacedSetup()
      : K(square_pulse(TimeGrid(-M_PI - 64.0 * (M_PI / 1600.0), M_PI / 1600.0, 3329), 0.5, 0.0,
                       M_PI)),
        dt(M_PI / 1600.0) {}
};

ComplexSignal random_smooth(std::mt19937& rng, const TimeGrid& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double span = g.span();
  const double t0 = g.t_start + span * (0.3 + 0.4 * u(rng));
  const double sigma = span * (0.03 + 0.07 * u(rng));
  const complexd amp = std::polar(0.2 + 0.9 * u(rng), 2.0 * M_PI * u(rng));
  return gaussian_pulse(g, amp, t0, sigma, 2.0 * u(rng) - 1.0, 2.0 * M_PI * u(rng));
}

}  // namespace

TEST_CASE("time cycle: equal sources give one to machine precision") {
  std::mt19937 rng(4242);
  TimeGrid g(-3.0, 2e-3, 3001);
  for (int trial = 0; trial < 20; ++trial) {
    auto K = random_smooth(rng, g);
    KeldyshScenario s(K, K, OscillatorParams(1.0), VacuumInitial{});
    CHECK(std::abs(time_cycle_functional(s) - complexd{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("time cycle: open forward branch reduces to the persistence amplitude") {
  DisplacedSetup setup;
  KeldyshScenario s(setup.K, zero_signal(setup.K.grid()), OscillatorParams(1.0));
  CHECK(std::abs(time_cycle_functional(s) - vacuum_persistence(setup.K, 1.0)) < 1e-14);
}

TEST_CASE("time cycle: modulus never exceeds one") {
  std::mt19937 rng(99);
  TimeGrid g(-3.0, 2.5e-3, 2401);
  for (int trial = 0; trial < 10; ++trial) {
    auto Kp = random_smooth(rng, g);
    auto Km = random_smooth(rng, g);
    KeldyshScenario s(Kp, Km, OscillatorParams(1.0));
    CHECK(std::abs(time_cycle_functional(s)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("displaced pair: functional equals the closed-form generator") {
  DisplacedSetup setup;
  auto s = displaced_scenario(setup.K, OscillatorParams(1.0), M_PI);
  const complexd via_cycle = time_cycle_functional(s);
  const complexd via_gamma = displaced_generator(setup.K, 1.0, M_PI);
  CHECK(std::abs(via_cycle - via_gamma) < 1e-9);
  // |gamma|^2 = 1, omega T = pi: e^{-2}
  CHECK(std::abs(via_gamma - std::exp(-2.0)) < 1e-6);
  CHECK(std::abs(displaced_generator(setup.K, 1.0, 0.0) - complexd{1.0, 0.0}) < 1e-15);
}

TEST_CASE("displaced generator: oracle trace cross-check") {
  DisplacedSetup setup;
  auto s = displaced_scenario(setup.K, OscillatorParams(1.0), M_PI);
  const complexd oracle = time_cycle_trace(s, 64);
  CHECK(std::abs(displaced_generator(setup.K, 1.0, M_PI) - oracle) < 1e-6);
}

TEST_CASE("displaced generator: small-omega-T expansion gives the mean") {
  DisplacedSetup setup;
  const double gamma_sq = fourier_at_frequency(setup.K, 1.0).abs_squared();
  const double T = 16.0 * setup.dt;
  const complexd f = displaced_generator(setup.K, 1.0, T);
  // log f = |gamma|^2 (e^{-i omega T} - 1) = -i omega T <n> + O(T^2)
  const double mean = -std::log(f).imag() / T;
  CHECK(mean == doctest::Approx(gamma_sq).epsilon(1e-3));
  CHECK_THROWS_AS(displaced_generator(setup.K, 1.0, 0.4999 * setup.dt), std::invalid_argument);
}

TEST_CASE("thermal generator: equal sources give one at every temperature") {
  DisplacedSetup setup;
  for (double beta : {0.3, 1.0, 5.0}) {
    KeldyshScenario s(setup.K, setup.K, OscillatorParams(1.0), ThermalInitial{beta});
    CHECK(std::abs(thermal_generator(s) - complexd{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("thermal generator: beta = 1 displaced value and oracle agreement") {
  DisplacedSetup setup;
  auto s = displaced_scenario(setup.K, OscillatorParams(1.0), M_PI, ThermalInitial{1.0});
  const complexd closed = thermal_generator(s);
  // exponent (e^{-i pi} - 1) - (e-1)^{-1} (e^{i pi} - 1)(e^{-i pi} - 1)
  //        = -2 - 4 <n>_beta with <n>_beta = 1/(e-1) = 0.58198
  const double nbar = 1.0 / std::expm1(1.0);
  CHECK(nbar == doctest::Approx(0.58198).epsilon(1e-4));
  const complexd expected = std::exp(complexd{-2.0 - 4.0 * nbar, 0.0});
  CHECK(std::abs(closed - expected) < 1e-6);
  CHECK(std::abs(std::log(closed).real() - (-4.32793)) < 1e-4);
  const complexd oracle = time_cycle_trace(s, 64);
  CHECK(std::abs(closed - oracle) < 1e-6);
}

TEST_CASE("thermal generator: zero-temperature limit recovers the time cycle") {
  DisplacedSetup setup;
  auto cold = displaced_scenario(setup.K, OscillatorParams(1.0), M_PI,
                                 ComplexTauInitial{complexd{0.0, -20.0}});
  auto vac = displaced_scenario(setup.K, OscillatorParams(1.0), M_PI);
  CHECK(std::abs(thermal_generator(cold) - time_cycle_functional(vac)) < 1e-8);
}

TEST_CASE("thermal generator: domain guards") {
  DisplacedSetup setup;
  auto bad_tau = displaced_scenario(setup.K, OscillatorParams(1.0), M_PI,
                                    ComplexTauInitial{complexd{0.0, 0.5}});
  CHECK_THROWS_AS(thermal_generator(bad_tau), std::invalid_argument);
  auto divergent = displaced_scenario(setup.K, OscillatorParams(1.0), M_PI,
                                      ComplexTauInitial{complexd{0.0, 0.0}});
  CHECK_THROWS_AS(thermal_generator(divergent), std::domain_error);
}

TEST_CASE("moments: vacuum, thermal and number-state dispersions") {
  DisplacedSetup setup;
  const double gamma_sq = fourier_at_frequency(setup.K, 1.0).abs_squared();

  KeldyshScenario vac(setup.K, setup.K, OscillatorParams(1.0));
  auto mv = moments(vac);
  CHECK(mv.mean_n == doctest::Approx(gamma_sq));
  CHECK(mv.var_n == doctest::Approx(gamma_sq));
  CHECK(std::sqrt(mv.var_n) / mv.mean_n == doctest::Approx(1.0).epsilon(1e-6));

  KeldyshScenario th(setup.K, setup.K, OscillatorParams(1.0), ThermalInitial{1.0});
  auto mt = moments(th);
  CHECK(mt.var_n == doctest::Approx(gamma_sq * (1.0 + 2.0 / std::expm1(1.0))));
  CHECK(mt.var_n == doctest::Approx(2.16395).epsilon(1e-4));

  KeldyshScenario num(setup.K, setup.K, OscillatorParams(1.0), NumberInitial{3});
  CHECK(moments(num).var_n == doctest::Approx(gamma_sq * 7.0));
}

TEST_CASE("moments: oracle cross-check at beta = 1") {
  DisplacedSetup setup;
  KeldyshScenario th(setup.K, setup.K, OscillatorParams(1.0), ThermalInitial{1.0});
  auto closed = moments(th);
  auto oracle = number_statistics(th, 64);
  CHECK(std::abs(closed.mean_n - oracle.mean_excess) < 1e-5);
  CHECK(std::abs(closed.var_n - oracle.variance) < 1e-5);
}

TEST_CASE("correlation: zero source vanishes") {
  TimeGrid g(-1.0, 4e-3, 501);
  auto zero = zero_signal(g);
  KeldyshScenario s(zero, zero, OscillatorParams(1.0));
  // bounded by the finite-difference rounding floor ~ eps / h^2
  CHECK(std::abs(correlation_fd(s, 0.0, 0.0)) < 1e-7);
}

TEST_CASE("correlation: equal-time value after the pulse is the mean occupation") {
  // coarser grid keeps the 32 functional evaluations cheap
  auto K = square_pulse(TimeGrid(-0.2, 2e-3, static_cast<std::size_t>((M_PI + 0.6) / 2e-3) + 1),
                        0.5, 0.0, M_PI);
  KeldyshScenario s(K, K, OscillatorParams(1.0));
  const double t1 = K.grid().t_end();
  const complexd c = correlation_fd(s, t1, t1);
  const double gamma_sq = fourier_at_frequency(K, 1.0).abs_squared();
  CHECK(std::abs(c - gamma_sq) / gamma_sq < 1e-4);
}

TEST_CASE("correlation: two-time value matches the convolution product") {
  auto K = square_pulse(TimeGrid(-0.2, 2.5e-3, static_cast<std::size_t>((M_PI + 1.2) / 2.5e-3) + 1),
                        0.5, 0.0, M_PI);
  KeldyshScenario s(K, K, OscillatorParams(1.0));
  const TimeGrid& g = K.grid();
  const double t = g.time(g.n - 10);
  const double tp = g.time(g.n - 120);
  const complexd fd = correlation_fd(s, t, tp, 1e-4);

  const auto w = quadrature_weights(g);
  complexd left{0.0, 0.0}, right{0.0, 0.0};
  for (std::size_t k = 0; k < g.n; ++k) {
    left += w[k] * std::conj(K[k]) * kernel_value(KernelKind::advanced, 1.0, g.time(k), t);
    right += w[k] * kernel_value(KernelKind::retarded, 1.0, tp, g.time(k)) * K[k];
  }
  const complexd closed = (kI * left) * (-kI * right);
  CHECK(std::abs(fd - closed) / std::abs(closed) < 1e-4);
}
