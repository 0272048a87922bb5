#include <doctest.h>

#include <cmath>
#include <random>

#include "qaction/signal.hpp"

using namespace qaction;

namespace {

TimeGrid pulse_grid(double dt = 1e-4) {
  const auto n = static_cast<std::size_t>(std::llround((M_PI + 0.2) / dt)) + 1;
  return TimeGrid(-0.1, dt, n);
}

ComplexSignal standard_pulse(double dt = 1e-4) {
  return square_pulse(pulse_grid(dt), 0.5, 0.0, M_PI);
}

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(TimeGrid(0.0, 0.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(0.0, -1e-3, 8), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(0.0, 1e-3, 1), std::invalid_argument);
  TimeGrid g(1.0, 0.5, 5);
  CHECK(g.t_end() == doctest::Approx(3.0));
  CHECK(g.index_of(2.0) == 2);
  CHECK_THROWS_AS(g.index_of(2.3), std::invalid_argument);
}

TEST_CASE("signal construction validates") {
  TimeGrid g(0.0, 0.1, 4);
  CHECK_THROWS_AS(ComplexSignal(g, std::vector<complexd>(3)), std::invalid_argument);
  std::vector<complexd> bad(4, 0.0);
  bad[2] = complexd{std::nan(""), 0.0};
  CHECK_THROWS_AS(ComplexSignal(g, bad), std::invalid_argument);
}

TEST_CASE("fourier: zero source") {
  auto gamma = fourier_at_frequency(zero_signal(pulse_grid(1e-3)), 1.0);
  CHECK(std::abs(gamma.gamma) == 0.0);
}

// Square pulse kappa = 0.5 on [0, pi] at omega = 1: closed-form
// antiderivative kappa (e^{i omega T} - 1)/(i omega) = i, |gamma|^2 = 1.
TEST_CASE("fourier: standard pulse gives gamma = i") {
  auto gamma = fourier_at_frequency(standard_pulse(), 1.0).gamma;
  CHECK(std::abs(gamma - complexd{0.0, 1.0}) < 1e-7);
}

TEST_CASE("fourier: resonant phase cancellation is real") {
  TimeGrid g(-6.0, 1e-3, 12001);
  // K = e^{-i omega t} g(t) with g real and positive
  auto K = gaussian_pulse(g, 1.0, 0.0, 0.8, -1.0);
  auto gamma = fourier_at_frequency(K, 1.0).gamma;
  CHECK(std::abs(gamma.imag()) < 1e-12);
  CHECK(gamma.real() == doctest::Approx(0.8 * std::sqrt(2.0 * M_PI)).epsilon(1e-8));
}

TEST_CASE("fourier: simpson flag agrees with trapezoid") {
  TimeGrid g(-5.0, 1e-2, 1001);
  auto K = gaussian_pulse(g, complexd{0.3, 0.4}, 0.2, 0.6, 2.0, 0.7);
  auto a = fourier_at_frequency(K, 1.0).gamma;
  auto b = fourier_at_frequency(K, 1.0, QuadratureRule::simpson).gamma;
  CHECK(std::abs(a - b) < 1e-8);
  TimeGrid even(-5.0, 1e-2, 1000);
  CHECK_THROWS_AS(fourier_at_frequency(gaussian_pulse(even, 1.0, 0.0, 0.6), 1.0,
                                       QuadratureRule::simpson),
                  std::invalid_argument);
}

TEST_CASE("quadrature linearity is exact") {
  TimeGrid g(-4.0, 2e-3, 4001);
  auto K1 = gaussian_pulse(g, complexd{1.0, -0.5}, -0.5, 0.5, 1.3);
  auto K2 = gaussian_pulse(g, complexd{-0.2, 0.9}, 0.7, 0.9, -0.4);
  const complexd a{0.7, 0.1}, b{-1.1, 0.4};
  auto lhs = fourier_at_frequency(add_scaled(K1, a, K2, b), 1.0).gamma;
  auto rhs = a * fourier_at_frequency(K1, 1.0).gamma + b * fourier_at_frequency(K2, 1.0).gamma;
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("grid refinement: gamma converges at second order") {
  auto gamma_at = [](double dt) {
    TimeGrid g(-6.0, dt, static_cast<std::size_t>(std::llround(12.0 / dt)) + 1);
    return fourier_at_frequency(gaussian_pulse(g, 1.0, 0.3, 0.9, 2.0), 1.0).gamma;
  };
  const complexd g1 = gamma_at(4e-2);
  const complexd g2 = gamma_at(2e-2);
  const complexd g3 = gamma_at(1e-2);
  const double ratio = std::abs(g1 - g2) / std::abs(g2 - g3);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("shift: identity and zero signal") {
  auto K = standard_pulse(1e-3);
  auto same = shift_signal(K, 0.0);
  for (std::size_t j = 0; j < K.size(); ++j) {
    CHECK(same[j] == K[j]);
  }
  auto zs = shift_signal(zero_signal(K.grid()), 17e-3);
  for (std::size_t j = 0; j < zs.size(); ++j) {
    CHECK(zs[j] == complexd{0.0, 0.0});
  }
}

TEST_CASE("shift: off-grid displacement rejected") {
  auto K = standard_pulse(1e-3);
  CHECK_THROWS_AS(shift_signal(K, 0.5e-3), std::invalid_argument);
}

// gamma(K(.+T)) = e^{-i omega T} gamma(K) when no support is clipped.
TEST_CASE("shift: phase law") {
  const double dt = 1e-3;
  const auto n = static_cast<std::size_t>(std::llround(8.0 / dt)) + 1;
  TimeGrid g(-4.0, dt, n);
  auto K = square_pulse(g, 0.5, 0.0, M_PI);
  const double T = 1.0;  // 1000 grid steps
  auto shifted = shift_signal(K, T);
  const complexd lhs = fourier_at_frequency(shifted, 1.0).gamma;
  const complexd rhs = std::polar(1.0, -T) * fourier_at_frequency(K, 1.0).gamma;
  CHECK(std::abs(lhs - rhs) < 1e-12);
  CHECK(std::abs(std::abs(lhs) - std::abs(rhs)) < 1e-13);
}

TEST_CASE("square pulse quadrature mass is exact") {
  auto K = standard_pulse(1e-3);
  auto w = quadrature_weights(K.grid());
  double mass = 0.0;
  for (std::size_t j = 0; j < K.size(); ++j) mass += w[j] * K[j].real();
  CHECK(mass == doctest::Approx(0.5 * M_PI).epsilon(1e-12));
}
