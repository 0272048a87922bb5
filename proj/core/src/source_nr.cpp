#include "qaction/source_nr.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace qaction {

namespace {
const complexd kI{0.0, 1.0};

std::vector<double> space_weights(const SpaceGrid& g) {
  std::vector<double> w(g.n, g.dx);
  w.front() = 0.5 * g.dx;
  w.back() = 0.5 * g.dx;
  return w;
}
}  // namespace

SpaceGrid::SpaceGrid(double x_start_, double dx_, std::size_t n_)
    : x_start(x_start_), dx(dx_), n(n_) {
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x_start)) {
    throw std::invalid_argument("SpaceGrid: dx must be finite and > 0");
  }
  if (n < 2) {
    throw std::invalid_argument("SpaceGrid: need at least two samples");
  }
}

SpaceTimeSource::SpaceTimeSource(SpaceGrid space, TimeGrid time, std::vector<complexd> samples,
                                 double mass)
    : space_(space), time_(time), samples_(std::move(samples)), mass_(mass) {
  if (samples_.size() != space_.n * time_.n) {
    throw std::invalid_argument("SpaceTimeSource: sample count does not match the grids");
  }
  if (!(mass_ > 0.0)) {
    throw std::invalid_argument("SpaceTimeSource: mass must be > 0");
  }
  for (const complexd& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw std::invalid_argument("SpaceTimeSource: non-finite sample");
    }
  }
}

SpaceTimeSource gaussian_source(const SpaceGrid& sg, const TimeGrid& tg, double mass,
                                complexd amplitude, double x0, double sigma_x, double t0,
                                double sigma_t, double p0, double e0) {
  if (!(sigma_x > 0.0) || !(sigma_t > 0.0)) {
    throw std::invalid_argument("gaussian_source: widths must be > 0");
  }
  std::vector<complexd> samples(sg.n * tg.n);
  for (std::size_t ix = 0; ix < sg.n; ++ix) {
    const double u = sg.position(ix) - x0;
    const double envx = std::exp(-0.5 * u * u / (sigma_x * sigma_x));
    for (std::size_t it = 0; it < tg.n; ++it) {
      const double v = tg.time(it) - t0;
      const double envt = std::exp(-0.5 * v * v / (sigma_t * sigma_t));
      samples[ix * tg.n + it] = amplitude * envx * envt * std::polar(1.0, p0 * u - e0 * v);
    }
  }
  return SpaceTimeSource(sg, tg, std::move(samples), mass);
}

complexd source_transform(const SpaceTimeSource& K, double p, double E) {
  const auto wx = space_weights(K.space());
  const auto wt = quadrature_weights(K.time());
  complexd acc{0.0, 0.0};
  for (std::size_t ix = 0; ix < K.space().n; ++ix) {
    const complexd px = std::polar(1.0, -p * K.space().position(ix));
    complexd inner{0.0, 0.0};
    for (std::size_t it = 0; it < K.time().n; ++it) {
      inner += wt[it] * std::polar(1.0, E * K.time().time(it)) * K.at(ix, it);
    }
    acc += wx[ix] * px * inner;
  }
  return acc;
}

complexd source_transform(const SpaceTimeSource& K, double p) {
  return source_transform(K, p, 0.5 * p * p / K.mass());
}

std::vector<MomentumCell> momentum_cells(const SpaceTimeSource& K, double p_min, double p_max,
                                         std::size_t n_p) {
  if (!(p_min < p_max) || n_p < 2) {
    throw std::invalid_argument("momentum_cells: need p_min < p_max and n_p >= 2");
  }
  const double dp = (p_max - p_min) / static_cast<double>(n_p - 1);
  std::vector<MomentumCell> cells(n_p);
  for (std::size_t i = 0; i < n_p; ++i) {
    const double p = p_min + static_cast<double>(i) * dp;
    const double w = ((i == 0 || i + 1 == n_p) ? 0.5 * dp : dp) / (2.0 * M_PI);
    cells[i] = MomentumCell{p, w, std::sqrt(w) * source_transform(K, p)};
  }
  return cells;
}

complexd free_propagator(double x, double t, double mass) {
  if (!(mass > 0.0)) {
    throw std::invalid_argument("free_propagator: mass must be > 0");
  }
  if (t < 0.0) {
    return complexd{0.0, 0.0};
  }
  if (t == 0.0) {
    throw std::domain_error("free_propagator: t = 0 is the delta limit; handle separately");
  }
  // -i sqrt(m/(2 pi i t)) e^{i m x^2/(2t)}, principal branch fixed by the
  // +i eps prescription: 1/sqrt(i) = e^{-i pi/4}.
  const double amp = std::sqrt(mass / (2.0 * M_PI * t));
  return -kI * amp * std::polar(1.0, -0.25 * M_PI + 0.5 * mass * x * x / t);
}

PersistenceResult vacuum_persistence_st(const SpaceTimeSource& K, std::size_t max_cells) {
  if (K.cell_count() > max_cells) {
    throw std::invalid_argument("vacuum_persistence_st: grid exceeds the configured cell bound");
  }
  const auto wx = space_weights(K.space());
  const auto wt = quadrature_weights(K.time());
  const std::size_t nx = K.space().n;
  const std::size_t nt = K.time().n;
  const double m = K.mass();

  complexd B{0.0, 0.0};
  // strictly retarded half t > t'; the |t - t'| < dt band is dropped -- its
  // coherent x-width shrinks with dt, so the omission is O(dt)
  for (std::size_t it = 1; it < nt; ++it) {
    for (std::size_t jt = 0; jt < it; ++jt) {
      const double tau = K.time().time(it) - K.time().time(jt);
      const double wtt = wt[it] * wt[jt];
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const complexd left = std::conj(K.at(ix, it)) * (wx[ix] * wtt);
        if (left == complexd{0.0, 0.0}) continue;
        complexd inner{0.0, 0.0};
        for (std::size_t jx = 0; jx < nx; ++jx) {
          inner += wx[jx] *
                   free_propagator(K.space().position(ix) - K.space().position(jx), tau, m) *
                   K.at(jx, jt);
        }
        B += left * inner;
      }
    }
  }
  PersistenceResult result;
  result.value = std::exp(-kI * B);
  result.mod_sq = std::norm(result.value);

  double l2 = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t it = 0; it < nt; ++it) {
      l2 += wx[ix] * wt[it] * std::norm(K.at(ix, it));
    }
  }
  const double dt = K.time().dt;
  const double dx = K.space().dx;
  result.quadrature_tolerance = l2 * (6.0 * dt * (1.0 + m) + 4.0 * dx * dx * (1.0 + m));
  return result;
}

complexd multi_particle_amplitude(const OccupationPattern& pattern,
                                  const std::vector<MomentumCell>& cells, complexd persistence) {
  complexd amp = persistence;
  for (const auto& [index, n_p] : pattern) {
    if (index >= cells.size()) {
      throw std::invalid_argument("multi_particle_amplitude: cell index out of range");
    }
    for (unsigned q = 1; q <= n_p; ++q) {
      amp *= -kI * cells[index].K_p / std::sqrt(static_cast<double>(q));
    }
  }
  return amp;
}

complexd stimulated_emission_amplitude(const OccupationPattern& pattern, std::size_t cell_index,
                                       const std::vector<MomentumCell>& cells) {
  if (cell_index >= cells.size()) {
    throw std::invalid_argument("stimulated_emission_amplitude: cell index out of range");
  }
  unsigned n_p = 0;
  if (auto it = pattern.find(cell_index); it != pattern.end()) {
    n_p = it->second;
  }
  return -kI * cells[cell_index].K_p * std::sqrt(static_cast<double>(n_p + 1));
}

double pattern_probability_mass(const std::vector<MomentumCell>& cells, complexd persistence,
                                unsigned n_cap) {
  double mass = std::norm(persistence);
  for (const MomentumCell& cell : cells) {
    const double lam = std::norm(cell.K_p);
    double cell_sum = 0.0;
    double term = 1.0;
    for (unsigned n = 0; n <= n_cap; ++n) {
      cell_sum += term;
      term *= lam / static_cast<double>(n + 1);
    }
    mass *= cell_sum;
  }
  return mass;
}

// Potentials ------------------------------------------------------------------

PotentialSpec PotentialSpec::delta(double lambda) {
  PotentialSpec spec;
  spec.kind = Kind::delta;
  spec.strength = lambda;
  return spec;
}

PotentialSpec PotentialSpec::square_well(double depth, double width) {
  if (!(width > 0.0)) {
    throw std::invalid_argument("square_well: width must be > 0");
  }
  PotentialSpec spec;
  spec.kind = Kind::square_well;
  spec.strength = depth;
  spec.width = width;
  return spec;
}

PotentialSpec PotentialSpec::harmonic(double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("harmonic: omega must be > 0");
  }
  PotentialSpec spec;
  spec.kind = Kind::harmonic;
  spec.omega = omega;
  return spec;
}

PotentialSpec PotentialSpec::custom_potential(std::function<double(double)> v) {
  PotentialSpec spec;
  spec.kind = Kind::custom;
  spec.custom = std::move(v);
  return spec;
}

std::vector<double> PotentialSpec::sample(const SpaceGrid& grid, double reduced_mass) const {
  std::vector<double> v(grid.n, 0.0);
  switch (kind) {
    case Kind::delta: {
      const double x = -grid.x_start / grid.dx;
      const auto i = static_cast<std::size_t>(std::llround(x));
      if (x < -0.5 || i >= grid.n) {
        throw std::invalid_argument("delta potential: origin not inside the grid");
      }
      v[i] = strength / grid.dx;
      break;
    }
    case Kind::square_well: {
      const double a = -0.5 * width, b = 0.5 * width;
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double lo = grid.position(i) - 0.5 * grid.dx;
        const double hi = grid.position(i) + 0.5 * grid.dx;
        if (lo >= a && hi <= b) {
          v[i] = strength;
        } else {
          const double overlap = std::max(0.0, std::min(hi, b) - std::max(lo, a));
          v[i] = strength * (overlap / grid.dx);
        }
      }
      break;
    }
    case Kind::harmonic: {
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.position(i);
        v[i] = 0.5 * reduced_mass * omega * omega * x * x;
      }
      break;
    }
    case Kind::custom: {
      if (!custom) {
        throw std::invalid_argument("custom potential: no function supplied");
      }
      for (std::size_t i = 0; i < grid.n; ++i) {
        v[i] = custom(grid.position(i));
      }
      break;
    }
  }
  return v;
}

// Scattering ------------------------------------------------------------------

namespace {

void require_resolved(double k, double dx) {
  if (k * dx > 2.0 * M_PI / 16.0) {
    throw std::invalid_argument("scattering grid too coarse: need >= 16 points per wavelength");
  }
}

std::vector<std::size_t> potential_support(const std::vector<double>& v) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) idx.push_back(i);
  }
  return idx;
}

Eigen::MatrixXcd outgoing_kernel(const std::vector<std::size_t>& idx, const SpaceGrid& grid,
                                 double mass, double k) {
  const std::size_t ns = idx.size();
  Eigen::MatrixXcd G(ns, ns);
  const complexd pref = mass / (kI * k);
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ns; ++b) {
      const double d = std::abs(grid.position(idx[a]) - grid.position(idx[b]));
      G(a, b) = pref * std::polar(1.0, k * d);
    }
  }
  return G;
}

struct SupportProblem {
  std::vector<std::size_t> idx;
  Eigen::VectorXd v;
  Eigen::MatrixXcd M;  // I - dx G0 diag(V)
};

SupportProblem build_support_problem(const PotentialSpec& V, double E, double mass,
                                     const SpaceGrid& grid) {
  if (!(E > 0.0)) {
    throw std::invalid_argument("scattering: energy must be > 0");
  }
  if (grid.n > 4096) {
    throw std::invalid_argument("scattering: grid exceeds the dense-solve bound");
  }
  const double k = std::sqrt(2.0 * mass * E);
  require_resolved(k, grid.dx);
  SupportProblem sp;
  const std::vector<double> vfull = V.sample(grid, mass);
  sp.idx = potential_support(vfull);
  const std::size_t ns = sp.idx.size();
  if (ns == 0) {
    return sp;
  }
  sp.v.resize(ns);
  for (std::size_t a = 0; a < ns; ++a) sp.v[a] = vfull[sp.idx[a]];
  const Eigen::MatrixXcd G = outgoing_kernel(sp.idx, grid, mass, k);
  sp.M = Eigen::MatrixXcd::Identity(ns, ns);
  for (std::size_t b = 0; b < ns; ++b) {
    sp.M.col(b) -= grid.dx * sp.v[b] * G.col(b);
  }
  return sp;
}

}  // namespace

Eigen::MatrixXcd t_matrix(const PotentialSpec& V, double E, double mass, const SpaceGrid& grid) {
  SupportProblem sp = build_support_problem(V, E, mass, grid);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(grid.n, grid.n);
  const std::size_t ns = sp.idx.size();
  if (ns == 0) {
    return T;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sp.M);
  const Eigen::MatrixXcd Minv = lu.solve(Eigen::MatrixXcd::Identity(ns, ns));
  const double resid = (sp.M * Minv - Eigen::MatrixXcd::Identity(ns, ns)).norm() /
                       std::sqrt(static_cast<double>(ns));
  if (!std::isfinite(resid) || resid > 1e-8) {
    throw std::runtime_error("t_matrix: ill-conditioned system (grid-scale resonance)");
  }
  // T(x, x') = V(x) [M^{-1}]_{x x'} / dx on the support
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ns; ++b) {
      T(sp.idx[a], sp.idx[b]) = sp.v[a] * Minv(a, b) / grid.dx;
    }
  }
  return T;
}

std::vector<Eigen::MatrixXcd> born_series(const PotentialSpec& V, double E, double mass,
                                          const SpaceGrid& grid, int orders) {
  if (orders < 1) {
    throw std::invalid_argument("born_series: need at least one order");
  }
  SupportProblem sp = build_support_problem(V, E, mass, grid);
  const std::size_t ns = sp.idx.size();
  const double k = std::sqrt(2.0 * mass * E);
  const Eigen::MatrixXcd G = ns ? outgoing_kernel(sp.idx, grid, mass, k) : Eigen::MatrixXcd();

  auto expand = [&](const Eigen::MatrixXcd& S) {
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(grid.n, grid.n);
    for (std::size_t a = 0; a < ns; ++a) {
      for (std::size_t b = 0; b < ns; ++b) {
        full(sp.idx[a], sp.idx[b]) = S(a, b);
      }
    }
    return full;
  };

  std::vector<Eigen::MatrixXcd> partial;
  partial.reserve(static_cast<std::size_t>(orders));
  if (ns == 0) {
    partial.assign(static_cast<std::size_t>(orders),
                   Eigen::MatrixXcd::Zero(grid.n, grid.n));
    return partial;
  }
  Eigen::MatrixXcd Vkernel = Eigen::MatrixXcd::Zero(ns, ns);
  for (std::size_t a = 0; a < ns; ++a) Vkernel(a, a) = sp.v[a] / grid.dx;
  Eigen::MatrixXcd term = Vkernel;
  Eigen::MatrixXcd sum = term;
  partial.push_back(expand(sum));
  for (int o = 1; o < orders; ++o) {
    // T_{o+1} = V + V G0 T_o; compositions carry one dx measure each
    Eigen::MatrixXcd vg(ns, ns);
    for (std::size_t a = 0; a < ns; ++a) {
      vg.row(a) = sp.v[a] * G.row(a);
    }
    term = grid.dx * grid.dx * (vg * term);
    term /= grid.dx;  // kernel normalization: one 1/dx per composition pair
    sum += term;
    partial.push_back(expand(sum));
  }
  return partial;
}

ScatterResult scattered_field(const PotentialSpec& V, double E, double mass,
                              const SpaceGrid& grid) {
  SupportProblem sp = build_support_problem(V, E, mass, grid);
  const double k = std::sqrt(2.0 * mass * E);

  ScatterResult res;
  res.energy = E;
  res.k = k;
  res.psi.resize(static_cast<Eigen::Index>(grid.n));
  for (std::size_t i = 0; i < grid.n; ++i) {
    res.psi[static_cast<Eigen::Index>(i)] = std::polar(1.0, k * grid.position(i));
  }
  const std::size_t ns = sp.idx.size();
  if (ns == 0) {
    res.t = complexd{1.0, 0.0};
    res.r = complexd{0.0, 0.0};
    res.unitarity_defect = 0.0;
    return res;
  }
  // potential must stay clear of the outer 10% so the tails are asymptotic
  const double margin = 0.1 * (grid.x_end() - grid.x_start);
  if (grid.position(sp.idx.front()) < grid.x_start + margin ||
      grid.position(sp.idx.back()) > grid.x_end() - margin) {
    throw std::invalid_argument("scattered_field: grid too small for asymptotics");
  }
  Eigen::VectorXcd psi0(ns);
  for (std::size_t a = 0; a < ns; ++a) {
    psi0[static_cast<Eigen::Index>(a)] = std::polar(1.0, k * grid.position(sp.idx[a]));
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sp.M);
  Eigen::VectorXcd psi_s = lu.solve(psi0);
  const double resid = (sp.M * psi_s - psi0).norm() / psi0.norm();
  if (!std::isfinite(resid) || resid > 1e-8) {
    throw std::runtime_error("scattered_field: ill-conditioned system, residual " +
                             std::to_string(resid));
  }
  const complexd pref = mass / (kI * k);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.position(i);
    complexd acc{0.0, 0.0};
    for (std::size_t a = 0; a < ns; ++a) {
      const double d = std::abs(x - grid.position(sp.idx[a]));
      acc += grid.dx * pref * std::polar(1.0, k * d) * sp.v[a] *
             psi_s[static_cast<Eigen::Index>(a)];
    }
    res.psi[static_cast<Eigen::Index>(i)] += acc;
  }
  // tails: psi = e^{ikx} + r e^{-ikx} on the left, t e^{ikx} on the right;
  // outside the support the kernel integral is exactly of that form
  const double xl = grid.x_start;
  const double xr = grid.x_end();
  res.r = (res.psi[0] - std::polar(1.0, k * xl)) * std::polar(1.0, k * xl);
  res.t = res.psi[static_cast<Eigen::Index>(grid.n - 1)] * std::polar(1.0, -k * xr);
  res.unitarity_defect = std::abs(std::norm(res.r) + std::norm(res.t) - 1.0);
  return res;
}

// Bound states ----------------------------------------------------------------

BoundStateResult bound_state_channels(const PotentialSpec& V12, double mass,
                                      const SpaceGrid& grid, std::size_t n_states) {
  BoundStateResult out;
  out.total_mass = 2.0 * mass;
  out.reduced_mass = 0.5 * mass;
  const double mu = out.reduced_mass;
  const std::vector<double> v = V12.sample(grid, mu);

  const auto n = static_cast<lapack_int>(grid.n);
  std::vector<double> diag(grid.n), off(grid.n - 1);
  const double kin = 1.0 / (2.0 * mu * grid.dx * grid.dx);
  for (std::size_t i = 0; i < grid.n; ++i) {
    diag[i] = 2.0 * kin + v[i];
  }
  std::fill(off.begin(), off.end(), -kin);

  const bool all = (n_states == 0 || n_states >= grid.n);
  const auto iu = all ? n : static_cast<lapack_int>(n_states);
  std::vector<double> w(grid.n);
  std::vector<double> z(grid.n * static_cast<std::size_t>(iu));
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(iu));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', all ? 'A' : 'I', n, diag.data(), off.data(), 0.0,
                     0.0, 1, iu, 0.0, &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0) {
    throw std::runtime_error("bound_state_channels: tridiagonal eigensolve failed");
  }
  const double norm = 1.0 / std::sqrt(grid.dx);  // unit l2 -> unit integral
  out.channels.resize(static_cast<std::size_t>(found));
  for (lapack_int c = 0; c < found; ++c) {
    BoundChannel& ch = out.channels[static_cast<std::size_t>(c)];
    ch.n = static_cast<int>(c);
    ch.energy = w[static_cast<std::size_t>(c)];
    ch.bound = ch.energy < 0.0;
    ch.phi.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      ch.phi[i] = z[static_cast<std::size_t>(c) * grid.n + i] * norm;
    }
  }
  return out;
}

complexd channel_propagator(const BoundStateResult& bs, std::size_t channel, double X, double t) {
  if (channel >= bs.channels.size()) {
    throw std::invalid_argument("channel_propagator: channel out of range");
  }
  if (t <= 0.0) {
    return complexd{0.0, 0.0};
  }
  return free_propagator(X, t, bs.total_mass) *
         std::polar(1.0, -bs.channels[channel].energy * t);
}

double energy_kernel_imag_part(double E, double mass, double x) {
  const complexd k = std::sqrt(complexd{2.0 * mass * E, 1e-300});
  const complexd g = mass / (kI * k) * std::exp(kI * k * std::abs(x));
  return std::abs(g.imag());
}

}  // namespace qaction
