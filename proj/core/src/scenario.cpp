#include "qaction/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qaction/amplitudes.hpp"
#include "qaction/classical.hpp"
#include "qaction/field_algebra.hpp"
#include "qaction/fock.hpp"
#include "qaction/keldysh.hpp"
#include "qaction/path_lattice.hpp"
#include "qaction/source_nr.hpp"

namespace qaction {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("scenario: " + msg); }

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) {
    fail(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) {
    fail(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::size_t count(const json& j, const char* key) {
  const json& v = require(j, key);
  if (v.is_number_unsigned()) {
    return v.get<std::size_t>();
  }
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::size_t>(v.get<long long>());
  }
  fail(std::string("field '") + key + "' must be a non-negative integer");
}

complexd complex_field(const json& j, const char* key, complexd fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number()) return complexd{v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) {
    return complexd{v.at(0).get<double>(), v.at(1).get<double>()};
  }
  fail(std::string("field '") + key + "' must be a number or [re, im] pair");
}

void put(ScenarioResult& r, const std::string& key, double value) {
  r.metrics.emplace_back(key, value);
}

}  // namespace

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "oscillator") return ScenarioKind::oscillator;
  if (s == "keldysh") return ScenarioKind::keldysh;
  if (s == "oracle-compare") return ScenarioKind::oracle_compare;
  if (s == "path-integral") return ScenarioKind::path_integral;
  if (s == "scatter") return ScenarioKind::scatter;
  if (s == "bound-states") return ScenarioKind::bound_states;
  if (s == "algebra") return ScenarioKind::algebra;
  if (s == "classical") return ScenarioKind::classical;
  fail("unknown kind '" + s + "'");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::oscillator: return "oscillator";
    case ScenarioKind::keldysh: return "keldysh";
    case ScenarioKind::oracle_compare: return "oracle-compare";
    case ScenarioKind::path_integral: return "path-integral";
    case ScenarioKind::scatter: return "scatter";
    case ScenarioKind::bound_states: return "bound-states";
    case ScenarioKind::algebra: return "algebra";
    case ScenarioKind::classical: return "classical";
  }
  return "?";
}

ComplexSignal signal_from_json(const json& spec) {
  const json& g = require(spec, "grid");
  TimeGrid grid(number(g, "t_start"), number(g, "dt"), count(g, "n"));
  const std::string kind = require(spec, "kind").get<std::string>();
  if (kind == "square") {
    return square_pulse(grid, complex_field(spec, "amplitude", complexd{1.0, 0.0}),
                        number(spec, "t_on"), number(spec, "t_off"));
  }
  if (kind == "gaussian") {
    return gaussian_pulse(grid, complex_field(spec, "amplitude", complexd{1.0, 0.0}),
                          number(spec, "t0"), number(spec, "sigma"),
                          number_or(spec, "carrier", 0.0), number_or(spec, "phase", 0.0));
  }
  if (kind == "samples") {
    const json& arr = require(spec, "samples");
    if (!arr.is_array() || arr.size() != grid.n) {
      fail("samples array must match grid.n");
    }
    std::vector<complexd> samples(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
      samples[j] = complexd{arr.at(j).at(0).get<double>(), arr.at(j).at(1).get<double>()};
    }
    return ComplexSignal(grid, std::move(samples));
  }
  fail("signal kind must be 'square', 'gaussian' or 'samples'");
}

namespace {

InitialState initial_from_json(const json& spec) {
  if (!spec.contains("initial")) return VacuumInitial{};
  const json& init = spec.at("initial");
  const std::string type = require(init, "type").get<std::string>();
  if (type == "vacuum") return VacuumInitial{};
  if (type == "number") return NumberInitial{static_cast<unsigned>(count(init, "n"))};
  if (type == "thermal") return ThermalInitial{number(init, "beta")};
  if (type == "complex_tau") {
    return ComplexTauInitial{complexd{number(init, "tau_re"), number(init, "tau_im")}};
  }
  fail("initial.type must be vacuum, number, thermal or complex_tau");
}

PotentialSpec potential_from_json(const json& spec) {
  const std::string kind = require(spec, "kind").get<std::string>();
  if (kind == "delta") return PotentialSpec::delta(number(spec, "strength"));
  if (kind == "square_well") {
    return PotentialSpec::square_well(number(spec, "depth"), number(spec, "width"));
  }
  if (kind == "harmonic") return PotentialSpec::harmonic(number(spec, "omega"));
  fail("potential.kind must be delta, square_well or harmonic");
}

SpaceGrid space_grid_from_json(const json& g) {
  return SpaceGrid(number(g, "x_start"), number(g, "dx"), count(g, "n"));
}

// ---------------------------------------------------------------------------

void run_oscillator(const json& p, ScenarioResult& r) {
  const double omega = number(p, "omega");
  const ComplexSignal K = signal_from_json(require(p, "signal"));
  const auto n_max = static_cast<std::size_t>(number_or(p, "n_max", 64.0));
  const TransitionTable table = transition_probabilities(K, omega, n_max);

  put(r, "gamma_re", table.gamma.gamma.real());
  put(r, "gamma_im", table.gamma.gamma.imag());
  put(r, "gamma_sq", table.gamma.abs_squared());
  put(r, "persistence_re", table.persistence.real());
  put(r, "persistence_im", table.persistence.imag());
  put(r, "persistence_mod_sq", std::norm(table.persistence));
  put(r, "p_0", table.p_n[0]);
  if (n_max >= 1) put(r, "p_1", table.p_n[1]);
  if (n_max >= 2) put(r, "p_2", table.p_n[2]);
  put(r, "tail_mass", table.tail_mass);
  put(r, "signal_edge_magnitude", K.edge_magnitude());

  r.artifact = json{{"omega", omega},
                    {"gamma", {{"re", table.gamma.gamma.real()}, {"im", table.gamma.gamma.imag()}}},
                    {"persistence",
                     {{"re", table.persistence.real()}, {"im", table.persistence.imag()}}},
                    {"tail_mass", table.tail_mass},
                    {"n_max", n_max}};

  CsvTable csv;
  csv.name = "poisson";
  csv.header = {"n", "p_n", "cumulative"};
  for (std::size_t n = 0; n < table.p_n.size(); ++n) {
    csv.rows.push_back({static_cast<double>(n), table.p_n[n], table.cumulative[n]});
  }
  r.tables.push_back(std::move(csv));
}

void run_keldysh(const json& p, ScenarioResult& r) {
  const OscillatorParams osc(number(p, "omega"));
  const ComplexSignal K = signal_from_json(require(p, "signal"));
  const double T = number_or(p, "displacement_T", 0.0);
  const InitialState initial = initial_from_json(p);
  const KeldyshScenario s = displaced_scenario(K, osc, T, initial);

  complexd value;
  double route_mismatch = 0.0;
  if (std::holds_alternative<VacuumInitial>(initial)) {
    value = time_cycle_functional(s);
    route_mismatch = std::abs(value - displaced_generator(K, osc.omega, T));
  } else {
    value = thermal_generator(s);
  }
  const MomentReport mom = moments(s);

  put(r, "value_re", value.real());
  put(r, "value_im", value.imag());
  put(r, "value_mod", std::abs(value));
  put(r, "mean_n", mom.mean_n);
  put(r, "var_n", mom.var_n);
  put(r, "gamma_sq", mom.gamma_sq);
  put(r, "route_mismatch", route_mismatch);
  put(r, "signal_edge_magnitude", K.edge_magnitude());

  r.artifact = json{{"value_re", value.real()},
                    {"value_im", value.imag()},
                    {"mean_n", mom.mean_n},
                    {"var_n", mom.var_n}};
}

void run_oracle_compare(const json& p, ScenarioResult& r) {
  const double omega = number(p, "omega");
  const ComplexSignal K = signal_from_json(require(p, "signal"));
  const int n_trunc = static_cast<int>(number_or(p, "n_trunc", 64.0));
  const int substeps = static_cast<int>(number_or(p, "substeps", 1.0));
  const auto n_compare = static_cast<std::size_t>(number_or(p, "n_compare", 10.0));

  const complexd closed = vacuum_persistence(K, omega);
  const TransitionTable table = transition_probabilities(K, omega, n_compare);
  const Propagation prop = evolve(K, omega, n_trunc, substeps);
  const complexd oracle = prop.U(0, 0);

  double max_poisson_err = 0.0;
  CsvTable csv;
  csv.name = "poisson";
  csv.header = {"n", "closed_p_n", "oracle_p_n", "abs_err"};
  for (std::size_t n = 0; n <= n_compare; ++n) {
    const double oracle_p = std::norm(prop.U(static_cast<Eigen::Index>(n), 0));
    const double err = std::abs(oracle_p - table.p_n[n]);
    max_poisson_err = std::max(max_poisson_err, err);
    csv.rows.push_back({static_cast<double>(n), table.p_n[n], oracle_p, err});
  }
  r.tables.push_back(std::move(csv));

  put(r, "closed_re", closed.real());
  put(r, "closed_im", closed.imag());
  put(r, "oracle_re", oracle.real());
  put(r, "oracle_im", oracle.imag());
  put(r, "abs_err", std::abs(closed - oracle));
  put(r, "max_poisson_err", max_poisson_err);
  put(r, "leakage", prop.leakage);
  put(r, "unitarity_defect", prop.unitarity_defect);
  put(r, "gamma_sq", table.gamma.abs_squared());
  put(r, "mod_sq_law_err",
      std::abs(std::norm(closed) - std::exp(-table.gamma.abs_squared())));

  r.artifact = json{{"closed_form", {{"re", closed.real()}, {"im", closed.imag()}}},
                    {"oracle", {{"re", oracle.real()}, {"im", oracle.imag()}}},
                    {"abs_err", std::abs(closed - oracle)},
                    {"leakage", prop.leakage},
                    {"unitarity_defect", prop.unitarity_defect}};
}

// rebuild the scenario signal on a grid with the same span but new step
ComplexSignal resample_signal(const json& spec, double dt) {
  json copy = spec;
  const json& g = require(spec, "grid");
  const double t_start = number(g, "t_start");
  const double span = number(g, "dt") * (static_cast<double>(count(g, "n")) - 1.0);
  copy["grid"] = json{{"t_start", t_start},
                      {"dt", dt},
                      {"n", static_cast<std::size_t>(std::llround(span / dt)) + 1}};
  if (copy.at("kind").get<std::string>() == "samples") {
    fail("path-integral dt sweep needs a parametric signal (square or gaussian)");
  }
  return signal_from_json(copy);
}

void run_path_integral(const json& p, ScenarioResult& r) {
  const double omega = number(p, "omega");
  const json& signal_spec = require(p, "signal");
  const ComplexSignal K = signal_from_json(signal_spec);
  const complexd closed = vacuum_persistence(K, omega);

  put(r, "closed_re", closed.real());
  put(r, "closed_im", closed.imag());

  CsvTable lattice_csv;
  lattice_csv.name = "lattice";
  lattice_csv.header = {"dt", "value_re", "value_im", "abs_err_vs_closed_form"};
  std::vector<double> errs;
  std::vector<double> dts;
  for (const json& dtj : require(p, "lattice_dts")) {
    const double dt = dtj.get<double>();
    const ComplexSignal Kdt = resample_signal(signal_spec, dt);
    const complexd value = lattice_persistence(Kdt, omega);
    const double err = std::abs(value - closed);
    lattice_csv.rows.push_back({dt, value.real(), value.imag(), err});
    dts.push_back(dt);
    errs.push_back(err);
  }
  r.tables.push_back(lattice_csv);
  if (!errs.empty()) {
    put(r, "lattice_err_finest", errs.back());
    if (errs.size() >= 2) {
      const double order = std::log(errs.front() / errs.back()) / std::log(dts.front() / dts.back());
      put(r, "lattice_order", order);
    }
  }

  if (p.contains("spectral")) {
    const json& sj = p.at("spectral");
    FrequencyGrid fg(number(sj, "nu_min"), number(sj, "nu_max"), count(sj, "n_nu"),
                     number(sj, "epsilon"));
    const SpectralResult sr = spectral_persistence(K, omega, fg);
    CsvTable spectral_csv;
    spectral_csv.name = "spectral";
    spectral_csv.header = {"epsilon", "value_re", "value_im", "abs_err_vs_closed_form"};
    spectral_csv.rows.push_back({fg.epsilon, sr.value_eps.real(), sr.value_eps.imag(),
                                 std::abs(sr.value_eps - closed)});
    spectral_csv.rows.push_back({0.5 * fg.epsilon, sr.value_eps_half.real(),
                                 sr.value_eps_half.imag(),
                                 std::abs(sr.value_eps_half - closed)});
    spectral_csv.rows.push_back(
        {0.0, sr.value.real(), sr.value.imag(), std::abs(sr.value - closed)});
    r.tables.push_back(std::move(spectral_csv));
    put(r, "spectral_err", std::abs(sr.value - closed));
    put(r, "spectral_tail_bound", sr.tail_bound);
  }

  r.artifact = json{{"closed_form", {{"re", closed.real()}, {"im", closed.imag()}}},
                    {"lattice_rows", lattice_csv.rows.size()}};
}

void run_scatter(const json& p, ScenarioResult& r) {
  const PotentialSpec V = potential_from_json(require(p, "potential"));
  const double mass = number(p, "mass");
  const SpaceGrid grid = space_grid_from_json(require(p, "grid"));

  CsvTable csv;
  csv.name = "scatter";
  csv.header = {"E", "k", "re_r", "im_r", "re_t", "im_t", "unitarity_defect"};
  double max_defect = 0.0;
  json rows = json::array();
  bool first = true;
  for (const json& ej : require(p, "energies")) {
    const double E = ej.get<double>();
    const ScatterResult res = scattered_field(V, E, mass, grid);
    csv.rows.push_back({res.energy, res.k, res.r.real(), res.r.imag(), res.t.real(),
                        res.t.imag(), res.unitarity_defect});
    rows.push_back(json{{"E", res.energy},
                        {"k", res.k},
                        {"r", {{"re", res.r.real()}, {"im", res.r.imag()}}},
                        {"t", {{"re", res.t.real()}, {"im", res.t.imag()}}},
                        {"unitarity_defect", res.unitarity_defect}});
    max_defect = std::max(max_defect, res.unitarity_defect);
    if (first) {
      put(r, "t_mod_sq_first", std::norm(res.t));
      put(r, "r_mod_sq_first", std::norm(res.r));
      first = false;
    }
  }
  put(r, "max_unitarity_defect", max_defect);
  r.tables.push_back(std::move(csv));
  r.artifact = json{{"results", rows}};
}

void run_bound_states(const json& p, ScenarioResult& r) {
  const PotentialSpec V = potential_from_json(require(p, "potential"));
  const double mass = number(p, "mass");
  const SpaceGrid grid = space_grid_from_json(require(p, "grid"));
  const auto n_states = static_cast<std::size_t>(number_or(p, "n_states", 8.0));

  const BoundStateResult bs = bound_state_channels(V, mass, grid, n_states);
  json levels = json::array();
  std::size_t n_bound = 0;
  for (const BoundChannel& ch : bs.channels) {
    levels.push_back(json{{"n", ch.n}, {"E_n", ch.energy}});
    if (ch.bound) ++n_bound;
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(bs.channels.size(), 6); ++i) {
    put(r, "E_" + std::to_string(i), bs.channels[i].energy);
  }
  put(r, "n_bound", static_cast<double>(n_bound));
  put(r, "reduced_mass", bs.reduced_mass);
  put(r, "total_mass", bs.total_mass);
  r.artifact = json{{"levels", levels},
                    {"reduced_mass", bs.reduced_mass},
                    {"total_mass", bs.total_mass}};
}

void run_algebra(ScenarioResult& r) {
  json identities = json::array();
  bool all_pass = true;
  auto record = [&](const std::string& name, bool pass, const json& detail = json()) {
    identities.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
    put(r, name, pass ? 1.0 : 0.0);
    all_pass = all_pass && pass;
  };

  const AlgebraRep gammas = build_majorana_gammas();  // throws if Clifford fails
  record("clifford_relation", true);

  const SymmetryCensus census = symmetry_census(gammas.matrices);
  record("symmetry_census_3_2", census.n_symmetric == 3 && census.n_antisymmetric == 2,
         json{{"symmetric", census.n_symmetric}, {"antisymmetric", census.n_antisymmetric}});

  const BoseObstructionReport bose = check_bose_obstruction();
  record("bose_obstruction", bose.contradiction_found && bose.fermi_assignment_consistent &&
                                 bose.dimension_two_impossible,
         json{{"blocking_gamma", bose.blocking_gamma},
              {"surviving_dimension", bose.surviving_dimension}});

  for (auto spin : {KemmerDuffinSpin::zero, KemmerDuffinSpin::one}) {
    const std::string tag = spin == KemmerDuffinSpin::zero ? "spin0" : "spin1";
    const AlgebraRep rep = build_kemmer_duffin(spin);
    const auto defect = kemmer_duffin_defect(rep);
    json detail;
    if (defect) {
      detail = json{{"mu", (*defect)[0]}, {"sigma", (*defect)[1]}, {"nu", (*defect)[2]}};
    }
    record("kemmer_duffin_trilinear_" + tag, !defect.has_value(), detail);
    record("symmetrized_cubic_" + tag, symmetrized_cubic_vanishes(rep));
    const std::size_t expected_rank = spin == KemmerDuffinSpin::zero ? 2 : 6;
    record("rank_beta0_" + tag, rep.matrices[0].rank() == expected_rank,
           json{{"rank", rep.matrices[0].rank()}});
    bool singular = true;
    for (const auto& b : rep.matrices) singular = singular && b.rank() < rep.dimension;
    record("beta_singular_" + tag, singular);

    FourMomentum probe{{Rational(3), Rational(-2), Rational(5), Rational(7)}};
    const bool residual_zero = klein_gordon_residual(rep, probe).is_zero();
    const FourMomentum boosted = rational_boost_tx(probe);
    const bool invariant_ok = boosted.invariant() == probe.invariant();
    const bool boosted_zero = klein_gordon_residual(rep, boosted).is_zero();
    record("minimal_polynomial_" + tag, residual_zero && invariant_ok && boosted_zero);
  }

  record("dirac_kinematic_antihermitian", dirac_kinematic_antihermitian(gammas));

  put(r, "all_pass", all_pass ? 1.0 : 0.0);
  r.artifact = json{{"identities", identities}, {"all_pass", all_pass}};
}

void run_classical(const json& p, ScenarioResult& r) {
  const json& sysj = require(p, "system");
  const std::string type = require(sysj, "type").get<std::string>();
  double mass = number_or(sysj, "mass", 1.0);
  MechSystem sys = [&]() -> MechSystem {
    if (type == "kepler") {
      return kepler_orbit(mass, number(sysj, "k"), number(sysj, "a"),
                          number(sysj, "eccentricity"));
    }
    if (type == "circular") {
      return MechSystem({mass}, {Vec3{number(sysj, "radius"), 0.0, 0.0}},
                        {Vec3{0.0, mass * number(sysj, "speed"), 0.0}},
                        CentralPotential::coulomb(number(sysj, "k")));
    }
    fail("system.type must be 'kepler' or 'circular'");
  }();

  const double dt = number(p, "dt");
  const auto steps = count(p, "steps");
  const Trajectory traj = integrate(sys, dt, steps);
  const ConservationReport cons = conservation_report(traj);

  const double span = dt * static_cast<double>(steps);
  const double window = number_or(p, "window", span);
  const AverageReport vir = virial_average(traj, window);
  const AverageReport fs =
      fine_structure_average(traj, window, CentralPotential::coulomb(number(sysj, "k")), mass);

  put(r, "virial_lhs", vir.lhs);
  put(r, "virial_rhs", vir.rhs);
  put(r, "virial_residual", vir.residual);
  put(r, "fine_structure_lhs", fs.lhs);
  put(r, "fine_structure_rhs", fs.rhs);
  put(r, "fine_structure_residual", fs.residual);
  put(r, "energy_drift", cons.energy_drift);
  put(r, "angular_momentum_step_drift", cons.angular_momentum_step_drift);
  put(r, "momentum_step_drift", cons.momentum_step_drift);
  put(r, "boost_drift", cons.boost_drift);

  CsvTable csv;
  csv.name = "trajectory";
  csv.header = {"t", "x", "y", "z", "px", "py", "pz", "E", "Lx", "Ly", "Lz", "Nx", "Ny", "Nz"};
  const std::size_t stride = std::max<std::size_t>(1, traj.samples.size() / 4000);
  for (std::size_t j = 0; j < traj.samples.size(); j += stride) {
    const TrajectorySample& s = traj.samples[j];
    csv.rows.push_back({s.t, s.positions[0][0], s.positions[0][1], s.positions[0][2],
                        s.momenta[0][0], s.momenta[0][1], s.momenta[0][2], s.energy,
                        s.angular_momentum[0], s.angular_momentum[1], s.angular_momentum[2],
                        s.boost_charge[0], s.boost_charge[1], s.boost_charge[2]});
  }
  r.tables.push_back(std::move(csv));
  r.artifact = json{{"virial", {{"lhs", vir.lhs}, {"rhs", vir.rhs}, {"residual", vir.residual}}},
                    {"fine_structure",
                     {{"lhs", fs.lhs}, {"rhs", fs.rhs}, {"residual", fs.residual}}},
                    {"drifts",
                     {{"energy", cons.energy_drift},
                      {"momentum_step", cons.momentum_step_drift},
                      {"angular_momentum_step", cons.angular_momentum_step_drift},
                      {"boost", cons.boost_drift}}}};
}

}  // namespace

std::vector<Scenario> parse_scenarios(const json& doc) {
  std::vector<json> items;
  if (doc.is_array()) {
    items.assign(doc.begin(), doc.end());
  } else if (doc.is_object()) {
    items.push_back(doc);
  } else {
    fail("document must be an object or an array of objects");
  }
  std::vector<Scenario> scenarios;
  scenarios.reserve(items.size());
  for (const json& item : items) {
    Scenario s;
    s.kind = scenario_kind_from_string(require(item, "kind").get<std::string>());
    s.name = item.contains("name") ? item.at("name").get<std::string>()
                                   : to_string(s.kind);
    s.params = item;
    if (item.contains("output")) {
      s.output_format = item.at("output").value("format", "json");
      if (s.output_format != "json" && s.output_format != "csv" && s.output_format != "both") {
        fail("output.format must be json, csv or both");
      }
    }
    if (item.contains("checks")) {
      for (const json& cj : item.at("checks")) {
        CheckSpec spec;
        spec.name = require(cj, "name").get<std::string>();
        spec.metric = require(cj, "metric").get<std::string>();
        spec.expect = number(cj, "expect");
        spec.tol = number(cj, "tol");
        s.checks.push_back(std::move(spec));
      }
    }
    scenarios.push_back(std::move(s));
  }
  return scenarios;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    fail("cannot open " + file.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    fail("parse error in " + file.string() + ": " + e.what());
  }
  return parse_scenarios(doc);
}

double ScenarioResult::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw std::invalid_argument("scenario: no metric named '" + key + "'");
}

ScenarioResult run_scenario(const Scenario& scenario, double tolerance_scale) {
  ScenarioResult r;
  r.name = scenario.name;
  r.kind = scenario.kind;
  switch (scenario.kind) {
    case ScenarioKind::oscillator: run_oscillator(scenario.params, r); break;
    case ScenarioKind::keldysh: run_keldysh(scenario.params, r); break;
    case ScenarioKind::oracle_compare: run_oracle_compare(scenario.params, r); break;
    case ScenarioKind::path_integral: run_path_integral(scenario.params, r); break;
    case ScenarioKind::scatter: run_scatter(scenario.params, r); break;
    case ScenarioKind::bound_states: run_bound_states(scenario.params, r); break;
    case ScenarioKind::algebra: run_algebra(r); break;
    case ScenarioKind::classical: run_classical(scenario.params, r); break;
  }
  for (const CheckSpec& spec : scenario.checks) {
    CheckOutcome outcome;
    outcome.spec = spec;
    outcome.observed = r.metric(spec.metric);
    outcome.passed = std::abs(outcome.observed - spec.expect) <= spec.tol * tolerance_scale;
    r.all_checks_passed = r.all_checks_passed && outcome.passed;
    r.checks.push_back(outcome);
  }
  json checks = json::array();
  for (const CheckOutcome& c : r.checks) {
    checks.push_back(json{{"name", c.spec.name},
                          {"metric", c.spec.metric},
                          {"expect", c.spec.expect},
                          {"tol", c.spec.tol},
                          {"observed", c.observed},
                          {"pass", c.passed}});
  }
  if (!checks.empty()) {
    r.artifact["checks"] = checks;
  }
  json metrics;
  for (const auto& [k, v] : r.metrics) {
    metrics[k] = v;
  }
  r.artifact["metrics"] = metrics;
  r.artifact["name"] = r.name;
  r.artifact["kind"] = to_string(r.kind);
  return r;
}

std::vector<std::filesystem::path> write_artifacts(const ScenarioResult& result,
                                                   const std::filesystem::path& out_dir,
                                                   const std::string& format) {
  std::vector<std::filesystem::path> written;
  std::filesystem::create_directories(out_dir);
  if (format == "json" || format == "both") {
    const auto path = out_dir / (result.name + ".json");
    write_file_atomic(path, result.artifact.dump(2) + "\n");
    written.push_back(path);
  }
  if (format == "csv" || format == "both") {
    for (const CsvTable& table : result.tables) {
      const auto path = out_dir / (result.name + "_" + table.name + ".csv");
      write_file_atomic(path, table.to_string());
      written.push_back(path);
    }
  }
  return written;
}

std::string summarize(const ScenarioResult& result) {
  std::ostringstream os;
  os << "[" << to_string(result.kind) << "] " << result.name << ": ";
  const std::size_t show = std::min<std::size_t>(result.metrics.size(), 4);
  for (std::size_t i = 0; i < show; ++i) {
    os << result.metrics[i].first << "=" << format_double(result.metrics[i].second);
    if (i + 1 < show) os << ", ";
  }
  if (!result.checks.empty()) {
    std::size_t passed = 0;
    for (const auto& c : result.checks) passed += c.passed ? 1 : 0;
    os << " | checks " << passed << "/" << result.checks.size()
       << (result.all_checks_passed ? " PASS" : " FAIL");
  }
  return os.str();
}

std::string comparison_table(const ScenarioResult& result) {
  if (result.kind != ScenarioKind::oracle_compare && result.kind != ScenarioKind::path_integral) {
    throw std::invalid_argument("comparison_table: scenario kind has no comparison view");
  }
  std::ostringstream os;
  if (result.kind == ScenarioKind::oracle_compare) {
    const double cr = result.metric("closed_re"), ci = result.metric("closed_im");
    const double orr = result.metric("oracle_re"), oi = result.metric("oracle_im");
    os << "quantity            closed_form          oracle               abs_err   rel_err\n";
    const double abs_err = result.metric("abs_err");
    const double rel = abs_err / std::hypot(cr, ci);
    os << "persistence         " << format_double(cr) << "+" << format_double(ci) << "i  "
       << format_double(orr) << "+" << format_double(oi) << "i  " << format_double(abs_err)
       << "  " << format_double(rel) << "\n";
    os << "max |p_n| error     " << format_double(result.metric("max_poisson_err")) << "\n";
    os << "leakage             " << format_double(result.metric("leakage")) << "\n";
    os << "unitarity defect    " << format_double(result.metric("unitarity_defect")) << "\n";
  } else {
    os << "route      param      value_re             value_im             abs_err\n";
    for (const CsvTable& t : result.tables) {
      for (const auto& row : t.rows) {
        os << t.name << "  " << format_double(row[0]) << "  " << format_double(row[1]) << "  "
           << format_double(row[2]) << "  " << format_double(row[3]) << "\n";
      }
    }
    if (!result.tables.empty() && result.tables.front().rows.size() >= 2) {
      bool has_order = false;
      for (const auto& [k, v] : result.metrics) {
        if (k == "lattice_order") {
          os << "lattice convergence order " << format_double(v) << "\n";
          has_order = true;
        }
      }
      (void)has_order;
    }
  }
  return os.str();
}

}  // namespace qaction
