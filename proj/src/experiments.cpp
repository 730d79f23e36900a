#include "ktop/experiments.hpp"

#include <cmath>

#include "ktop/parallel.hpp"
#include "ktop/stats.hpp"
#include "ktop/version.hpp"

namespace ktop {

void GridSpec::validate() const {
  if (theta_points < 2 || phi_points < 2)
    throw std::invalid_argument("GridSpec: need at least 2 points per axis");
}

double GridSpec::theta(int i) const {
  return kPi * double(i) / double(theta_points - 1);
}

double GridSpec::phi(int j) const {
  return -kPi + 2 * kPi * double(j) / double(phi_points - 1);
}

std::string GridSpec::to_string() const {
  return std::to_string(theta_points) + "x" + std::to_string(phi_points);
}

GridSpec GridSpec::parse(const std::string& text) {
  const auto sep = text.find_first_of("xX");
  if (sep == std::string::npos)
    throw std::invalid_argument("GridSpec: expected THETAxPHI, e.g. 31x61");
  GridSpec grid;
  try {
    grid.theta_points = std::stoi(text.substr(0, sep));
    grid.phi_points = std::stoi(text.substr(sep + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("GridSpec: expected THETAxPHI, e.g. 31x61");
  }
  grid.validate();
  return grid;
}

std::string to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::Full: return "full";
    case ScanMode::RotationsOnly: return "rotations_only";
    case ScanMode::InteractionsOnly: return "interactions_only";
    case ScanMode::Idle: return "idle";
  }
  return "?";
}

std::string to_string(Backend backend) {
  return backend == Backend::Dicke ? "dicke" : "register";
}

ScanMode scan_mode_from_string(const std::string& s) {
  if (s == "full") return ScanMode::Full;
  if (s == "rotations_only") return ScanMode::RotationsOnly;
  if (s == "interactions_only") return ScanMode::InteractionsOnly;
  if (s == "idle") return ScanMode::Idle;
  throw std::invalid_argument("unknown mode: " + s);
}

Backend backend_from_string(const std::string& s) {
  if (s == "dicke") return Backend::Dicke;
  if (s == "register") return Backend::Register;
  throw std::invalid_argument("unknown backend: " + s);
}

namespace {

DickeVector mode_step(const DickeVector& s, const FloquetParameters& p, ScanMode mode) {
  switch (mode) {
    case ScanMode::Full: return step_dicke(s, p);
    case ScanMode::RotationsOnly: return apply_rotation(s, p.rotation_angle);
    case ScanMode::InteractionsOnly: return apply_twist(s, p.kappa);
    case ScanMode::Idle: return s;
  }
  throw std::logic_error("unreachable");
}

RegisterVector mode_step(const RegisterVector& s, const FloquetParameters& p,
                         ScanMode mode) {
  switch (mode) {
    case ScanMode::Full: return step_register(s, p);
    case ScanMode::RotationsOnly: return apply_rotation(s, p.rotation_angle);
    case ScanMode::InteractionsOnly: return apply_twist(s, p.kappa);
    case ScanMode::Idle: return s;
  }
  throw std::logic_error("unreachable");
}

Eigen::MatrixXcd dense_mode_unitary(int n, const FloquetParameters& p, ScanMode mode) {
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::MatrixXcd u(dim, dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(b) = 1.0;
    u.col(b) = mode_step(RegisterVector{n, std::move(e)}, p, mode).amplitudes;
  }
  return u;
}

Eigen::Matrix2cd qubit_rdm_from_density(const Eigen::MatrixXcd& rho, int n, int qubit) {
  const std::int64_t dim = rho.rows();
  const std::int64_t stride = std::int64_t(1) << (n - 1 - qubit);
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (std::int64_t b = 0; b < dim; ++b) {
    if (b & stride) continue;
    out(0, 0) += rho(b, b);
    out(0, 1) += rho(b, b | stride);
    out(1, 0) += rho(b | stride, b);
    out(1, 1) += rho(b | stride, b | stride);
  }
  return out;
}

double mean_qubit_entropy(const Eigen::MatrixXcd& rho, int n) {
  double acc = 0.0;
  for (int q = 0; q < n; ++q) {
    const auto rdm = DensityOperator::single_qubit(qubit_rdm_from_density(rho, n, q));
    acc += entanglement_entropy(rdm);
  }
  return acc / n;
}

double mean_qubit_entropy(const RegisterVector& psi) {
  double acc = 0.0;
  for (int q = 0; q < psi.n; ++q)
    acc += entanglement_entropy(single_qubit_rdm_register(psi, q));
  return acc / psi.n;
}

// Per-step single-qubit entropies for one grid cell, steps 0..steps.
std::vector<double> cell_entropy_series(const SphericalDirection& dir,
                                        const FloquetParameters& p, int n,
                                        int steps, ScanMode mode,
                                        const std::optional<NoiseParameters>& noise,
                                        Backend backend,
                                        const Eigen::MatrixXcd* noisy_unitary) {
  std::vector<double> out;
  out.reserve(std::size_t(steps) + 1);
  if (noise && noise->enabled()) {
    DensityOperator rho = DensityOperator::pure(coherent_state_register(n, dir));
    out.push_back(mean_qubit_entropy(rho.elements, n));
    for (int k = 1; k <= steps; ++k) {
      if (mode != ScanMode::Idle)
        rho.elements = *noisy_unitary * rho.elements * noisy_unitary->adjoint();
      rho = apply_channels(rho, *noise, noise->step_duration_ns());
      out.push_back(mean_qubit_entropy(rho.elements, n));
    }
  } else if (backend == Backend::Register) {
    RegisterVector psi = coherent_state_register(n, dir);
    out.push_back(mean_qubit_entropy(psi));
    for (int k = 1; k <= steps; ++k) {
      psi = mode_step(psi, p, mode);
      out.push_back(mean_qubit_entropy(psi));
    }
  } else {
    DickeVector psi = coherent_state_dicke(Spin::of_qubits(n), dir);
    out.push_back(entropy_from_bloch_length(collective_bloch(psi).length()));
    for (int k = 1; k <= steps; ++k) {
      psi = mode_step(psi, p, mode);
      out.push_back(entropy_from_bloch_length(collective_bloch(psi).length()));
    }
  }
  return out;
}

MapMeta make_meta(const std::string& command, const FloquetParameters& p, int n,
                  int steps, Backend backend, ScanMode mode, const GridSpec& grid,
                  std::uint64_t seed) {
  return {command, p.kappa, n, steps, backend, mode, seed, grid, kVersion};
}

void check_scan_arguments(const FloquetParameters& p, int n, int steps,
                          const GridSpec& grid, ScanMode mode,
                          const std::optional<NoiseParameters>& noise) {
  p.validate();
  grid.validate();
  if (steps < 1) throw std::invalid_argument("entropy scan: steps must be >= 1");
  if (n < 1) throw std::invalid_argument("entropy scan: n must be >= 1");
  const bool noisy = noise && noise->enabled();
  if (mode == ScanMode::Idle && !noisy)
    throw std::invalid_argument(
        "idle mode requires noise (idle unitary evolution is entropy-free)");
  if (noisy) noise->validate(n);
}

}  // namespace

EntropyMap entropy_map_scan(const FloquetParameters& p, int n, int steps,
                            const GridSpec& grid, ScanMode mode,
                            const std::optional<NoiseParameters>& noise,
                            Backend backend) {
  check_scan_arguments(p, n, steps, grid, mode, noise);
  const bool noisy = noise && noise->enabled();
  Eigen::MatrixXcd u;
  if (noisy && mode != ScanMode::Idle) u = dense_mode_unitary(n, p, mode);
  EntropyMap map{grid, Eigen::MatrixXd::Zero(grid.theta_points, grid.phi_points),
                 make_meta("entropy-map", p, n, steps, noisy ? Backend::Register : backend,
                           mode, grid, 0)};
  parallel_for(std::size_t(grid.cells()), [&](std::size_t cell) {
    const int i = int(cell) / grid.phi_points;
    const int j = int(cell) % grid.phi_points;
    const SphericalDirection dir(grid.theta(i), grid.phi(j));
    const auto series = cell_entropy_series(dir, p, n, steps, mode, noise, backend, &u);
    double acc = 0.0;
    for (int k = 1; k <= steps; ++k) acc += series[std::size_t(k)];
    map.values(i, j) = acc / steps;
  });
  return map;
}

std::vector<EntropyMap> entropy_map_snapshots(
    const FloquetParameters& p, int n, int steps, const GridSpec& grid,
    ScanMode mode, const std::optional<NoiseParameters>& noise, Backend backend) {
  check_scan_arguments(p, n, steps, grid, mode, noise);
  const bool noisy = noise && noise->enabled();
  Eigen::MatrixXcd u;
  if (noisy && mode != ScanMode::Idle) u = dense_mode_unitary(n, p, mode);
  std::vector<EntropyMap> maps;
  maps.reserve(std::size_t(steps) + 1);
  for (int k = 0; k <= steps; ++k)
    maps.push_back(EntropyMap{
        grid, Eigen::MatrixXd::Zero(grid.theta_points, grid.phi_points),
        make_meta("snapshots", p, n, k, noisy ? Backend::Register : backend, mode,
                  grid, 0)});
  parallel_for(std::size_t(grid.cells()), [&](std::size_t cell) {
    const int i = int(cell) / grid.phi_points;
    const int j = int(cell) % grid.phi_points;
    const SphericalDirection dir(grid.theta(i), grid.phi(j));
    const auto series = cell_entropy_series(dir, p, n, steps, mode, noise, backend, &u);
    for (int k = 0; k <= steps; ++k) maps[std::size_t(k)].values(i, j) = series[std::size_t(k)];
  });
  return maps;
}

std::vector<EntropyMap> snapshots_experiment(const FloquetParameters& p, int n,
                                             int steps, const GridSpec& grid) {
  return entropy_map_snapshots(p, n, steps, grid, ScanMode::Full, std::nullopt,
                               Backend::Dicke);
}

std::vector<OverlapSeries> ergodicity_experiment(
    const FloquetParameters& p, int n,
    const std::vector<SphericalDirection>& initials, int n_max,
    bool include_initial) {
  std::vector<OverlapSeries> out(initials.size());
  parallel_for(initials.size(), [&](std::size_t i) {
    out[i] = ergodicity_overlap_series(initials[i], p, n, n_max, include_initial);
  });
  return out;
}

ScalingTable finite_size_experiment(const FloquetParameters& p,
                                    const std::vector<int>& n_list,
                                    std::pair<int, int> window,
                                    const SphericalDirection& initial) {
  p.validate();
  if (n_list.empty()) throw std::invalid_argument("finite_size: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || n_list[i] > 64)
      throw std::invalid_argument("finite_size: n out of range (Dicke backend, n <= 64)");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("finite_size: n list must be strictly increasing");
  }
  if (window.first < 1 || window.second <= window.first)
    throw std::invalid_argument("finite_size: bad step window");
  ScalingTable table{{}, window, p.kappa, initial};
  table.rows.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t idx) {
    const int n = n_list[idx];
    DickeVector psi = coherent_state_dicke(Spin::of_qubits(n), initial);
    std::vector<double> entropies;
    entropies.reserve(std::size_t(window.second - window.first) + 1);
    for (int k = 1; k <= window.second; ++k) {
      psi = step_dicke(psi, p);
      if (k >= window.first)
        entropies.push_back(entropy_from_bloch_length(collective_bloch(psi).length()));
    }
    table.rows[idx] = {n, stddev(entropies)};
  });
  return table;
}

FullChaosResult full_chaos_experiment(double kappa, const std::vector<int>& n_list,
                                      const GridSpec& grid, int steps,
                                      std::uint64_t seed) {
  FullChaosResult result;
  const FloquetParameters p{kappa, kPi / 2};
  result.maps.reserve(n_list.size());
  for (int n : n_list) {
    EntropyMap map =
        entropy_map_scan(p, n, steps, grid, ScanMode::Full, std::nullopt, Backend::Dicke);
    map.meta.command = "full-chaos";
    map.meta.seed = seed;
    result.maps.push_back(std::move(map));
  }
  result.cloud = stroboscopic_map(kappa, 500, 200, seed);
  return result;
}

TrajectoryRecord trajectory_experiment(const SphericalDirection& initial,
                                       const FloquetParameters& p, int n,
                                       int steps) {
  TrajectoryRecord record{initial, p, {}, {}};
  record.bloch.reserve(std::size_t(steps) + 1);
  record.entropies.reserve(std::size_t(steps) + 1);
  DickeVector psi = coherent_state_dicke(Spin::of_qubits(n), initial);
  evolve_fold(psi, p, steps, [&](int, const DickeVector& s) {
    const BlochVector r = collective_bloch(s);
    record.bloch.push_back(r);
    record.entropies.push_back(entropy_from_bloch_length(r.length()));
  });
  return record;
}

std::pair<PauliCorrelations, PauliCorrelations> pauli_bars_experiment(
    const SphericalDirection& low_entropy_initial,
    const SphericalDirection& high_entropy_initial, const FloquetParameters& p,
    int n, int steps) {
  auto evolve_table = [&](const SphericalDirection& dir) {
    RegisterVector psi = coherent_state_register(n, dir);
    for (int k = 0; k < steps; ++k) psi = step_register(psi, p);
    return pauli_correlations(DensityOperator::pure(psi));
  };
  return {evolve_table(low_entropy_initial), evolve_table(high_entropy_initial)};
}

std::pair<PuritySeries, PuritySeries> purity_experiment(
    const SphericalDirection& a, const SphericalDirection& b, int n,
    const FloquetParameters& p, const NoiseParameters& noise, int steps) {
  auto series = [&](const SphericalDirection& dir) {
    PuritySeries s{dir, {1.0}};
    s.values.reserve(std::size_t(steps) + 1);
    for (const DensityOperator& rho : noisy_evolve(dir, n, p, noise, steps))
      s.values.push_back(purity(rho));
    return s;
  };
  return {series(a), series(b)};
}

SphericalDirection chaotic_initial_a() { return {1.18, 2.62}; }
SphericalDirection chaotic_initial_b() { return {2.45, 0.87}; }
SphericalDirection regular_initial() { return {kPi / 2, -kPi / 2}; }
SphericalDirection low_entropy_inset() { return regular_initial(); }
SphericalDirection high_entropy_inset() { return {2.9, -2.4}; }
SphericalDirection purity_inset_regular() { return {1.55, 2.1389}; }
SphericalDirection purity_inset_chaotic() { return {0.65, -2.15}; }
SphericalDirection finite_size_initial() { return {kPi / 2 - 0.3, 0.6}; }

}  // namespace ktop
