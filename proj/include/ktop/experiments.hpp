#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ktop/classical_map.hpp"
#include "ktop/metrics.hpp"
#include "ktop/open_system.hpp"

namespace ktop {

/// Rectangular grid of initial states; inclusive endpoints over
/// [0, pi] x [-pi, pi].
struct GridSpec {
  int theta_points = 31;
  int phi_points = 61;

  void validate() const;  // at least 2 points per axis
  double theta(int i) const;
  double phi(int j) const;
  int cells() const { return theta_points * phi_points; }
  std::string to_string() const;  // "31x61"
  static GridSpec parse(const std::string& text);
};

enum class ScanMode { Full, RotationsOnly, InteractionsOnly, Idle };
enum class Backend { Dicke, Register };

std::string to_string(ScanMode mode);
std::string to_string(Backend backend);
ScanMode scan_mode_from_string(const std::string& s);
Backend backend_from_string(const std::string& s);

struct MapMeta {
  std::string command;
  double kappa = 0.0;
  int qubits = 0;
  int steps = 0;
  Backend backend = Backend::Dicke;
  ScanMode mode = ScanMode::Full;
  std::uint64_t seed = 0;
  GridSpec grid;
  std::string version;
};

/// Grid of per-qubit entropies (time-averaged or a single snapshot),
/// values(i, j) at (grid.theta(i), grid.phi(j)).
struct EntropyMap {
  GridSpec grid;
  Eigen::MatrixXd values;
  MapMeta meta;
};

/// Time-averaged single-qubit entropy per grid cell (steps 1..steps).
/// Noiseless scans run on the requested backend; noisy scans evolve the
/// register density matrix. Idle mode without noise is rejected.
EntropyMap entropy_map_scan(const FloquetParameters& p, int n, int steps,
                            const GridSpec& grid, ScanMode mode,
                            const std::optional<NoiseParameters>& noise,
                            Backend backend = Backend::Dicke);

/// Per-step maps for N = 0..steps (the N = 0 map is identically zero for
/// noiseless modes).
std::vector<EntropyMap> entropy_map_snapshots(
    const FloquetParameters& p, int n, int steps, const GridSpec& grid,
    ScanMode mode, const std::optional<NoiseParameters>& noise,
    Backend backend = Backend::Dicke);

std::vector<EntropyMap> snapshots_experiment(const FloquetParameters& p, int n,
                                             int steps, const GridSpec& grid);

std::vector<OverlapSeries> ergodicity_experiment(
    const FloquetParameters& p, int n,
    const std::vector<SphericalDirection>& initials, int n_max,
    bool include_initial = false);

struct ScalingRow {
  int n = 0;
  double sigma = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  std::pair<int, int> window{10, 500};
  double kappa = 0.0;
  SphericalDirection initial;
};

/// Std-dev of the single-qubit entropy over the step window, per system size
/// (Dicke backend).
ScalingTable finite_size_experiment(const FloquetParameters& p,
                                    const std::vector<int>& n_list,
                                    std::pair<int, int> window,
                                    const SphericalDirection& initial);

struct FullChaosResult {
  std::vector<EntropyMap> maps;  // one per n
  StroboscopicCloud cloud;       // classical overlay at the same kappa
};

FullChaosResult full_chaos_experiment(double kappa,
                                      const std::vector<int>& n_list,
                                      const GridSpec& grid, int steps,
                                      std::uint64_t seed);

struct TrajectoryRecord {
  SphericalDirection initial;
  FloquetParameters parameters;
  std::vector<BlochVector> bloch;    // entry k after k steps, k = 0..steps
  std::vector<double> entropies;
};

TrajectoryRecord trajectory_experiment(const SphericalDirection& initial,
                                       const FloquetParameters& p, int n,
                                       int steps);

std::pair<PauliCorrelations, PauliCorrelations> pauli_bars_experiment(
    const SphericalDirection& low_entropy_initial,
    const SphericalDirection& high_entropy_initial, const FloquetParameters& p,
    int n, int steps);

struct PuritySeries {
  SphericalDirection initial;
  std::vector<double> values;  // entry k after k steps; values[0] = 1
};

std::pair<PuritySeries, PuritySeries> purity_experiment(
    const SphericalDirection& a, const SphericalDirection& b, int n,
    const FloquetParameters& p, const NoiseParameters& noise, int steps);

// Pinned initial states used by the shipped experiments. The chaotic pair and
// the purity insets were fixed numerically (see README).
SphericalDirection chaotic_initial_a();       // (1.18, 2.62)
SphericalDirection chaotic_initial_b();       // (2.45, 0.87)
SphericalDirection regular_initial();         // +y: (pi/2, -pi/2)
SphericalDirection low_entropy_inset();       // = regular_initial()
SphericalDirection high_entropy_inset();      // (2.9, -2.4)
SphericalDirection purity_inset_regular();    // (1.55, 2.1389)
SphericalDirection purity_inset_chaotic();    // (0.65, -2.15)
SphericalDirection finite_size_initial();     // (pi/2 - 0.3, 0.6)

}  // namespace ktop
