#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ktop/floquet.hpp"
#include "ktop/spin_core.hpp"

namespace ktop {

/// Per-step decoherence model. Times in ns; infinity disables a channel.
/// t1/tphi hold either one uniform value or one value per qubit.
struct NoiseParameters {
  std::vector<double> t1_ns{std::numeric_limits<double>::infinity()};
  std::vector<double> tphi_ns{std::numeric_limits<double>::infinity()};
  double rotation_duration_ns = 20.0;
  double interaction_duration_ns = 25.0;

  static NoiseParameters uniform(double t1, double tphi, double rotation_ns,
                                 double interaction_ns);
  static NoiseParameters disabled();

  double t1_for(int qubit) const;
  double tphi_for(int qubit) const;
  double step_duration_ns() const {
    return rotation_duration_ns + interaction_duration_ns;
  }
  bool enabled() const;
  void validate(int n) const;
};

/// kappa = 3 g T with g an angular coupling rate (rad/s) and T in seconds.
double kappa_from_pulse(double g_rad_per_s, double t_s);

/// Per-qubit amplitude damping (gamma = 1 - exp(-d/T1)) followed by per-qubit
/// phase damping (lambda = 1 - exp(-2d/Tphi)), both in explicit Kraus form.
DensityOperator apply_channels(const DensityOperator& rho,
                               const NoiseParameters& noise, double duration_ns);

/// Evolve a coherent initial state as a density matrix: unitary Floquet step,
/// then one lumped channel of the full step duration. Returns the state after
/// each step (length = steps).
std::vector<DensityOperator> noisy_evolve(const SphericalDirection& initial,
                                          int n, const FloquetParameters& p,
                                          const NoiseParameters& noise,
                                          int steps);

enum class TomographyRotation { I, XHalfPi, YHalfPi, XPi };

Eigen::Matrix2cd tomography_rotation_matrix(TomographyRotation r);
std::string tomography_rotation_name(TomographyRotation r);

/// One per-qubit rotation label per qubit, applied before a z measurement.
struct TomographySetting {
  std::vector<TomographyRotation> labels;

  int qubits() const { return int(labels.size()); }
  std::string name() const;  // e.g. "I,Xpi2,Ypi2"
  Eigen::MatrixXcd unitary() const;
};

/// All 4^n settings in canonical order I < Xpi/2 < Ypi/2 < Xpi, qubit 0 most
/// significant; n <= 5.
std::vector<TomographySetting> tomography_settings(int n);

struct CountRecord {
  TomographySetting setting;
  std::uint64_t shots = 0;
  std::vector<std::uint64_t> counts;  // 2^n outcomes, sum == shots
};

/// Draw multinomial samples of the z-basis outcome distribution after each
/// setting's rotation. One seeded generator consumed across settings in
/// order, so results are deterministic given (seed, setting order).
std::vector<CountRecord> simulate_counts(const DensityOperator& rho,
                                         const std::vector<TomographySetting>& settings,
                                         std::uint64_t shots, std::uint64_t seed);

/// Iterative multiplicative-update (R rho R) maximum-likelihood
/// reconstruction. Stops when the max-abs update falls below 1e-10 or after
/// 1e4 iterations; the log-likelihood is checked to be non-decreasing.
/// Throws std::invalid_argument("tomographically incomplete") when the
/// settings do not span the operator space.
DensityOperator mle_reconstruct(const std::vector<CountRecord>& records);

/// Same iteration on exact outcome probabilities (the infinite-shot limit).
DensityOperator mle_reconstruct_probabilities(
    const std::vector<TomographySetting>& settings,
    const std::vector<Eigen::VectorXd>& probabilities);

/// Fidelity of a reconstructed/noisy state against the ideal one.
double overlap_with_theory(const DensityOperator& rho_expmt,
                           const DensityOperator& rho_thy);

}  // namespace ktop
