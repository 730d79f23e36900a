#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ktop/floquet.hpp"
#include "ktop/spin_core.hpp"

namespace ktop {

/// Von Neumann entropy in bits: -sum lambda log2 lambda, eigenvalues below
/// 1e-15 contribute zero. Rejects operators with eigenvalues < -1e-9.
double entanglement_entropy(const DensityOperator& rho);

/// Closed-form single-qubit entropy from the Bloch length (eigenvalues
/// (1 +- r)/2); the fast path behind the phase-space scans.
double entropy_from_bloch_length(double r);

/// Tr rho^2, in [1/dim, 1].
double purity(const DensityOperator& rho);

/// Uhlmann fidelity Tr sqrt(sqrt(sigma) rho sqrt(sigma)) via Hermitian
/// eigendecompositions; symmetric in its arguments.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// Microcanonical ensemble: normalized projector onto the j = n/2 symmetric
/// subspace, in the 2^n register basis.
DensityOperator microcanonical(int n);

/// Same ensemble restricted to its (n+1)-dimensional support: I/(n+1) in the
/// Dicke basis.
DensityOperator microcanonical_dicke(int n);

/// Mean of the pure-state projectors along a trajectory. The default averages
/// steps 1..upto (initial state excluded); include_initial adds step 0.
DensityOperator time_averaged_density(const Trajectory<RegisterVector>& traj,
                                      int upto, bool include_initial = false);
DensityOperator time_averaged_density(const Trajectory<DickeVector>& traj,
                                      int upto, bool include_initial = false);

/// All 4^n Pauli-string expectation values of an n-qubit density matrix.
/// Strings are enumerated base 4 with qubit 0 most significant, I<X<Y<Z.
struct PauliCorrelations {
  int n = 0;
  Eigen::VectorXd values;

  static std::string string_label(std::uint64_t index, int n);
  std::uint64_t index_of(const std::string& label) const;
  double operator[](const std::string& label) const;
};

PauliCorrelations pauli_correlations(const DensityOperator& rho);

struct OverlapSeries {
  FloquetParameters parameters;
  SphericalDirection initial;
  bool include_initial = false;
  std::vector<double> overlaps;  // entry N-1 holds the overlap after N steps
};

/// Overlap of the time-averaged density matrix with the microcanonical
/// ensemble for N = 1..n_max. Coherent initial states stay in the symmetric
/// subspace, so the fidelity is evaluated in the Dicke block (identical to
/// the full-register value; the register route is the test oracle).
OverlapSeries ergodicity_overlap_series(const SphericalDirection& initial,
                                        const FloquetParameters& p, int n,
                                        int n_max, bool include_initial = false);

}  // namespace ktop
