#pragma once

#include <utility>
#include <vector>

#include "ktop/spin_core.hpp"
#include "ktop/types.hpp"

namespace ktop {

/// One drive period: rotate about y by rotation_angle, then apply the
/// J_z^2 twist of strength kappa.
struct FloquetParameters {
  double kappa = 0.0;
  double rotation_angle = kPi / 2;

  void validate() const;  // kappa and angle finite; signed kappa accepted
};

/// Diagonal twist phases: entry at Dicke index k is exp(-i kappa m^2 / (2j))
/// with m = j - k. Unit modulus, so the twist is exactly norm-preserving.
Eigen::VectorXcd twist_phases(Spin j, double kappa);

/// exp(-i angle J_y) by Hermitian eigendecomposition, cached per (2j, angle).
/// The cache is built once per key and safe to share across threads.
const Eigen::MatrixXcd& kick_rotation_dicke(Spin j, double angle);

DickeVector apply_rotation(const DickeVector& state, double angle);
DickeVector apply_twist(const DickeVector& state, double kappa);
RegisterVector apply_rotation(const RegisterVector& state, double angle);
RegisterVector apply_twist(const RegisterVector& state, double kappa);

/// Rotation first, then twist (Floquet operator read right to left).
DickeVector step_dicke(const DickeVector& state, const FloquetParameters& p);

/// Same step on the full register: per-qubit y-rotation sweep (O(n 2^n)),
/// then the diagonal twist phase keyed on Hamming weight.
RegisterVector step_register(const RegisterVector& state,
                             const FloquetParameters& p);

inline DickeVector floquet_step(const DickeVector& s, const FloquetParameters& p) {
  return step_dicke(s, p);
}
inline RegisterVector floquet_step(const RegisterVector& s, const FloquetParameters& p) {
  return step_register(s, p);
}

/// Ordered states of an evolution; states[k] is the state after k steps.
template <class State>
struct Trajectory {
  FloquetParameters parameters;
  std::vector<State> states;

  int steps() const { return int(states.size()) - 1; }
};

/// Streaming evolution: visit(k, state) is called for k = 0..steps.
template <class State, class Visit>
void evolve_fold(State state, const FloquetParameters& p, int steps, Visit&& visit) {
  if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
  p.validate();
  visit(0, std::as_const(state));
  for (int k = 1; k <= steps; ++k) {
    state = floquet_step(state, p);
    visit(k, std::as_const(state));
  }
}

template <class State>
Trajectory<State> evolve(const State& initial, const FloquetParameters& p, int steps) {
  Trajectory<State> traj{p, {}};
  traj.states.reserve(std::size_t(steps) + 1);
  evolve_fold(initial, p, steps,
              [&](int, const State& s) { traj.states.push_back(s); });
  return traj;
}

/// Partial trace over all qubits but one.
DensityOperator single_qubit_rdm_register(const RegisterVector& state, int qubit);

/// <J>/j as a Bloch vector; for permutation-symmetric states this equals the
/// single-qubit Pauli expectations exactly.
BlochVector collective_bloch(const DickeVector& state);

/// rho = (I + x sigma_x + y sigma_y + z sigma_z)/2 with (x,y,z) = <J>/j.
DensityOperator single_qubit_rdm_dicke(const DickeVector& state);

}  // namespace ktop
