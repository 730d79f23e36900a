#pragma once

#include <cstdint>

#include "ktop/types.hpp"

namespace ktop {

/// Amplitudes of a total-spin-j state in the (2j+1)-dimensional symmetric
/// (Dicke) basis. Index k corresponds to magnetic number m = j - k, i.e.
/// k counts spin flips away from |+z...+z>.
struct DickeVector {
  int twice_j = 1;
  Eigen::VectorXcd amplitudes;

  Spin spin() const { return Spin(twice_j); }
  int dim() const { return twice_j + 1; }
  double norm_error() const;
  void validate() const;
};

/// Amplitudes of an n-qubit pure state in the 2^n computational basis.
/// Qubit 0 is the most significant bit; a set bit means that qubit is |-z>.
struct RegisterVector {
  int n = 1;
  Eigen::VectorXcd amplitudes;

  std::int64_t dim() const { return std::int64_t(1) << n; }
  double norm_error() const;
  void validate() const;
};

inline constexpr int kMaxRegisterQubits = 24;  // ~256 MB of amplitudes

inline int bit_of(std::uint64_t index, int qubit, int n) {
  return int((index >> (n - 1 - qubit)) & 1u);
}

enum class BasisTag { SingleQubit, Register, Dicke };

/// Hermitian, unit-trace, positive-semidefinite matrix over a labeled basis.
struct DensityOperator {
  BasisTag basis = BasisTag::SingleQubit;
  int label = 0;  // qubit count (Register) or twice_j (Dicke); unused otherwise
  Eigen::MatrixXcd elements;

  static DensityOperator single_qubit(const Eigen::Matrix2cd& m);
  static DensityOperator register_basis(int n, Eigen::MatrixXcd m);
  static DensityOperator dicke_basis(int twice_j, Eigen::MatrixXcd m);
  static DensityOperator pure(const RegisterVector& psi);
  static DensityOperator pure(const DickeVector& psi);

  Eigen::Index dim() const { return elements.rows(); }
  /// Hermitian within 1e-10 elementwise, trace 1 within 1e-10, smallest
  /// eigenvalue >= -1e-9. Throws InvariantViolation otherwise.
  void validate() const;
};

enum class Axis { X, Y, Z };

/// log C(n, k)
double log_binomial(int n, int k);

/// Spin coherent state |theta, phi>: amplitude at index k is
/// sqrt(C(2j,k)) cos(theta/2)^{2j-k} (e^{-i phi} sin(theta/2))^k.
DickeVector coherent_state_dicke(Spin j, const SphericalDirection& dir);

/// n-fold tensor product of the single-qubit coherent state; 1 <= n <= 24.
RegisterVector coherent_state_register(int n, const SphericalDirection& dir);

/// Angular momentum matrices in the Dicke basis; J_z diagonal (j, ..., -j),
/// J_x and J_y tridiagonal via the ladder operators.
Eigen::MatrixXcd collective_operator(Spin j, Axis axis);

/// Embed a symmetric state into the full register; amplitude of each basis
/// state with k set bits is dicke[k] / sqrt(C(n, k)).
RegisterVector dicke_to_register(const DickeVector& state);

struct SymmetricProjection {
  DickeVector state;     // renormalized j = n/2 component
  double residual_norm;  // squared norm lost to the projection
};

/// Project onto the maximal-spin (j = n/2) subspace. Throws std::domain_error
/// if the symmetric component is below 1e-12 in squared norm.
SymmetricProjection register_to_dicke(const RegisterVector& state);

/// (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z) of a 2x2 density matrix.
BlochVector bloch_from_density(const DensityOperator& rho);

}  // namespace ktop
