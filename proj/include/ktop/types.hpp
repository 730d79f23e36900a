#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ktop {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when a numerical invariant is violated at runtime (norm drift,
/// non-physical density operator, ...). Maps to CLI exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Direction on the Bloch sphere. theta is the polar angle, clamped to
/// [0, pi]; phi is the azimuth, wrapped to [-pi, pi).
struct SphericalDirection {
  double theta = 0.0;
  double phi = 0.0;

  SphericalDirection() = default;
  SphericalDirection(double theta_in, double phi_in);
};

/// Wrap an angle to [-pi, pi).
double wrap_angle(double phi);

// The coherent-state phase convention e^{-i phi} makes the y component
// -sin(theta) sin(phi); +y is at phi = -pi/2. Every module uses this one map
// so quantum Bloch vectors and classical clouds overlay directly.
Eigen::Vector3d direction_to_cartesian(const SphericalDirection& dir);
SphericalDirection direction_from_cartesian(const Eigen::Vector3d& r);

/// Pauli expectation values of a single qubit; length() <= 1 up to roundoff.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double length() const;
  Eigen::Vector3d vec() const { return {x, y, z}; }
};

/// Total spin stored as the integer 2j >= 1, so half-integer j is exact.
struct Spin {
  int twice_j = 1;

  explicit Spin(int twice_j_in);
  static Spin of_qubits(int n) { return Spin(n); }

  double j() const { return 0.5 * twice_j; }
  int dim() const { return twice_j + 1; }
  /// Magnetic quantum number at Dicke index k (m = j - k).
  double magnetic_number(int k) const { return 0.5 * twice_j - k; }
};

}  // namespace ktop
