#include "ktop/types.hpp"

#include <algorithm>
#include <cmath>

namespace ktop {

double wrap_angle(double phi) {
  double p = std::fmod(phi + kPi, 2 * kPi);
  if (p < 0) p += 2 * kPi;
  return p - kPi;
}

SphericalDirection::SphericalDirection(double theta_in, double phi_in) {
  if (!std::isfinite(theta_in) || !std::isfinite(phi_in))
    throw std::invalid_argument("SphericalDirection: angles must be finite");
  theta = std::clamp(theta_in, 0.0, kPi);
  phi = wrap_angle(phi_in);
}

Eigen::Vector3d direction_to_cartesian(const SphericalDirection& dir) {
  const double st = std::sin(dir.theta);
  return {st * std::cos(dir.phi), -st * std::sin(dir.phi), std::cos(dir.theta)};
}

SphericalDirection direction_from_cartesian(const Eigen::Vector3d& r) {
  const double theta = std::acos(std::clamp(r.z(), -1.0, 1.0));
  const double phi = (r.x() == 0.0 && r.y() == 0.0) ? 0.0 : -std::atan2(r.y(), r.x());
  return SphericalDirection(theta, phi);
}

double BlochVector::length() const { return std::sqrt(x * x + y * y + z * z); }

Spin::Spin(int twice_j_in) : twice_j(twice_j_in) {
  if (twice_j < 1)
    throw std::invalid_argument("Spin: 2j must be a positive integer");
}

}  // namespace ktop
