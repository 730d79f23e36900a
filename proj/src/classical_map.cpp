#include "ktop/classical_map.hpp"

#include <cmath>
#include <random>

#include "ktop/parallel.hpp"

namespace ktop {

double UnitVector3::norm() const { return std::sqrt(x * x + y * y + z * z); }

void UnitVector3::validate() const {
  if (std::abs(norm() - 1.0) > 1e-9)
    throw std::invalid_argument("UnitVector3: not a unit vector");
}

UnitVector3 unit_vector(const SphericalDirection& dir) {
  const Eigen::Vector3d r = direction_to_cartesian(dir);
  return {r.x(), r.y(), r.z()};
}

SphericalDirection direction_of(const UnitVector3& r) {
  return direction_from_cartesian({r.x, r.y, r.z});
}

UnitVector3 classical_step(const UnitVector3& r, double kappa) {
  r.validate();
  const double xp = r.z, yp = r.y, zp = -r.x;
  const double angle = kappa * zp;
  const double c = std::cos(angle), s = std::sin(angle);
  return {xp * c - yp * s, xp * s + yp * c, zp};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// uniform double in [0, 1); bit-reproducible across platforms
double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

StroboscopicCloud stroboscopic_map(double kappa, int n_traj, int n_steps,
                                   std::uint64_t seed) {
  if (n_traj < 1 || n_steps < 0)
    throw std::invalid_argument("stroboscopic_map: bad trajectory/step count");
  if (double(n_traj) * (double(n_steps) + 1) > 1e8)
    throw std::invalid_argument("stroboscopic_map: point budget exceeded");
  StroboscopicCloud cloud{kappa, n_traj, n_steps, seed,
                          "mt19937_64/splitmix64-substreams", {}};
  const int per_traj = n_steps + 1;
  cloud.points.resize(std::size_t(n_traj) * per_traj);
  parallel_for(std::size_t(n_traj), [&](std::size_t t) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(std::uint64_t(t) + 1)));
    const double cos_theta = 2 * uniform01(rng) - 1;
    const double phi = -kPi + 2 * kPi * uniform01(rng);
    const double sin_theta = std::sqrt(std::max(0.0, 1 - cos_theta * cos_theta));
    UnitVector3 r{sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
    for (int k = 0; k < per_traj; ++k) {
      const SphericalDirection dir = direction_of(r);
      cloud.points[std::size_t(t) * per_traj + k] =
          CloudPoint{int(t), k, dir.theta, dir.phi};
      if (k + 1 < per_traj) r = classical_step(r, kappa);
    }
  });
  return cloud;
}

}  // namespace ktop
