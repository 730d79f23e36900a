#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ktop/types.hpp"

namespace ktop {

/// Point on the unit sphere; the classical limit of the collective spin.
struct UnitVector3 {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
  void validate() const;  // |r| = 1 within 1e-9
};

UnitVector3 unit_vector(const SphericalDirection& dir);
SphericalDirection direction_of(const UnitVector3& r);

/// One period of the classical kicked top: rotate by pi/2 about y,
/// (x,y,z) -> (z, y, -x), then rotate about z by angle kappa*z. The signs
/// mirror the quantum step and are pinned by the large-j correspondence test.
UnitVector3 classical_step(const UnitVector3& r, double kappa);

struct CloudPoint {
  int trajectory = 0;
  int step = 0;
  double theta = 0.0;
  double phi = 0.0;
};

struct StroboscopicCloud {
  double kappa = 0.0;
  int trajectory_count = 0;
  int step_count = 0;
  std::uint64_t seed = 0;
  std::string rng_name;  // recorded for reproducibility
  std::vector<CloudPoint> points;
};

/// Sample n_traj initial points uniformly on the sphere (uniform cos(theta),
/// uniform phi; mt19937_64 with a splitmix64 substream per trajectory) and
/// iterate each n_steps times, emitting every visited orientation.
StroboscopicCloud stroboscopic_map(double kappa, int n_traj, int n_steps,
                                   std::uint64_t seed);

}  // namespace ktop
