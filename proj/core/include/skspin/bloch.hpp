#pragma once

#include <array>
#include <vector>

namespace skspin {

/// Point on the unit 2-sphere in polar coordinates, theta in [0,pi], phi in [0,2pi).
struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;

  std::array<double, 3> cartesian() const;

  /// Cartesian component by physics index i in {1,2,3}.
  double component(int i) const;
};

/// Wraps (theta, phi) from any real pair into the canonical ranges.
BlochPoint make_bloch_point(double theta, double phi);

/// Recovers polar coordinates from a (not necessarily normalized) 3-vector.
BlochPoint bloch_from_cartesian(const std::array<double, 3>& v);

bool valid_point(const BlochPoint& p);

/// One sphere point per lattice site: a single-timeslice field configuration.
struct SphereConfig {
  std::vector<BlochPoint> points;

  int sites() const { return static_cast<int>(points.size()); }
};

}  // namespace skspin
