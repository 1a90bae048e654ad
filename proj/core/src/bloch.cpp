#include "skspin/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace skspin {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

std::array<double, 3> BlochPoint::cartesian() const {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double BlochPoint::component(int i) const {
  switch (i) {
    case 1: return std::sin(theta) * std::cos(phi);
    case 2: return std::sin(theta) * std::sin(phi);
    default: return std::cos(theta);
  }
}

BlochPoint make_bloch_point(double theta, double phi) {
  // Fold theta into [0,2pi) first; the [pi,2pi) half maps back onto [0,pi]
  // with phi advanced by pi (the sphere's double cover in polar coordinates).
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0) theta += kTwoPi;
  if (theta > kPi) {
    theta = kTwoPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  return {theta, phi};
}

BlochPoint bloch_from_cartesian(const std::array<double, 3>& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (r == 0.0) return {0.0, 0.0};
  const double ct = std::clamp(v[2] / r, -1.0, 1.0);
  double phi = std::atan2(v[1], v[0]);
  if (phi < 0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return {std::acos(ct), phi};
}

bool valid_point(const BlochPoint& p) {
  return p.theta >= 0.0 && p.theta <= kPi && p.phi >= 0.0 && p.phi < kTwoPi &&
         std::isfinite(p.theta) && std::isfinite(p.phi);
}

}  // namespace skspin
