#pragma once

#include <complex>

#include <Eigen/Dense>

#include "skspin/bloch.hpp"

namespace skspin {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Spin matrices s1, s2, s3 in the (2s+1)-dimensional representation,
/// basis ordered |s,s>, |s,s-1>, ..., |s,-s> (highest weight first).
struct SpinMatrices {
  OperatorMatrix s1, s2, s3;

  const OperatorMatrix& component(int i) const { return i == 1 ? s1 : (i == 2 ? s2 : s3); }
};

/// Standard ladder-operator construction for arbitrary 2s >= 1.
SpinMatrices spin_rep_matrices(int two_s);

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

/// Single-site coherent state exp(i theta (s1 sin phi - s2 cos phi)) |s,s>,
/// computed by exponentiating the representation matrices (this fixes the
/// phase convention; closed-form overlaps are theorems checked in tests).
StateVector coherent_site_state(const BlochPoint& p, const SpinMatrices& rep);

/// M^k by repeated squaring, k >= 0.
OperatorMatrix matrix_power(const OperatorMatrix& m, long k);

}  // namespace skspin
