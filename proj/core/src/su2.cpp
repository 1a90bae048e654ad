#include "skspin/su2.hpp"

#include <cmath>

namespace skspin {

SpinMatrices spin_rep_matrices(int two_s) {
  const int d = two_s + 1;
  const double s = 0.5 * two_s;
  OperatorMatrix raise = OperatorMatrix::Zero(d, d);
  OperatorMatrix s3 = OperatorMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double m = s - a;  // weight of basis state a
    s3(a, a) = m;
    if (a >= 1) raise(a - 1, a) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  SpinMatrices out;
  out.s1 = 0.5 * (raise + raise.adjoint());
  out.s2 = Complex(0.0, -0.5) * (raise - raise.adjoint());
  out.s3 = s3;
  return out;
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector coherent_site_state(const BlochPoint& p, const SpinMatrices& rep) {
  const OperatorMatrix gen =
      p.theta * (std::sin(p.phi) * rep.s1 - std::cos(p.phi) * rep.s2);
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(gen);
  // exp(i gen) |s,s>: |s,s> is the first basis vector.
  StateVector coeff = es.eigenvectors().adjoint().col(0);
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    coeff(k) *= std::exp(Complex(0.0, es.eigenvalues()(k)));
  return es.eigenvectors() * coeff;
}

OperatorMatrix matrix_power(const OperatorMatrix& m, long k) {
  OperatorMatrix result = OperatorMatrix::Identity(m.rows(), m.cols());
  if (k <= 0) return result;
  OperatorMatrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace skspin
