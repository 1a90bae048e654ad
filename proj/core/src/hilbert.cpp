#include "skspin/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace skspin {

OperatorMatrix spin_matrix(const SpinRep& rep, int sites, int site, int component) {
  if (site < 0 || site >= sites) fail(ErrorCode::bad_site_index, "spin_matrix site out of range");
  if (component < 1 || component > 3)
    fail(ErrorCode::dimension_mismatch, "spin component must be 1, 2 or 3");
  const SpinMatrices mats = spin_rep_matrices(rep.two_s);
  const int d = rep.dim();
  OperatorMatrix out = OperatorMatrix::Identity(1, 1);
  for (int x = 0; x < sites; ++x) {
    if (x == site)
      out = kron(out, mats.component(component));
    else
      out = kron(out, OperatorMatrix::Identity(d, d));
  }
  return out;
}

OperatorMatrix hamiltonian_matrix(const HamiltonianSpec& spec) {
  validate_or_throw(spec);
  const long dim = hilbert_dim(spec.rep, spec.lattice.sites);
  OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
  for (const auto& term : spec.terms) {
    OperatorMatrix prod =
        term.coupling * OperatorMatrix::Identity(dim, dim);
    for (const auto& f : term.factors)
      prod = prod * spin_matrix(spec.rep, spec.lattice.sites, f.site, f.component);
    h += prod;
  }
  return h;
}

namespace {

struct Eigensystem {
  Eigen::VectorXd energies;
  OperatorMatrix vectors;
};

Eigensystem diagonalize(const HamiltonianSpec& spec) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(hamiltonian_matrix(spec));
  return {es.eigenvalues(), es.eigenvectors()};
}

Complex thermal_two_point(const Eigensystem& sys, const OperatorMatrix& a,
                          const OperatorMatrix& b, double beta, double tau) {
  const OperatorMatrix at = sys.vectors.adjoint() * a * sys.vectors;
  const OperatorMatrix bt = sys.vectors.adjoint() * b * sys.vectors;
  const double e0 = sys.energies.minCoeff();
  Complex num = 0.0;
  double den = 0.0;
  const Eigen::Index dim = sys.energies.size();
  for (Eigen::Index m = 0; m < dim; ++m) {
    const double boltz = std::exp(-beta * (sys.energies(m) - e0));
    den += boltz;
    for (Eigen::Index n = 0; n < dim; ++n)
      num += at(m, n) * bt(n, m) *
             std::exp(Complex(0.0, (sys.energies(m) - sys.energies(n)) * tau)) * boltz;
  }
  return num / den;
}

}  // namespace

Complex exact_correlator(const HamiltonianSpec& spec, double beta, int x, int i, double t,
                         int xp, int ip, double tp) {
  if (!(beta > 0)) fail(ErrorCode::config_validation, "beta must be positive");
  const Eigensystem sys = diagonalize(spec);
  const OperatorMatrix a = spin_matrix(spec.rep, spec.lattice.sites, x, i);
  const OperatorMatrix b = spin_matrix(spec.rep, spec.lattice.sites, xp, ip);
  return thermal_two_point(sys, a, b, beta, t - tp);
}

std::vector<Complex> exact_correlator_series(const HamiltonianSpec& spec, double beta, int x,
                                             int i, int xp, int ip,
                                             std::span<const double> time_separations) {
  const Eigensystem sys = diagonalize(spec);
  const OperatorMatrix a = spin_matrix(spec.rep, spec.lattice.sites, x, i);
  const OperatorMatrix b = spin_matrix(spec.rep, spec.lattice.sites, xp, ip);
  std::vector<Complex> out;
  out.reserve(time_separations.size());
  for (double tau : time_separations) out.push_back(thermal_two_point(sys, a, b, beta, tau));
  return out;
}

namespace {

// slice coefficient c_leg in P~ = 1 + c(H - sum j.s)
Complex leg_coefficient(Leg leg, const ContourParams& contour) {
  switch (leg) {
    case Leg::plus: return Complex(0.0, contour.dt());
    case Leg::minus: return Complex(0.0, -contour.dt());
    case Leg::euclid: return Complex(-contour.dtau(), 0.0);
  }
  return 0.0;
}

}  // namespace

Complex ztilde_trace(const HamiltonianSpec& spec, const ContourParams& contour,
                     std::span<const SourceField> sources) {
  validate_or_throw(spec);
  validate_or_throw(contour);
  const long n = contour.n_slices;
  const long dim = hilbert_dim(spec.rep, spec.lattice.sites);
  const OperatorMatrix h = hamiltonian_matrix(spec);
  const OperatorMatrix id = OperatorMatrix::Identity(dim, dim);

  OperatorMatrix product = id;
  for (Leg leg : {Leg::plus, Leg::minus, Leg::euclid}) {
    const Complex c = leg_coefficient(leg, contour);
    const OperatorMatrix base = id + c * h;

    // gather sourced slices on this leg:  P~(slot) = base - c * sum j.s
    std::map<long, OperatorMatrix> sourced;
    for (const auto& src : sources) {
      if (src.leg != leg) continue;
      if (src.timeslice < 1 || src.timeslice > n)
        fail(ErrorCode::bad_site_index, "source timeslice out of range");
      auto it = sourced.try_emplace(src.timeslice, base).first;
      it->second -=
          c * src.value * spin_matrix(spec.rep, spec.lattice.sites, src.site, src.component);
    }

    long cursor = 1;
    for (const auto& [slot, slice] : sourced) {
      product = product * matrix_power(base, slot - cursor) * slice;
      cursor = slot + 1;
    }
    product = product * matrix_power(base, n - cursor + 1);
  }
  return product.trace();
}

Complex fd_correlator(const HamiltonianSpec& spec, const ContourParams& contour,
                      Ordering ordering, long t_hat, long t_hat_prime, int x, int i, int xp,
                      int ip, double eps) {
  const InsertionSlots slots = insertion_slots(ordering, t_hat, t_hat_prime, contour.n_slices);

  auto eval = [&](double va, double vb) {
    const SourceField fields[2] = {
        {slots.leg_a, slots.slot_a, x, i, va},
        {slots.leg_b, slots.slot_b, xp, ip, vb},
    };
    return ztilde_trace(spec, contour, fields);
  };

  const Complex mixed = (eval(eps, eps) - eval(eps, -eps) - eval(-eps, eps) +
                         eval(-eps, -eps)) /
                        (4.0 * eps * eps);
  const Complex z0 = ztilde_trace(spec, contour, {});
  const double dt2 = contour.dt() * contour.dt();
  // prefactor (1/(i dt))^2 = -1/dt^2 for same-leg pairs; the mixed-leg
  // identity carries one extra minus sign.
  const double prefactor = ordering == Ordering::unordered ? 1.0 : -1.0;
  return prefactor * mixed / dt2 / z0;
}

}  // namespace skspin
