#pragma once

#include <span>
#include <vector>

#include "skspin/contour.hpp"
#include "skspin/lattice.hpp"
#include "skspin/su2.hpp"

namespace skspin {

/// Tensor-product spin operator 1 x ... x s_i x ... x 1 with s_i at slot `site`.
OperatorMatrix spin_matrix(const SpinRep& rep, int sites, int site, int component);

/// Sum over terms of coupling * product of spin matrices; Hermitian.
OperatorMatrix hamiltonian_matrix(const HamiltonianSpec& spec);

/// Exact thermal real-time correlator
///   tr(s_i(x,t) s_i'(x',t') e^{-beta H}) / tr(e^{-beta H}),
/// with s(x,t) = e^{iHt} s(x) e^{-iHt}, via eigendecomposition of H.
Complex exact_correlator(const HamiltonianSpec& spec, double beta, int x, int i, double t,
                         int xp, int ip, double tp);

/// Same correlator on a grid of time separations t - t' (one eigendecomposition).
std::vector<Complex> exact_correlator_series(const HamiltonianSpec& spec, double beta, int x,
                                             int i, int xp, int ip,
                                             std::span<const double> time_separations);

/// Classical source coupled to one spin component on one timeslice of one leg.
struct SourceField {
  Leg leg = Leg::plus;
  long timeslice = 1;  // 1..N within the leg
  int site = 0;
  int component = 3;
  double value = 0.0;
};

/// Trotterized contour trace with first-order slices
///   P~_+ = 1 + i dt (H - j.s),  P~_- = 1 - i dt (H - j.s),  P~_E = 1 - dtau (H - j.s),
/// multiplied in leg order +,-,E with slice 1 leftmost on each leg.
/// Runs of identical source-free slices are pooled via binary powering.
Complex ztilde_trace(const HamiltonianSpec& spec, const ContourParams& contour,
                     std::span<const SourceField> sources);

/// Two-point correlator from second-order central finite differences of
/// ztilde_trace in two source values (independent oracle for the
/// source-derivative identities); converges to exact_correlator linearly in 1/N.
/// (t, t') = (t_hat, t_hat_prime) * dt with the insertion_slots() convention.
Complex fd_correlator(const HamiltonianSpec& spec, const ContourParams& contour,
                      Ordering ordering, long t_hat, long t_hat_prime, int x, int i, int xp,
                      int ip, double eps = 1e-4);

}  // namespace skspin
