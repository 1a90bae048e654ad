#pragma once

#include <memory>
#include <vector>

#include "skspin/coherent.hpp"
#include "skspin/contour.hpp"
#include "skspin/hilbert.hpp"
#include "skspin/lattice.hpp"

namespace skspin {

struct QuadratureSizes {
  int n_theta = 12;
  int n_phi = 24;
};

struct PropagatorOptions {
  QuadratureSizes grid;
  bool doubling_check = true;       // rebuild on a doubled grid and compare
  double doubling_tolerance = 1e-10;
};

/// Node cache for sphere-quadrature operator builds: per-node weights, h
/// values, Bloch components and coherent states are computed once and reused
/// for every time step (the Table-style N sweeps re-weight the same nodes).
class PropagatorWorkspace {
 public:
  PropagatorWorkspace(const HamiltonianSpec& spec, QuadratureSizes sizes);
  ~PropagatorWorkspace();
  PropagatorWorkspace(PropagatorWorkspace&&) noexcept;
  PropagatorWorkspace& operator=(PropagatorWorkspace&&) noexcept;

  /// sum_nodes w * exp(coeff * h(Omega)) |Omega><Omega|
  OperatorMatrix weighted_operator(Complex coeff) const;

  /// sum_nodes w * exp(coeff * h(Omega)) * Omega_{site,component} |Omega><Omega|
  OperatorMatrix weighted_insertion(Complex coeff, int site, int component) const;

  QuadratureSizes sizes() const;
  long total_nodes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Short-time coherent-state propagators for the three contour legs.
struct PropagatorSet {
  OperatorMatrix p_plus, p_minus, p_euclid;
  ContourParams contour;
  QuadratureSizes grid;
  double s_plus_one = 1.5;
};

struct InsertionMatrix {
  Leg leg = Leg::plus;
  int site = 0;
  int component = 1;
  OperatorMatrix matrix;
};

/// Collection of insertion matrices keyed by (leg, site, component).
class InsertionSet {
 public:
  void add(InsertionMatrix m);
  const InsertionMatrix& find(Leg leg, int site, int component) const;
  bool contains(Leg leg, int site, int component) const;

 private:
  std::vector<InsertionMatrix> items_;
};

/// Builds P_+, P_-, P_E by quadrature; the doubling self-check aborts with
/// ConvergenceFailure instead of silently degrading.
PropagatorSet build_propagators(const HamiltonianSpec& spec, const ContourParams& contour,
                                const PropagatorOptions& options = {});
InsertionMatrix build_insertion(const HamiltonianSpec& spec, const ContourParams& contour,
                                const PropagatorOptions& options, Leg leg, int site,
                                int component);

/// Same, reusing caller-held workspaces (base grid and, when the doubling
/// check is on, the doubled grid).
PropagatorSet build_propagators(const PropagatorWorkspace& base,
                                const PropagatorWorkspace* doubled,
                                const HamiltonianSpec& spec, const ContourParams& contour,
                                const PropagatorOptions& options);
InsertionMatrix build_insertion(const PropagatorWorkspace& base,
                                const PropagatorWorkspace* doubled, const ContourParams& contour,
                                const PropagatorOptions& options, Leg leg, int site,
                                int component);

/// Optional per-leg slice counts (N_+, N_-, N_E); the symmetric contour uses
/// (N, N, N). Asymmetric counts rescale each leg's step to keep beta and
/// t_max fixed and are exposed for partition-function studies only.
struct LegCounts {
  long n_plus, n_minus, n_euclid;
};

/// tr(P_+^N P_-^N P_E^N) via binary powering.
Complex partition_trace(const PropagatorSet& props);
Complex partition_trace(const PropagatorSet& props, const LegCounts& legs);

/// (s+1)^2 tr(leg-ordered product with two slices replaced by insertion
/// matrices) / partition_trace, following the insertion_slots() convention.
Complex lattice_correlator(const PropagatorSet& props, const InsertionSet& insertions,
                           Ordering ordering, long t_hat, long t_hat_prime, int x, int i,
                           int xp, int ip);

/// Complex correlator values on a real-time grid with provenance.
struct CorrelatorSeries {
  enum class Source { lattice, exact, mc };

  Ordering ordering = Ordering::unordered;
  std::vector<double> times;
  std::vector<Complex> values;
  Source source = Source::lattice;
  long n_slices = 0;          // lattice/mc provenance
  QuadratureSizes grid;       // lattice provenance
  std::vector<Complex> errors;  // mc provenance (per-point stderr), else empty
};

}  // namespace skspin
