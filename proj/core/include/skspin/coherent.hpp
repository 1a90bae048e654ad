#pragma once

#include <functional>
#include <vector>

#include "skspin/bloch.hpp"
#include "skspin/lattice.hpp"
#include "skspin/su2.hpp"

namespace skspin {

/// Tensor-product coherent state over all sites, unit norm.
StateVector coherent_state(const SphereConfig& omega, const SpinRep& rep);

/// Closed-form overlap <bra|ket>: product over sites of
/// (cos(t'/2)cos(t/2) + e^{-i(p'-p)} sin(t'/2)sin(t/2))^(2s).
Complex overlap(const SphereConfig& bra, const SphereConfig& ket, const SpinRep& rep);
Complex site_overlap(const BlochPoint& bra, const BlochPoint& ket, int two_s);

struct SphereNode {
  BlochPoint point;
  double weight;  // includes the (2s+1)/(4pi) measure factor
};

/// Tensor-product quadrature over V spheres: Gauss-Legendre in cos(theta)
/// crossed with a uniform trapezoid in phi. The same node set serves every
/// site; iteration over site tuples happens in quad_operator.
struct QuadratureGrid {
  SpinRep rep;
  int sites = 1;
  int n_theta = 2;
  int n_phi = 2;
  std::vector<SphereNode> sphere_nodes;

  long nodes_per_sphere() const { return static_cast<long>(sphere_nodes.size()); }
  long total_nodes() const;
};

QuadratureGrid build_grid(const SpinRep& rep, int sites, int n_theta, int n_phi);

/// sum over nodes of weight * f(Omega) * |Omega><Omega| as a dense matrix.
/// Accumulation is chunked with a deterministic pairwise-tree merge, so the
/// result is bit-identical for any worker count.
OperatorMatrix quad_operator(const QuadratureGrid& grid,
                             const std::function<Complex(const SphereConfig&)>& f);

/// Gauss-Legendre nodes/weights on [-1,1] (Newton on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Deterministic pairwise-tree reduction of per-chunk matrices, chunk order fixed.
OperatorMatrix tree_reduce(std::vector<OperatorMatrix>& parts);

}  // namespace skspin
