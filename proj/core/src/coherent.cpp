#include "skspin/coherent.hpp"

#include <cmath>
#include <numbers>

#include "skspin/parallel.hpp"

namespace skspin {

StateVector coherent_state(const SphereConfig& omega, const SpinRep& rep) {
  const SpinMatrices mats = spin_rep_matrices(rep.two_s);
  StateVector state = StateVector::Ones(1);
  for (const auto& p : omega.points) {
    const StateVector site = coherent_site_state(p, mats);
    StateVector next(state.size() * site.size());
    for (Eigen::Index i = 0; i < state.size(); ++i)
      next.segment(i * site.size(), site.size()) = state(i) * site;
    state.swap(next);
  }
  return state;
}

namespace {

// half-angle trig with the representable poles treated exactly, so that
// antipodal pole pairs give an exact zero overlap
struct HalfTrig {
  double cos_half, sin_half;
};

HalfTrig half_trig(double theta) {
  if (theta == 0.0) return {1.0, 0.0};
  if (theta == std::numbers::pi) return {0.0, 1.0};
  return {std::cos(0.5 * theta), std::sin(0.5 * theta)};
}

}  // namespace

Complex site_overlap(const BlochPoint& bra, const BlochPoint& ket, int two_s) {
  const HalfTrig a = half_trig(bra.theta);
  const HalfTrig b = half_trig(ket.theta);
  const Complex base = a.cos_half * b.cos_half +
                       std::exp(Complex(0.0, -(bra.phi - ket.phi))) * a.sin_half * b.sin_half;
  Complex pow = 1.0;
  for (int k = 0; k < two_s; ++k) pow *= base;
  return pow;
}

Complex overlap(const SphereConfig& bra, const SphereConfig& ket, const SpinRep& rep) {
  if (bra.sites() != ket.sites())
    fail(ErrorCode::dimension_mismatch, "overlap of configurations with different site counts");
  Complex prod = 1.0;
  for (int x = 0; x < bra.sites(); ++x)
    prod *= site_overlap(bra.points[x], ket.points[x], rep.two_s);
  return prod;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence up to P_n and its derivative at x
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    nodes[k] = -x;
    nodes[n - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[k] = w;
    weights[n - 1 - k] = w;
  }
}

QuadratureGrid build_grid(const SpinRep& rep, int sites, int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2)
    fail(ErrorCode::too_few_nodes, "quadrature needs n_theta >= 2 and n_phi >= 2");
  if (sites < 1) fail(ErrorCode::bad_site_index, "grid needs at least one site");

  QuadratureGrid grid;
  grid.rep = rep;
  grid.sites = sites;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;

  std::vector<double> u, wu;
  gauss_legendre(n_theta, u, wu);
  const double measure = rep.dim() / (4.0 * std::numbers::pi);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  grid.sphere_nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int k = 0; k < n_theta; ++k) {
    const double theta = std::acos(u[k]);
    for (int l = 0; l < n_phi; ++l)
      grid.sphere_nodes.push_back({{theta, l * dphi}, measure * wu[k] * dphi});
  }
  return grid;
}

long QuadratureGrid::total_nodes() const {
  long total = 1;
  for (int i = 0; i < sites; ++i) total *= nodes_per_sphere();
  return total;
}

OperatorMatrix tree_reduce(std::vector<OperatorMatrix>& parts) {
  if (parts.empty()) fail(ErrorCode::dimension_mismatch, "nothing to reduce");
  // pairwise tree over the fixed chunk order
  for (std::size_t stride = 1; stride < parts.size(); stride *= 2)
    for (std::size_t i = 0; i + stride < parts.size(); i += 2 * stride)
      parts[i] += parts[i + stride];
  return parts[0];
}

OperatorMatrix quad_operator(const QuadratureGrid& grid,
                             const std::function<Complex(const SphereConfig&)>& f) {
  const long per_site = grid.nodes_per_sphere();
  const long total = grid.total_nodes();
  const long dim = hilbert_dim(grid.rep, grid.sites);

  const SpinMatrices mats = spin_rep_matrices(grid.rep.two_s);
  std::vector<StateVector> site_states(per_site);
  for (long a = 0; a < per_site; ++a)
    site_states[a] = coherent_site_state(grid.sphere_nodes[a].point, mats);

  const int n_chunks = chunk_count(total);
  std::vector<OperatorMatrix> parts(std::max(n_chunks, 1),
                                    OperatorMatrix::Zero(dim, dim));

  parallel_for_chunks(total, [&](int chunk, long begin, long end) {
    OperatorMatrix& acc = parts[chunk];
    SphereConfig config;
    config.points.resize(grid.sites);
    std::vector<long> digits(grid.sites);
    StateVector state(dim), scratch(dim);
    for (long n = begin; n < end; ++n) {
      long rem = n;
      double weight = 1.0;
      for (int x = grid.sites - 1; x >= 0; --x) {
        digits[x] = rem % per_site;
        rem /= per_site;
        config.points[x] = grid.sphere_nodes[digits[x]].point;
        weight *= grid.sphere_nodes[digits[x]].weight;
      }
      // tensor product of site states, site 0 most significant
      state.setOnes(1);
      for (int x = 0; x < grid.sites; ++x) {
        const StateVector& site = site_states[digits[x]];
        scratch.resize(state.size() * site.size());
        for (Eigen::Index i = 0; i < state.size(); ++i)
          scratch.segment(i * site.size(), site.size()) = state(i) * site;
        state.swap(scratch);
      }
      const Complex c = weight * f(config);
      acc.noalias() += c * state * state.adjoint();
    }
  });

  return tree_reduce(parts);
}

}  // namespace skspin
