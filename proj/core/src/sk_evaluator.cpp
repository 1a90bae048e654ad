#include "skspin/sk_evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "skspin/parallel.hpp"

namespace skspin {

struct PropagatorWorkspace::Impl {
  QuadratureSizes sizes;
  int sites = 1;
  long dim = 2;
  long per_site = 0;
  long total = 0;
  // per sphere node
  std::vector<double> node_weight;
  std::vector<std::array<double, 3>> node_cart;
  std::vector<StateVector> node_state;
  // per full node (site tuple, flattened with site 0 most significant)
  std::vector<double> h_values;
  std::vector<double> tuple_weight;

  void decode(long n, std::vector<long>& digits) const {
    for (int x = sites - 1; x >= 0; --x) {
      digits[x] = n % per_site;
      n /= per_site;
    }
  }

  void tensor_state(const std::vector<long>& digits, StateVector& state,
                    StateVector& scratch) const {
    state.setOnes(1);
    for (int x = 0; x < sites; ++x) {
      const StateVector& site = node_state[digits[x]];
      scratch.resize(state.size() * site.size());
      for (Eigen::Index i = 0; i < state.size(); ++i)
        scratch.segment(i * site.size(), site.size()) = state(i) * site;
      state.swap(scratch);
    }
  }

  template <typename NodeFactor>
  OperatorMatrix accumulate(Complex coeff, NodeFactor&& factor) const {
    const int n_chunks = chunk_count(total);
    std::vector<OperatorMatrix> parts(std::max(n_chunks, 1), OperatorMatrix::Zero(dim, dim));
    parallel_for_chunks(total, [&](int chunk, long begin, long end) {
      OperatorMatrix& acc = parts[chunk];
      std::vector<long> digits(sites);
      StateVector state(dim), scratch(dim);
      for (long n = begin; n < end; ++n) {
        decode(n, digits);
        tensor_state(digits, state, scratch);
        const Complex c = tuple_weight[n] * std::exp(coeff * h_values[n]) * factor(digits);
        acc.noalias() += c * state * state.adjoint();
      }
    });
    return tree_reduce(parts);
  }
};

PropagatorWorkspace::PropagatorWorkspace(const HamiltonianSpec& spec, QuadratureSizes sizes)
    : impl_(std::make_unique<Impl>()) {
  validate_or_throw(spec);
  const QuadratureGrid grid = build_grid(spec.rep, spec.lattice.sites, sizes.n_theta, sizes.n_phi);

  impl_->sizes = sizes;
  impl_->sites = spec.lattice.sites;
  impl_->dim = hilbert_dim(spec.rep, spec.lattice.sites);
  impl_->per_site = grid.nodes_per_sphere();
  impl_->total = grid.total_nodes();

  const SpinMatrices mats = spin_rep_matrices(spec.rep.two_s);
  impl_->node_weight.resize(impl_->per_site);
  impl_->node_cart.resize(impl_->per_site);
  impl_->node_state.resize(impl_->per_site);
  for (long a = 0; a < impl_->per_site; ++a) {
    impl_->node_weight[a] = grid.sphere_nodes[a].weight;
    impl_->node_cart[a] = grid.sphere_nodes[a].point.cartesian();
    impl_->node_state[a] = coherent_site_state(grid.sphere_nodes[a].point, mats);
  }

  // precompute h and the tuple weight on every full node
  impl_->h_values.resize(impl_->total);
  impl_->tuple_weight.resize(impl_->total);
  const double sp1 = spec.rep.s_plus_one();
  parallel_for_chunks(impl_->total, [&](int, long begin, long end) {
    std::vector<long> digits(impl_->sites);
    for (long n = begin; n < end; ++n) {
      impl_->decode(n, digits);
      double weight = 1.0;
      for (int x = 0; x < impl_->sites; ++x) weight *= impl_->node_weight[digits[x]];
      double h = 0.0;
      for (const auto& term : spec.terms) {
        double prod = term.coupling;
        for (const auto& f : term.factors)
          prod *= sp1 * impl_->node_cart[digits[f.site]][f.component - 1];
        h += prod;
      }
      impl_->tuple_weight[n] = weight;
      impl_->h_values[n] = h;
    }
  });
}

PropagatorWorkspace::~PropagatorWorkspace() = default;
PropagatorWorkspace::PropagatorWorkspace(PropagatorWorkspace&&) noexcept = default;
PropagatorWorkspace& PropagatorWorkspace::operator=(PropagatorWorkspace&&) noexcept = default;

OperatorMatrix PropagatorWorkspace::weighted_operator(Complex coeff) const {
  return impl_->accumulate(coeff, [](const std::vector<long>&) { return 1.0; });
}

OperatorMatrix PropagatorWorkspace::weighted_insertion(Complex coeff, int site,
                                                       int component) const {
  if (site < 0 || site >= impl_->sites) fail(ErrorCode::bad_site_index, "insertion site");
  if (component < 1 || component > 3) fail(ErrorCode::dimension_mismatch, "insertion component");
  const auto& cart = impl_->node_cart;
  return impl_->accumulate(coeff, [&cart, site, component](const std::vector<long>& digits) {
    return cart[digits[site]][component - 1];
  });
}

QuadratureSizes PropagatorWorkspace::sizes() const { return impl_->sizes; }
long PropagatorWorkspace::total_nodes() const { return impl_->total; }

namespace {

Complex leg_coeff(Leg leg, double dt, double dtau) {
  switch (leg) {
    case Leg::plus: return Complex(0.0, dt);
    case Leg::minus: return Complex(0.0, -dt);
    case Leg::euclid: return Complex(-dtau, 0.0);
  }
  return 0.0;
}

void check_doubling(const OperatorMatrix& base, const OperatorMatrix& doubled, double tol,
                    const char* what) {
  const double diff = (base - doubled).cwiseAbs().maxCoeff();
  if (!(diff <= tol))
    fail(ErrorCode::convergence_failure,
         std::string(what) + ": quadrature doubling check moved entries by " +
             std::to_string(diff) + " (tolerance " + std::to_string(tol) + ")");
}

}  // namespace

PropagatorSet build_propagators(const PropagatorWorkspace& base,
                                const PropagatorWorkspace* doubled,
                                const HamiltonianSpec& spec, const ContourParams& contour,
                                const PropagatorOptions& options) {
  validate_or_throw(contour);
  PropagatorSet out;
  out.contour = contour;
  out.grid = base.sizes();
  out.s_plus_one = spec.rep.s_plus_one();
  const double dt = contour.dt(), dtau = contour.dtau();
  out.p_plus = base.weighted_operator(leg_coeff(Leg::plus, dt, dtau));
  out.p_minus = base.weighted_operator(leg_coeff(Leg::minus, dt, dtau));
  out.p_euclid = base.weighted_operator(leg_coeff(Leg::euclid, dt, dtau));
  if (options.doubling_check) {
    if (doubled == nullptr) fail(ErrorCode::convergence_failure, "doubling workspace missing");
    check_doubling(out.p_plus, doubled->weighted_operator(leg_coeff(Leg::plus, dt, dtau)),
                   options.doubling_tolerance, "P_+");
    check_doubling(out.p_euclid, doubled->weighted_operator(leg_coeff(Leg::euclid, dt, dtau)),
                   options.doubling_tolerance, "P_E");
  }
  return out;
}

InsertionMatrix build_insertion(const PropagatorWorkspace& base,
                                const PropagatorWorkspace* doubled, const ContourParams& contour,
                                const PropagatorOptions& options, Leg leg, int site,
                                int component) {
  validate_or_throw(contour);
  if (leg == Leg::euclid)
    fail(ErrorCode::invalid_ordering_domain, "insertions live on the real-time legs");
  const Complex coeff = leg_coeff(leg, contour.dt(), contour.dtau());
  InsertionMatrix out{leg, site, component, base.weighted_insertion(coeff, site, component)};
  if (options.doubling_check) {
    if (doubled == nullptr) fail(ErrorCode::convergence_failure, "doubling workspace missing");
    check_doubling(out.matrix, doubled->weighted_insertion(coeff, site, component),
                   options.doubling_tolerance, "insertion");
  }
  return out;
}

PropagatorSet build_propagators(const HamiltonianSpec& spec, const ContourParams& contour,
                                const PropagatorOptions& options) {
  PropagatorWorkspace base(spec, options.grid);
  if (!options.doubling_check) return build_propagators(base, nullptr, spec, contour, options);
  PropagatorWorkspace doubled(spec, {2 * options.grid.n_theta, 2 * options.grid.n_phi});
  return build_propagators(base, &doubled, spec, contour, options);
}

InsertionMatrix build_insertion(const HamiltonianSpec& spec, const ContourParams& contour,
                                const PropagatorOptions& options, Leg leg, int site,
                                int component) {
  PropagatorWorkspace base(spec, options.grid);
  if (!options.doubling_check)
    return build_insertion(base, nullptr, contour, options, leg, site, component);
  PropagatorWorkspace doubled(spec, {2 * options.grid.n_theta, 2 * options.grid.n_phi});
  return build_insertion(base, &doubled, contour, options, leg, site, component);
}

void InsertionSet::add(InsertionMatrix m) {
  items_.push_back(std::move(m));
}

bool InsertionSet::contains(Leg leg, int site, int component) const {
  for (const auto& m : items_)
    if (m.leg == leg && m.site == site && m.component == component) return true;
  return false;
}

const InsertionMatrix& InsertionSet::find(Leg leg, int site, int component) const {
  for (const auto& m : items_)
    if (m.leg == leg && m.site == site && m.component == component) return m;
  fail(ErrorCode::dimension_mismatch,
       std::string("no insertion matrix for leg ") + to_string(leg) + ", site " +
           std::to_string(site) + ", component " + std::to_string(component));
}

Complex partition_trace(const PropagatorSet& props) {
  const long n = props.contour.n_slices;
  return partition_trace(props, {n, n, n});
}

Complex partition_trace(const PropagatorSet& props, const LegCounts& legs) {
  return (matrix_power(props.p_plus, legs.n_plus) * matrix_power(props.p_minus, legs.n_minus) *
          matrix_power(props.p_euclid, legs.n_euclid))
      .trace();
}

Complex lattice_correlator(const PropagatorSet& props, const InsertionSet& insertions,
                           Ordering ordering, long t_hat, long t_hat_prime, int x, int i,
                           int xp, int ip) {
  const long n = props.contour.n_slices;
  const InsertionSlots slots = insertion_slots(ordering, t_hat, t_hat_prime, n);
  const OperatorMatrix& qa = insertions.find(slots.leg_a, x, i).matrix;
  const OperatorMatrix& qb = insertions.find(slots.leg_b, xp, ip).matrix;

  OperatorMatrix fwd, bwd;
  if (slots.leg_a == Leg::plus && slots.leg_b == Leg::plus) {
    fwd = matrix_power(props.p_plus, slots.slot_a - 1) * qa *
          matrix_power(props.p_plus, slots.slot_b - slots.slot_a - 1) * qb *
          matrix_power(props.p_plus, n - slots.slot_b);
    bwd = matrix_power(props.p_minus, n);
  } else if (slots.leg_a == Leg::minus && slots.leg_b == Leg::minus) {
    fwd = matrix_power(props.p_plus, n);
    bwd = matrix_power(props.p_minus, slots.slot_a - 1) * qa *
          matrix_power(props.p_minus, slots.slot_b - slots.slot_a - 1) * qb *
          matrix_power(props.p_minus, n - slots.slot_b);
  } else {
    fwd = matrix_power(props.p_plus, slots.slot_a - 1) * qa *
          matrix_power(props.p_plus, n - slots.slot_a);
    bwd = matrix_power(props.p_minus, slots.slot_b - 1) * qb *
          matrix_power(props.p_minus, n - slots.slot_b);
  }
  const Complex numerator = (fwd * bwd * matrix_power(props.p_euclid, n)).trace();
  const double sp1 = props.s_plus_one;
  return sp1 * sp1 * numerator / partition_trace(props);
}

}  // namespace skspin
