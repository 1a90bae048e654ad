#include <doctest.h>

#include <cmath>
#include <vector>

#include "skspin/sk_evaluator.hpp"
#include "test_support.hpp"

using namespace skspin;
using namespace skspin::testing;

namespace {

double max_abs(const OperatorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

InsertionSet demo_insertions(const HamiltonianSpec& spec, const ContourParams& contour,
                             const PropagatorOptions& options, int component = 1) {
  InsertionSet set;
  for (Leg leg : {Leg::plus, Leg::minus})
    for (int site : {0, 1})
      set.add(build_insertion(spec, contour, options, leg, site, component));
  return set;
}

const PropagatorOptions kFast{{8, 12}, false, 1e-10};

}  // namespace

TEST_CASE("free spins: propagators reduce to the identity") {
  const HamiltonianSpec spec = free_spins(1);
  const ContourParams contour{1.0, 1.0, 10};
  const PropagatorSet props = build_propagators(spec, contour, kFast);
  CHECK(max_abs(props.p_plus - OperatorMatrix::Identity(2, 2)) < 1e-10);
  CHECK(max_abs(props.p_euclid - OperatorMatrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("free spins: (s+1) insertion(+,x,3) is the spin matrix") {
  const HamiltonianSpec spec = free_spins(2);
  const ContourParams contour{1.0, 1.0, 10};
  const InsertionMatrix ins = build_insertion(spec, contour, kFast, Leg::plus, 0, 3);
  const OperatorMatrix expected = spin_matrix(spec.rep, 2, 0, 3);
  CHECK(max_abs(1.5 * ins.matrix - expected) < 1e-10);
}

TEST_CASE("propagator set invariants for the demo spec") {
  const HamiltonianSpec spec = xz_demo();
  const ContourParams contour{3.0, 10.0, 100};
  const PropagatorSet props = build_propagators(spec, contour, kFast);
  CHECK(max_abs(props.p_minus - props.p_plus.adjoint()) < 1e-12);
  CHECK(max_abs(props.p_euclid - props.p_euclid.adjoint()) < 1e-12);
}

TEST_CASE("p_plus approximates 1 + i dt H to O(dt^2)") {
  const HamiltonianSpec spec = xz_demo();
  const OperatorMatrix h = hamiltonian_matrix(spec);
  const OperatorMatrix id = OperatorMatrix::Identity(4, 4);
  auto deviation = [&](long n) {
    const ContourParams contour{3.0, 10.0, n};
    const PropagatorSet props = build_propagators(spec, contour, kFast);
    return max_abs(props.p_plus - (id + Complex(0.0, contour.dt()) * h));
  };
  const double ratio = deviation(100) / deviation(200);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("exactness chain: every leg's P matches its Trotter slice to O(dt^2)") {
  const HamiltonianSpec spec = xz_demo();
  const OperatorMatrix h = hamiltonian_matrix(spec);
  const OperatorMatrix id = OperatorMatrix::Identity(4, 4);
  for (long n : {100L, 200L}) {
    const ContourParams contour{3.0, 10.0, n};
    const PropagatorSet props = build_propagators(spec, contour, kFast);
    const double dt = contour.dt(), dtau = contour.dtau();
    const double bound = 0.5 * dt * dt;  // |h|_max^2/2 dt^2 scale, model-specific slack below
    CHECK(max_abs(props.p_plus - (id + Complex(0, dt) * h)) < 15 * bound);
    CHECK(max_abs(props.p_minus - (id - Complex(0, dt) * h)) < 15 * bound);
    CHECK(max_abs(props.p_euclid - (id - dtau * h)) < 15 * bound);
  }
}

TEST_CASE("insertion invariants") {
  const HamiltonianSpec spec = xz_demo();
  const ContourParams contour{3.0, 10.0, 200};
  SUBCASE("minus insertion is the adjoint of the plus insertion") {
    const InsertionMatrix plus = build_insertion(spec, contour, kFast, Leg::plus, 0, 1);
    const InsertionMatrix minus = build_insertion(spec, contour, kFast, Leg::minus, 0, 1);
    CHECK(max_abs(minus.matrix - plus.matrix.adjoint()) < 1e-12);
  }
  SUBCASE("(s+1) insertion approaches the spin matrix linearly in dt") {
    const OperatorMatrix s10 = spin_matrix(spec.rep, 2, 0, 1);
    auto deviation = [&](long n) {
      const InsertionMatrix ins =
          build_insertion(spec, {3.0, 10.0, n}, kFast, Leg::plus, 0, 1);
      return max_abs(1.5 * ins.matrix - s10);
    };
    const double ratio = deviation(100) / deviation(200);
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
  }
  SUBCASE("euclidean insertions are rejected") {
    CHECK_THROWS_AS(build_insertion(spec, contour, kFast, Leg::euclid, 0, 1), Error);
  }
}

TEST_CASE("partition_trace properties") {
  SUBCASE("free spins give the Hilbert dimension") {
    const PropagatorSet props = build_propagators(free_spins(2), {1.0, 1.0, 5}, kFast);
    const Complex z = partition_trace(props);
    CHECK(z.real() == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(std::abs(z.imag()) < 1e-12);
  }
  SUBCASE("demo spec converges linearly to tr e^{-beta H}") {
    const HamiltonianSpec spec = xz_demo();
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(hamiltonian_matrix(spec));
    double z_exact = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k) z_exact += std::exp(-3.0 * es.eigenvalues()(k));
    auto deviation = [&](long n) {
      const PropagatorSet props = build_propagators(spec, {3.0, 10.0, n}, kFast);
      return std::abs(partition_trace(props) / z_exact - 1.0);
    };
    const double ratio = deviation(100) / deviation(200);
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.5);
  }
  SUBCASE("imaginary part cancels between the legs") {
    const PropagatorSet props = build_propagators(xz_demo(), {3.0, 10.0, 150}, kFast);
    const Complex z = partition_trace(props);
    CHECK(std::abs(z.imag()) / std::abs(z) < 1e-10);
  }
  SUBCASE("cyclic rotation of the legs leaves the trace unchanged") {
    const PropagatorSet props = build_propagators(xz_demo(), {3.0, 10.0, 60}, kFast);
    const long n = 60;
    const Complex fwd_first = partition_trace(props);
    const Complex euclid_first = (matrix_power(props.p_euclid, n) *
                                  matrix_power(props.p_plus, n) *
                                  matrix_power(props.p_minus, n))
                                     .trace();
    CHECK(std::abs(fwd_first - euclid_first) < 1e-12 * std::abs(fwd_first));
  }
  SUBCASE("asymmetric leg counts also converge to tr e^{-beta H}") {
    const HamiltonianSpec spec = xz_demo();
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(hamiltonian_matrix(spec));
    double z_exact = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k) z_exact += std::exp(-3.0 * es.eigenvalues()(k));
    // legs with their own slice counts: build each at its own step
    PropagatorWorkspace ws(spec, kFast.grid);
    auto deviation = [&](long np, long nm, long ne) {
      PropagatorSet mixed;
      mixed.contour = {3.0, 10.0, np};
      mixed.s_plus_one = spec.rep.s_plus_one();
      mixed.p_plus = ws.weighted_operator(Complex(0.0, 10.0 / np));
      mixed.p_minus = ws.weighted_operator(Complex(0.0, -10.0 / nm));
      mixed.p_euclid = ws.weighted_operator(Complex(-3.0 / ne, 0.0));
      return std::abs(partition_trace(mixed, {np, nm, ne}) / z_exact - 1.0);
    };
    const double ratio = deviation(300, 200, 150) / deviation(600, 400, 300);
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.5);
  }
}

TEST_CASE("lattice_correlator free spin gives 1/4 in every ordering") {
  const HamiltonianSpec spec = free_spins(1);
  const ContourParams contour{1.0, 1.0, 8};
  const PropagatorSet props = build_propagators(spec, contour, kFast);
  InsertionSet set;
  set.add(build_insertion(spec, contour, kFast, Leg::plus, 0, 3));
  set.add(build_insertion(spec, contour, kFast, Leg::minus, 0, 3));
  for (const auto& [ordering, th, tp] :
       {std::tuple{Ordering::unordered, 3L, 5L}, std::tuple{Ordering::anti_ordered, 3L, 5L},
        std::tuple{Ordering::time_ordered, 5L, 3L}}) {
    const Complex c = lattice_correlator(props, set, ordering, th, tp, 0, 3, 0, 3);
    CHECK(c.real() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::abs(c.imag()) < 1e-10);
  }
}

TEST_CASE("lattice_correlator rejects out-of-domain requests") {
  const HamiltonianSpec spec = xz_demo();
  const ContourParams contour{3.0, 10.0, 16};
  const PropagatorSet props = build_propagators(spec, contour, kFast);
  const InsertionSet set = demo_insertions(spec, contour, kFast);
  CHECK_THROWS_AS(
      lattice_correlator(props, set, Ordering::anti_ordered, 9, 4, 0, 1, 0, 1), Error);
  CHECK_THROWS_AS(
      lattice_correlator(props, set, Ordering::anti_ordered, 4, 4, 0, 1, 0, 1), Error);
  CHECK_THROWS_AS(
      lattice_correlator(props, set, Ordering::time_ordered, 4, 9, 0, 1, 0, 1), Error);
  CHECK_THROWS_AS(
      lattice_correlator(props, set, Ordering::unordered, 1, 16, 0, 1, 0, 1), Error);
  try {
    lattice_correlator(props, set, Ordering::unordered, 0, 0, 0, 1, 0, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_ordering_domain);
  }
}

TEST_CASE("lattice correlators converge to the exact oracle") {
  const HamiltonianSpec spec = xz_demo();
  const Complex exact = exact_correlator(spec, 3.0, 0, 1, 2.0, 0, 1, 0.0);
  std::vector<double> devs;
  for (long n : {100L, 200L, 400L}) {
    const ContourParams contour{3.0, 10.0, n};
    const PropagatorSet props = build_propagators(spec, contour, kFast);
    const InsertionSet set = demo_insertions(spec, contour, kFast);
    const Complex lat =
        lattice_correlator(props, set, Ordering::unordered, n / 5, 0, 0, 1, 0, 1);
    devs.push_back(std::abs(lat - exact));
  }
  CHECK(devs[0] / devs[1] == doctest::Approx(2.0).epsilon(0.2));
  CHECK(devs[1] / devs[2] == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("the three orderings meet at equal time in the continuum") {
  const HamiltonianSpec spec = xz_demo();
  // adjacent slots around t = 2.5: anti (t_hat, t_hat+1), ordered (t_hat+1, t_hat)
  auto spread = [&](long n) {
    const ContourParams contour{3.0, 10.0, n};
    const PropagatorSet props = build_propagators(spec, contour, kFast);
    const InsertionSet set = demo_insertions(spec, contour, kFast);
    const long t_hat = n / 4;
    const Complex anti =
        lattice_correlator(props, set, Ordering::anti_ordered, t_hat, t_hat + 1, 0, 1, 0, 1);
    const Complex ordered =
        lattice_correlator(props, set, Ordering::time_ordered, t_hat + 1, t_hat, 0, 1, 0, 1);
    const Complex unordered =
        lattice_correlator(props, set, Ordering::unordered, t_hat, t_hat, 0, 1, 0, 1);
    return std::max({std::abs(anti - ordered), std::abs(anti - unordered),
                     std::abs(ordered - unordered)});
  };
  const double s100 = spread(100);
  const double s200 = spread(200);
  CHECK(s100 / s200 == doctest::Approx(2.0).epsilon(0.25));  // pairwise gaps close as 1/N
}

TEST_CASE("anti-ordered and time-ordered at swapped arguments are conjugates") {
  const HamiltonianSpec spec = xz_demo();
  const long n = 200;
  const ContourParams contour{3.0, 10.0, n};
  const PropagatorSet props = build_propagators(spec, contour, kFast);
  const InsertionSet set = demo_insertions(spec, contour, kFast);
  const Complex anti =
      lattice_correlator(props, set, Ordering::anti_ordered, n / 5, n / 2, 0, 1, 1, 1);
  const Complex ordered =
      lattice_correlator(props, set, Ordering::time_ordered, n / 2, n / 5, 1, 1, 0, 1);
  // <A(t)B(t')> with t<t' vs <B(t')A(t)>: complex conjugates up to O(dt)
  CHECK(std::abs(std::conj(anti) - ordered) < 5.0 / n);
}

TEST_CASE("doubling check passes on the default grid and trips on a coarse one") {
  const HamiltonianSpec spec = xz_demo();
  const ContourParams contour{3.0, 10.0, 50};
  PropagatorOptions strict;
  strict.grid = {12, 24};
  strict.doubling_check = true;
  strict.doubling_tolerance = 1e-10;
  CHECK_NOTHROW(build_propagators(spec, contour, strict));

  PropagatorOptions coarse = strict;
  coarse.grid = {2, 2};  // phi grid too coarse for the h^k modes
  coarse.doubling_tolerance = 1e-14;
  CHECK_THROWS_AS(build_propagators(spec, contour, coarse), Error);
}
