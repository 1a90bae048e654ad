#include "skspin/mc_sampler.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

#include "skspin/coherent.hpp"
#include "skspin/parallel.hpp"

namespace skspin {

PathConfig make_path(long n_slices, int sites) {
  PathConfig path;
  path.n_slices = n_slices;
  path.sites = sites;
  for (auto& leg : path.points) leg.assign(static_cast<std::size_t>(n_slices) * sites, {});
  return path;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi <= -std::numbers::pi) phi += kTwoPi;
  if (phi > std::numbers::pi) phi -= kTwoPi;
  return phi;
}

// h of one timeslice configuration
double slice_h(const HamiltonianSpec& spec, const PathConfig& path, Leg leg, long slice) {
  const double sp1 = spec.rep.s_plus_one();
  double total = 0.0;
  for (const auto& term : spec.terms) {
    double prod = term.coupling;
    for (const auto& f : term.factors)
      prod *= sp1 * path.at(leg, slice, f.site).component(f.component);
    total += prod;
  }
  return total;
}

struct ChainLink {
  Leg leg;
  long slice;
};

// chain position k in [0, 3N): +1..+N, -1..-N, E1..EN, cyclically closed
ChainLink link_at(long k, long n) { return {static_cast<Leg>(k / n), k % n}; }

}  // namespace

ActionValue sk_action(const HamiltonianSpec& spec, const ContourParams& contour,
                      const PathConfig& path) {
  validate_or_throw(spec);
  validate_or_throw(contour);
  if (path.n_slices != contour.n_slices || path.sites != spec.lattice.sites)
    fail(ErrorCode::dimension_mismatch, "path shape does not match spec/contour");

  const long n = contour.n_slices;
  const double dt = contour.dt(), dtau = contour.dtau();
  double log_mag = 0.0, phase = 0.0;

  for (long slice = 0; slice < n; ++slice) {
    phase += dt * slice_h(spec, path, Leg::plus, slice);
    phase -= dt * slice_h(spec, path, Leg::minus, slice);
    log_mag -= dtau * slice_h(spec, path, Leg::euclid, slice);
  }

  const long chain_length = 3 * n;
  for (long k = 0; k < chain_length; ++k) {
    const ChainLink a = link_at(k, n);
    const ChainLink b = link_at((k + 1) % chain_length, n);
    Complex ov = 1.0;
    for (int x = 0; x < path.sites; ++x)
      ov *= site_overlap(path.at(a.leg, a.slice, x), path.at(b.leg, b.slice, x), spec.rep.two_s);
    const double mag = std::abs(ov);
    if (mag == 0.0)
      fail(ErrorCode::zero_overlap,
           "adjacent slices are exactly orthogonal (chain position " + std::to_string(k) + ")");
    log_mag += std::log(mag);
    phase += std::arg(ov);
  }
  return {log_mag, wrap_phase(phase)};
}

namespace {

class Rng {
 public:
  Rng(std::uint64_t seed, int chain) {
    std::seed_seq seq{static_cast<std::uint64_t>(0x736b7370696eULL), seed,
                      static_cast<std::uint64_t>(chain)};
    engine_.seed(seq);
  }
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }  // [0,1)

 private:
  std::mt19937_64 engine_;
};

BlochPoint random_point(Rng& rng) {
  const double u = 2.0 * rng.uniform() - 1.0;
  return {std::acos(std::clamp(u, -1.0, 1.0)), kTwoPi * rng.uniform()};
}

// uniform draw in the geodesic cap of angular radius `width` around p
BlochPoint cap_move(const BlochPoint& p, double width, Rng& rng) {
  const double cos_g = 1.0 - rng.uniform() * (1.0 - std::cos(width));
  const double sin_g = std::sqrt(std::max(0.0, 1.0 - cos_g * cos_g));
  const double psi = kTwoPi * rng.uniform();
  const auto z = p.cartesian();
  // tangent frame at p
  const double st = std::sin(p.theta);
  std::array<double, 3> e1, e2;
  if (st > 1e-12) {
    e1 = {std::cos(p.theta) * std::cos(p.phi), std::cos(p.theta) * std::sin(p.phi), -st};
    e2 = {-std::sin(p.phi), std::cos(p.phi), 0.0};
  } else {
    e1 = {1.0, 0.0, 0.0};
    e2 = {0.0, 1.0, 0.0};
  }
  std::array<double, 3> v;
  for (int c = 0; c < 3; ++c)
    v[c] = cos_g * z[c] + sin_g * (std::cos(psi) * e1[c] + std::sin(psi) * e2[c]);
  return bloch_from_cartesian(v);
}

struct ChainSeries {
  std::vector<Complex> weighted;  // O * e^{i phi}
  std::vector<Complex> sign;      // e^{i phi}
  long accepted = 0;
  long attempted = 0;
};

// Metropolis on |e^{S_SK}|: only log-magnitude differences enter the accept
// step; moving one site of one slice touches the two adjacent chain overlaps
// and (on the Euclidean leg) the slice's h.
ChainSeries run_chain(const HamiltonianSpec& spec, const ContourParams& contour,
                      const McParams& params, const PathObservable& observable, int chain) {
  const long n = contour.n_slices;
  const int sites = spec.lattice.sites;
  const int two_s = spec.rep.two_s;
  const double dtau = contour.dtau();
  const long chain_length = 3 * n;

  Rng rng(params.seed, chain);
  PathConfig path = make_path(n, sites);
  for (auto& leg : path.points)
    for (auto& p : leg) p = random_point(rng);

  ChainSeries series;
  series.weighted.reserve(params.n_samples / params.measure_every + 1);
  series.sign.reserve(params.n_samples / params.measure_every + 1);

  auto sweep = [&] {
    for (long k = 0; k < chain_length; ++k) {
      const ChainLink here = link_at(k, n);
      const ChainLink prev = link_at((k + chain_length - 1) % chain_length, n);
      const ChainLink next = link_at((k + 1) % chain_length, n);
      for (int x = 0; x < sites; ++x) {
        ++series.attempted;
        const BlochPoint old_pt = path.at(here.leg, here.slice, x);
        const BlochPoint new_pt = cap_move(old_pt, params.proposal_width, rng);
        const BlochPoint& before = path.at(prev.leg, prev.slice, x);
        const BlochPoint& after = path.at(next.leg, next.slice, x);

        const double m_in_old = std::abs(site_overlap(before, old_pt, two_s));
        const double m_out_old = std::abs(site_overlap(old_pt, after, two_s));
        const double m_in_new = std::abs(site_overlap(before, new_pt, two_s));
        const double m_out_new = std::abs(site_overlap(new_pt, after, two_s));
        if (m_in_new == 0.0 || m_out_new == 0.0) continue;  // orthogonal: zero weight

        double delta = std::log(m_in_new) + std::log(m_out_new) - std::log(m_in_old) -
                       std::log(m_out_old);
        if (here.leg == Leg::euclid) {
          const double h_old = slice_h(spec, path, here.leg, here.slice);
          path.at(here.leg, here.slice, x) = new_pt;
          const double h_new = slice_h(spec, path, here.leg, here.slice);
          path.at(here.leg, here.slice, x) = old_pt;
          delta -= dtau * (h_new - h_old);
        }
        if (delta >= 0.0 || std::log(rng.uniform() + 1e-300) < delta) {
          path.at(here.leg, here.slice, x) = new_pt;
          ++series.accepted;
        }
      }
    }
  };

  for (long i = 0; i < params.n_therm; ++i) sweep();
  for (long i = 0; i < params.n_samples; ++i) {
    sweep();
    if (i % params.measure_every == 0) {
      const ActionValue action = sk_action(spec, contour, path);
      const Complex w = std::exp(Complex(0.0, action.phase));
      series.weighted.push_back(observable(path) * w);
      series.sign.push_back(w);
    }
  }
  return series;
}

struct JackknifeResult {
  Complex mean;
  Complex err;
};

// delete-1 jackknife of the ratio mean(num)/mean(den) over equal-size bins
JackknifeResult jackknife_ratio(const std::vector<Complex>& num_bins,
                                const std::vector<Complex>& den_bins) {
  const std::size_t k = num_bins.size();
  if (k < 2) fail(ErrorCode::config_validation, "too few measurements for a binned error");
  Complex tot_num = 0.0, tot_den = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    tot_num += num_bins[j];
    tot_den += den_bins[j];
  }
  const Complex full = tot_num / tot_den;
  double var_re = 0.0, var_im = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const Complex rj = (tot_num - num_bins[j]) / (tot_den - den_bins[j]);
    var_re += (rj.real() - full.real()) * (rj.real() - full.real());
    var_im += (rj.imag() - full.imag()) * (rj.imag() - full.imag());
  }
  const double scale = static_cast<double>(k - 1) / static_cast<double>(k);
  return {full, Complex(std::sqrt(scale * var_re), std::sqrt(scale * var_im))};
}

// bin each chain separately (chains are independent), pool the bins
void make_bins(const std::vector<const std::vector<Complex>*>& chains, long bin_size,
               std::vector<Complex>& bins) {
  bins.clear();
  for (const auto* series : chains) {
    const long nb = static_cast<long>(series->size()) / bin_size;
    for (long j = 0; j < nb; ++j) {
      Complex acc = 0.0;
      for (long m = 0; m < bin_size; ++m) acc += (*series)[j * bin_size + m];
      bins.push_back(acc);  // bin sums; ratios are scale-invariant
    }
  }
}

}  // namespace

McEstimate metropolis_run(const HamiltonianSpec& spec, const ContourParams& contour,
                          const McParams& params, const PathObservable& observable) {
  validate_or_throw(spec);
  validate_or_throw(contour);
  if (params.n_chains < 1 || params.n_samples < 1 || params.measure_every < 1)
    fail(ErrorCode::config_validation, "mc parameters must be positive");
  if (!(params.proposal_width > 0.0 && params.proposal_width <= std::numbers::pi))
    fail(ErrorCode::config_validation, "proposal width must lie in (0, pi]");

  std::vector<ChainSeries> chains(params.n_chains);
  parallel_for_chunks(params.n_chains, [&](int, long begin, long end) {
    for (long c = begin; c < end; ++c)
      chains[c] = run_chain(spec, contour, params, observable, static_cast<int>(c));
  });

  std::vector<const std::vector<Complex>*> num_series, den_series;
  long n_meas = 0, accepted = 0, attempted = 0;
  for (const auto& c : chains) {
    num_series.push_back(&c.weighted);
    den_series.push_back(&c.sign);
    n_meas += static_cast<long>(c.weighted.size());
    accepted += c.accepted;
    attempted += c.attempted;
  }
  // grow the bin size until the jackknife error plateaus (or bins run short)
  std::vector<Complex> num_bins, den_bins, one_bins;
  JackknifeResult ratio{}, sign{};
  double prev_ratio_err = -1.0;
  long bin_size = 1;
  for (;; bin_size *= 2) {
    make_bins(num_series, bin_size, num_bins);
    make_bins(den_series, bin_size, den_bins);
    one_bins.assign(num_bins.size(), Complex(static_cast<double>(bin_size), 0.0));
    ratio = jackknife_ratio(num_bins, den_bins);
    sign = jackknife_ratio(den_bins, one_bins);
    const double err = std::abs(ratio.err);
    const bool can_grow = static_cast<long>(num_bins.size()) >= 64;
    if (!can_grow) break;
    if (prev_ratio_err >= 0.0 && err < 1.05 * prev_ratio_err) break;
    prev_ratio_err = err;
  }

  McEstimate out;
  out.mean = ratio.mean;
  out.mean_err = ratio.err;
  out.avg_sign = sign.mean;
  out.avg_sign_err = sign.err;
  out.n_samples = n_meas;
  out.n_therm = params.n_therm;
  out.seed = params.seed;
  out.n_chains = params.n_chains;
  out.acceptance = attempted > 0 ? static_cast<double>(accepted) / attempted : 0.0;
  out.sign_collapse = std::abs(out.avg_sign) < 3.0 * std::abs(out.avg_sign_err);
  return out;
}

PathObservable omega_pair_observable(const SpinRep& rep, Ordering ordering, long t_hat,
                                     long t_hat_prime, int x, int i, int xp, int ip,
                                     long n_slices) {
  const InsertionSlots slots = insertion_slots(ordering, t_hat, t_hat_prime, n_slices);
  const double sp1sq = rep.s_plus_one() * rep.s_plus_one();
  return [slots, sp1sq, x, i, xp, ip](const PathConfig& path) {
    const double a = path.at(slots.leg_a, slots.slot_a - 1, x).component(i);
    const double b = path.at(slots.leg_b, slots.slot_b - 1, xp).component(ip);
    return Complex(sp1sq * a * b, 0.0);
  };
}

namespace {

constexpr char kSnapshotMagic[8] = {'S', 'K', 'S', 'N', 'A', 'P', '0', '1'};

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof v);
}

}  // namespace

void write_snapshot(const std::string& file, const PathConfig& path, std::uint64_t spec_hash,
                    const ContourParams& contour, std::uint64_t seed) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorCode::io_failure, "cannot open snapshot file " + file);
  os.write(kSnapshotMagic, sizeof kSnapshotMagic);
  put(os, spec_hash);
  put(os, contour.beta);
  put(os, contour.t_max);
  put(os, static_cast<std::int64_t>(contour.n_slices));
  put(os, static_cast<std::int32_t>(path.sites));
  put(os, seed);
  put(os, static_cast<std::int64_t>(3 * path.n_slices * path.sites));
  for (int leg = 0; leg < 3; ++leg)
    for (long slice = 0; slice < path.n_slices; ++slice)
      for (int site = 0; site < path.sites; ++site) {
        const BlochPoint& p = path.at(static_cast<Leg>(leg), slice, site);
        put(os, static_cast<std::uint8_t>(leg));
        put(os, static_cast<std::int64_t>(slice));
        put(os, static_cast<std::int32_t>(site));
        put(os, p.theta);
        put(os, p.phi);
      }
  if (!os) fail(ErrorCode::io_failure, "short write to " + file);
}

PathConfig read_snapshot(const std::string& file, std::uint64_t* spec_hash,
                         ContourParams* contour, std::uint64_t* seed) {
  std::ifstream is(file, std::ios::binary);
  if (!is) fail(ErrorCode::io_failure, "cannot open snapshot file " + file);
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kSnapshotMagic, sizeof magic) != 0)
    fail(ErrorCode::io_failure, file + " is not a path snapshot");
  std::uint64_t hash = 0, sd = 0;
  ContourParams c;
  std::int64_t n_slices = 0, n_records = 0;
  std::int32_t sites = 0;
  get(is, hash);
  get(is, c.beta);
  get(is, c.t_max);
  get(is, n_slices);
  get(is, sites);
  get(is, sd);
  get(is, n_records);
  c.n_slices = n_slices;
  if (!is || n_records != 3 * n_slices * sites)
    fail(ErrorCode::io_failure, "snapshot header is inconsistent");
  PathConfig path = make_path(n_slices, sites);
  for (std::int64_t r = 0; r < n_records; ++r) {
    std::uint8_t leg = 0;
    std::int64_t slice = 0;
    std::int32_t site = 0;
    double theta = 0.0, phi = 0.0;
    get(is, leg);
    get(is, slice);
    get(is, site);
    get(is, theta);
    get(is, phi);
    if (!is || leg > 2 || slice < 0 || slice >= n_slices || site < 0 || site >= sites)
      fail(ErrorCode::io_failure, "snapshot record out of range");
    path.at(static_cast<Leg>(leg), slice, site) = {theta, phi};
  }
  if (spec_hash) *spec_hash = hash;
  if (contour) *contour = c;
  if (seed) *seed = sd;
  return path;
}

}  // namespace skspin
