#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "skspin/bloch.hpp"
#include "skspin/contour.hpp"
#include "skspin/lattice.hpp"
#include "skspin/su2.hpp"

namespace skspin {

/// Sphere-valued path over the full contour: one Bloch point per
/// (leg, timeslice, site).
struct PathConfig {
  long n_slices = 0;
  int sites = 0;
  std::array<std::vector<BlochPoint>, 3> points;  // [leg][slice * sites + site]

  BlochPoint& at(Leg leg, long slice, int site) {
    return points[static_cast<int>(leg)][slice * sites + site];
  }
  const BlochPoint& at(Leg leg, long slice, int site) const {
    return points[static_cast<int>(leg)][slice * sites + site];
  }
};

PathConfig make_path(long n_slices, int sites);

/// log|weight| and principal-value phase of e^{S_SK} at zero sources.
struct ActionValue {
  double log_magnitude = 0.0;
  double phase = 0.0;
};

/// Full Schwinger-Keldysh weight of a path: the three h-function sums plus the
/// cyclic chain of adjacent-slice overlaps (+1.. +N, -1.. -N, E1.. EN, back to +1).
/// Throws ZeroOverlap when an adjacent pair of slices is exactly orthogonal.
ActionValue sk_action(const HamiltonianSpec& spec, const ContourParams& contour,
                      const PathConfig& path);

struct McParams {
  double proposal_width = 0.8;  // geodesic cap radius, radians
  long n_samples = 100000;      // measured sweeps per chain (after thermalization)
  long n_therm = 10000;         // discarded sweeps per chain
  std::uint64_t seed = 1;
  int n_chains = 1;
  long measure_every = 1;  // sweeps between measurements
};

/// Phase-reweighted estimate <O e^{i phi}> / <e^{i phi}> under |weight|.
struct McEstimate {
  Complex mean = 0.0;
  Complex mean_err = 0.0;  // component-wise stderr from binned jackknife
  Complex avg_sign = 0.0;
  Complex avg_sign_err = 0.0;
  long n_samples = 0;  // measurements pooled over chains
  long n_therm = 0;
  std::uint64_t seed = 0;
  int n_chains = 1;
  double acceptance = 0.0;
  bool sign_collapse = false;  // |avg_sign| < 3 |stderr(avg_sign)|; estimate unreliable
};

using PathObservable = std::function<Complex(const PathConfig&)>;

/// Metropolis sampling of |e^{S_SK}| with single-site single-slice geodesic-cap
/// proposals; chains run in parallel on deterministic per-chain RNG streams and
/// merge in chain order.
McEstimate metropolis_run(const HamiltonianSpec& spec, const ContourParams& contour,
                          const McParams& params, const PathObservable& observable);

/// (s+1)^2 Omega^a_{slot,x,i} Omega^b_{slot',x',i'} with the shared
/// insertion_slots() convention; the MC estimate of this observable targets
/// lattice_correlator at the same N.
PathObservable omega_pair_observable(const SpinRep& rep, Ordering ordering, long t_hat,
                                     long t_hat_prime, int x, int i, int xp, int ip,
                                     long n_slices);

/// Flat binary snapshot of an ensemble member: header (magic, spec hash,
/// contour, seed) + one record per (leg, slice, site).
void write_snapshot(const std::string& file, const PathConfig& path, std::uint64_t spec_hash,
                    const ContourParams& contour, std::uint64_t seed);
PathConfig read_snapshot(const std::string& file, std::uint64_t* spec_hash = nullptr,
                         ContourParams* contour = nullptr, std::uint64_t* seed = nullptr);

}  // namespace skspin
