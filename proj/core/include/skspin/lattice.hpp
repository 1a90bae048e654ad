#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skspin/bloch.hpp"
#include "skspin/errors.hpp"

namespace skspin {

struct LatticeSpec {
  int sites = 1;
  std::vector<std::pair<int, int>> adjacency;  // convenience for nearest-neighbor models
  std::string dim_label;
};

/// Spin representation, stored as 2s so half-integer spins stay exact.
struct SpinRep {
  int two_s = 1;

  int dim() const { return two_s + 1; }
  double s() const { return 0.5 * two_s; }
  double s_plus_one() const { return 0.5 * two_s + 1.0; }
};

struct SpinFactor {
  int site = 0;
  int component = 3;  // 1|2|3
};

/// coupling * product of spin components on pairwise-distinct sites.
struct HamiltonianTerm {
  double coupling = 0.0;
  std::vector<SpinFactor> factors;
};

struct HamiltonianSpec {
  std::vector<HamiltonianTerm> terms;
  LatticeSpec lattice;
  SpinRep rep;
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

/// Checks all type invariants; nullopt means the spec is well-formed.
std::optional<ValidationIssue> validate(const HamiltonianSpec& spec);
void validate_or_throw(const HamiltonianSpec& spec);

/// Classical h function: H with every spin operator replaced by (s+1)*Omega.
/// Valid because validated specs never multiply spins on one site.
double h_eval(const HamiltonianSpec& spec, const SphereConfig& omega);

/// FNV-1a content hash of the spec (terms in given order); stable across runs.
std::uint64_t spec_hash(const HamiltonianSpec& spec);

/// Hilbert-space dimension (2s+1)^V.
long hilbert_dim(const SpinRep& rep, int sites);

}  // namespace skspin
