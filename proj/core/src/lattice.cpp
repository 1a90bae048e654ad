#include "skspin/lattice.hpp"

#include <cinttypes>
#include <cstdio>
#include <set>

namespace skspin {

std::optional<ValidationIssue> validate(const HamiltonianSpec& spec) {
  const int sites = spec.lattice.sites;
  if (sites < 1) return ValidationIssue{ErrorCode::bad_site_index, "lattice needs at least one site"};
  if (spec.rep.two_s < 1)
    return ValidationIssue{ErrorCode::dimension_mismatch, "spin representation needs 2s >= 1"};
  for (const auto& [a, b] : spec.lattice.adjacency) {
    if (a == b) return ValidationIssue{ErrorCode::bad_site_index, "adjacency contains a self-pair"};
    if (a < 0 || a >= sites || b < 0 || b >= sites)
      return ValidationIssue{ErrorCode::bad_site_index, "adjacency site out of range"};
  }
  for (std::size_t t = 0; t < spec.terms.size(); ++t) {
    const auto& term = spec.terms[t];
    if (term.factors.empty())
      return ValidationIssue{ErrorCode::dimension_mismatch,
                             "term " + std::to_string(t) + " has no factors"};
    std::set<int> seen;
    for (const auto& f : term.factors) {
      if (f.site < 0 || f.site >= sites)
        return ValidationIssue{ErrorCode::bad_site_index,
                               "term " + std::to_string(t) + " references site " +
                                   std::to_string(f.site) + " on a " + std::to_string(sites) +
                                   "-site lattice"};
      if (f.component < 1 || f.component > 3)
        return ValidationIssue{ErrorCode::dimension_mismatch,
                               "spin component must be 1, 2 or 3"};
      if (!seen.insert(f.site).second)
        return ValidationIssue{ErrorCode::same_site_product,
                               "term " + std::to_string(t) +
                                   " multiplies spins on site " + std::to_string(f.site) +
                                   " (same-site products need the product formula and are unsupported)"};
    }
  }
  return std::nullopt;
}

void validate_or_throw(const HamiltonianSpec& spec) {
  if (auto issue = validate(spec)) fail(issue->code, issue->message);
}

double h_eval(const HamiltonianSpec& spec, const SphereConfig& omega) {
  if (omega.sites() != spec.lattice.sites)
    fail(ErrorCode::dimension_mismatch,
         "configuration has " + std::to_string(omega.sites()) + " points, lattice has " +
             std::to_string(spec.lattice.sites) + " sites");
  const double sp1 = spec.rep.s_plus_one();
  double total = 0.0;
  for (const auto& term : spec.terms) {
    double prod = term.coupling;
    for (const auto& f : term.factors) prod *= sp1 * omega.points[f.site].component(f.component);
    total += prod;
  }
  return total;
}

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void hash_string(std::uint64_t& h, const std::string& s) { hash_bytes(h, s.data(), s.size()); }

}  // namespace

std::uint64_t spec_hash(const HamiltonianSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[64];
  std::snprintf(buf, sizeof buf, "V=%d;2s=%d;", spec.lattice.sites, spec.rep.two_s);
  hash_string(h, buf);
  for (const auto& term : spec.terms) {
    std::snprintf(buf, sizeof buf, "c=%.17g;", term.coupling);
    hash_string(h, buf);
    for (const auto& f : term.factors) {
      std::snprintf(buf, sizeof buf, "s%d(%d)", f.component, f.site);
      hash_string(h, buf);
    }
    hash_string(h, ";");
  }
  return h;
}

long hilbert_dim(const SpinRep& rep, int sites) {
  long dim = 1;
  for (int i = 0; i < sites; ++i) dim *= rep.dim();
  return dim;
}

}  // namespace skspin
