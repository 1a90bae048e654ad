#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skspin/continuum.hpp"
#include "skspin/mc_sampler.hpp"
#include "skspin/sk_evaluator.hpp"

namespace skspin {

/// One requested correlator: ordering, operator pair, time grid, fixed t'.
struct ObservableSpec {
  Ordering ordering = Ordering::unordered;
  int x = 0, i = 1, xp = 0, ip = 1;
  std::vector<double> times;  // physical times; lattice tasks snap them to slices
  double t_prime = 0.0;
  std::string label;  // e.g. "unordered_s1(0)_s1(1)"
};

/// Parsed experiment file: one config = one task.
struct ExperimentConfig {
  std::string task;  // exact | lattice-correlator | continuum-table | mc | ztilde-check
  HamiltonianSpec hamiltonian;
  double beta = 1.0;
  double t_max = 1.0;
  std::vector<long> n_slices_list;  // >= 1 entry; most tasks use the first
  PropagatorOptions propagator;
  std::vector<ObservableSpec> observables;
  std::vector<std::vector<long>> windows;  // continuum-table
  McParams mc;
  std::string mc_snapshot;  // optional path for final-path snapshots
  std::string output_path;
  std::string output_format = "csv";  // csv | json
  std::vector<std::pair<std::string, std::string>> entries;  // raw key/value, file order
};

/// Flat key = value text; '#' comments; repeated keys for list-valued entries.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

/// Task-specific completeness checks beyond parse-level syntax.
void validate_config(const ExperimentConfig& config);

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 4 numerical-convergence failure
  bool sign_collapse = false;
  std::string output_file;
};

/// Executes the task and writes the output artifact. Identical config (and
/// seed) produces byte-identical output.
RunOutcome run_experiment(const ExperimentConfig& config);

/// `skspin run|validate|version`; maps errors to exit codes
/// (2 parse, 3 validation, 4 numerical convergence).
int run_cli(int argc, const char* const* argv);

std::string version_string();

}  // namespace skspin
