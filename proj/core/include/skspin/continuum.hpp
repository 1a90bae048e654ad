#pragma once

#include <string>
#include <vector>

#include "skspin/sk_evaluator.hpp"

namespace skspin {

/// Lattice correlator values at fixed physical arguments for 3+ slice counts,
/// plus the exact oracle value they should extrapolate to.
struct FitWindow {
  std::vector<long> slice_counts;
  std::vector<Complex> values;
  Complex exact = 0.0;
};

struct FitResult {
  Complex intercept = 0.0;  // continuum estimate
  Complex slope = 0.0;      // coefficient of 1/N
  double residual_rms = 0.0;
  Complex extrapolation_error = 0.0;  // intercept - exact
};

/// Unweighted least squares of value against 1/N, real and imaginary parts
/// independently.
FitResult linear_fit(const FitWindow& window);

/// One observable column of the error table.
struct TableObservable {
  Ordering ordering = Ordering::unordered;
  int x = 0, i = 1, xp = 0, ip = 1;
  double t = 5.0, t_prime = 0.0;
  std::string label;  // column label, e.g. "re_s1s1_same"
};

struct ErrorTable {
  std::vector<std::string> column_labels;          // 2 per observable (re, im)
  std::vector<std::string> window_labels;          // "{300,400,500}" style
  std::vector<std::vector<double>> errors;         // [window][column]
  std::vector<std::vector<FitResult>> fits;        // [window][observable]
};

/// Extrapolation errors for every (window, observable) pair. Lattice values
/// are computed once per distinct N (windows may share slice counts); each
/// observable's time arguments must land on integer slices for every N.
ErrorTable error_table(const HamiltonianSpec& spec, double beta, double t_max,
                       const std::vector<std::vector<long>>& windows,
                       const std::vector<TableObservable>& observables,
                       const PropagatorOptions& options = {});

/// RFC-4180-style CSV of the table: header row of observable labels, one row
/// per window.
std::string error_table_csv(const ErrorTable& table);

}  // namespace skspin
