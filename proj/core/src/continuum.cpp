#include "skspin/continuum.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace skspin {

FitResult linear_fit(const FitWindow& window) {
  const std::size_t n = window.slice_counts.size();
  if (n < 3) fail(ErrorCode::degenerate_abscissas, "linear fit needs at least 3 points");
  if (window.values.size() != n)
    fail(ErrorCode::dimension_mismatch, "fit window value/N count mismatch");
  std::set<long> distinct(window.slice_counts.begin(), window.slice_counts.end());
  if (distinct.size() != n)
    fail(ErrorCode::degenerate_abscissas, "fit window repeats a slice count");

  double sx = 0.0, sxx = 0.0;
  Complex sy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double xk = 1.0 / static_cast<double>(window.slice_counts[k]);
    sx += xk;
    sxx += xk * xk;
    sy += window.values[k];
    sxy += xk * window.values[k];
  }
  const double mean_x = sx / n;
  const Complex mean_y = sy / static_cast<double>(n);
  const double sxx_c = sxx - n * mean_x * mean_x;
  const Complex sxy_c = sxy - static_cast<double>(n) * mean_x * mean_y;

  FitResult out;
  out.slope = sxy_c / sxx_c;  // real abscissas: complex LSQ == per-part LSQ
  out.intercept = mean_y - out.slope * mean_x;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double xk = 1.0 / static_cast<double>(window.slice_counts[k]);
    ss += std::norm(window.values[k] - (out.intercept + out.slope * xk));
  }
  out.residual_rms = std::sqrt(ss / n);
  out.extrapolation_error = out.intercept - window.exact;
  return out;
}

namespace {

long snap_slice(double t, long n, double t_max, bool allow_zero) {
  const double raw = t * static_cast<double>(n) / t_max;
  const long t_hat = std::lround(raw);
  if (std::abs(raw - t_hat) > 1e-9)
    fail(ErrorCode::config_validation,
         "time " + std::to_string(t) + " is not an integer slice at N=" + std::to_string(n));
  if (t_hat < (allow_zero ? 0 : 1) || t_hat > n)
    fail(ErrorCode::config_validation, "time " + std::to_string(t) + " outside the contour");
  return t_hat;
}

}  // namespace

ErrorTable error_table(const HamiltonianSpec& spec, double beta, double t_max,
                       const std::vector<std::vector<long>>& windows,
                       const std::vector<TableObservable>& observables,
                       const PropagatorOptions& options) {
  validate_or_throw(spec);
  ErrorTable table;
  for (const auto& obs : observables) {
    table.column_labels.push_back("re_" + obs.label);
    table.column_labels.push_back("im_" + obs.label);
  }

  std::set<long> distinct;
  for (const auto& w : windows) distinct.insert(w.begin(), w.end());

  PropagatorWorkspace base(spec, options.grid);
  std::unique_ptr<PropagatorWorkspace> doubled;
  if (options.doubling_check)
    doubled = std::make_unique<PropagatorWorkspace>(
        spec, QuadratureSizes{2 * options.grid.n_theta, 2 * options.grid.n_phi});

  // lattice values per N, in observable order
  std::map<long, std::vector<Complex>> lattice;
  for (long n : distinct) {
    const ContourParams contour{beta, t_max, n};
    const PropagatorSet props =
        build_propagators(base, doubled.get(), spec, contour, options);
    InsertionSet insertions;
    for (const auto& obs : observables) {
      const InsertionSlots slots = insertion_slots(
          obs.ordering, snap_slice(obs.t, n, t_max, false),
          snap_slice(obs.t_prime, n, t_max, obs.ordering == Ordering::unordered), n);
      for (const auto& [leg, site, comp] :
           {std::tuple{slots.leg_a, obs.x, obs.i}, std::tuple{slots.leg_b, obs.xp, obs.ip}})
        if (!insertions.contains(leg, site, comp))
          insertions.add(build_insertion(base, doubled.get(), contour, options, leg, site, comp));
    }
    std::vector<Complex> row;
    row.reserve(observables.size());
    for (const auto& obs : observables) {
      const long t_hat = snap_slice(obs.t, n, t_max, false);
      const long t_hat_prime =
          snap_slice(obs.t_prime, n, t_max, obs.ordering == Ordering::unordered);
      row.push_back(lattice_correlator(props, insertions, obs.ordering, t_hat, t_hat_prime,
                                       obs.x, obs.i, obs.xp, obs.ip));
    }
    lattice.emplace(n, std::move(row));
  }

  std::vector<Complex> exact;
  exact.reserve(observables.size());
  for (const auto& obs : observables)
    exact.push_back(
        exact_correlator(spec, beta, obs.x, obs.i, obs.t, obs.xp, obs.ip, obs.t_prime));

  for (const auto& w : windows) {
    std::string label = "{";
    for (std::size_t k = 0; k < w.size(); ++k)
      label += (k ? "," : "") + std::to_string(w[k]);
    label += "}";
    table.window_labels.push_back(label);

    std::vector<double> row;
    std::vector<FitResult> fits;
    for (std::size_t o = 0; o < observables.size(); ++o) {
      FitWindow fw;
      fw.slice_counts = w;
      fw.exact = exact[o];
      for (long n : w) fw.values.push_back(lattice.at(n)[o]);
      const FitResult fit = linear_fit(fw);
      fits.push_back(fit);
      row.push_back(fit.extrapolation_error.real());
      row.push_back(fit.extrapolation_error.imag());
    }
    table.errors.push_back(std::move(row));
    table.fits.push_back(std::move(fits));
  }
  return table;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string error_table_csv(const ErrorTable& table) {
  std::string out = "window";
  for (const auto& label : table.column_labels) out += "," + csv_quote(label);
  out += "\n";
  char buf[48];
  for (std::size_t r = 0; r < table.window_labels.size(); ++r) {
    out += csv_quote(table.window_labels[r]);
    for (double v : table.errors[r]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace skspin
