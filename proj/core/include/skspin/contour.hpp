#pragma once

#include <string>

#include "skspin/errors.hpp"

namespace skspin {

/// The three legs of the discretized Schwinger-Keldysh contour:
/// forward real time, backward real time, Euclidean (thermal).
enum class Leg { plus = 0, minus = 1, euclid = 2 };

enum class Ordering { time_ordered, anti_ordered, unordered };

const char* to_string(Leg leg);
const char* to_string(Ordering ordering);
Ordering ordering_from_string(const std::string& name);

/// Contour geometry: beta and t_max in units of 1/j, N timeslices per leg.
struct ContourParams {
  double beta = 1.0;
  double t_max = 1.0;
  long n_slices = 1;

  double dt() const { return t_max / static_cast<double>(n_slices); }
  double dtau() const { return beta / static_cast<double>(n_slices); }
};

void validate_or_throw(const ContourParams& contour);

/// Where the two operator insertions live on the contour for a requested
/// ordering and integer times (t, t') = (t_hat, t_hat_prime) * dt.
///
/// Frozen slot convention (the continuum limit is insensitive; the lattice
/// values at finite N are not, so it is fixed here once for every consumer):
///   anti-ordered : forward slots (t_hat, t_hat_prime), 1 <= t_hat < t_hat_prime <= N
///   time-ordered : backward slots (N+1-t_hat, N+1-t_hat_prime), 1 <= t_hat_prime < t_hat <= N
///   unordered    : forward slot t_hat (1..N), backward slot N - t_hat_prime
///                  (t_hat_prime in 0..N-1)
struct InsertionSlots {
  Leg leg_a;
  long slot_a;  // 1-based within its leg; carries (x, i, t)
  Leg leg_b;
  long slot_b;  // carries (x', i', t')
};

InsertionSlots insertion_slots(Ordering ordering, long t_hat, long t_hat_prime, long n_slices);

}  // namespace skspin
