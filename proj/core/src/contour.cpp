#include "skspin/contour.hpp"

namespace skspin {

const char* to_string(Leg leg) {
  switch (leg) {
    case Leg::plus: return "+";
    case Leg::minus: return "-";
    case Leg::euclid: return "E";
  }
  return "?";
}

const char* to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::time_ordered: return "time-ordered";
    case Ordering::anti_ordered: return "anti-ordered";
    case Ordering::unordered: return "unordered";
  }
  return "?";
}

Ordering ordering_from_string(const std::string& name) {
  if (name == "time-ordered" || name == "ordered") return Ordering::time_ordered;
  if (name == "anti-ordered" || name == "anti") return Ordering::anti_ordered;
  if (name == "unordered") return Ordering::unordered;
  fail(ErrorCode::config_parse, "unknown ordering '" + name + "'");
}

void validate_or_throw(const ContourParams& contour) {
  if (!(contour.beta > 0.0)) fail(ErrorCode::config_validation, "beta must be positive");
  if (!(contour.t_max > 0.0)) fail(ErrorCode::config_validation, "t_max must be positive");
  if (contour.n_slices < 1) fail(ErrorCode::config_validation, "n_slices must be at least 1");
}

InsertionSlots insertion_slots(Ordering ordering, long t_hat, long t_hat_prime, long n) {
  switch (ordering) {
    case Ordering::anti_ordered:
      if (!(1 <= t_hat && t_hat < t_hat_prime && t_hat_prime <= n))
        fail(ErrorCode::invalid_ordering_domain,
             "anti-ordered needs 1 <= t_hat < t_hat' <= N, got (" + std::to_string(t_hat) + ", " +
                 std::to_string(t_hat_prime) + ") at N=" + std::to_string(n));
      return {Leg::plus, t_hat, Leg::plus, t_hat_prime};
    case Ordering::time_ordered:
      if (!(1 <= t_hat_prime && t_hat_prime < t_hat && t_hat <= n))
        fail(ErrorCode::invalid_ordering_domain,
             "time-ordered needs 1 <= t_hat' < t_hat <= N, got (" + std::to_string(t_hat) + ", " +
                 std::to_string(t_hat_prime) + ") at N=" + std::to_string(n));
      return {Leg::minus, n + 1 - t_hat, Leg::minus, n + 1 - t_hat_prime};
    case Ordering::unordered:
      if (!(1 <= t_hat && t_hat <= n && 0 <= t_hat_prime && t_hat_prime <= n - 1))
        fail(ErrorCode::invalid_ordering_domain,
             "unordered needs t_hat in 1..N and t_hat' in 0..N-1, got (" + std::to_string(t_hat) +
                 ", " + std::to_string(t_hat_prime) + ") at N=" + std::to_string(n));
      return {Leg::plus, t_hat, Leg::minus, n - t_hat_prime};
  }
  fail(ErrorCode::invalid_ordering_domain, "unreachable");
}

}  // namespace skspin
