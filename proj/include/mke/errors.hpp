#pragma once

// Error taxonomy shared by the solvers, the experiment drivers and the CLI.
// Every failure carries a machine-readable kind plus a human-readable message.

#include <stdexcept>
#include <string>

namespace mke {

enum class ErrorKind {
  domain,                 // parameter outside its documented range
  trivial_observable,     // observable has no traceless part
  infeasible_mean,        // requested mean outside the observable's spectral range
  prior_rank,             // prior purer than the exact solver's clamp (log tau ill-conditioned)
  boundary_mean,          // |mean| closer to the spectral edge than the mean clamp
  infeasible_constraint,  // sigma3-eigenstate prior cannot be steered to the requested mean
  rank_deficient,         // matrix logarithm of a (numerically) pure operator
  undefined_divergence,   // relative entropy with a support violation
  degenerate_prior,       // fully mixed prior: no first-order Hamiltonian signal
  overflow,               // herm_exp result outside double range
  no_convergence,         // root finder exhausted its budget above tolerance
  bad_config,             // invalid grid / resolution / range parameters
  internal,               // violated internal invariant
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::trivial_observable: return "trivial-observable";
    case ErrorKind::infeasible_mean: return "infeasible-mean";
    case ErrorKind::prior_rank: return "prior-rank";
    case ErrorKind::boundary_mean: return "boundary-mean";
    case ErrorKind::infeasible_constraint: return "infeasible-constraint";
    case ErrorKind::rank_deficient: return "rank-deficient";
    case ErrorKind::undefined_divergence: return "undefined-divergence";
    case ErrorKind::degenerate_prior: return "degenerate-prior";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::bad_config: return "bad-config";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace mke
