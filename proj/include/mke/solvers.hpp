#pragma once

// Minimum relative-entropy updates of a qubit state under a single
// mean-value constraint: the exact solver (multiplier inside the matrix
// exponential, found by bracketed root search) and the closed-form
// first-order solver, plus the observable normalization that reduces any
// non-trivial Hermitian observable to a unit-axis mean in a rotated frame.

#include <algorithm>
#include <cmath>
#include <string>

#include "mke/bloch.hpp"
#include "mke/errors.hpp"
#include "mke/roots.hpp"

namespace mke {

struct SolverConfig {
  double constraint_tol = 1e-10;  // accepted |<X>_rho - target| after the solve
  int max_iter = 200;             // root-finder evaluation budget
  double purity_clamp = 1.0 - 1e-7;  // exact solver refuses priors purer than this
  double mean_clamp = 1.0 - 1e-9;    // exact solver refuses |s| beyond this
};

// A measured observable A = alpha*I + scale * (unit axis . sigma), reduced to
// normal form: `rotation` maps the observable axis onto e3, and `mean_s` is
// the requested mean of the unit-axis component, in [-1, 1].
struct MeasurementRecord {
  double alpha = 0.0;
  double mean_s = 0.0;
  double scale = 1.0;
  Mat3 rotation;
};

// Orthonormal (in the Hilbert-Schmidt sense) pair spanning {I, A}: X1 is the
// normalized identity, X2 the normalized traceless part of A.
struct OrthonormalPair {
  HermitianOp x1;
  HermitianOp x2;
};

struct ApproxSolution {
  BlochVector state;
  double lambda = 0.0;  // multiplier of the traceless constraint direction
};

struct ExactSolution {
  BlochVector state;
  double lambda1 = 0.0;  // multiplier of the identity direction (normalization)
  double lambda2 = 0.0;  // multiplier of the traceless constraint direction
  double residual = 0.0;
  int iterations = 0;
};

struct SolutionPair {
  ExactSolution exact;
  ApproxSolution approx;
  double fidelity_exact_approx = 0.0;
  double purity_exact = 0.0;
  double purity_approx = 0.0;
  double k_exact = 0.0;
  double k_approx = 0.0;
};

namespace detail {

// log(2 cosh x) without overflow, for x >= 0.
inline double log_2cosh(double x) {
  return x + std::log1p(std::exp(-2.0 * x));
}

// Proper rotation carrying `unit` (assumed normalized) onto e3.
inline Mat3 rotation_to_z(const Vec3& unit) {
  Mat3 r;
  if (unit.z >= 1.0 - 1e-14) return r;  // identity
  if (unit.z <= -1.0 + 1e-14) {
    // Anti-aligned: rotate by pi about e1.
    r.a[1][1] = -1.0;
    r.a[2][2] = -1.0;
    return r;
  }
  Vec3 axis = cross(unit, Vec3{0.0, 0.0, 1.0});
  const double s = norm(axis);
  const double c = unit.z;
  axis = (1.0 / s) * axis;
  const Vec3 basis[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  for (int j = 0; j < 3; ++j) {
    const Vec3 v = basis[j];
    const Vec3 w = c * v + s * cross(axis, v) + ((1.0 - c) * dot(axis, v)) * axis;
    r.a[0][j] = w.x;
    r.a[1][j] = w.y;
    r.a[2][j] = w.z;
  }
  return r;
}

}  // namespace detail

// Reduce observable A with measured mean <A> to normal form. Throws
// trivial_observable when A has no traceless part and infeasible_mean when
// the mean lies outside A's spectral range.
inline MeasurementRecord normalize_observable(const HermitianOp& a, double mean_a) {
  const double n = norm(a.c);
  if (n <= 1e-14)
    fail(ErrorKind::trivial_observable,
         "normalize_observable: observable is proportional to the identity; its mean carries no state information");
  MeasurementRecord rec;
  rec.scale = n;
  rec.alpha = a.c0 / n;
  const double s = (mean_a - a.c0) / n;
  if (std::abs(s) > 1.0 + 1e-12)
    fail(ErrorKind::infeasible_mean,
         "normalize_observable: mean " + std::to_string(mean_a) +
             " lies outside the observable's spectral range [" + std::to_string(a.c0 - n) +
             ", " + std::to_string(a.c0 + n) + "]");
  rec.mean_s = std::clamp(s, -1.0, 1.0);
  rec.rotation = detail::rotation_to_z((1.0 / n) * a.c);
  return rec;
}

// Bloch-vector change of frame: into the frame where the observable axis is e3.
inline BlochVector to_normal_frame(const MeasurementRecord& rec, const BlochVector& v) {
  return apply(rec.rotation, v);
}

// ...and back to the original frame.
inline BlochVector from_normal_frame(const MeasurementRecord& rec, const BlochVector& v) {
  return apply(transpose(rec.rotation), v);
}

// Hilbert-Schmidt orthonormal basis of span{I, A}.
inline OrthonormalPair gram_schmidt_pair(const HermitianOp& a) {
  const double n = norm(a.c);
  if (n <= 1e-14)
    fail(ErrorKind::trivial_observable,
         "gram_schmidt_pair: observable is proportional to the identity, span{I, A} is one-dimensional");
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  return {HermitianOp{inv_sqrt2, Vec3{0.0, 0.0, 0.0}}, HermitianOp{0.0, (inv_sqrt2 / n) * a.c}};
}

// First-order update in the normal frame: the prior's transverse Bloch
// components are rescaled by 1/Z and the axis component is pinned to mean_s.
// Closed form; never iterates. Rank-preserving by construction.
inline ApproxSolution solve_approx(const BlochVector& tau, const MeasurementRecord& rec,
                                   const SolverConfig& = {}) {
  const double s = rec.mean_s;
  const double t3 = tau.z;
  if (s == t3) return {tau, 0.0};
  if (std::abs(t3) >= 1.0)
    fail(ErrorKind::infeasible_constraint,
         "solve_approx: prior is an eigenstate of the constrained axis; no finite multiplier changes its mean");
  double x = (t3 - s) / (1.0 - s * t3);
  if (std::abs(x) >= 1.0) {
    if (std::abs(s) < 1.0)
      x = std::copysign(1.0 - 1e-15, x);  // rounding artifact: exact value is interior
    else
      fail(ErrorKind::internal,
           "solve_approx: multiplier argument left [-1, 1] for physical inputs");
  }
  const double lambda = 0.5 * (std::log1p(x) - std::log1p(-x));
  const double z = std::cosh(lambda) - t3 * std::sinh(lambda);
  return {BlochVector{tau.x / z, tau.y / z, s}, lambda};
}

// Same first-order family, evaluated through the operator sandwich
// e^{-lambda X/2} tau e^{-lambda X/2} with the multiplier found by root
// search on the mean constraint. Agrees with solve_approx to rounding; kept
// as an independent route for cross-checks.
inline ApproxSolution solve_approx_operator_form(const BlochVector& tau,
                                                 const MeasurementRecord& rec,
                                                 const SolverConfig& cfg = {}) {
  const double s = rec.mean_s;
  const double t3 = tau.z;
  if (s == t3) return {tau, 0.0};
  if (std::abs(t3) >= 1.0)
    fail(ErrorKind::infeasible_constraint,
         "solve_approx_operator_form: prior is an eigenstate of the constrained axis; no finite multiplier changes its mean");
  const HermitianOp tau_op{0.5, 0.5 * tau};
  auto bloch_at = [&](double lambda) {
    const HermitianOp half = herm_exp(HermitianOp{0.0, Vec3{0.0, 0.0, -0.5 * lambda}});
    const HermitianOp w = sandwich(half, tau_op);
    return (1.0 / w.c0) * w.c;
  };
  auto g = [&](double lambda) { return bloch_at(lambda).z - s; };
  double lo, hi, flo, fhi;
  // Half-width cap keeps the sandwich inside double range (exp(2*320) < DBL_MAX).
  if (!expand_symmetric_bracket(g, 10.0 * std::sqrt(2.0), 640.0, lo, hi, flo, fhi))
    fail(ErrorKind::infeasible_constraint,
         "solve_approx_operator_form: no multiplier in range reaches the requested mean");
  const RootResult rr = find_root(g, lo, hi, flo, fhi, 0.0, cfg.max_iter);
  if (!(std::abs(rr.fx) <= cfg.constraint_tol))
    fail(ErrorKind::no_convergence,
         "solve_approx_operator_form: residual " + std::to_string(rr.fx) + " after " +
             std::to_string(rr.iterations) + " iterations exceeds constraint_tol");
  return {bloch_at(rr.x), rr.x};
}

// Exact minimizer of the relative entropy to `tau` subject to the axis mean
// being `rec.mean_s`, in the normal frame. The minimizer is
// exp(log tau - lambda1 X1 - lambda2 X2 - I) with (X1, X2) the orthonormal
// pair for the axis observable; lambda2 is found by root search on the mean
// and lambda1 is fixed by unit trace.
inline ExactSolution solve_exact(const BlochVector& tau, const MeasurementRecord& rec,
                                 const SolverConfig& cfg = {}) {
  const double s = rec.mean_s;
  const double mu = purity(tau);
  // Tiny slack so a prior built at exactly the clamp purity is not rejected
  // for the rounding in |tau|^2.
  if (mu > cfg.purity_clamp + 1e-13)
    fail(ErrorKind::prior_rank,
         "solve_exact: prior purity " + std::to_string(mu) +
             " exceeds purity_clamp; log of a near-singular state is ill-conditioned");
  if (std::abs(s) > cfg.mean_clamp)
    fail(ErrorKind::boundary_mean,
         "solve_exact: |mean| " + std::to_string(std::abs(s)) +
             " exceeds mean_clamp; the constraint needs an unbounded multiplier");

  const HermitianOp lt = herm_log(tau);
  constexpr double sqrt2 = 1.4142135623730950488;
  auto bvec = [&](double lambda2) {
    return Vec3{lt.c.x, lt.c.y, lt.c.z - lambda2 / sqrt2};
  };
  auto g = [&](double lambda2) {
    const Vec3 b = bvec(lambda2);
    return detail::tanh_over_x(norm(b)) * b.z - s;
  };
  double lo, hi, flo, fhi;
  if (!expand_symmetric_bracket(g, 10.0 * sqrt2, 1e6, lo, hi, flo, fhi))
    fail(ErrorKind::internal, "solve_exact: failed to bracket the constraint root");
  const RootResult rr = find_root(g, lo, hi, flo, fhi, 0.0, cfg.max_iter);
  if (!(std::abs(rr.fx) <= cfg.constraint_tol))
    fail(ErrorKind::no_convergence,
         "solve_exact: residual " + std::to_string(rr.fx) + " after " +
             std::to_string(rr.iterations) + " iterations exceeds constraint_tol");

  const Vec3 b = bvec(rr.x);
  const double nb = norm(b);
  ExactSolution out;
  out.state = detail::tanh_over_x(nb) * b;
  out.lambda2 = rr.x;
  // Unit trace: Tr exp(log tau - lambda2 X2) = 2 e^{c0} cosh|b| must equal
  // e^{1 + lambda1/sqrt2}.
  out.lambda1 = sqrt2 * (lt.c0 + detail::log_2cosh(nb) - 1.0);
  out.residual = rr.fx;
  out.iterations = rr.iterations;
  return out;
}

// Run both solvers on one instance and collect the comparison quantities.
// Errors from either route are rethrown with the route name prefixed.
inline SolutionPair mke_pair(const BlochVector& tau, const MeasurementRecord& rec,
                             const SolverConfig& cfg = {}) {
  SolutionPair out;
  try {
    out.exact = solve_exact(tau, rec, cfg);
  } catch (const Error& e) {
    fail(e.kind(), std::string("exact: ") + e.what());
  }
  try {
    out.approx = solve_approx(tau, rec, cfg);
  } catch (const Error& e) {
    fail(e.kind(), std::string("approx: ") + e.what());
  }
  out.fidelity_exact_approx = fidelity(out.exact.state, out.approx.state);
  out.purity_exact = purity(out.exact.state);
  out.purity_approx = purity(out.approx.state);
  out.k_exact = relative_entropy(out.exact.state, tau);
  out.k_approx = relative_entropy(out.approx.state, tau);
  return out;
}

}  // namespace mke
