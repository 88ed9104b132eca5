#pragma once

// Weak-Hamiltonian toolkit: unitary evolution of a Bloch vector under
// H = h . sigma for unit time, the first-order estimator that recovers the
// transverse part of h from (prior, evolved) states, and the natural
// distance between Hamiltonian vectors.

#include <cmath>

#include "mke/bloch.hpp"
#include "mke/errors.hpp"

namespace mke {

// r(1) for dr/dt = 2 h x r with r(0) = t: rotation about h-hat by angle 2|h|.
inline BlochVector evolve(const BlochVector& t, const HamiltonianVector& h) {
  const double n = norm(h);
  if (n == 0.0) return t;
  const Vec3 axis = (1.0 / n) * h;
  const double angle = 2.0 * n;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return c * t + s * cross(axis, t) + ((1.0 - c) * dot(axis, t)) * axis;
}

// First-order inversion of evolve: h_est = (t x r) / (2 |t|^2). Recovers the
// component of h orthogonal to t up to O(|h|^2); the parallel component is
// unobservable from this pair. Throws degenerate_prior when t ~ 0.
inline HamiltonianVector estimate_hamiltonian(const BlochVector& t, const BlochVector& r) {
  const double tt = dot(t, t);
  if (tt <= 1e-24)
    fail(ErrorKind::degenerate_prior,
         "estimate_hamiltonian: fully mixed prior is invariant under every Hamiltonian");
  return (1.0 / (2.0 * tt)) * cross(t, r);
}

// Trace-norm distance (1/2)||Delta H||_1 between H_i = h_i . sigma, which for
// traceless operators equals the Euclidean distance of the vectors.
inline double hamiltonian_distance(const HamiltonianVector& h1, const HamiltonianVector& h2) {
  return norm(h1 - h2);
}

}  // namespace mke
