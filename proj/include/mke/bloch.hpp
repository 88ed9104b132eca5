#pragma once

// Closed-form single-qubit algebra in Bloch/Pauli coordinates.
//
// A state is rho = (I + r.sigma)/2 with |r| <= 1; a Hermitian operator is
// B = c0*I + c.sigma. Everything below works directly on (c0, c) — no complex
// matrices are formed anywhere in the library (a dense reference implementation
// exists only in the test suite).

#include <cmath>
#include <string>

#include "errors.hpp"

namespace mke {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double k, const Vec3& v) { return {k * v.x, k * v.y, k * v.z}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Bloch vector of a state; usage is by convention (|r| <= 1).
using BlochVector = Vec3;
// Pauli coefficient vector of a Hamiltonian H = h.sigma.
using HamiltonianVector = Vec3;

struct HermitianOp {
  double c0 = 0.0;  // identity coefficient
  Vec3 c;           // Pauli coefficients
};

// Minimal 3x3 matrix for Bloch-frame rotations.
struct Mat3 {
  double a[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
};

inline Vec3 apply(const Mat3& m, const Vec3& v) {
  return {m.a[0][0] * v.x + m.a[0][1] * v.y + m.a[0][2] * v.z,
          m.a[1][0] * v.x + m.a[1][1] * v.y + m.a[1][2] * v.z,
          m.a[2][0] * v.x + m.a[2][1] * v.y + m.a[2][2] * v.z};
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.a[i][j] = m.a[j][i];
  return t;
}

// Polar parameterization of a prior state: Bloch direction (theta, phi),
// purity mu in [1/2, 1]. The Bloch radius is k = sqrt(2 mu - 1).
struct StateParams {
  double theta = 0.0;
  double phi = 0.0;
  double mu = 0.5;
};

namespace detail {

constexpr double kPi = 3.14159265358979323846;

// atanh(x)/x, stable at x -> 0.
inline double atanh_over_x(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 3.0 + x2 * x2 / 5.0;
  }
  return std::atanh(x) / x;
}

// tanh(x)/x, stable at x -> 0.
inline double tanh_over_x(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return std::tanh(x) / x;
}

inline double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace detail

inline BlochVector state_from_angles(const StateParams& p) {
  if (!(p.theta >= -1e-12 && p.theta <= detail::kPi + 1e-12))
    fail(ErrorKind::domain, "state_from_angles: theta must lie in [0, pi]");
  if (!(p.phi >= -1e-12 && p.phi < 2.0 * detail::kPi + 1e-12))
    fail(ErrorKind::domain, "state_from_angles: phi must lie in [0, 2 pi)");
  if (!(p.mu >= 0.5 - 1e-12 && p.mu <= 1.0 + 1e-12))
    fail(ErrorKind::domain, "state_from_angles: purity must lie in [1/2, 1]");
  const double k = std::sqrt(std::max(0.0, 2.0 * p.mu - 1.0));
  const double st = std::sin(p.theta);
  return {k * st * std::cos(p.phi), k * st * std::sin(p.phi), k * std::cos(p.theta)};
}

inline double purity(const BlochVector& r) { return 0.5 * (1.0 + dot(r, r)); }

// Fidelity F(rho1, rho2) = Tr[rho1 rho2] + 2 sqrt(det rho1 det rho2),
// i.e. the squared-overlap convention; symmetric by construction.
inline double fidelity(const BlochVector& r1, const BlochVector& r2) {
  const double overlap = 0.5 * (1.0 + dot(r1, r2));
  const double d1 = std::sqrt(std::max(0.0, 1.0 - purity(r1)));
  const double d2 = std::sqrt(std::max(0.0, 1.0 - purity(r2)));
  return overlap + d1 * d2;
}

// Matrix logarithm of a full-rank state:
// log rho = c0 I + c.sigma with c0 = (1/2) ln((1-|r|^2)/4) and
// c = atanh(|r|) r_hat.
inline HermitianOp herm_log(const BlochVector& r) {
  const double n = norm(r);
  if (n >= 1.0 - 1e-12)
    fail(ErrorKind::rank_deficient, "herm_log: state is (numerically) pure, log undefined");
  HermitianOp out;
  out.c0 = 0.5 * (std::log1p(-n * n) - std::log(4.0));
  out.c = detail::atanh_over_x(n) * r;
  return out;
}

// exp(c0 I + c.sigma) = e^{c0} (cosh|c| I + sinh|c| c_hat.sigma).
// Evaluated through the eigenvalue exponents c0 +- |c| for stability.
inline HermitianOp herm_exp(const HermitianOp& b) {
  const double n = norm(b.c);
  const double hi = b.c0 + n;
  if (hi > 709.0)
    fail(ErrorKind::overflow, "herm_exp: leading eigenvalue exponent exceeds double range");
  const double ehi = std::exp(hi);
  const double elo = std::exp(b.c0 - n);
  HermitianOp out;
  out.c0 = 0.5 * (ehi + elo);
  const double f = n < 1e-8 ? std::exp(b.c0) * (1.0 + n * n / 6.0)
                            : 0.5 * (ehi - elo) / n;
  out.c = f * b.c;
  return out;
}

// Trace norm |B|_1 = |c0 + |c|| + |c0 - |c|| (sum of |eigenvalues|).
inline double trace_norm(const HermitianOp& b) {
  const double n = norm(b.c);
  return std::abs(b.c0 + n) + std::abs(b.c0 - n);
}

// Two-sided product E B E for Hermitian E, B (the result is Hermitian):
//   scalar part: e0^2 b0 + 2 e0 (e.b) + b0 |e|^2
//   vector part: 2 (e0 b0 + e.b) e + (e0^2 - |e|^2) b
inline HermitianOp sandwich(const HermitianOp& e, const HermitianOp& b) {
  const double eb = dot(e.c, b.c);
  const double ee = dot(e.c, e.c);
  HermitianOp out;
  out.c0 = e.c0 * e.c0 * b.c0 + 2.0 * e.c0 * eb + b.c0 * ee;
  out.c = 2.0 * (e.c0 * b.c0 + eb) * e.c + (e.c0 * e.c0 - ee) * b.c;
  return out;
}

// Relative entropy K(rho|tau) = Tr[rho (log rho - log tau)].
// Finite for every physical rho (including pure) as long as tau is full rank;
// a pure tau is admissible only for rho = tau (K = 0).
inline double relative_entropy(const BlochVector& r, const BlochVector& t) {
  const double nt = norm(t);
  if (nt >= 1.0 - 1e-12) {
    if (norm(r - t) <= 1e-9) return 0.0;
    fail(ErrorKind::undefined_divergence,
         "relative_entropy: reference state is pure and differs from the argument");
  }
  const double nr = std::min(norm(r), 1.0);
  const double entropy = detail::xlogx(0.5 * (1.0 + nr)) + detail::xlogx(0.5 * (1.0 - nr));
  const double lt0 = 0.5 * (std::log1p(-nt * nt) - std::log(4.0));
  const Vec3 ltv = detail::atanh_over_x(nt) * t;
  return entropy - lt0 - dot(r, ltv);
}

}  // namespace mke
