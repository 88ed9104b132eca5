#pragma once

// Independent dense 2x2 complex-matrix reference implementations used to
// cross-check the closed-form Bloch algebra. Deliberately built on different
// numerics: series matrix exponential with scaling-and-squaring, and explicit
// eigenvector decompositions for matrix functions.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mke/bloch.hpp"

namespace dense {

using C = std::complex<double>;

struct Mat {
  C a[2][2]{};
};

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.a[i][j] = x.a[i][j] + y.a[i][j];
  return m;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  Mat m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.a[i][j] = x.a[i][j] - y.a[i][j];
  return m;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.a[i][j] = x.a[i][0] * y.a[0][j] + x.a[i][1] * y.a[1][j];
  return m;
}

inline Mat scale(C k, const Mat& x) {
  Mat m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.a[i][j] = k * x.a[i][j];
  return m;
}

inline Mat adjoint(const Mat& x) {
  Mat m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.a[i][j] = std::conj(x.a[j][i]);
  return m;
}

inline C trace(const Mat& x) { return x.a[0][0] + x.a[1][1]; }

inline Mat identity() {
  Mat m;
  m.a[0][0] = 1.0;
  m.a[1][1] = 1.0;
  return m;
}

inline Mat from_op(const mke::HermitianOp& o) {
  Mat m;
  m.a[0][0] = o.c0 + o.c.z;
  m.a[0][1] = C(o.c.x, -o.c.y);
  m.a[1][0] = C(o.c.x, o.c.y);
  m.a[1][1] = o.c0 - o.c.z;
  return m;
}

inline Mat from_bloch(const mke::BlochVector& r) {
  return from_op(mke::HermitianOp{0.5, 0.5 * r});
}

inline mke::HermitianOp to_op(const Mat& m) {
  mke::HermitianOp o;
  o.c0 = 0.5 * (m.a[0][0].real() + m.a[1][1].real());
  o.c.x = m.a[0][1].real();
  o.c.y = -m.a[0][1].imag();
  o.c.z = 0.5 * (m.a[0][0].real() - m.a[1][1].real());
  return o;
}

inline mke::BlochVector to_bloch(const Mat& rho) { return 2.0 * to_op(rho).c; }

inline double inf_norm(const Mat& m) {
  const double r0 = std::abs(m.a[0][0]) + std::abs(m.a[0][1]);
  const double r1 = std::abs(m.a[1][0]) + std::abs(m.a[1][1]);
  return r0 > r1 ? r0 : r1;
}

// General (not necessarily Hermitian) matrix exponential by Taylor series
// with scaling and squaring.
inline Mat expm(const Mat& m) {
  int k = 0;
  double nrm = inf_norm(m);
  while (nrm > 0.5) {
    nrm *= 0.5;
    ++k;
  }
  const Mat t = scale(std::ldexp(1.0, -k), m);
  Mat sum = identity();
  Mat term = identity();
  for (int n = 1; n <= 25; ++n) {
    term = scale(C(1.0 / n), term * t);
    sum = sum + term;
  }
  for (int i = 0; i < k; ++i) sum = sum * sum;
  return sum;
}

struct Eig {
  double e0 = 0.0, e1 = 0.0;  // e0 >= e1
  C v0[2];
  C v1[2];
};

inline Eig eig_herm(const Mat& m) {
  const double a = m.a[0][0].real();
  const double d = m.a[1][1].real();
  const C b = m.a[0][1];
  const double half = 0.5 * (a - d);
  const double rad = std::sqrt(half * half + std::norm(b));
  Eig out;
  out.e0 = 0.5 * (a + d) + rad;
  out.e1 = 0.5 * (a + d) - rad;
  if (std::abs(b) < 1e-300) {
    if (a >= d) {
      out.v0[0] = 1.0;
      out.v1[1] = 1.0;
    } else {
      out.v0[1] = 1.0;
      out.v1[0] = 1.0;
    }
    return out;
  }
  const C x = b;
  const C y = C(out.e0 - a, 0.0);
  const double n = std::sqrt(std::norm(x) + std::norm(y));
  out.v0[0] = x / n;
  out.v0[1] = y / n;
  out.v1[0] = -std::conj(out.v0[1]);
  out.v1[1] = std::conj(out.v0[0]);
  return out;
}

template <class F>
Mat func_herm(const Mat& m, F&& f) {
  const Eig e = eig_herm(m);
  const double f0 = f(e.e0);
  const double f1 = f(e.e1);
  Mat out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.a[i][j] = f0 * e.v0[i] * std::conj(e.v0[j]) + f1 * e.v1[i] * std::conj(e.v1[j]);
  return out;
}

inline Mat logm_pd(const Mat& m) {
  const Eig e = eig_herm(m);
  if (!(e.e1 > 0.0)) throw std::runtime_error("logm_pd: matrix not positive definite");
  return func_herm(m, [](double v) { return std::log(v); });
}

inline Mat sqrtm_psd(const Mat& m) {
  return func_herm(m, [](double v) { return std::sqrt(v > 0.0 ? v : 0.0); });
}

// Squared-overlap fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const Mat& rho, const Mat& sig) {
  const Mat sr = sqrtm_psd(rho);
  const Mat inner = sr * sig * sr;
  const double t = trace(sqrtm_psd(inner)).real();
  return t * t;
}

inline double trace_norm_herm(const Mat& m) {
  const Eig e = eig_herm(m);
  return std::abs(e.e0) + std::abs(e.e1);
}

// Tr[rho log rho] - Tr[rho log tau]; tau must be positive definite, rho may
// be singular (0 log 0 = 0 on its eigenvalues).
inline double relative_entropy(const Mat& rho, const Mat& tau) {
  const Eig er = eig_herm(rho);
  auto xlogx = [](double p) { return p > 1e-300 ? p * std::log(p) : 0.0; };
  const double entropy = xlogx(er.e0) + xlogx(er.e1);
  const Mat lt = logm_pd(tau);
  return entropy - trace(rho * lt).real();
}

// U rho U^dagger with U = exp(-i h.sigma).
inline Mat conjugate_unitary(const mke::HamiltonianVector& h, const Mat& rho) {
  const Mat hm = from_op(mke::HermitianOp{0.0, h});
  const Mat u = expm(scale(C(0.0, -1.0), hm));
  return u * rho * adjoint(u);
}

}  // namespace dense
