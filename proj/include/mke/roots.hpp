#pragma once

// Bracketed scalar root finding (Brent's method) and golden-section
// minimization. Both are deterministic and allocation-free.

#include <cmath>
#include <limits>

namespace mke {

struct RootResult {
  double x = 0.0;      // final abscissa
  double fx = 0.0;     // residual f(x)
  int iterations = 0;  // function evaluations consumed inside the solver
};

// Grow a symmetric bracket [-L, L] by doubling until f changes sign across it.
// Returns false if no sign change is found before the half-width exceeds
// max_half_width. On success lo/hi/flo/fhi describe a valid bracket.
template <class F>
bool expand_symmetric_bracket(F&& f, double initial_half_width, double max_half_width,
                              double& lo, double& hi, double& flo, double& fhi) {
  double half = initial_half_width;
  lo = -half;
  hi = half;
  flo = f(lo);
  fhi = f(hi);
  while (flo != 0.0 && fhi != 0.0 && ((flo > 0.0) == (fhi > 0.0))) {
    half *= 2.0;
    if (half > max_half_width) return false;
    lo = -half;
    hi = half;
    flo = f(lo);
    fhi = f(hi);
  }
  return true;
}

// Brent's method on a bracket [a, b] with fa = f(a), fb = f(b), fa*fb <= 0.
// Runs until |f| <= ftol, the bracket collapses to floating-point resolution
// (plus xtol absolute), or max_iter evaluations are spent. Pass ftol = 0 to
// always polish to bracket collapse; inspect the returned residual.
template <class F>
RootResult find_root(F&& f, double a, double b, double fa, double fb, double ftol,
                     int max_iter, double xtol = 1e-15) {
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};

  double c = a, fc = fa;
  double d = b - a, e = b - a;
  int it = 0;
  for (; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (fb == 0.0 || std::abs(fb) <= ftol || std::abs(xm) <= tol1) break;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Attempt inverse quadratic interpolation (secant if only two points).
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double rr = fb / fc;
        p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return {b, fb, it};
}

// Golden-section minimization of a unimodal f on [lo, hi]; returns the
// abscissa of the bracket midpoint once its width drops below xtol.
template <class F>
double golden_min(F&& f, double lo, double hi, double xtol = 1e-10, int max_iter = 200) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace mke
