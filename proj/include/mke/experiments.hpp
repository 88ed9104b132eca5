#pragma once

// Deterministic comparison studies between the exact and first-order
// estimators: fidelity / fidelity-ratio / Hamiltonian-distance surfaces over
// (theta, s) grids, minimum-fidelity curves over purity, seeded purity
// scatters, and a brute-force grid oracle that independently minimizes the
// relative entropy over the feasible disk.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mke/bloch.hpp"
#include "mke/errors.hpp"
#include "mke/hamiltonian.hpp"
#include "mke/rng.hpp"
#include "mke/roots.hpp"
#include "mke/solvers.hpp"

namespace mke {

inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) fail(ErrorKind::bad_config, "linspace: need at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

struct SweepGrid {
  std::vector<double> theta_points;
  std::vector<double> s_points;
  double mu = 0.55;
  double phi = 0.0;
  std::uint64_t seed = 1;
};

// The default study resolution: 101 theta points on [0, pi] and 101 s points
// on [-s_max, s_max], with the outermost mean kept off the boundary.
inline SweepGrid default_surface_grid(double mu, double phi = 0.0, int n_theta = 101,
                                      int n_s = 101, double s_max = 0.999) {
  if (!(s_max > 0.0 && s_max < 1.0))
    fail(ErrorKind::bad_config, "default_surface_grid: s_max must lie in (0, 1)");
  SweepGrid g;
  g.theta_points = linspace(0.0, detail::kPi, n_theta);
  g.s_points = linspace(-s_max, s_max, n_s);
  g.mu = mu;
  g.phi = phi;
  return g;
}

namespace detail {

inline void validate_grid(const SweepGrid& g) {
  if (g.theta_points.empty() || g.s_points.empty())
    fail(ErrorKind::bad_config, "sweep grid: empty axis");
  for (std::size_t i = 0; i + 1 < g.theta_points.size(); ++i)
    if (!(g.theta_points[i] < g.theta_points[i + 1]))
      fail(ErrorKind::bad_config, "sweep grid: theta axis must be strictly increasing");
  for (std::size_t i = 0; i + 1 < g.s_points.size(); ++i)
    if (!(g.s_points[i] < g.s_points[i + 1]))
      fail(ErrorKind::bad_config, "sweep grid: s axis must be strictly increasing");
  if (g.theta_points.front() < -1e-12 || g.theta_points.back() > kPi + 1e-12)
    fail(ErrorKind::bad_config, "sweep grid: theta axis must lie in [0, pi]");
  if (std::abs(g.s_points.front()) >= 1.0 || std::abs(g.s_points.back()) >= 1.0)
    fail(ErrorKind::bad_config, "sweep grid: s axis must lie strictly inside (-1, 1)");
  if (!(g.mu >= 0.5 - 1e-12 && g.mu <= 1.0))
    fail(ErrorKind::bad_config, "sweep grid: purity must lie in [1/2, 1]");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace detail

// One evaluated study point. Quantities that could not be computed stay NaN;
// a nonempty `error` explains why (the row is still emitted, never dropped).
struct SweepRow {
  double theta = detail::kNaN;
  double s = detail::kNaN;
  double mu = detail::kNaN;
  double fidelity = detail::kNaN;           // F(exact, approx)
  double purity_exact = detail::kNaN;
  double purity_approx = detail::kNaN;
  double k_exact = detail::kNaN;            // K(exact | prior)
  double k_approx = detail::kNaN;           // K(approx | prior)
  double fid_exact_to_prior = detail::kNaN;
  double fid_approx_to_prior = detail::kNaN;
  double d_hamiltonian = detail::kNaN;      // trace distance of estimated Hamiltonians
  double ratio_z = detail::kNaN;            // fid_approx_to_prior / fid_exact_to_prior
  double r_mu = detail::kNaN;               // purity_exact / purity_approx
  std::string probe;                        // min_fidelity_curve: "grid" or "slice"
  std::string error;                        // empty on success
};

struct SweepResult {
  std::vector<SweepRow> rows;
  long resampled = 0;  // purity_scatter: rejected-and-redrawn sample count
};

// Solve one (theta, s, mu, phi) instance and collect every comparison column.
// Solver failures are captured in the row's error field, not thrown.
inline SweepRow evaluate_point(double theta, double s, double mu, double phi,
                               const SolverConfig& cfg = {}) {
  SweepRow row;
  row.theta = theta;
  row.s = s;
  row.mu = mu;
  try {
    const BlochVector tau = state_from_angles({theta, phi, mu});
    MeasurementRecord rec;  // observable already sigma3 in this frame
    rec.mean_s = s;
    const SolutionPair p = mke_pair(tau, rec, cfg);
    row.fidelity = p.fidelity_exact_approx;
    row.purity_exact = p.purity_exact;
    row.purity_approx = p.purity_approx;
    row.k_exact = p.k_exact;
    row.k_approx = p.k_approx;
    row.fid_exact_to_prior = fidelity(p.exact.state, tau);
    row.fid_approx_to_prior = fidelity(p.approx.state, tau);
    row.ratio_z = row.fid_approx_to_prior / row.fid_exact_to_prior;
    row.r_mu = row.purity_exact / row.purity_approx;
    if (dot(tau, tau) > 1e-24) {
      const HamiltonianVector h_exa = estimate_hamiltonian(tau, p.exact.state);
      const HamiltonianVector h_apx = estimate_hamiltonian(tau, p.approx.state);
      row.d_hamiltonian = hamiltonian_distance(h_exa, h_apx);
    }
  } catch (const Error& e) {
    row.error = std::string(error_kind_name(e.kind())) + ": " + e.what();
  }
  return row;
}

// Full (theta, s) sweep at fixed purity; rows in theta-major grid order.
inline SweepResult fidelity_surface(const SweepGrid& g, const SolverConfig& cfg = {}) {
  detail::validate_grid(g);
  SweepResult out;
  out.rows.reserve(g.theta_points.size() * g.s_points.size());
  for (const double theta : g.theta_points)
    for (const double s : g.s_points) out.rows.push_back(evaluate_point(theta, s, g.mu, g.phi, cfg));
  return out;
}

// Identical sweep; named separately because its consumers read the ratio_z
// column (filled on every row anyway).
inline SweepResult fidelity_ratio_surface(const SweepGrid& g, const SolverConfig& cfg = {}) {
  return fidelity_surface(g, cfg);
}

// Same sweep with the Hamiltonian-distance column as the payload; requires a
// strictly polarized prior so the estimator is defined everywhere.
inline SweepResult hamiltonian_distance_surface(const SweepGrid& g, const SolverConfig& cfg = {}) {
  if (!(g.mu > 0.5))
    fail(ErrorKind::bad_config,
         "hamiltonian_distance_surface: purity must exceed 1/2 (estimator undefined for a fully mixed prior)");
  return fidelity_surface(g, cfg);
}

namespace detail {

// F(exact, approx) at a point, +infinity when the point is infeasible, for
// use as a minimization objective.
inline double fidelity_objective(double theta, double s, double mu, double phi,
                                 const SolverConfig& cfg) {
  const SweepRow row = evaluate_point(theta, s, mu, phi, cfg);
  return row.error.empty() ? row.fidelity : std::numeric_limits<double>::infinity();
}

// Golden-section polish of the s-coordinate of a grid argmin at fixed theta.
inline double refine_s_minimum(double theta, const std::vector<double>& s_points,
                               std::size_t j, double mu, double phi, const SolverConfig& cfg) {
  const double lo = s_points[j > 0 ? j - 1 : 0];
  const double hi = s_points[j + 1 < s_points.size() ? j + 1 : s_points.size() - 1];
  if (!(hi > lo)) return s_points[j];
  return golden_min([&](double s) { return fidelity_objective(theta, s, mu, phi, cfg); }, lo, hi,
                    1e-10);
}

}  // namespace detail

// Fixed slice angles used for minimum tracking alongside the global argmin.
inline constexpr double kSliceThetas[3] = {detail::kPi / 2.0, 5.0 * detail::kPi / 12.0,
                                           detail::kPi / 3.0};

// For each purity: locate the grid-global minimum of F(exact, approx), polish
// its s-coordinate (probe = "grid"), then do the same restricted to the fixed
// slice angles (probe = "slice"). Four rows per purity.
inline SweepResult min_fidelity_curve(const std::vector<double>& mu_points, const SweepGrid& tmpl,
                                      const SolverConfig& cfg = {}) {
  if (mu_points.empty()) fail(ErrorKind::bad_config, "min_fidelity_curve: empty purity list");
  SweepGrid probe = tmpl;
  SweepResult out;
  out.rows.reserve(mu_points.size() * 4);
  for (const double mu : mu_points) {
    probe.mu = mu;
    detail::validate_grid(probe);
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < probe.theta_points.size(); ++i)
      for (std::size_t j = 0; j < probe.s_points.size(); ++j) {
        const double f = detail::fidelity_objective(probe.theta_points[i], probe.s_points[j], mu,
                                                    probe.phi, cfg);
        if (f < best) {
          best = f;
          bi = i;
          bj = j;
        }
      }
    if (!std::isfinite(best))
      fail(ErrorKind::internal, "min_fidelity_curve: every grid point failed at purity " +
                                    std::to_string(mu));
    const double theta_star = probe.theta_points[bi];
    const double s_star = detail::refine_s_minimum(theta_star, probe.s_points, bj, mu, probe.phi, cfg);
    SweepRow grid_row = evaluate_point(theta_star, s_star, mu, probe.phi, cfg);
    grid_row.probe = "grid";
    out.rows.push_back(grid_row);

    for (const double theta : kSliceThetas) {
      double slice_best = std::numeric_limits<double>::infinity();
      std::size_t sj = 0;
      for (std::size_t j = 0; j < probe.s_points.size(); ++j) {
        const double f = detail::fidelity_objective(theta, probe.s_points[j], mu, probe.phi, cfg);
        if (f < slice_best) {
          slice_best = f;
          sj = j;
        }
      }
      const double s_ref = detail::refine_s_minimum(theta, probe.s_points, sj, mu, probe.phi, cfg);
      SweepRow slice_row = evaluate_point(theta, s_ref, mu, probe.phi, cfg);
      slice_row.probe = "slice";
      out.rows.push_back(slice_row);
    }
  }
  return out;
}

struct ScatterRanges {
  double mu_lo = 0.5;
  double mu_hi = 0.6;
  double theta_lo = 0.0;
  double theta_hi = detail::kPi;
  double s_lo = -0.999;
  double s_hi = 0.999;
};

// Seeded uniform sampling of (theta, s, mu); infeasible draws are redrawn up
// to 8 times per sample index (counter-based, so sample i is reproducible in
// isolation), and the redraw count is reported.
inline SweepResult purity_scatter(int n_samples, const ScatterRanges& rg, std::uint64_t seed,
                                  const SolverConfig& cfg = {}) {
  if (n_samples < 1) fail(ErrorKind::bad_config, "purity_scatter: need at least one sample");
  if (!(rg.mu_lo >= 0.5 - 1e-12 && rg.mu_hi <= cfg.purity_clamp + 1e-15 && rg.mu_lo <= rg.mu_hi))
    fail(ErrorKind::bad_config, "purity_scatter: purity range must lie within [1/2, purity_clamp]");
  if (!(rg.theta_lo >= -1e-12 && rg.theta_hi <= detail::kPi + 1e-12 && rg.theta_lo <= rg.theta_hi))
    fail(ErrorKind::bad_config, "purity_scatter: theta range must lie within [0, pi]");
  if (!(rg.s_lo <= rg.s_hi && std::abs(rg.s_lo) <= cfg.mean_clamp && std::abs(rg.s_hi) <= cfg.mean_clamp))
    fail(ErrorKind::bad_config, "purity_scatter: s range must lie within the mean clamp");

  SweepResult out;
  out.rows.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    SweepRow row;
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t base = static_cast<std::uint64_t>(3 * attempt);
      const double theta = uniform_in(seed, static_cast<std::uint64_t>(i), base + 0, rg.theta_lo, rg.theta_hi);
      const double s = uniform_in(seed, static_cast<std::uint64_t>(i), base + 1, rg.s_lo, rg.s_hi);
      const double mu = uniform_in(seed, static_cast<std::uint64_t>(i), base + 2, rg.mu_lo, rg.mu_hi);
      row = evaluate_point(theta, s, mu, 0.0, cfg);
      if (row.error.empty() || attempt >= 8) break;
      ++out.resampled;
    }
    out.rows.push_back(row);
  }
  return out;
}

struct OracleResult {
  BlochVector state;
  double k_min = 0.0;
  long evaluations = 0;
};

// Direct minimization of K(rho | tau) over the feasible disk at r3 = s:
// resolution x resolution scan, then (optionally) four cell-halving local
// pattern-search passes around the best point.
inline OracleResult brute_force_oracle(const BlochVector& tau, double s, int resolution,
                                       bool refine = true) {
  if (resolution < 8)
    fail(ErrorKind::bad_config, "brute_force_oracle: resolution must be at least 8");
  if (!(std::abs(s) < 1.0))
    fail(ErrorKind::domain, "brute_force_oracle: |s| must be strictly below 1");
  const double disk_sq = std::max(0.0, 1.0 - s * s);
  const double radius = std::sqrt(disk_sq);

  OracleResult out;
  out.k_min = std::numeric_limits<double>::infinity();
  auto consider = [&](double x, double y) {
    if (x * x + y * y > disk_sq) return false;
    const double k = relative_entropy(BlochVector{x, y, s}, tau);
    ++out.evaluations;
    if (k < out.k_min) {
      out.k_min = k;
      out.state = {x, y, s};
      return true;
    }
    return false;
  };

  const std::vector<double> axis = linspace(-radius, radius, resolution);
  for (const double x : axis)
    for (const double y : axis) consider(x, y);

  if (refine) {
    double h = 2.0 * radius / (resolution - 1);
    for (int pass = 0; pass < 4; ++pass) {
      h *= 0.5;
      for (int guard = 0; guard < 256; ++guard) {
        const double cx = out.state.x, cy = out.state.y;
        bool moved = false;
        for (int dx = -1; dx <= 1; ++dx)
          for (int dy = -1; dy <= 1; ++dy) {
            if (dx == 0 && dy == 0) continue;
            moved = consider(cx + dx * h, cy + dy * h) || moved;
          }
        if (!moved) break;
      }
    }
  }
  return out;
}

struct OracleCheckRow {
  int index = 0;
  BlochVector tau;
  double s = detail::kNaN;
  double k_exact = detail::kNaN;
  double k_approx = detail::kNaN;
  double k_oracle = detail::kNaN;
  double margin = detail::kNaN;  // k_exact - k_oracle; dominance means margin small
  std::string error;
};

// Seeded random instances comparing solve_exact's K against the brute-force
// oracle and the first-order solution. Priors are uniform over purity
// [1/2, purity_clamp) with isotropic axis; means are uniform in [-0.95, 0.95].
inline std::vector<OracleCheckRow> oracle_check(int instances, int resolution, std::uint64_t seed,
                                                const SolverConfig& cfg = {}) {
  if (instances < 1) fail(ErrorKind::bad_config, "oracle_check: need at least one instance");
  if (resolution < 8) fail(ErrorKind::bad_config, "oracle_check: resolution must be at least 8");
  std::vector<OracleCheckRow> out;
  out.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) {
    OracleCheckRow row;
    row.index = i;
    const std::uint64_t idx = static_cast<std::uint64_t>(i);
    const double mu = uniform_in(seed, idx, 0, 0.5, cfg.purity_clamp);
    const double z = uniform_in(seed, idx, 1, -1.0, 1.0);
    const double az = uniform_in(seed, idx, 2, 0.0, 2.0 * detail::kPi);
    const double k = std::sqrt(std::max(0.0, 2.0 * mu - 1.0));
    const double rho_xy = std::sqrt(std::max(0.0, 1.0 - z * z));
    row.tau = {k * rho_xy * std::cos(az), k * rho_xy * std::sin(az), k * z};
    row.s = uniform_in(seed, idx, 3, -0.95, 0.95);
    try {
      MeasurementRecord rec;
      rec.mean_s = row.s;
      const SolutionPair p = mke_pair(row.tau, rec, cfg);
      row.k_exact = p.k_exact;
      row.k_approx = p.k_approx;
      row.k_oracle = brute_force_oracle(row.tau, row.s, resolution).k_min;
      row.margin = row.k_exact - row.k_oracle;
    } catch (const Error& e) {
      row.error = std::string(error_kind_name(e.kind())) + ": " + e.what();
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace mke
