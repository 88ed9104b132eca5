// mke: command-line front end for the minimum-relative-entropy qubit
// estimators. Subcommands either solve a single instance (JSON/CSV record)
// or emit study tables (fidelity / ratio / Hamiltonian-distance surfaces,
// minimum-fidelity curves, purity scatters, oracle cross-checks).
//
// Exit codes: 0 success, 1 runtime/solver failure (and oracle-check
// dominance violations), 2 usage errors (bad flags or parameter values).

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mke/mke.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Parameter-validation failures exit 2; anything that goes wrong after the
// inputs were accepted exits 1.
int exit_code_for(mke::ErrorKind kind) {
  return (kind == mke::ErrorKind::domain || kind == mke::ErrorKind::bad_config) ? 2 : 1;
}

void emit_error_record(const mke::Error& e) {
  std::cout << "{\"error\": {\"kind\": " << mke::json_string(mke::error_kind_name(e.kind()))
            << ", \"message\": " << mke::json_string(e.what()) << "}}\n";
  std::cerr << "mke: " << e.what() << "\n";
}

template <class Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    return std::cout.good() ? 0 : 1;
  }
  std::ofstream file(path);
  if (!file) {
    std::cerr << "mke: cannot open output file: " << path << "\n";
    return 1;
  }
  fn(file);
  if (!file.good()) {
    std::cerr << "mke: write failed: " << path << "\n";
    return 1;
  }
  return 0;
}

std::vector<mke::MetaEntry> base_meta(const std::string& command) {
  return {{"tool", mke::kToolName, false},
          {"version", mke::kVersion, false},
          {"command", command, false},
          {"timestamp", iso_timestamp(), false}};
}

void push_num(std::vector<mke::MetaEntry>& meta, const std::string& key, double v) {
  meta.push_back({key, mke::format_double(v), true});
}

void push_int(std::vector<mke::MetaEntry>& meta, const std::string& key, long long v) {
  meta.push_back({key, std::to_string(v), true});
}

// Seed precedence: explicit flag, then MKE_SEED, then the built-in default.
// Returns false (with a message) when MKE_SEED is set but unparseable.
bool resolve_seed(bool flag_given, std::uint64_t flag_value, std::uint64_t& out) {
  if (flag_given) {
    out = flag_value;
    return true;
  }
  if (const char* env = std::getenv("MKE_SEED")) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0') {
      std::cerr << "mke: MKE_SEED is not a valid unsigned integer: " << env << "\n";
      return false;
    }
    out = v;
    return true;
  }
  out = kDefaultSeed;
  return true;
}

struct CommonSweepOpts {
  double mu = 0.55;
  double phi = 0.0;
  int n_theta = 101;
  int n_s = 101;
  double s_max = 0.999;
  std::string out = "-";
  std::string format = "csv";
};

void add_output_flags(CLI::App* sub, std::string& out, std::string& format) {
  sub->add_option("-o,--out", out, "Output path ('-' for stdout)")->capture_default_str();
  sub->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_grid_flags(CLI::App* sub, CommonSweepOpts& o) {
  sub->add_option("--phi", o.phi, "Prior azimuthal angle")->capture_default_str();
  sub->add_option("--n-theta", o.n_theta, "Number of theta grid points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  sub->add_option("--n-s", o.n_s, "Number of mean-value grid points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  sub->add_option("--s-max", o.s_max, "Outermost |mean value| on the grid")
      ->check(CLI::Range(1e-6, 0.9999999))
      ->capture_default_str();
  add_output_flags(sub, o.out, o.format);
}

void write_rows(std::ostream& os, const std::string& format,
                const std::vector<mke::MetaEntry>& meta, const std::vector<std::string>& columns,
                const std::vector<mke::SweepRow>& rows) {
  if (format == "json")
    mke::write_sweep_json(os, meta, columns, rows);
  else
    mke::write_sweep_csv(os, meta, columns, rows);
}

double to_rad(bool degrees, double v) { return degrees ? v * mke::detail::kPi / 180.0 : v; }

// ---------------------------------------------------------------- solve ----

struct SolveOpts {
  double theta = 0.0, phi = 0.0, mu = 0.0, s = 0.0, alpha = 0.0;
  bool theta_set = false, phi_set = false, mu_set = false, s_set = false, alpha_set = false;
  std::string config_path;
  std::string out = "-";
  std::string format = "json";
};

// Pull defaults from a JSON config: either a bare object with the parameter
// keys or a previous `solve` output (whose meta.config is the fragment).
bool merge_config(SolveOpts& o) {
  if (o.config_path.empty()) return true;
  std::ifstream f(o.config_path);
  if (!f) {
    std::cerr << "mke: cannot read config file: " << o.config_path << "\n";
    return false;
  }
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "mke: config is not valid JSON: " << e.what() << "\n";
    return false;
  }
  if (j.contains("meta") && j["meta"].contains("config")) j = j["meta"]["config"];
  auto take = [&](const char* key, double& slot, bool& set_flag) -> bool {
    if (set_flag || !j.contains(key)) return true;
    if (!j[key].is_number()) {
      std::cerr << "mke: config key '" << key << "' is not a number\n";
      return false;
    }
    slot = j[key].get<double>();
    set_flag = true;
    return true;
  };
  return take("theta", o.theta, o.theta_set) && take("phi", o.phi, o.phi_set) &&
         take("mu", o.mu, o.mu_set) && take("s", o.s, o.s_set) &&
         take("alpha", o.alpha, o.alpha_set);
}

void write_solve_json(std::ostream& os, const SolveOpts& o, double theta, double phi,
                      const mke::SolutionPair& p, const mke::BlochVector& exact_state,
                      const mke::BlochVector& approx_state) {
  using mke::format_double;
  os << "{\n  \"meta\": {\n"
     << "    \"tool\": \"mke\",\n"
     << "    \"version\": " << mke::json_string(mke::kVersion) << ",\n"
     << "    \"command\": \"solve\",\n"
     << "    \"timestamp\": " << mke::json_string(iso_timestamp()) << ",\n"
     << "    \"config\": {\"theta\": " << format_double(theta) << ", \"phi\": " << format_double(phi)
     << ", \"mu\": " << format_double(o.mu) << ", \"s\": " << format_double(o.s)
     << ", \"alpha\": " << format_double(o.alpha) << "}\n  },\n";
  os << "  \"exact\": {\"state\": [" << format_double(exact_state.x) << ", "
     << format_double(exact_state.y) << ", " << format_double(exact_state.z) << "], "
     << "\"lambda1\": " << format_double(p.exact.lambda1)
     << ", \"lambda2\": " << format_double(p.exact.lambda2)
     << ", \"residual\": " << format_double(p.exact.residual)
     << ", \"iterations\": " << p.exact.iterations << "},\n";
  os << "  \"approx\": {\"state\": [" << format_double(approx_state.x) << ", "
     << format_double(approx_state.y) << ", " << format_double(approx_state.z) << "], "
     << "\"lambda\": " << format_double(p.approx.lambda) << "},\n";
  os << "  \"fidelity\": " << format_double(p.fidelity_exact_approx) << ",\n"
     << "  \"purity_exact\": " << format_double(p.purity_exact) << ",\n"
     << "  \"purity_approx\": " << format_double(p.purity_approx) << ",\n"
     << "  \"K_exact\": " << format_double(p.k_exact) << ",\n"
     << "  \"K_approx\": " << format_double(p.k_approx) << "\n}\n";
}

void write_solve_csv(std::ostream& os, const SolveOpts& o, double theta, double phi,
                     const mke::SolutionPair& p, const mke::BlochVector& exact_state,
                     const mke::BlochVector& approx_state) {
  using mke::format_double;
  for (const mke::MetaEntry& m : base_meta("solve")) os << "# " << m.key << ": " << m.value << "\n";
  os << "theta,phi,mu,s,alpha,exact_r1,exact_r2,exact_r3,lambda1,lambda2,residual,iterations,"
        "approx_r1,approx_r2,approx_r3,lambda,fidelity,purity_exact,purity_approx,K_exact,K_approx\n";
  const double cells[] = {theta,
                          phi,
                          o.mu,
                          o.s,
                          o.alpha,
                          exact_state.x,
                          exact_state.y,
                          exact_state.z,
                          p.exact.lambda1,
                          p.exact.lambda2,
                          p.exact.residual,
                          static_cast<double>(p.exact.iterations),
                          approx_state.x,
                          approx_state.y,
                          approx_state.z,
                          p.approx.lambda,
                          p.fidelity_exact_approx,
                          p.purity_exact,
                          p.purity_approx,
                          p.k_exact,
                          p.k_approx};
  for (std::size_t i = 0; i < sizeof(cells) / sizeof(cells[0]); ++i)
    os << (i ? "," : "") << format_double(cells[i]);
  os << "\n";
}

int run_solve(SolveOpts& o, bool degrees) {
  if (!merge_config(o)) return 2;
  if (!o.theta_set || !o.mu_set || !o.s_set) {
    std::cerr << "mke: solve requires --theta, --mu and --s (directly or via --config)\n";
    return 2;
  }
  const double theta = to_rad(degrees, o.theta);
  const double phi = to_rad(degrees, o.phi);
  try {
    const mke::BlochVector tau = mke::state_from_angles({theta, phi, o.mu});
    const mke::HermitianOp a{o.alpha, {0.0, 0.0, 1.0}};
    const mke::MeasurementRecord rec = mke::normalize_observable(a, o.alpha + o.s);
    const mke::BlochVector tau_nf = mke::to_normal_frame(rec, tau);
    const mke::SolutionPair p = mke::mke_pair(tau_nf, rec);
    const mke::BlochVector exact_state = mke::from_normal_frame(rec, p.exact.state);
    const mke::BlochVector approx_state = mke::from_normal_frame(rec, p.approx.state);
    return with_output(o.out, [&](std::ostream& os) {
      if (o.format == "json")
        write_solve_json(os, o, theta, phi, p, exact_state, approx_state);
      else
        write_solve_csv(os, o, theta, phi, p, exact_state, approx_state);
    });
  } catch (const mke::Error& e) {
    emit_error_record(e);
    return exit_code_for(e.kind());
  }
}

// ---------------------------------------------------------------- sweeps ----

int run_surface(const std::string& command, const CommonSweepOpts& o, bool degrees) {
  try {
    const mke::SweepGrid grid =
        mke::default_surface_grid(o.mu, to_rad(degrees, o.phi), o.n_theta, o.n_s, o.s_max);
    mke::SweepResult result;
    std::vector<std::string> columns;
    if (command == "ratio-surface") {
      result = mke::fidelity_ratio_surface(grid);
      columns = mke::ratio_columns();
    } else if (command == "ham-distance") {
      result = mke::hamiltonian_distance_surface(grid);
      columns = mke::surface_columns();
    } else {
      result = mke::fidelity_surface(grid);
      columns = mke::surface_columns();
    }
    auto meta = base_meta(command);
    push_num(meta, "mu", o.mu);
    push_num(meta, "phi", to_rad(degrees, o.phi));
    push_int(meta, "n_theta", o.n_theta);
    push_int(meta, "n_s", o.n_s);
    push_num(meta, "s_max", o.s_max);
    return with_output(o.out, [&](std::ostream& os) {
      write_rows(os, o.format, meta, columns, result.rows);
    });
  } catch (const mke::Error& e) {
    emit_error_record(e);
    return exit_code_for(e.kind());
  }
}

int run_min_fid_curve(const CommonSweepOpts& o, double mu_lo, double mu_hi, double mu_step,
                      bool degrees) {
  if (!(mu_step > 1e-9) || !(mu_lo <= mu_hi)) {
    std::cerr << "mke: min-fid-curve requires --mu-lo <= --mu-hi and --mu-step > 0\n";
    return 2;
  }
  std::vector<double> mu_points;
  for (double mu = mu_lo; mu <= mu_hi + 1e-12; mu += mu_step) mu_points.push_back(mu);
  try {
    const mke::SweepGrid tmpl =
        mke::default_surface_grid(mu_lo, to_rad(degrees, o.phi), o.n_theta, o.n_s, o.s_max);
    const mke::SweepResult result = mke::min_fidelity_curve(mu_points, tmpl);
    auto meta = base_meta("min-fid-curve");
    push_num(meta, "mu_lo", mu_lo);
    push_num(meta, "mu_hi", mu_hi);
    push_num(meta, "mu_step", mu_step);
    push_num(meta, "phi", to_rad(degrees, o.phi));
    push_int(meta, "n_theta", o.n_theta);
    push_int(meta, "n_s", o.n_s);
    push_num(meta, "s_max", o.s_max);
    return with_output(o.out, [&](std::ostream& os) {
      write_rows(os, o.format, meta, mke::curve_columns(), result.rows);
    });
  } catch (const mke::Error& e) {
    emit_error_record(e);
    return exit_code_for(e.kind());
  }
}

int run_purity_scatter(const std::string& out, const std::string& format, int samples,
                       const mke::ScatterRanges& ranges, bool seed_given, std::uint64_t seed_flag,
                       bool degrees) {
  std::uint64_t seed = 0;
  if (!resolve_seed(seed_given, seed_flag, seed)) return 2;
  mke::ScatterRanges rg = ranges;
  rg.theta_lo = to_rad(degrees, rg.theta_lo);
  rg.theta_hi = to_rad(degrees, rg.theta_hi);
  try {
    const mke::SweepResult result = mke::purity_scatter(samples, rg, seed);
    auto meta = base_meta("purity-scatter");
    push_int(meta, "samples", samples);
    push_num(meta, "mu_lo", rg.mu_lo);
    push_num(meta, "mu_hi", rg.mu_hi);
    push_num(meta, "theta_lo", rg.theta_lo);
    push_num(meta, "theta_hi", rg.theta_hi);
    push_num(meta, "s_lo", rg.s_lo);
    push_num(meta, "s_hi", rg.s_hi);
    push_int(meta, "seed", static_cast<long long>(seed));
    push_int(meta, "resampled", result.resampled);
    return with_output(out, [&](std::ostream& os) {
      write_rows(os, format, meta, mke::scatter_columns(), result.rows);
    });
  } catch (const mke::Error& e) {
    emit_error_record(e);
    return exit_code_for(e.kind());
  }
}

int run_oracle_check(const std::string& out, const std::string& format, int instances,
                     int resolution, bool seed_given, std::uint64_t seed_flag) {
  std::uint64_t seed = 0;
  if (!resolve_seed(seed_given, seed_flag, seed)) return 2;
  try {
    const std::vector<mke::OracleCheckRow> rows = mke::oracle_check(instances, resolution, seed);
    bool dominance = true;
    for (const mke::OracleCheckRow& r : rows) {
      if (!r.error.empty() || !(r.margin <= 1e-6) || !(r.k_exact <= r.k_approx + 1e-9))
        dominance = false;
    }
    auto meta = base_meta("oracle-check");
    push_int(meta, "instances", instances);
    push_int(meta, "resolution", resolution);
    push_int(meta, "seed", static_cast<long long>(seed));
    meta.push_back({"dominance_holds", dominance ? "true" : "false", true});
    const int write_rc = with_output(out, [&](std::ostream& os) {
      if (format == "json")
        mke::write_oracle_json(os, meta, rows);
      else
        mke::write_oracle_csv(os, meta, rows);
    });
    if (write_rc != 0) return write_rc;
    if (!dominance) {
      std::cerr << "mke: oracle-check found instances violating exact-solution dominance\n";
      return 1;
    }
    return 0;
  } catch (const mke::Error& e) {
    emit_error_record(e);
    return exit_code_for(e.kind());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and first-order minimum-relative-entropy qubit estimation"};
  app.set_version_flag("--version", mke::kVersion);
  app.require_subcommand(1);
  bool degrees = false;
  app.add_flag("--degrees", degrees, "Interpret angle-valued options as degrees");

  // solve
  SolveOpts so;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance and report both estimates");
  CLI::Option* opt_theta = solve->add_option("--theta", so.theta, "Prior polar angle");
  CLI::Option* opt_phi = solve->add_option("--phi", so.phi, "Prior azimuthal angle");
  CLI::Option* opt_mu = solve->add_option("--mu", so.mu, "Prior purity in [1/2, 1]");
  CLI::Option* opt_s =
      solve->add_option("--s", so.s, "Measured mean of the unit-axis observable component");
  CLI::Option* opt_alpha =
      solve->add_option("--alpha", so.alpha, "Identity offset of the observable (A = alpha*I + sigma_z)");
  solve->add_option("--config", so.config_path,
                    "JSON config file; a previous solve output also works");
  add_output_flags(solve, so.out, so.format);

  // surfaces
  CommonSweepOpts fo, ro, ho;
  CLI::App* sweep = app.add_subcommand("sweep-fidelity",
                                       "Fidelity surface between the two estimates over (theta, s)");
  sweep->add_option("--mu", fo.mu, "Prior purity")->capture_default_str();
  add_grid_flags(sweep, fo);

  CLI::App* ratio = app.add_subcommand("ratio-surface",
                                       "Prior-fidelity ratio surface over (theta, s)");
  ratio->add_option("--mu", ro.mu, "Prior purity")->capture_default_str();
  add_grid_flags(ratio, ro);

  CLI::App* ham = app.add_subcommand("ham-distance",
                                     "Distance surface between Hamiltonians estimated from the two routes");
  ham->add_option("--mu", ho.mu, "Prior purity (strictly above 1/2)")->capture_default_str();
  add_grid_flags(ham, ho);

  // min-fid-curve
  CommonSweepOpts co;
  double mu_lo = 0.5, mu_hi = 0.9, mu_step = 0.05;
  CLI::App* curve = app.add_subcommand("min-fid-curve",
                                       "Minimum fidelity (grid argmin + fixed slices) per purity");
  curve->add_option("--mu-lo", mu_lo, "First purity")->capture_default_str();
  curve->add_option("--mu-hi", mu_hi, "Last purity")->capture_default_str();
  curve->add_option("--mu-step", mu_step, "Purity increment")->capture_default_str();
  add_grid_flags(curve, co);

  // purity-scatter
  int samples = 5000;
  mke::ScatterRanges ranges;
  std::uint64_t scatter_seed = kDefaultSeed;
  std::string scatter_out = "-", scatter_format = "csv";
  CLI::App* scatter = app.add_subcommand("purity-scatter",
                                         "Seeded random sampling of exact vs approximate purity");
  scatter->add_option("--samples", samples, "Number of samples")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  scatter->add_option("--mu-lo", ranges.mu_lo, "Purity lower bound")->capture_default_str();
  scatter->add_option("--mu-hi", ranges.mu_hi, "Purity upper bound")->capture_default_str();
  scatter->add_option("--theta-lo", ranges.theta_lo, "Polar-angle lower bound")->capture_default_str();
  scatter->add_option("--theta-hi", ranges.theta_hi, "Polar-angle upper bound")->capture_default_str();
  scatter->add_option("--s-lo", ranges.s_lo, "Mean-value lower bound")->capture_default_str();
  scatter->add_option("--s-hi", ranges.s_hi, "Mean-value upper bound")->capture_default_str();
  CLI::Option* scatter_seed_opt =
      scatter->add_option("--seed", scatter_seed, "Sampling seed (MKE_SEED overrides the default)");
  add_output_flags(scatter, scatter_out, scatter_format);

  // oracle-check
  int instances = 100, resolution = 400;
  std::uint64_t oracle_seed = kDefaultSeed;
  std::string oracle_out = "-", oracle_format = "csv";
  CLI::App* oracle = app.add_subcommand("oracle-check",
                                        "Compare the exact solver against a brute-force grid minimizer");
  oracle->add_option("--instances", instances, "Number of random instances")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  oracle->add_option("--resolution", resolution, "Grid resolution per axis (min 8)")
      ->capture_default_str();
  CLI::Option* oracle_seed_opt =
      oracle->add_option("--seed", oracle_seed, "Sampling seed (MKE_SEED overrides the default)");
  add_output_flags(oracle, oracle_out, oracle_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (solve->parsed()) {
    so.theta_set = opt_theta->count() > 0;
    so.phi_set = opt_phi->count() > 0;
    so.mu_set = opt_mu->count() > 0;
    so.s_set = opt_s->count() > 0;
    so.alpha_set = opt_alpha->count() > 0;
    return run_solve(so, degrees);
  }
  if (sweep->parsed()) return run_surface("sweep-fidelity", fo, degrees);
  if (ratio->parsed()) return run_surface("ratio-surface", ro, degrees);
  if (ham->parsed()) return run_surface("ham-distance", ho, degrees);
  if (curve->parsed()) return run_min_fid_curve(co, mu_lo, mu_hi, mu_step, degrees);
  if (scatter->parsed())
    return run_purity_scatter(scatter_out, scatter_format, samples, ranges,
                              scatter_seed_opt->count() > 0, scatter_seed, degrees);
  if (oracle->parsed())
    return run_oracle_check(oracle_out, oracle_format, instances, resolution,
                            oracle_seed_opt->count() > 0, oracle_seed);
  return 2;
}
