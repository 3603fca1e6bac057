#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <fstream>
#include <optional>
#include <sstream>

#include "utm/errors.hpp"
#include "utm/helmholtz.hpp"
#include "utm/io.hpp"
#include "utm/mixed_bvp.hpp"
#include "utm/parallel.hpp"
#include "utm/vortex.hpp"

namespace utm::cli {

namespace {

struct RunConfig {
  int m = 0;
  int N = 16;
  int Mr = 0;
  int thetas = 64;
  double a = 2.0, b = 1.0;
  double gamma = 1.0;
  std::string zeta0 = "0.3,0.2";
  std::string sigma = "0,1";
  std::string t0 = "0,1";
  std::string grid = "41x21";
  int points = 10;
  double tol = 1e-6;
  std::string out;
};

cplx parse_complex(const std::string& s, const char* what) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re >> comma >> im) || comma != ',' || !(in >> std::ws).eof())
    throw InvalidArgument(std::string(what) + " must be given as re,im");
  return {re, im};
}

std::pair<int, int> parse_grid(const std::string& s) {
  std::istringstream in(s);
  int nx = 0, ny = 0;
  char x = 0;
  if (!(in >> nx >> x >> ny) || x != 'x' || !(in >> std::ws).eof())
    throw InvalidArgument("grid must be given as NXxNY");
  if (nx < 2 || ny < 2) throw InvalidArgument("grid needs at least 2 x 2 points");
  return {nx, ny};
}

std::string fmt(double v) { return format_double(v); }

void require_out(const RunConfig& c) {
  if (c.out.empty()) throw InvalidArgument("--out is required");
}

void add_coefficients(Report& r, const char* name, const std::vector<cplx>& c) {
  for (std::size_t n = 0; n < c.size(); ++n)
    r.emplace_back(std::string(name) + "_" + std::to_string(n), fmt(c[n].real()) + " " + fmt(c[n].imag()));
}

int solve_mixed(const RunConfig& c, bool ellipse) {
  require_out(c);
  MixedBvpProblem P;
  P.domain = ellipse ? BoundaryCurve::ellipse(c.a, c.b) : BoundaryCurve::unit_circle();
  P.m = c.m;
  P.N = c.N;
  P.M_r = c.Mr;
  P.thetas_per_ring = c.thetas;
  const MixedBvpSolution sol = assemble_and_solve(P);

  std::vector<TraceSample> samples;
  for (int k = 0; k < 512; ++k) {
    const double th = -0.5 * kPi + kTwoPi * k / 512;
    samples.push_back({th, trace_value(sol.trace, th)});
  }
  write_trace_csv(c.out, samples);

  const double gr = fresh_global_residual_max(P, sol.trace);
  Report r{{"residual_lsq", fmt(sol.report.residual_lsq)},
           {"global_relation_residual_max", fmt(gr)},
           {"coeff_decay_ratio", fmt(sol.report.coeff_decay_ratio)},
           {"sigma_min", fmt(sol.report.sigma_min)},
           {"sigma_max", fmt(sol.report.sigma_max)},
           {"rows", std::to_string(sol.report.rows)},
           {"unknowns", std::to_string(sol.report.unknowns)}};
  if (c.m == 0) {
    // The solution is the constant 1.
    double err = 0.0;
    for (const auto& s : samples) err = std::max(err, std::abs(s.value - 1.0));
    r.emplace_back("oracle_max_error", fmt(err));
  }
  add_coefficients(r, "a", sol.trace.a);
  add_coefficients(r, "b", sol.trace.b);
  write_report(c.out + ".report", r);
  std::printf("residual_lsq = %.3e\nglobal_relation_residual_max = %.3e\ncoeff_decay_ratio = %.3e\n",
              sol.report.residual_lsq, gr, sol.report.coeff_decay_ratio);
  return kOk;
}

// Probe points on scaled ellipses, kept away from the vortex.
std::vector<cplx> vortex_probes(const VortexProblem& p) {
  std::vector<cplx> z;
  for (int k = 0; k < 25; ++k) {
    const double r = 0.15 + 0.6 * (k % 5) / 4.0, ph = kTwoPi * k / 25 + 0.3;
    cplx w(p.a * r * std::cos(ph), p.b * r * std::sin(ph));
    if (std::abs(w - p.zeta0) < 0.1 * p.b) w += 0.2 * p.b;
    z.push_back(w);
  }
  return z;
}

int run_vortex(const RunConfig& c) {
  require_out(c);
  VortexProblem P;
  P.a = c.a;
  P.b = c.b;
  P.zeta0 = parse_complex(c.zeta0, "--zeta0");
  P.Gamma = c.gamma;
  P.N = c.N;
  P.M_r = c.Mr;
  P.thetas_per_ring = c.thetas;
  const auto [nx, ny] = parse_grid(c.grid);
  const VortexSolution sol = solve_vortex(P);

  double imperm = 0.0;
  for (int k = 0; k < 256; ++k) imperm = std::max(imperm, std::abs(sol.potential_trace(kTwoPi * k / 256).imag()));
  const double gr = vortex_global_residual_max(sol);
  Report r{{"residual_lsq", fmt(sol.residual_lsq)},
           {"global_relation_residual_max", fmt(gr)},
           {"coeff_decay_ratio", fmt(sol.coeff_decay_ratio)},
           {"impermeability_max", fmt(imperm)}};
  if (P.a > P.b) {
    // Velocities, which are free of the additive constant.
    double err = 0.0;
    const double h = 1e-4;
    for (cplx z : vortex_probes(P)) {
      const cplx v = complex_velocity(sol, z, h);
      const cplx vo = (exact_oracle(z + h, P) - exact_oracle(z - h, P)) / (2.0 * h);
      err = std::max(err, std::abs(v - vo));
    }
    r.emplace_back("oracle_max_error", fmt(err));
    std::printf("oracle_max_error = %.3e\n", err);
  }
  add_coefficients(r, "a", sol.a);
  write_grid_csv(c.out, streamfunction_grid(sol, nx, ny));
  write_report(c.out + ".report", r);
  std::printf("residual_lsq = %.3e\nglobal_relation_residual_max = %.3e\ncoeff_decay_ratio = %.3e\n",
              sol.residual_lsq, gr, sol.coeff_decay_ratio);
  return kOk;
}

// Interior values of the mixed-problem solution on a lattice.
int run_reconstruct(const RunConfig& c) {
  require_out(c);
  MixedBvpProblem P;
  const bool disc = c.a == 1.0 && c.b == 1.0;
  P.domain = disc ? BoundaryCurve::unit_circle() : BoundaryCurve::ellipse(c.a, c.b);
  P.m = c.m;
  P.N = c.N;
  P.M_r = c.Mr;
  P.thetas_per_ring = c.thetas;
  const auto [nx, ny] = parse_grid(c.grid);
  const MixedBvpSolution sol = assemble_and_solve(P);
  const double margin = 1e-3 * P.domain.diameter();
  std::vector<std::optional<cplx>> f(std::size_t(nx) * ny);
  parallel_for(f.size(), [&](std::size_t idx) {
    const cplx z(-c.a + 2.0 * c.a * (idx % nx) / (nx - 1), -c.b + 2.0 * c.b * (idx / nx) / (ny - 1));
    if (!P.domain.contains(z) || P.domain.distance_to(z) < margin) return;
    f[idx] = solve_interior(sol, z);
  });
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw IoError("cannot open '" + c.out + "' for writing");
  out << "x,y,re_f,im_f,inside\n";
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    out << fmt(-c.a + 2.0 * c.a * (idx % nx) / (nx - 1)) << ','
        << fmt(-c.b + 2.0 * c.b * (idx / nx) / (ny - 1)) << ',';
    if (f[idx]) out << fmt(f[idx]->real()) << ',' << fmt(f[idx]->imag()) << ",1\n";
    else out << ",,0\n";
  }
  out.flush();
  if (!out) throw IoError("write to '" + c.out + "' failed");
  write_report(c.out + ".report", {{"residual_lsq", fmt(sol.report.residual_lsq)},
                                   {"global_relation_residual_max", fmt(fresh_global_residual_max(P, sol.trace))},
                                   {"coeff_decay_ratio", fmt(sol.report.coeff_decay_ratio)}});
  return kOk;
}

// Transform pair checks on an exact mode in the unit disc.
int run_helmholtz(const RunConfig& c) {
  const HelmholtzParameter p = HelmholtzParameter::make(parse_complex(c.sigma, "--sigma"));
  const cplx t0 = parse_complex(c.t0, "--t0");
  if (c.points < 1) throw InvalidArgument("--points must be positive");
  const ExactMode mode{t0, p.sigma};
  const BoundaryCurve dom = BoundaryCurve::unit_circle();
  double gr = 0.0, rec = 0.0, green = 0.0;
  for (int k = 0; k < c.points; ++k) {
    const cplx z = std::polar(0.6 * (k + 1) / c.points, 2.4 * k);
    const auto data = mode_boundary_data({mode}, dom, inscribe_trapezoid(dom, z));
    const cplx t = std::polar(0.3 + 0.5 * k, 1.3 * k + 0.2);
    gr = std::max(gr, std::abs(helmholtz_global_residual(data, p, t)));
    const cplx exact = mode.value(z);
    const cplx r = helmholtz_reconstruct(data, p, z);
    rec = std::max(rec, std::abs(r - exact));
    green = std::max(green, std::abs(greens_identity_eval(data, p, z) - r));
  }
  Report r{{"global_relation_residual_max", fmt(gr)},
           {"oracle_max_error", fmt(rec)},
           {"greens_identity_max_difference", fmt(green)}};
  for (const auto& [k, v] : r) std::printf("%s = %s\n", k.c_str(), v.c_str());
  if (!c.out.empty()) write_report(c.out, r);
  return kOk;
}

void add_common(CLI::App* s, RunConfig& c) {
  s->add_option("--N", c.N, "Fourier truncation");
  s->add_option("--Mr", c.Mr, "collocation rings (default 2N+8)");
  s->add_option("--thetas", c.thetas, "collocation angles per ring");
  s->add_option("--out", c.out, "output path");
  s->add_option("--tol", c.tol, "reporting tolerance");
}

// Moves `key = value` pairs of a --config file in front of the command line
// so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> injected;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InvalidArgument("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    for (const auto& [k, v] : read_key_value_file(path)) {
      injected.push_back("--" + k);
      injected.push_back(v);
    }
  }
  if (!out.empty()) out.insert(out.begin() + 1, injected.begin(), injected.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw) {
  try {
    const std::vector<std::string> args = expand_config(raw);
    CLI::App app{"Transform-pair solvers for Laplace and Helmholtz problems on convex domains"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    RunConfig c;

    auto* disc = app.add_subcommand("solve-disc", "mixed problem on the unit disc");
    add_common(disc, c);
    disc->add_option("--m", c.m, "boundary mode");

    auto* ell = app.add_subcommand("solve-ellipse", "mixed problem on an ellipse");
    add_common(ell, c);
    ell->add_option("--m", c.m, "boundary mode");
    ell->add_option("--a", c.a, "semi-axis along x");
    ell->add_option("--b", c.b, "semi-axis along y");

    auto* vor = app.add_subcommand("vortex", "point vortex in an ellipse");
    add_common(vor, c);
    vor->add_option("--a", c.a, "semi-axis along x");
    vor->add_option("--b", c.b, "semi-axis along y");
    vor->add_option("--zeta0", c.zeta0, "vortex position re,im");
    vor->add_option("--gamma", c.gamma, "circulation");
    vor->add_option("--grid", c.grid, "lattice NXxNY");

    auto* rec = app.add_subcommand("reconstruct", "interior values of a mixed-problem solution");
    add_common(rec, c);
    rec->add_option("--m", c.m, "boundary mode");
    rec->add_option("--a", c.a, "semi-axis along x (1 with b=1 selects the disc)");
    rec->add_option("--b", c.b, "semi-axis along y");
    rec->add_option("--grid", c.grid, "lattice NXxNY");

    auto* hel = app.add_subcommand("helmholtz-check", "transform-pair checks on an exact mode");
    hel->add_option("--sigma", c.sigma, "parameter re,im with 0 < Arg < pi");
    hel->add_option("--t0", c.t0, "mode parameter re,im");
    hel->add_option("--points", c.points, "number of interior points");
    hel->add_option("--out", c.out, "report path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      app.exit(e);
      return kOk;
    } catch (const CLI::ParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kValidation;
    }

    if (disc->parsed()) return solve_mixed(c, false);
    if (ell->parsed()) return solve_mixed(c, true);
    if (vor->parsed()) return run_vortex(c);
    if (rec->parsed()) return run_reconstruct(c);
    return run_helmholtz(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? kValidation : kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace utm::cli
