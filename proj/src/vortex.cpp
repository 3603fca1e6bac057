#include "utm/vortex.hpp"

#include <algorithm>
#include <cmath>

#include "utm/errors.hpp"
#include "utm/least_squares.hpp"
#include "utm/parallel.hpp"
#include "utm/special.hpp"

namespace utm {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx ellipse_pos(double th, double a, double b) { return {a * std::cos(th), b * std::sin(th)}; }
cplx ellipse_der(double th, double a, double b) { return {-a * std::sin(th), b * std::cos(th)}; }

double im_fs(cplx zeta, const VortexProblem& p) {
  return -p.Gamma / kTwoPi * std::log(std::abs(zeta - p.zeta0));
}

// Parameter-space distance from the real θ axis to the nearest complex θ
// where ζ(θ) = ζ0, bounded below by dist/speed.
double log_analyticity_width(const VortexProblem& p) {
  const BoundaryCurve dom = p.domain();
  return dom.distance_to(p.zeta0) / dom.max_speed();
}

// Trapezoid points resolving e^{−itζ(θ)} e^{±iNθ} and ln|ζ − ζ0|.
int trapezoid_points(cplx t, const VortexProblem& p) {
  const double s = 1.5 * std::abs(t) * (p.a + p.b) + p.N + 40.0 / log_analyticity_width(p) + 32.0;
  return 2 * static_cast<int>(std::ceil(s));
}

struct VortexRow {
  std::vector<cplx> plus, minus;  // P(n,t), P(−n,t), n = 0..N
  cplx rhs;
};

VortexRow vortex_row(const VortexProblem& p, cplx t) {
  const int S = trapezoid_points(t, p), N = p.N;
  VortexRow row;
  row.plus.assign(N + 1, cplx{});
  row.minus.assign(N + 1, cplx{});
  row.rhs = 0.0;
  const double w = kTwoPi / S;
  for (int s = 0; s < S; ++s) {
    const double th = w * s;
    const cplx z = ellipse_pos(th, p.a, p.b);
    const cplx k = w * std::exp(-kI * t * z) * ellipse_der(th, p.a, p.b);
    row.rhs += kI * im_fs(z, p) * k;
    const cplx step = std::polar(1.0, th);
    cplx e = 1.0;
    for (int n = 0; n <= N; ++n) {
      row.plus[n] += k * e;
      row.minus[n] += k * std::conj(e);
      e *= step;
    }
  }
  return row;
}

}  // namespace

void VortexProblem::validate() const {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("semi-axes must be positive");
  if (!std::isfinite(Gamma)) throw InvalidArgument("circulation must be finite");
  const double r = std::norm(cplx(zeta0.real() / a, zeta0.imag() / b));
  if (!(r < 1.0)) throw PointNotInterior("vortex must lie strictly inside the ellipse");
  if (N < 1) throw InvalidArgument("truncation N must be at least 1");
  if (M_r < 0 || thetas_per_ring < 1) throw InvalidArgument("bad collocation controls");
}

cplx singular_potential(cplx zeta, cplx zeta0, double Gamma) {
  if (zeta == zeta0) throw SingularPoint("potential evaluated at the vortex");
  return Gamma / (kTwoPi * kI) * std::log(zeta - zeta0);
}

cplx vortex_block_P(int n, cplx t, double a, double b, const QuadratureConfig& cfg) {
  auto g = [&](double th) {
    return std::polar(1.0, n * th) * std::exp(-kI * t * ellipse_pos(th, a, b)) * ellipse_der(th, a, b);
  };
  return integrate_periodic(g, cfg).value;
}

cplx vortex_rhs_R(cplx t, const VortexProblem& p, const QuadratureConfig& cfg) {
  p.validate();
  auto g = [&](double th) {
    const cplx z = ellipse_pos(th, p.a, p.b);
    return kI * im_fs(z, p) * std::exp(-kI * t * z) * ellipse_der(th, p.a, p.b);
  };
  return integrate_periodic(g, cfg).value;
}

cplx VortexSolution::correction_trace(double th) const {
  double s = 0.0;
  for (std::size_t n = 1; n < a.size(); ++n) s += 2.0 * std::real(a[n] * std::polar(1.0, double(n) * th));
  return {s, -im_fs(ellipse_pos(th, problem.a, problem.b), problem)};
}

cplx VortexSolution::potential_trace(double th) const {
  return correction_trace(th) +
         singular_potential(ellipse_pos(th, problem.a, problem.b), problem.zeta0, problem.Gamma);
}

VortexSolution solve_vortex(const VortexProblem& p) {
  p.validate();
  const BoundaryCurve dom = p.domain();
  std::vector<cplx> ts{cplx{}};
  for (int j = 1; j <= p.rings(); ++j)
    for (int s = 0; s < p.thetas_per_ring; ++s)
      ts.push_back(-double(j) / dom.derivative(kTwoPi * s / p.thetas_per_ring));

  std::vector<VortexRow> rows(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) { rows[i] = vortex_row(p, ts[i]); });

  // Unknowns [Re a_1, Im a_1, …, Re a_N, Im a_N]; each t gives the equation
  // and its conjugate.
  const int N = p.N;
  Eigen::MatrixXd A(4 * ts.size(), 2 * N);
  Eigen::VectorXd rhs(4 * ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (int n = 1; n <= N; ++n) {
      const cplx re = rows[i].plus[n] + rows[i].minus[n];
      const cplx im = kI * (rows[i].plus[n] - rows[i].minus[n]);
      A(4 * i, 2 * n - 2) = re.real();
      A(4 * i + 1, 2 * n - 2) = re.imag();
      A(4 * i + 2, 2 * n - 2) = re.real();
      A(4 * i + 3, 2 * n - 2) = -re.imag();
      A(4 * i, 2 * n - 1) = im.real();
      A(4 * i + 1, 2 * n - 1) = im.imag();
      A(4 * i + 2, 2 * n - 1) = im.real();
      A(4 * i + 3, 2 * n - 1) = -im.imag();
    }
    rhs(4 * i) = rows[i].rhs.real();
    rhs(4 * i + 1) = rows[i].rhs.imag();
    rhs(4 * i + 2) = rows[i].rhs.real();
    rhs(4 * i + 3) = -rows[i].rhs.imag();
  }

  VortexSolution sol;
  sol.problem = p;
  sol.a.assign(N + 1, cplx{});
  if (p.Gamma == 0.0) return sol;

  const LeastSquaresResult ls = solve_least_squares(std::move(A), std::move(rhs));
  double peak = 0.0;
  for (int n = 1; n <= N; ++n) {
    sol.a[n] = cplx(ls.x(2 * n - 2), ls.x(2 * n - 1));
    peak = std::max(peak, std::abs(sol.a[n]));
  }
  sol.residual_lsq = ls.residual;
  sol.sigma_min = ls.sigma_min;
  sol.sigma_max = ls.sigma_max;
  sol.coeff_decay_ratio = peak > 0.0 ? std::abs(sol.a[N]) / peak : 0.0;
  return sol;
}

double vortex_global_residual_max(const VortexSolution& sol, int count) {
  const VortexProblem& p = sol.problem;
  const BoundaryCurve dom = p.domain();
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const double radius = 0.25 + 3.5 * (k + 0.5) / count;
    const cplx t = -radius / dom.derivative(kTwoPi * (k + 0.37) / count);
    auto g = [&](double th) {
      const cplx z = ellipse_pos(th, p.a, p.b);
      return sol.correction_trace(th) * std::exp(-kI * t * z) * ellipse_der(th, p.a, p.b);
    };
    worst = std::max(worst, std::abs(integrate_periodic(g, {}).value));
  }
  return worst;
}

cplx complex_potential(const VortexSolution& sol, cplx z, const ReconstructOptions& opts) {
  const VortexProblem& p = sol.problem;
  const BoundaryCurve dom = p.domain();
  if (!dom.contains(z) || dom.distance_to(z) < 1e-3 * dom.diameter())
    throw PointNotInterior("evaluation point must be inside, at least 1e-3 x diameter from the boundary");
  const cplx fs = singular_potential(z, p.zeta0, p.Gamma);
  if (p.Gamma == 0.0) return fs;
  const Trapezoid T = inscribe_trapezoid(dom, z);
  SpectralEvaluator ev{[&sol](double th) { return sol.correction_trace(th); }, dom, T};
  ReconstructOptions o = opts;
  o.trace_bandwidth = std::max(o.trace_bandwidth, p.N + 8.0 + 20.0 / log_analyticity_width(p));
  return fs + reconstruct(ev, z, o);
}

cplx complex_velocity(const VortexSolution& sol, cplx z, double h) {
  return (complex_potential(sol, z + h) - complex_potential(sol, z - h)) / (2.0 * h);
}

StreamGrid streamfunction_grid(const VortexSolution& sol, int nx, int ny) {
  if (nx < 2 || ny < 2) throw InvalidArgument("grid needs at least 2 x 2 points");
  const VortexProblem& p = sol.problem;
  const BoundaryCurve dom = p.domain();
  StreamGrid g;
  g.nx = nx;
  g.ny = ny;
  for (int i = 0; i < nx; ++i) g.x.push_back(-p.a + 2.0 * p.a * i / (nx - 1));
  for (int j = 0; j < ny; ++j) g.y.push_back(-p.b + 2.0 * p.b * j / (ny - 1));
  g.psi.assign(std::size_t(nx) * ny, std::nullopt);
  const double margin = 1e-3 * dom.diameter();
  parallel_for(g.psi.size(), [&](std::size_t idx) {
    const cplx z(g.x[idx % nx], g.y[idx / nx]);
    if (!dom.contains(z) || dom.distance_to(z) < margin) return;
    if (std::abs(z - p.zeta0) < 0.05 * p.b) return;
    g.psi[idx] = complex_potential(sol, z).imag();
  });
  return g;
}

cplx conformal_map(cplx zeta, double a, double b) {
  if (!(a > b && b > 0.0)) throw OracleDomain("conformal map needs a > b > 0");
  const double c = std::sqrt(a * a - b * b);
  const double q = std::pow((a - b) / (a + b), 2);
  const double k = modulus_from_nome(q);
  const double K = elliptic_k(k * k);
  const cplx u = (2.0 * K / kPi) * std::asin(zeta / c);
  return std::sqrt(k) * jacobi_complex(u, k * k).sn;
}

cplx exact_oracle(cplx z, const VortexProblem& p) {
  const cplx w = conformal_map(z, p.a, p.b);
  const cplx w0 = conformal_map(p.zeta0, p.a, p.b);
  if (w == w0) throw SingularPoint("oracle evaluated at the vortex");
  const cplx pre = p.Gamma / (kTwoPi * kI);
  if (std::abs(w0) == 0.0) return pre * std::log(w);
  return pre * std::log((w - w0) / (w - 1.0 / std::conj(w0)));
}

}  // namespace utm
