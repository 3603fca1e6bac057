#include "utm/mixed_bvp.hpp"

#include <algorithm>
#include <cmath>

#include "utm/errors.hpp"
#include "utm/least_squares.hpp"
#include "utm/parallel.hpp"

namespace utm {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kHalfPi = 0.5 * kPi;

// Quarter-wavelength panels for e^{−itζ(θ)} e^{inθ}.
ArcOptions oscillation_panels(cplx t, double speed, int n) {
  ArcOptions ao;
  const double rate = std::abs(t) * speed + std::abs(n) + 1.0;
  ao.max_panel_width = kTwoPi / (4.0 * rate);
  return ao;
}

double polar_speed_bound(double a, double b) {
  double s = 0.0;
  for (int i = 0; i < 1024; ++i) s = std::max(s, std::abs(polar_derivative(kTwoPi * i / 1024, a, b)));
  return 1.05 * s;
}

// Integrals of K(θ) e^{inθ}, n = −2N, −2N+2, …, 2N, and of K(θ)·w(θ) over
// [lo, hi], all from one composite Gauss–Legendre rule.
template <class Kernel, class Weight>
void arc_moments(double lo, double hi, double rate, int N, Kernel&& K,
                 Weight&& w, std::vector<cplx>& moments, cplx& weighted) {
  const GaussRule& rule = gauss_legendre(16);
  const int panels = std::max(2, static_cast<int>(std::ceil((hi - lo) * rate / 8.0)));
  moments.assign(2 * N + 1, cplx{});
  weighted = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double pa = lo + (hi - lo) * p / panels, pb = lo + (hi - lo) * (p + 1) / panels;
    const double c = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
    for (int q = 0; q < 16; ++q) {
      const double th = c + h * rule.nodes[q];
      const cplx k = h * rule.weights[q] * K(th);
      weighted += k * w(th);
      const cplx step = std::polar(1.0, 2.0 * th);
      cplx e = std::polar(1.0, -2.0 * N * th);
      for (int i = 0; i <= 2 * N; ++i) {
        moments[i] += k * e;
        e *= step;
      }
    }
  }
}

}  // namespace

void MixedBvpProblem::validate() const {
  if (domain.kind() == CurveKind::GeneralConvex)
    throw InvalidArgument("mixed problems are defined on the disc or an ellipse");
  if (m < 0) throw InvalidArgument("mode m must be nonnegative");
  if (N < 1) throw InvalidArgument("truncation N must be at least 1");
  if (M_r < 0) throw InvalidArgument("M_r must be positive (0 selects the default)");
  if (thetas_per_ring < 1) throw InvalidArgument("thetas_per_ring must be positive");
  const int real_rows = 2 * (1 + rings() * thetas_per_ring);
  if (real_rows < 2 * (2 * N + 2))
    throw InvalidArgument("collocation system is not overdetermined");
}

double polar_radius(double th, double a, double b) {
  const double c = b * std::cos(th), s = a * std::sin(th);
  return a * b / std::sqrt(c * c + s * s);
}

cplx polar_position(double th, double a, double b) {
  return std::polar(polar_radius(th, a, b), th);
}

cplx polar_derivative(double th, double a, double b) {
  const double c = b * std::cos(th), s = a * std::sin(th);
  const double D = c * c + s * s;
  const double rho = a * b / std::sqrt(D);
  const double dD = 2.0 * (a * a - b * b) * std::sin(th) * std::cos(th);
  const double drho = -0.5 * rho * dD / D;
  return cplx(drho, rho) * std::polar(1.0, th);
}

cplx disc_block_A(int n, cplx t, const QuadratureConfig& cfg) {
  auto g = [&](double th) { return std::exp(-kI * t * std::polar(1.0, th)) * std::polar(1.0, (n + 1) * th); };
  return -integrate_arc(g, -kHalfPi, kHalfPi, {}, cfg, oscillation_panels(t, 1.0, n + 1)).value;
}

cplx disc_block_B(int n, cplx t, const QuadratureConfig& cfg) {
  auto g = [&](double th) { return std::exp(-kI * t * std::polar(1.0, th)) * std::polar(1.0, (n + 1) * th); };
  return kI * integrate_arc(g, kHalfPi, 3.0 * kHalfPi, {}, cfg, oscillation_panels(t, 1.0, n + 1)).value;
}

cplx disc_rhs(int m, cplx t, const QuadratureConfig& cfg) {
  auto g1 = [&](double th) {
    return std::cos(m * th) * std::exp(-kI * t * std::polar(1.0, th)) * std::polar(1.0, th);
  };
  auto g2 = [&](double th) {
    return std::sin(m * th) * std::exp(-kI * t * std::polar(1.0, th)) * std::polar(1.0, th);
  };
  const auto ao = oscillation_panels(t, 1.0, m + 1);
  return -kI * integrate_arc(g1, -kHalfPi, kHalfPi, {}, cfg, ao).value -
         integrate_arc(g2, kHalfPi, 3.0 * kHalfPi, {}, cfg, ao).value;
}

cplx ellipse_block_A(int n, cplx t, double a, double b, const QuadratureConfig& cfg) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("semi-axes must be positive");
  auto g = [&](double th) {
    return std::exp(-kI * t * polar_position(th, a, b)) * std::polar(1.0, n * th) *
           polar_derivative(th, a, b);
  };
  const auto ao = oscillation_panels(t, polar_speed_bound(a, b), n);
  return kI * integrate_arc(g, -kHalfPi, kHalfPi, {}, cfg, ao).value;
}

cplx ellipse_block_B(int n, cplx t, double a, double b, const QuadratureConfig& cfg) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("semi-axes must be positive");
  auto g = [&](double th) {
    return std::exp(-kI * t * polar_position(th, a, b)) * std::polar(1.0, n * th) *
           polar_derivative(th, a, b);
  };
  const auto ao = oscillation_panels(t, polar_speed_bound(a, b), n);
  return integrate_arc(g, kHalfPi, 3.0 * kHalfPi, {}, cfg, ao).value;
}

cplx ellipse_rhs(int m, cplx t, double a, double b, const QuadratureConfig& cfg) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("semi-axes must be positive");
  auto g1 = [&](double th) {
    return std::pow(polar_radius(th, a, b), m) * std::cos(m * th) *
           std::exp(-kI * t * polar_position(th, a, b)) * polar_derivative(th, a, b);
  };
  auto g2 = [&](double th) {
    return std::pow(polar_radius(th, a, b), m) * std::sin(m * th) *
           std::exp(-kI * t * polar_position(th, a, b)) * polar_derivative(th, a, b);
  };
  const auto ao = oscillation_panels(t, polar_speed_bound(a, b), m);
  return -integrate_arc(g1, -kHalfPi, kHalfPi, {}, cfg, ao).value +
         kI * integrate_arc(g2, kHalfPi, 3.0 * kHalfPi, {}, cfg, ao).value;
}

std::vector<cplx> collocation_points(const BoundaryCurve& domain, int M_r,
                                     int thetas_per_ring) {
  if (M_r < 1 || thetas_per_ring < 1)
    throw InvalidArgument("collocation needs at least one ring and one angle");
  std::vector<cplx> pts{cplx{}};
  for (int j = 1; j <= M_r; ++j)
    for (int s = 0; s < thetas_per_ring; ++s)
      pts.push_back(-double(j) / domain.derivative(kTwoPi * s / thetas_per_ring));
  return pts;
}

CollocationRow collocation_row(const MixedBvpProblem& P, cplx t) {
  const int N = P.N, m = P.m;
  CollocationRow row;
  row.t = t;
  std::vector<cplx> c1, c2;
  cplx w1, w2;
  if (P.domain.kind() == CurveKind::UnitCircle) {
    const double rate = std::abs(t) + 2 * N + m + 2;
    auto K = [&](double th) {
      const cplx e = std::polar(1.0, th);
      return std::exp(-kI * t * e) * e;
    };
    arc_moments(-kHalfPi, kHalfPi, rate, N, K, [&](double th) { return std::cos(m * th); }, c1, w1);
    arc_moments(kHalfPi, 3.0 * kHalfPi, rate, N, K, [&](double th) { return std::sin(m * th); }, c2, w2);
    for (auto& v : c1) v = -v;
    for (auto& v : c2) v = kI * v;
    row.rhs = -kI * w1 - w2;
  } else {
    const double a = P.domain.semi_a(), b = P.domain.semi_b();
    const double rate = std::abs(t) * polar_speed_bound(a, b) + 2 * N + m + 2;
    auto K = [&](double th) {
      return std::exp(-kI * t * polar_position(th, a, b)) * polar_derivative(th, a, b);
    };
    auto wc = [&](double th) { return std::pow(polar_radius(th, a, b), m) * std::cos(m * th); };
    auto ws = [&](double th) { return std::pow(polar_radius(th, a, b), m) * std::sin(m * th); };
    arc_moments(-kHalfPi, kHalfPi, rate, N, K, wc, c1, w1);
    arc_moments(kHalfPi, 3.0 * kHalfPi, rate, N, K, ws, c2, w2);
    for (auto& v : c1) v = kI * v;
    row.rhs = -w1 + kI * w2;
  }
  row.A_plus.resize(N + 1);
  row.A_minus.resize(N + 1);
  row.B_plus.resize(N + 1);
  row.B_minus.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    row.A_plus[n] = c1[N + n];
    row.A_minus[n] = c1[N - n];
    row.B_plus[n] = c2[N + n];
    row.B_minus[n] = c2[N - n];
  }
  return row;
}

CollocationSystem assemble_system(const MixedBvpProblem& P, bool conjugate_rows) {
  P.validate();
  const auto ts = collocation_points(P.domain, P.rings(), P.thetas_per_ring);
  CollocationSystem sys;
  sys.rows.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) { sys.rows[i] = collocation_row(P, ts[i]); });

  const int N = P.N, cols = P.unknowns();
  const int per_t = conjugate_rows ? 4 : 2;
  sys.matrix.setZero(per_t * ts.size(), cols);
  sys.rhs_vector.setZero(per_t * ts.size());
  std::vector<cplx> c(cols);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& r = sys.rows[i];
    const int boff = 2 * N + 1;
    c[0] = r.A_plus[0];
    c[boff] = r.B_plus[0];
    for (int n = 1; n <= N; ++n) {
      c[2 * n - 1] = r.A_plus[n] + r.A_minus[n];
      c[2 * n] = kI * (r.A_plus[n] - r.A_minus[n]);
      c[boff + 2 * n - 1] = r.B_plus[n] + r.B_minus[n];
      c[boff + 2 * n] = kI * (r.B_plus[n] - r.B_minus[n]);
    }
    // Line two of the system is the conjugate of line one; its real rows
    // are (Re, −Im) of the same coefficients.
    const Eigen::Index base = per_t * i;
    for (int k = 0; k < cols; ++k) {
      sys.matrix(base, k) = c[k].real();
      sys.matrix(base + 1, k) = c[k].imag();
      if (conjugate_rows) {
        sys.matrix(base + 2, k) = std::conj(c[k]).real();
        sys.matrix(base + 3, k) = std::conj(c[k]).imag();
      }
    }
    sys.rhs_vector(base) = r.rhs.real();
    sys.rhs_vector(base + 1) = r.rhs.imag();
    if (conjugate_rows) {
      sys.rhs_vector(base + 2) = std::conj(r.rhs).real();
      sys.rhs_vector(base + 3) = std::conj(r.rhs).imag();
    }
  }
  return sys;
}

MixedBvpSolution assemble_and_solve(const MixedBvpProblem& P) {
  const CollocationSystem sys = assemble_system(P);
  const LeastSquaresResult ls = solve_least_squares(sys.matrix, sys.rhs_vector);
  const int N = P.N, boff = 2 * N + 1;
  MixedBvpSolution sol;
  sol.trace.m = P.m;
  sol.trace.domain = P.domain;
  sol.trace.a.assign(N + 1, cplx{});
  sol.trace.b.assign(N + 1, cplx{});
  sol.trace.a[0] = ls.x(0);
  sol.trace.b[0] = ls.x(boff);
  for (int n = 1; n <= N; ++n) {
    sol.trace.a[n] = cplx(ls.x(2 * n - 1), ls.x(2 * n));
    sol.trace.b[n] = cplx(ls.x(boff + 2 * n - 1), ls.x(boff + 2 * n));
  }
  double peak = 0.0;
  for (int n = 0; n <= N; ++n)
    peak = std::max({peak, std::abs(sol.trace.a[n]), std::abs(sol.trace.b[n])});
  sol.report.residual_lsq = ls.residual;
  sol.report.sigma_min = ls.sigma_min;
  sol.report.sigma_max = ls.sigma_max;
  sol.report.coeff_decay_ratio =
      peak > 0.0 ? std::max(std::abs(sol.trace.a[N]), std::abs(sol.trace.b[N])) / peak : 0.0;
  sol.report.rows = static_cast<int>(sys.matrix.rows());
  sol.report.unknowns = static_cast<int>(sys.matrix.cols());
  return sol;
}

cplx trace_value(const FourierTrace& tr, double theta) {
  double th = std::fmod(theta + kHalfPi, kTwoPi);
  if (th < 0.0) th += kTwoPi;
  th -= kHalfPi;
  double rho_m = 1.0;
  if (tr.domain.kind() == CurveKind::Ellipse)
    rho_m = std::pow(polar_radius(th, tr.domain.semi_a(), tr.domain.semi_b()), tr.m);
  const bool first = th <= kHalfPi;
  const auto& c = first ? tr.a : tr.b;
  double s = c[0].real();
  for (std::size_t n = 1; n < c.size(); ++n)
    s += 2.0 * std::real(c[n] * std::polar(1.0, 2.0 * n * th));
  if (first) return {rho_m * std::cos(tr.m * th), s};
  return {s, -rho_m * std::sin(tr.m * th)};
}

double polar_angle_of(const BoundaryCurve& domain, double phi) {
  double th = phi;
  if (domain.kind() == CurveKind::Ellipse)
    th = std::atan2(domain.semi_b() * std::sin(phi), domain.semi_a() * std::cos(phi));
  th = std::fmod(th + kHalfPi, kTwoPi);
  if (th < 0.0) th += kTwoPi;
  return th - kHalfPi;
}

cplx trace_global_residual(const FourierTrace& tr, cplx t, const QuadratureConfig& cfg) {
  const bool disc = tr.domain.kind() == CurveKind::UnitCircle;
  const double a = tr.domain.semi_a(), b = tr.domain.semi_b();
  auto g = [&](double th) {
    const cplx z = disc ? std::polar(1.0, th) : polar_position(th, a, b);
    const cplx dz = disc ? kI * z : polar_derivative(th, a, b);
    return trace_value(tr, th) * std::exp(-kI * t * z) * dz;
  };
  const int n = 2 * static_cast<int>(tr.a.size()) + tr.m;
  const double speed = disc ? 1.0 : polar_speed_bound(a, b);
  const double bp[] = {kHalfPi};
  return integrate_arc(g, -kHalfPi, 3.0 * kHalfPi, bp, cfg, oscillation_panels(t, speed, n)).value;
}

double fresh_global_residual_max(const MixedBvpProblem& P, const FourierTrace& tr, int count) {
  double worst = 0.0;
  // Moderate |t| between the inner rings: far rings carry e^{|t|} growth.
  for (int k = 0; k < count; ++k) {
    const double radius = 0.25 + 3.5 * (k + 0.5) / count;
    const double phi = kTwoPi * (k + 0.37) / count;
    const cplx t = -radius / P.domain.derivative(phi);
    worst = std::max(worst, std::abs(trace_global_residual(tr, t)));
  }
  return worst;
}

SpectralEvaluator trace_evaluator(const FourierTrace& tr, cplx z) {
  const BoundaryCurve dom = tr.domain.with_breakpoints({kHalfPi, 3.0 * kHalfPi});
  if (!dom.contains(z) || dom.distance_to(z) < 1e-3 * dom.diameter())
    throw PointNotInterior("evaluation point must be inside, at least 1e-3 x diameter from the boundary");
  const Trapezoid T = inscribe_trapezoid(dom, z);
  return {[tr, dom](double phi) { return trace_value(tr, polar_angle_of(dom, phi)); }, dom, T};
}

cplx solve_interior(const MixedBvpSolution& sol, cplx z, const ReconstructOptions& opts) {
  const SpectralEvaluator ev = trace_evaluator(sol.trace, z);
  ReconstructOptions o = opts;
  o.trace_bandwidth = std::max(o.trace_bandwidth, 2.0 * sol.trace.a.size() + sol.trace.m + 8.0);
  return reconstruct(ev, z, o);
}

cplx solve_interior(const MixedBvpProblem& P, cplx z) {
  return solve_interior(assemble_and_solve(P), z);
}

}  // namespace utm
