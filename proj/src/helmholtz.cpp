#include "utm/helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "utm/errors.hpp"
#include "utm/laplace_transform.hpp"
#include "utm/special.hpp"

namespace utm {

namespace {

constexpr cplx kI{0.0, 1.0};

// Re of the exponent it d − iσ conj(d)/t equals −Im(d (t + conj(σ)/conj(t))).
cplx decay_vector(cplx t, cplx sigma) { return t + std::conj(sigma) / std::conj(t); }

double sector_offset(cplx d, double chi) {
  double s = std::fmod(std::arg(d) - chi, kTwoPi);
  if (s < 0.0) s += kTwoPi;
  return s;
}

void check_pair(cplx zeta, cplx z, double chi) {
  if (std::abs(z - zeta) == 0.0) throw SingularPoint("Green's function at coincident points");
  const double s = sector_offset(z - zeta, chi);
  if (!(s > 0.0 && s < kPi))
    throw ArgumentOutOfSector("arg(z - zeta) must lie in (chi, chi + pi)");
}

double contour_chi(const RayContour& c) { return -c.angle_at_infinity(); }

cplx contour_kernel_integral(cplx d, const HelmholtzParameter& p, RayContour contour,
                             bool dbar, const QuadratureConfig& cfg) {
  contour.decay_estimate = std::abs(d) * std::sin(sector_offset(d, contour_chi(contour)));
  auto h = [&](cplx t) -> cplx {
    const cplx e = std::exp(kI * t * d - kI * p.sigma * std::conj(d) / t) / t;
    return dbar ? e * kI * p.sigma / t : e;
  };
  return -integrate_ray_contour(h, contour, cfg).value / (4.0 * kPi);
}

RayContour auto_contour(cplx zeta, cplx z, const HelmholtzParameter& p) {
  double chi = std::fmod(std::arg(z - zeta) - 0.5 * kPi, kTwoPi);
  if (chi < 0.0) chi += kTwoPi;
  return make_contour(p, chi);
}

// Largest Re of the combined exponent over arc j, sampled with a Lipschitz
// allowance.
double arc_exponent_bound(const BoundaryCurve& dom, const ArcInterval& arc, cplx z, cplx w) {
  const int n = 64;
  const double h = arc.width() / n;
  double best = -1e300;
  for (int i = 0; i <= n; ++i)
    best = std::max(best, -std::imag((z - dom.position(arc.lo + i * h)) * w));
  return best + 0.5 * h * dom.max_speed() * std::abs(w);
}

// e^{itz − iσz̄/t} ρ_j(t), integrated with the exponents combined.
cplx shifted_spectral(const HelmholtzBoundaryData& data, const HelmholtzParameter& p, int j,
                      cplx t, cplx z, bool shift, const QuadratureConfig& cfg) {
  if (t == cplx{}) throw ZeroSpectralParameter("spectral functions need t != 0");
  const ArcInterval arc = data.trapezoid.arcs[j];
  const BoundaryCurve& dom = data.domain;
  const cplx w = decay_vector(t, p.sigma);
  if (shift && arc_exponent_bound(dom, arc, z, w) < -50.0) return 0.0;
  const cplx ist = kI * p.sigma / t;
  const cplx zs = shift ? z : cplx{};
  auto g = [&](double th) {
    const cplx zeta = dom.position(th), dzeta = dom.derivative(th);
    const cplx d = zs - zeta;
    const cplx e = std::exp(kI * t * d - kI * p.sigma * std::conj(d) / t);
    return e * (data.phi(th) * ist * std::conj(dzeta) + data.dphi_dz(th) * dzeta);
  };
  ArcOptions ao;
  ao.max_panel_width = kTwoPi / (4.0 * (std::abs(w) * dom.max_speed() + 4.0));
  const auto bps = breakpoints_in(dom, arc.lo, arc.hi);
  return integrate_arc(g, arc.lo, arc.hi, bps, cfg, ao).value;
}

// Boundary samples of one arc on a composite 16-point Gauss rule, shared by
// all t that need at most `panels` panels.
struct ArcNodes {
  std::vector<cplx> zeta, dzeta_w, conj_dzeta_w, phi, dphi;
};

class ArcNodeCache {
 public:
  ArcNodeCache(const HelmholtzBoundaryData& data, int j) : data_(data), arc_(data.trapezoid.arcs[j]) {
    const auto bps = breakpoints_in(data.domain, arc_.lo, arc_.hi);
    cuts_.push_back(arc_.lo);
    cuts_.insert(cuts_.end(), bps.begin(), bps.end());
    cuts_.push_back(arc_.hi);
  }

  const ArcNodes& nodes(double rate) {
    int per_rad = 1;
    while (per_rad < rate / 6.0) per_rad *= 2;
    auto it = cache_.find(per_rad);
    if (it != cache_.end()) return it->second;
    ArcNodes n;
    const GaussRule& rule = gauss_legendre(16);
    for (std::size_t s = 0; s + 1 < cuts_.size(); ++s) {
      const double lo = cuts_[s], hi = cuts_[s + 1];
      const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * per_rad)));
      for (int q = 0; q < panels; ++q) {
        const double a = lo + (hi - lo) * q / panels, b = lo + (hi - lo) * (q + 1) / panels;
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int k = 0; k < 16; ++k) {
          const double th = c + h * rule.nodes[k];
          const cplx dz = data_.domain.derivative(th);
          n.zeta.push_back(data_.domain.position(th));
          n.dzeta_w.push_back(h * rule.weights[k] * dz);
          n.conj_dzeta_w.push_back(h * rule.weights[k] * std::conj(dz));
          n.phi.push_back(data_.phi(th));
          n.dphi.push_back(data_.dphi_dz(th));
        }
      }
    }
    return cache_.emplace(per_rad, std::move(n)).first->second;
  }

 private:
  const HelmholtzBoundaryData& data_;
  ArcInterval arc_;
  std::vector<double> cuts_;
  std::map<int, ArcNodes> cache_;
};

}  // namespace

HelmholtzParameter HelmholtzParameter::make(cplx sigma) {
  const double a = std::arg(sigma);
  if (!(std::abs(sigma) > 0.0 && a > 0.0 && a < kPi))
    throw InvalidArgument("sigma must satisfy 0 < Arg(sigma) < pi");
  return {sigma, std::sqrt(sigma)};
}

RayContour make_contour(const HelmholtzParameter& p, double chi, double mid_radius) {
  if (!(chi >= 0.0 && chi < kTwoPi)) throw InvalidArgument("chi must lie in [0, 2pi)");
  if (!(mid_radius > 0.0)) throw InvalidArgument("mid radius must be positive");
  const double arg_sigma = std::arg(p.sigma);
  RayContour c;
  ContourPiece line;
  line.kind = ContourPiece::Kind::Line;
  line.start = 0.0;
  line.end = std::polar(mid_radius, arg_sigma - chi);
  ContourPiece arc;
  arc.kind = ContourPiece::Kind::Arc;
  arc.start = line.end;
  arc.sweep = -arg_sigma;
  arc.end = std::polar(mid_radius, -chi);
  ContourPiece ray;
  ray.kind = ContourPiece::Kind::Ray;
  ray.start = arc.end;
  ray.angle = -chi;
  c.pieces = {line, arc, ray};
  c.validate();

  // Re of the exponent must fall off toward both ends for d across the sector.
  for (double off : {0.25 * kPi, 0.5 * kPi, 0.75 * kPi}) {
    const cplx d = std::polar(1.0, chi + off);
    for (double s : {1e-3, 1e-6}) {
      const cplx t0 = std::polar(s * mid_radius, arg_sigma - chi);
      const cplx tinf = std::polar(mid_radius / s, -chi);
      const double r0 = -std::imag(d * decay_vector(t0, p.sigma));
      const double rinf = -std::imag(d * decay_vector(tinf, p.sigma));
      if (!(r0 < 0.0)) throw DecayCheckFailed("kernel does not decay at the origin end");
      if (!(rinf < 0.0)) throw DecayCheckFailed("kernel does not decay at the infinite end");
    }
  }
  return c;
}

cplx greens_function(cplx zeta, cplx z, const HelmholtzParameter& p,
                     const RayContour& contour, const QuadratureConfig& cfg) {
  check_pair(zeta, z, contour_chi(contour));
  return contour_kernel_integral(z - zeta, p, contour, false, cfg);
}

cplx greens_function(cplx zeta, cplx z, const HelmholtzParameter& p, const QuadratureConfig& cfg) {
  if (z == zeta) throw SingularPoint("Green's function at coincident points");
  return greens_function(zeta, z, p, auto_contour(zeta, z, p), cfg);
}

cplx greens_dbar(cplx zeta, cplx z, const HelmholtzParameter& p,
                 const RayContour& contour, const QuadratureConfig& cfg) {
  check_pair(zeta, z, contour_chi(contour));
  return contour_kernel_integral(z - zeta, p, contour, true, cfg);
}

cplx greens_dbar(cplx zeta, cplx z, const HelmholtzParameter& p, const QuadratureConfig& cfg) {
  if (z == zeta) throw SingularPoint("Green's function at coincident points");
  return greens_dbar(zeta, z, p, auto_contour(zeta, z, p), cfg);
}

cplx greens_function_bessel(cplx zeta, cplx z, const HelmholtzParameter& p) {
  const double r = std::abs(z - zeta);
  if (r == 0.0) throw SingularPoint("Green's function at coincident points");
  return -bessel_k0(2.0 * p.sqrt_sigma * r) / kTwoPi;
}

cplx greens_dbar_bessel(cplx zeta, cplx z, const HelmholtzParameter& p) {
  const double r = std::abs(z - zeta);
  if (r == 0.0) throw SingularPoint("Green's function at coincident points");
  const cplx kappa = 2.0 * p.sqrt_sigma;
  return kappa / kTwoPi * bessel_k1(kappa * r) * (zeta - z) / (2.0 * r);
}

cplx helmholtz_spectral(const HelmholtzBoundaryData& data, const HelmholtzParameter& p,
                        int j, cplx t, const QuadratureConfig& cfg) {
  if (j < 0 || j > 3) throw InvalidArgument("arc index must be 0..3");
  return shifted_spectral(data, p, j, t, 0.0, false, cfg);
}

cplx helmholtz_global_residual(const HelmholtzBoundaryData& data,
                               const HelmholtzParameter& p, cplx t,
                               const QuadratureConfig& cfg) {
  cplx s = 0.0;
  for (int j = 0; j < 4; ++j) s += helmholtz_spectral(data, p, j, t, cfg);
  return s;
}

cplx helmholtz_reconstruct(const HelmholtzBoundaryData& data, const HelmholtzParameter& p,
                           cplx z, double abs_tol) {
  if (!data.trapezoid.contains(z))
    throw NotInTrapezoid("evaluation point is outside the trapezoid");
  QuadratureConfig outer;
  outer.abs_tol = abs_tol;
  outer.rel_tol = 1e-9;
  const BoundaryCurve& dom = data.domain;
  cplx total = 0.0;
  for (int j = 0; j < 4; ++j) {
    double chi = std::fmod(data.trapezoid.betas[j], kTwoPi);
    if (chi < 0.0) chi += kTwoPi;
    RayContour c = make_contour(p, chi);
    c.decay_estimate = std::max(1e-3, arc_separation(data.trapezoid, dom, z, j));
    ArcNodeCache cache(data, j);
    // e^{itz − iσz̄/t} ρ_j(t) / t on a fixed rule, exponents combined.
    auto h = [&](cplx t) -> cplx {
      const cplx w = decay_vector(t, p.sigma);
      if (arc_exponent_bound(dom, data.trapezoid.arcs[j], z, w) < -50.0) return 0.0;
      const ArcNodes& n = cache.nodes((std::abs(w) + data.bandwidth) * dom.max_speed() + 8.0);
      const cplx ist = kI * p.sigma / t;
      cplx s = 0.0;
      for (std::size_t k = 0; k < n.zeta.size(); ++k) {
        const cplx d = z - n.zeta[k];
        s += std::exp(kI * t * d - kI * p.sigma * std::conj(d) / t) *
             (n.phi[k] * ist * n.conj_dzeta_w[k] + n.dphi[k] * n.dzeta_w[k]);
      }
      return s / t;
    };
    total += integrate_ray_contour(h, c, outer).value;
  }
  return total / (kTwoPi * kI);
}

cplx greens_identity_eval(const HelmholtzBoundaryData& data, const HelmholtzParameter& p,
                          cplx z, const QuadratureConfig& cfg) {
  if (!data.domain.contains(z)) throw PointNotInterior("evaluation point is outside the domain");
  const BoundaryCurve& dom = data.domain;
  auto g = [&](double th) {
    const cplx zeta = dom.position(th), dzeta = dom.derivative(th);
    return data.phi(th) * greens_dbar_bessel(zeta, z, p) * std::conj(dzeta) +
           greens_function_bessel(zeta, z, p) * data.dphi_dz(th) * dzeta;
  };
  return 2.0 * kI * integrate_periodic(g, cfg, 256).value;
}

cplx ExactMode::value(cplx zeta) const {
  return coefficient * std::exp(-kI * t0 * zeta + kI * sigma * std::conj(zeta) / t0);
}
cplx ExactMode::dz(cplx zeta) const { return -kI * t0 * value(zeta); }
cplx ExactMode::dzbar(cplx zeta) const { return kI * sigma / t0 * value(zeta); }

HelmholtzBoundaryData mode_boundary_data(const std::vector<ExactMode>& modes,
                                         const BoundaryCurve& domain,
                                         const Trapezoid& trapezoid) {
  for (const auto& m : modes)
    if (m.t0 == cplx{}) throw InvalidArgument("mode parameter t0 must be nonzero");
  HelmholtzBoundaryData d{{}, {}, domain, trapezoid, 0.0};
  for (const auto& m : modes)
    d.bandwidth = std::max(d.bandwidth, std::abs(m.t0) + std::abs(m.sigma / m.t0));
  d.phi = [modes, domain](double th) {
    cplx s = 0.0;
    for (const auto& m : modes) s += m.value(domain.position(th));
    return s;
  };
  d.dphi_dz = [modes, domain](double th) {
    cplx s = 0.0;
    for (const auto& m : modes) s += m.dz(domain.position(th));
    return s;
  };
  return d;
}

}  // namespace utm
