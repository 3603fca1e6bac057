#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "utm/geometry.hpp"
#include "utm/quadrature.hpp"

namespace utm {

// Parameter of Δφ = 4σφ, 0 < Arg σ < π.
struct HelmholtzParameter {
  cplx sigma;
  cplx sqrt_sigma;

  static HelmholtzParameter make(cplx sigma);
};

// Boundary traces of φ and ∂φ/∂z, in the domain's parameter θ.
struct HelmholtzBoundaryData {
  std::function<cplx(double)> phi;
  std::function<cplx(double)> dphi_dz;
  BoundaryCurve domain;
  Trapezoid trapezoid;
  // Bound on |d/dθ| of log φ along the boundary; sizes the fixed
  // reconstruction rule.
  double bandwidth = 8.0;
};

// Ray from 0 to R e^{i(Arg σ − χ)}, arc of radius R to angle −χ, ray to ∞.
// Decay of e^{itd − iσ conj(d)/t} is checked at both ends for sample d with
// χ < arg d < χ + π. Throws DecayCheckFailed.
RayContour make_contour(const HelmholtzParameter& p, double chi, double mid_radius = 1.0);

// G(ζ,z) = −(1/4π) ∫_L e^{it(z−ζ) − iσ conj(z−ζ)/t} dt/t on `contour`,
// whose χ must satisfy χ < arg(z−ζ) < χ + π.
cplx greens_function(cplx zeta, cplx z, const HelmholtzParameter& p,
                     const RayContour& contour, const QuadratureConfig& cfg = {});
// Same with the contour rotated by χ = arg(z−ζ) − π/2.
cplx greens_function(cplx zeta, cplx z, const HelmholtzParameter& p,
                     const QuadratureConfig& cfg = {});
// ∂G/∂conj(ζ): the integrand carries an extra factor iσ/t.
cplx greens_dbar(cplx zeta, cplx z, const HelmholtzParameter& p,
                 const RayContour& contour, const QuadratureConfig& cfg = {});
cplx greens_dbar(cplx zeta, cplx z, const HelmholtzParameter& p,
                 const QuadratureConfig& cfg = {});

// −(1/2π) K0(2√σ|z−ζ|) and its ∂/∂conj(ζ), from the Bessel routines.
cplx greens_function_bessel(cplx zeta, cplx z, const HelmholtzParameter& p);
cplx greens_dbar_bessel(cplx zeta, cplx z, const HelmholtzParameter& p);

// ρ_j(t) = ∫_{I_j} e^{−itζ + iσζ̄/t} [φ (iσ/t) conj ζ′ + φ_z ζ′] dθ, j = 0..3.
cplx helmholtz_spectral(const HelmholtzBoundaryData& data, const HelmholtzParameter& p,
                        int j, cplx t, const QuadratureConfig& cfg = {});
// Σ_j ρ_j(t).
cplx helmholtz_global_residual(const HelmholtzBoundaryData& data,
                               const HelmholtzParameter& p, cplx t,
                               const QuadratureConfig& cfg = {});

// φ(z) = (1/2πi) Σ_j ∫_{L_{β_j}} e^{itz − iσz̄/t} ρ_j(t) dt/t.
cplx helmholtz_reconstruct(const HelmholtzBoundaryData& data, const HelmholtzParameter& p,
                           cplx z, double abs_tol = 1e-10);

// φ(z) = 2i ∮ [φ ∂G/∂ζ̄ conj ζ′ + G φ_z ζ′] dθ with the Bessel form of G.
cplx greens_identity_eval(const HelmholtzBoundaryData& data, const HelmholtzParameter& p,
                          cplx z, const QuadratureConfig& cfg = {});

// ψ(ζ) = e^{−it0ζ + iσζ̄/t0}, a solution of Δψ = 4σψ for any t0 ≠ 0.
struct ExactMode {
  cplx t0;
  cplx sigma;
  cplx coefficient = 1.0;

  cplx value(cplx zeta) const;
  cplx dz(cplx zeta) const;     // −i t0 ψ
  cplx dzbar(cplx zeta) const;  // (iσ/t0) ψ
};

// Boundary data of Σ modes on `domain` with the given trapezoid.
HelmholtzBoundaryData mode_boundary_data(const std::vector<ExactMode>& modes,
                                         const BoundaryCurve& domain,
                                         const Trapezoid& trapezoid);

}  // namespace utm
