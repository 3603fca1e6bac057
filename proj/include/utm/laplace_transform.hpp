#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "utm/geometry.hpp"
#include "utm/quadrature.hpp"

namespace utm {

// Boundary trace f(ζ(θ)) of an analytic function together with the
// trapezoid used to split the boundary. `boundary_values` must accept any
// real θ (it is treated as 2π-periodic).
struct SpectralEvaluator {
  std::function<cplx(double)> boundary_values;
  BoundaryCurve domain;
  Trapezoid trapezoid;
};

// Trace of an analytic function g given on the plane.
SpectralEvaluator make_evaluator(const BoundaryCurve& domain,
                                 const Trapezoid& trapezoid,
                                 std::function<cplx(cplx)> g);

// Breakpoints of the domain shifted by multiples of 2π into (lo, hi).
std::vector<double> breakpoints_in(const BoundaryCurve& domain, double lo,
                                   double hi);

struct ReconstructOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Angular bandwidth of the trace in θ, added to the phase rate when
  // sizing the arc panels.
  double trace_bandwidth = 40.0;
};

// ρ_jk(t) = ∫_{I_k} f(ζ) e^{-i t e^{-iβ_j} ζ} dζ; sides and arcs are 0..3.
cplx spectral_function(const SpectralEvaluator& ev, int j, int k, cplx t,
                       const QuadratureConfig& cfg = {});

// Σ_k ρ_jk(t).
cplx global_relation_residual(const SpectralEvaluator& ev, int j, cplx t,
                              const QuadratureConfig& cfg = {});

// f(z) = (1/2π) Σ_j ∫_0^∞ ρ_jj(t) e^{-iβ_j} e^{i t e^{-iβ_j} z} dt.
cplx reconstruct(const SpectralEvaluator& ev, cplx z,
                 const ReconstructOptions& opts = {});

}  // namespace utm
