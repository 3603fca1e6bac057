#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "utm/geometry.hpp"
#include "utm/laplace_transform.hpp"
#include "utm/quadrature.hpp"

namespace utm {

// Point vortex of circulation Γ at ζ0 inside the ellipse
// ζ(θ) = a cosθ + i b sinθ.
struct VortexProblem {
  double a = 2.0, b = 1.0;
  cplx zeta0{0.3, 0.2};
  double Gamma = 1.0;
  int N = 16;
  // 0 selects the default 2N + 8 rings.
  int M_r = 0;
  int thetas_per_ring = 64;

  int rings() const { return M_r > 0 ? M_r : 2 * N + 8; }
  BoundaryCurve domain() const { return BoundaryCurve::ellipse(a, b); }
  void validate() const;
};

// f_s(ζ) = (Γ/2πi) log(ζ − ζ0), principal branch (cut along ζ − ζ0 < 0).
cplx singular_potential(cplx zeta, cplx zeta0, double Gamma);

// P(n,t) = ∫_0^{2π} e^{inθ} e^{−itζ(θ)} ζ′(θ) dθ.
cplx vortex_block_P(int n, cplx t, double a, double b, const QuadratureConfig& cfg = {});
// R(t) = i∫_0^{2π} Im f_s(ζ(θ)) e^{−itζ(θ)} ζ′(θ) dθ.
cplx vortex_rhs_R(cplx t, const VortexProblem& problem, const QuadratureConfig& cfg = {});

// Correction f with boundary trace
//   f(ζ(θ)) = Σ_{n=1}^N [a_n e^{inθ} + conj(a_n) e^{−inθ}] − i Im f_s(ζ(θ)),
// the real constant pinned to zero.
struct VortexSolution {
  VortexProblem problem;
  std::vector<cplx> a;  // a[0] = 0
  double residual_lsq = 0.0;
  double sigma_min = 0.0, sigma_max = 0.0;
  double coeff_decay_ratio = 0.0;

  cplx correction_trace(double theta) const;
  // h = f_s + f on the boundary; Im h vanishes there by construction.
  cplx potential_trace(double theta) const;
};

VortexSolution solve_vortex(const VortexProblem& problem);

// Max of |∮ f e^{−itζ} dζ| over `count` t with |t| < 4 off the collocation set.
double vortex_global_residual_max(const VortexSolution& sol, int count = 20);

// h(z) = f_s(z) + f(z), f reconstructed from its trace.
cplx complex_potential(const VortexSolution& sol, cplx z, const ReconstructOptions& opts = {});

// dh/dz by central differences of complex_potential with step `h`.
cplx complex_velocity(const VortexSolution& sol, cplx z, double h = 1e-4);

struct StreamGrid {
  int nx = 0, ny = 0;
  std::vector<double> x, y;                // nx and ny lattice coordinates
  std::vector<std::optional<double>> psi;  // row-major, index j*nx + i
};

// ψ = Im h on an nx × ny lattice over the bounding box; points closer than
// 1e−3·diameter to the boundary or 0.05·b to ζ0 are absent.
StreamGrid streamfunction_grid(const VortexSolution& sol, int nx, int ny);

// Conformal map of the ellipse onto the unit disc:
// Φ(ζ) = √k sn((2K/π) asin(ζ/c) | k²), c = √(a² − b²), nome ((a−b)/(a+b))².
cplx conformal_map(cplx zeta, double a, double b);

// H = (Γ/2πi) log((w − w0)/(w − 1/conj w0)), w = Φ(z), w0 = Φ(ζ0).
cplx exact_oracle(cplx z, const VortexProblem& problem);

}  // namespace utm
