#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "utm/geometry.hpp"
#include "utm/laplace_transform.hpp"
#include "utm/quadrature.hpp"

namespace utm {

// Mixed problem on the unit disc or an ellipse: Re f prescribed on
// C1 = (−π/2, π/2), Im f prescribed on C2 = (π/2, 3π/2), in the polar angle.
struct MixedBvpProblem {
  BoundaryCurve domain = BoundaryCurve::unit_circle();
  int m = 0;
  int N = 16;
  // 0 selects the default 2N + 8 rings.
  int M_r = 0;
  int thetas_per_ring = 64;

  int rings() const { return M_r > 0 ? M_r : 2 * N + 8; }
  int unknowns() const { return 4 * N + 2; }
  void validate() const;
};

// Disc blocks, integrals over the polar angle:
//   A(n,t) = −∫_{−π/2}^{π/2} e^{−ite^{iθ}} e^{i(n+1)θ} dθ
//   B(n,t) = i∫_{π/2}^{3π/2} e^{−ite^{iθ}} e^{i(n+1)θ} dθ
cplx disc_block_A(int n, cplx t, const QuadratureConfig& cfg = {});
cplx disc_block_B(int n, cplx t, const QuadratureConfig& cfg = {});
cplx disc_rhs(int m, cplx t, const QuadratureConfig& cfg = {});

// Ellipse blocks with ζ(θ) = ρ(θ)e^{iθ}, ρ = ab/√((b cosθ)² + (a sinθ)²).
cplx ellipse_block_A(int n, cplx t, double a, double b, const QuadratureConfig& cfg = {});
cplx ellipse_block_B(int n, cplx t, double a, double b, const QuadratureConfig& cfg = {});
cplx ellipse_rhs(int m, cplx t, double a, double b, const QuadratureConfig& cfg = {});

// Polar radius of the ellipse and the polar parametrization with derivative.
double polar_radius(double theta, double a, double b);
cplx polar_position(double theta, double a, double b);
cplx polar_derivative(double theta, double a, double b);

// {0} ∪ {−j/ζ′(θ_s)}: j = 1..M_r, θ_s = 2πs/S, s = 0..S−1.
std::vector<cplx> collocation_points(const BoundaryCurve& domain, int M_r,
                                     int thetas_per_ring);

// One complex collocation equation: Σ_n a_n A(2n) + conj(a_n) A(−2n) +
// b_n B(2n) + conj(b_n) B(−2n) = r, with a_0, b_0 real.
// A_plus[n] = A(2n,t), A_minus[n] = A(−2n,t) (A_minus[0] unused), same for B.
struct CollocationRow {
  cplx t;
  std::vector<cplx> A_plus, A_minus, B_plus, B_minus;
  cplx rhs;
};

// All blocks at one t from a shared set of quadrature nodes.
CollocationRow collocation_row(const MixedBvpProblem& problem, cplx t);

struct CollocationSystem {
  std::vector<CollocationRow> rows;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs_vector;
};

// Real system in the unknowns
// [a_0, Re a_1, Im a_1, …, Re a_N, Im a_N, b_0, Re b_1, Im b_1, …].
// Each t contributes the equation and its conjugate (two real rows each).
// With `conjugate_rows` false only the first line is realified.
CollocationSystem assemble_system(const MixedBvpProblem& problem,
                                  bool conjugate_rows = true);

struct FourierTrace {
  std::vector<cplx> a, b;  // a[0], b[0] real
  int m = 0;
  BoundaryCurve domain = BoundaryCurve::unit_circle();
};

struct SolveReport {
  double residual_lsq = 0.0;
  double sigma_min = 0.0, sigma_max = 0.0;
  double coeff_decay_ratio = 0.0;
  int rows = 0, unknowns = 0;
};

struct MixedBvpSolution {
  FourierTrace trace;
  SolveReport report;
};

MixedBvpSolution assemble_and_solve(const MixedBvpProblem& problem);

// Trace at polar angle θ ∈ [−π/2, 3π/2); the junctions take the C1 branch.
cplx trace_value(const FourierTrace& trace, double theta);

// Polar angle in [−π/2, 3π/2) of the boundary point with curve parameter φ.
double polar_angle_of(const BoundaryCurve& domain, double phi);

// ∮ f e^{−itζ} dζ for the solved trace (the global relation for side 0).
cplx trace_global_residual(const FourierTrace& trace, cplx t,
                           const QuadratureConfig& cfg = {});

// Max of |trace_global_residual| over `count` t-values placed between the
// inner collocation rings (|t| < 4) and off the collocation angles.
double fresh_global_residual_max(const MixedBvpProblem& problem,
                                 const FourierTrace& trace, int count = 20);

// Evaluator of the solved trace on the domain's own parametrization, with
// breakpoints at the junctions.
SpectralEvaluator trace_evaluator(const FourierTrace& trace, cplx z);

cplx solve_interior(const MixedBvpSolution& solution, cplx z,
                    const ReconstructOptions& opts = {});
cplx solve_interior(const MixedBvpProblem& problem, cplx z);

}  // namespace utm
