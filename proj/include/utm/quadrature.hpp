#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace utm {

using cplx = std::complex<double>;

struct QuadratureConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-13;
  int max_panels = 20000;
  int panel_order = 16;

  void validate() const;
};

struct QuadResult {
  cplx value;
  double error = 0.0;
  int panels = 0;
};

// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes, weights;
};
const GaussRule& gauss_legendre(int order);

struct ArcOptions {
  // Initial panels never exceed this width (0 = no limit).
  double max_panel_width = 0.0;
  int initial_panels = 1;
};

using RealMap = std::function<cplx(double)>;
using ComplexMap = std::function<cplx(cplx)>;

// Adaptive composite Gauss–Legendre on [lo, hi]. Panels never straddle a
// breakpoint strictly inside the interval.
QuadResult integrate_arc(const RealMap& g, double lo, double hi,
                         std::span<const double> breakpoints,
                         const QuadratureConfig& cfg,
                         const ArcOptions& opts = {});

// Periodic trapezoidal rule on [0, 2π) with point doubling until two
// successive estimates agree.
QuadResult integrate_periodic(const RealMap& g, const QuadratureConfig& cfg,
                              int initial_points = 64);

struct HalflineOptions {
  // Constant C in |h(t)| ≤ C e^{-εt}; sampled on [0, 1] when absent.
  std::optional<double> envelope;
  // Largest angular frequency of h, used to size the initial panels.
  double frequency = 0.0;
  // Optional non-increasing local frequency bound ω(t); when given, initial
  // panels have width 10/ω(t).
  std::function<double(double)> frequency_at;
};

// ∫_0^∞ h(t) dt for |h(t)| ≤ C e^{-εt}. Truncates at
// T = ln(C / (min(ε,1)·abs_tol)) / ε and adds the tail bound to the error.
QuadResult integrate_halfline_damped(const RealMap& h, double decay,
                                     const QuadratureConfig& cfg,
                                     const HalflineOptions& opts = {});

// Piecewise contour in the complex t-plane. The first piece starts at the
// origin (open endpoint), the last is a ray to infinity.
struct ContourPiece {
  enum class Kind { Line, Arc, Ray };
  Kind kind = Kind::Line;
  cplx start, end;      // end unused for Ray
  double sweep = 0.0;   // signed angle swept by an Arc centred at 0
  double angle = 0.0;   // direction of a Ray
};

struct RayContour {
  std::vector<ContourPiece> pieces;
  double decay_estimate = 1.0;

  void validate() const;
  double angle_at_origin() const;
  double angle_at_infinity() const;
};

RayContour make_ray(double angle, double decay_estimate = 1.0);

// Sum of per-piece adaptive integrals of h(t) dt. The origin end is graded
// geometrically (ratio 1/2) down to |t| = 1e-8·|first vertex|.
QuadResult integrate_ray_contour(const ComplexMap& h, const RayContour& contour,
                                 const QuadratureConfig& cfg);

}  // namespace utm
