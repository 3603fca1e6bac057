#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace utm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Reduces an angle to [0, 2π).
double wrap_angle(double theta);

enum class CurveKind { UnitCircle, Ellipse, GeneralConvex };

// Counterclockwise, 2π-periodic parametrization of a convex Jordan curve.
// Ellipses use ζ(θ) = a cosθ + i b sinθ.
class BoundaryCurve {
 public:
  using Map = std::function<cplx(double)>;

  static BoundaryCurve unit_circle();
  static BoundaryCurve ellipse(double a, double b);
  // Convexity and orientation are checked on 512 samples; ζ″ comes from
  // central differences of ζ′.
  static BoundaryCurve general_convex(Map position, Map derivative);

  CurveKind kind() const { return kind_; }
  double semi_a() const { return a_; }
  double semi_b() const { return b_; }

  cplx position(double theta) const;
  cplx derivative(double theta) const;
  cplx second_derivative(double theta) const;

  // Sorted, in [0, 2π).
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  BoundaryCurve with_breakpoints(std::vector<double> thetas) const;

  double diameter() const { return diameter_; }
  double perimeter() const;
  double max_speed() const { return max_speed_; }
  // Geometric tolerance for interior tests: 1e-9 · diameter.
  double tolerance() const { return 1e-9 * diameter_; }

  bool contains(cplx z) const;
  double distance_to(cplx z) const;
  double closest_parameter(cplx z) const;

  // Parameters where Im ζ(θ) = y: (right crossing, left crossing), or nothing
  // if the line misses the interior.
  std::optional<std::pair<double, double>> horizontal_crossings(double y) const;

 private:
  BoundaryCurve() = default;
  void finish();

  CurveKind kind_ = CurveKind::UnitCircle;
  double a_ = 1.0, b_ = 1.0;
  std::shared_ptr<const Map> pos_, der_;
  std::vector<double> breakpoints_;
  double diameter_ = 2.0;
  double max_speed_ = 1.0;
  double y_min_ = -1.0, y_max_ = 1.0;
};

// Checks the curvature sign test Im[conj(ζ′) ζ″] ≥ 0 on `samples` points
// and that the tangent turns exactly once.
bool is_convex(const BoundaryCurve& curve, int samples = 512);

// Parameter interval [lo, hi] on the boundary, hi may exceed 2π.
struct ArcInterval {
  double lo = 0.0, hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double theta) const;
};

// Sides are numbered 0..3: side 0 is the lowest horizontal side, then
// counterclockwise. Vertex k starts side k; arc k runs from vertex k to k+1.
struct Trapezoid {
  std::array<cplx, 4> vertices{};
  std::array<double, 4> vertex_params{};
  std::array<double, 4> betas{};
  cplx alpha{};
  std::array<ArcInterval, 4> arcs{};
  double margin = 0.0;

  // Ψ_k(w) = e^{-iβ_k}(w − α).
  cplx psi(int k, cplx w) const;
  // Signed distance from w to side k, positive inside.
  double side_distance(int k, cplx w) const;
  bool contains(cplx w, double shrink = 0.0) const;
};

struct InscribeOptions {
  // Half distance between the two horizontal lines; default dist(z0, ∂Ω)/2.
  std::optional<double> half_height;
  // Moves both lines by skew·half_height (|skew| < 1 keeps z0 between them).
  double skew = 0.0;
};

Trapezoid inscribe_trapezoid(const BoundaryCurve& domain, cplx z0,
                             const InscribeOptions& opts = {});

// Builds a trapezoid from four counterclockwise vertex parameters starting at
// the left end of the lower horizontal side.
Trapezoid make_trapezoid(const BoundaryCurve& domain,
                         const std::array<double, 4>& vertex_params,
                         cplx alpha);

std::array<ArcInterval, 4> partition_boundary(const BoundaryCurve& domain,
                                              const Trapezoid& trapezoid);

// inf over arc k of Im Ψ_k(z) − Im Ψ_k(ζ).
double arc_separation(const Trapezoid& trapezoid, const BoundaryCurve& domain,
                      cplx z, int k);

// Minimum of arc_separation over the four arcs.
double separation_margin(const Trapezoid& trapezoid,
                         const BoundaryCurve& domain, cplx z);

}  // namespace utm
