#include "utm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "utm/errors.hpp"

namespace utm {

namespace {

constexpr double kInvGolden = 0.6180339887498949;

// Golden-section minimization of f on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double* arg = nullptr) {
  double x1 = hi - kInvGolden * (hi - lo);
  double x2 = lo + kInvGolden * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvGolden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvGolden * (hi - lo);
      f2 = f(x2);
    }
  }
  const double best = f1 < f2 ? x1 : x2;
  if (arg) *arg = best;
  return std::min(f1, f2);
}

// Sampled minimum of f on [lo, hi] followed by golden-section refinement
// around the best sample. Endpoints are always included.
template <class F>
double sampled_min(F&& f, double lo, double hi, int samples,
                   double* arg = nullptr) {
  const double h = (hi - lo) / samples;
  int best = 0;
  double fbest = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double v = f(i == samples ? hi : lo + i * h);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  double where = best == samples ? hi : lo + best * h;
  const double a = std::max(lo, where - h), b = std::min(hi, where + h);
  double refined_arg = where;
  const double refined = golden_min(f, a, b, &refined_arg);
  if (refined < fbest) {
    fbest = refined;
    where = refined_arg;
  }
  if (arg) *arg = where;
  return fbest;
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << "," << z.imag() << ")";
  return os.str();
}

}  // namespace

double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

BoundaryCurve BoundaryCurve::unit_circle() {
  BoundaryCurve c;
  c.kind_ = CurveKind::UnitCircle;
  c.finish();
  return c;
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgument("ellipse semi-axes must be positive and finite");
  BoundaryCurve c;
  c.kind_ = CurveKind::Ellipse;
  c.a_ = a;
  c.b_ = b;
  c.finish();
  return c;
}

BoundaryCurve BoundaryCurve::general_convex(Map position, Map derivative) {
  if (!position || !derivative)
    throw InvalidArgument("general curve needs position and derivative maps");
  BoundaryCurve c;
  c.kind_ = CurveKind::GeneralConvex;
  c.pos_ = std::make_shared<const Map>(std::move(position));
  c.der_ = std::make_shared<const Map>(std::move(derivative));
  double area = 0.0;
  const int n = 1024;
  for (int i = 0; i < n; ++i) {
    const double th = kTwoPi * i / n;
    area += 0.5 * std::imag(std::conj(c.position(th)) * c.derivative(th));
  }
  if (!(area > 0.0))
    throw InvalidArgument("curve must be traced counterclockwise");
  c.finish();
  if (!is_convex(c))
    throw InvalidArgument("curve fails the curvature sign test");
  return c;
}

void BoundaryCurve::finish() {
  switch (kind_) {
    case CurveKind::UnitCircle:
      diameter_ = 2.0;
      max_speed_ = 1.0;
      y_min_ = -1.0;
      y_max_ = 1.0;
      break;
    case CurveKind::Ellipse:
      diameter_ = 2.0 * std::max(a_, b_);
      max_speed_ = std::max(a_, b_);
      y_min_ = -b_;
      y_max_ = b_;
      break;
    case CurveKind::GeneralConvex: {
      const int n = 256;
      std::vector<cplx> pts(n);
      for (int i = 0; i < n; ++i) pts[i] = position(kTwoPi * i / n);
      double d = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
      diameter_ = d;
      max_speed_ = 0.0;
      for (int i = 0; i < 1024; ++i)
        max_speed_ = std::max(max_speed_, std::abs(derivative(kTwoPi * i / 1024)));
      max_speed_ *= 1.01;
      auto im = [this](double t) { return position(t).imag(); };
      auto neg_im = [this](double t) { return -position(t).imag(); };
      y_min_ = sampled_min(im, 0.0, kTwoPi, 512);
      y_max_ = -sampled_min(neg_im, 0.0, kTwoPi, 512);
      break;
    }
  }
}

cplx BoundaryCurve::position(double t) const {
  switch (kind_) {
    case CurveKind::UnitCircle:
      return {std::cos(t), std::sin(t)};
    case CurveKind::Ellipse:
      return {a_ * std::cos(t), b_ * std::sin(t)};
    default:
      return (*pos_)(t);
  }
}

cplx BoundaryCurve::derivative(double t) const {
  switch (kind_) {
    case CurveKind::UnitCircle:
      return {-std::sin(t), std::cos(t)};
    case CurveKind::Ellipse:
      return {-a_ * std::sin(t), b_ * std::cos(t)};
    default:
      return (*der_)(t);
  }
}

cplx BoundaryCurve::second_derivative(double t) const {
  switch (kind_) {
    case CurveKind::UnitCircle:
    case CurveKind::Ellipse:
      return -position(t);
    default: {
      const double h = 1e-5;
      return (derivative(t + h) - derivative(t - h)) / (2.0 * h);
    }
  }
}

BoundaryCurve BoundaryCurve::with_breakpoints(std::vector<double> thetas) const {
  BoundaryCurve c = *this;
  for (double& t : thetas) t = wrap_angle(t);
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
  c.breakpoints_ = std::move(thetas);
  return c;
}

double BoundaryCurve::perimeter() const {
  // Trapezoidal rule is spectrally accurate for the periodic speed |ζ′|.
  const int n = 4096;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::abs(derivative(kTwoPi * i / n));
  return s * kTwoPi / n;
}

bool BoundaryCurve::contains(cplx z) const {
  switch (kind_) {
    case CurveKind::UnitCircle:
      return std::norm(z) < 1.0;
    case CurveKind::Ellipse: {
      const double x = z.real() / a_, y = z.imag() / b_;
      return x * x + y * y < 1.0;
    }
    default: {
      const double th = closest_parameter(z);
      return std::imag(std::conj(derivative(th)) * (z - position(th))) > 0.0;
    }
  }
}

double BoundaryCurve::closest_parameter(cplx z) const {
  if (kind_ == CurveKind::UnitCircle && z != cplx{}) return wrap_angle(std::arg(z));
  auto d2 = [&](double t) { return std::norm(position(t) - z); };
  double arg = 0.0;
  sampled_min(d2, 0.0, kTwoPi, 512, &arg);
  return wrap_angle(arg);
}

double BoundaryCurve::distance_to(cplx z) const {
  if (kind_ == CurveKind::UnitCircle) return std::abs(1.0 - std::abs(z));
  return std::abs(position(closest_parameter(z)) - z);
}

std::optional<std::pair<double, double>> BoundaryCurve::horizontal_crossings(
    double y) const {
  if (!(y > y_min_ && y < y_max_)) return std::nullopt;
  if (kind_ != CurveKind::GeneralConvex) {
    const double s = y / (kind_ == CurveKind::Ellipse ? b_ : 1.0);
    const double r = std::asin(s);
    return std::make_pair(wrap_angle(r), wrap_angle(kPi - r));
  }
  // Im ζ increases from the lowest point to the highest one on the right
  // and decreases on the left; bisect each monotone branch.
  auto im = [this](double t) { return position(t).imag(); };
  auto neg_im = [this](double t) { return -position(t).imag(); };
  double t_low = 0.0, t_high = 0.0;
  sampled_min(im, 0.0, kTwoPi, 512, &t_low);
  sampled_min(neg_im, 0.0, kTwoPi, 512, &t_high);
  if (t_high < t_low) t_high += kTwoPi;
  auto bisect = [&](double lo, double hi, bool increasing) {
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool below = im(mid) < y;
      if (below == increasing)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double right = bisect(t_low, t_high, true);
  const double left = bisect(t_high, t_low + kTwoPi, false);
  return std::make_pair(wrap_angle(right), wrap_angle(left));
}

bool is_convex(const BoundaryCurve& curve, int samples) {
  double turning = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    const cplx d1 = curve.derivative(t);
    const double k = std::imag(std::conj(d1) * curve.second_derivative(t));
    if (k < -1e-8 * std::pow(std::abs(d1), 3)) return false;
    const cplx next = curve.derivative(kTwoPi * (i + 1) / samples);
    turning += std::arg(next / d1);
  }
  // A looped curve can bend one way throughout yet turn more than once.
  return std::abs(turning - kTwoPi) < 0.5;
}

bool ArcInterval::contains(double theta) const {
  double t = wrap_angle(theta);
  if (t < lo) t += kTwoPi;
  return t >= lo && t <= hi;
}

cplx Trapezoid::psi(int k, cplx w) const {
  return std::polar(1.0, -betas[k]) * (w - alpha);
}

double Trapezoid::side_distance(int k, cplx w) const {
  return std::imag(std::polar(1.0, -betas[k]) * (w - vertices[k]));
}

bool Trapezoid::contains(cplx w, double shrink) const {
  for (int k = 0; k < 4; ++k)
    if (!(side_distance(k, w) > shrink)) return false;
  return true;
}

Trapezoid make_trapezoid(const BoundaryCurve& domain,
                         const std::array<double, 4>& vertex_params,
                         cplx alpha) {
  const double tol = domain.tolerance();
  Trapezoid T;
  double prev = wrap_angle(vertex_params[0]);
  T.vertex_params[0] = prev;
  for (int k = 1; k < 4; ++k) {
    double p = wrap_angle(vertex_params[k]);
    while (p <= prev) p += kTwoPi;
    T.vertex_params[k] = p;
    prev = p;
  }
  if (T.vertex_params[3] >= T.vertex_params[0] + kTwoPi)
    throw InvalidArgument("vertex parameters are not in counterclockwise order");
  for (int k = 0; k < 4; ++k) T.vertices[k] = domain.position(T.vertex_params[k]);
  for (int k = 0; k < 4; ++k) {
    const cplx d = T.vertices[(k + 1) % 4] - T.vertices[k];
    if (std::abs(d) <= tol)
      throw DegenerateArc("vertices " + std::to_string(k) + " and " +
                          std::to_string((k + 1) % 4) + " coincide at " +
                          fmt(T.vertices[k]));
  }
  if (std::abs(T.vertices[0].imag() - T.vertices[1].imag()) > tol ||
      std::abs(T.vertices[2].imag() - T.vertices[3].imag()) > tol ||
      !(T.vertices[3].imag() > T.vertices[0].imag()))
    throw InvalidArgument("sides 0 and 2 must be horizontal, side 0 lowest");
  // The horizontal sides are exact lines y = const by construction.
  T.vertices[1].imag(T.vertices[0].imag());
  T.vertices[3].imag(T.vertices[2].imag());
  for (int k = 0; k < 4; ++k) {
    const cplx d = T.vertices[(k + 1) % 4] - T.vertices[k];
    T.betas[k] = wrap_angle(std::arg(d));
  }
  T.alpha = alpha;
  T.arcs = partition_boundary(domain, T);
  if (!T.contains(alpha, tol))
    throw NotInTrapezoid("reference point " + fmt(alpha) +
                         " is not strictly inside the trapezoid");
  T.margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) T.margin = std::min(T.margin, T.side_distance(k, alpha));
  return T;
}

std::array<ArcInterval, 4> partition_boundary(const BoundaryCurve& domain,
                                              const Trapezoid& T) {
  const double tol = domain.tolerance();
  std::array<ArcInterval, 4> arcs;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(domain.position(T.vertex_params[k]) - T.vertices[k]) > 1e-12 * domain.diameter() + tol)
      throw InvalidArgument("vertex " + std::to_string(k) + " is not on the boundary");
    const double lo = T.vertex_params[k];
    const double hi = k < 3 ? T.vertex_params[k + 1] : T.vertex_params[0] + kTwoPi;
    if (!(hi > lo) || std::abs(T.vertices[(k + 1) % 4] - T.vertices[k]) <= tol)
      throw DegenerateArc("arc " + std::to_string(k) + " has zero length");
    arcs[k] = {lo, hi};
  }
  // Each arc must lie on the far side of the line through its side.
  const int n = 64;
  for (int k = 0; k < 4; ++k) {
    for (int i = 1; i < n; ++i) {
      const double th = arcs[k].lo + arcs[k].width() * i / n;
      if (T.side_distance(k, domain.position(th)) > tol)
        throw InvalidArgument("arc " + std::to_string(k) +
                              " crosses the line of its side");
    }
  }
  return arcs;
}

double arc_separation(const Trapezoid& T, const BoundaryCurve& domain, cplx z,
                      int k) {
  const cplx rot = std::polar(1.0, -T.betas[k]);
  auto sep = [&](double th) { return std::imag(rot * (z - domain.position(th))); };
  return sampled_min(sep, T.arcs[k].lo, T.arcs[k].hi, 256);
}

double separation_margin(const Trapezoid& T, const BoundaryCurve& domain,
                         cplx z) {
  if (!T.contains(z, domain.tolerance()))
    throw NotInTrapezoid("point " + fmt(z) + " is not inside the trapezoid");
  double eps = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) eps = std::min(eps, arc_separation(T, domain, z, k));
  return eps;
}

Trapezoid inscribe_trapezoid(const BoundaryCurve& domain, cplx z0,
                             const InscribeOptions& opts) {
  const double tol = domain.tolerance();
  if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag()) || !domain.contains(z0))
    throw PointNotInterior("point " + fmt(z0) + " is not inside the domain");
  const double dist = domain.distance_to(z0);
  if (dist <= tol)
    throw PointNotInterior("point " + fmt(z0) + " is within tolerance of the boundary");
  const double delta = opts.half_height.value_or(0.5 * dist);
  if (!(delta > 0.0) || !(std::abs(opts.skew) < 1.0))
    throw InvalidArgument("half height must be positive and |skew| < 1");
  const double y_lo = z0.imag() - delta * (1.0 + opts.skew);
  const double y_hi = z0.imag() + delta * (1.0 - opts.skew);
  const auto lower = domain.horizontal_crossings(y_lo);
  const auto upper = domain.horizontal_crossings(y_hi);
  if (!lower || !upper)
    throw InvalidArgument("horizontal lines miss the domain; reduce half height");
  // Vertex order: lower-left, lower-right, upper-right, upper-left.
  const std::array<double, 4> params = {lower->second, lower->first,
                                        upper->first, upper->second};
  Trapezoid T = make_trapezoid(domain, params, z0);
  return T;
}

}  // namespace utm
