#include "utm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>

#include "utm/errors.hpp"

namespace utm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

struct Panel {
  double lo, hi;
  cplx whole;   // single-panel estimate
  cplx value;   // two-half estimate
  cplx left, right;
  double abs_value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

struct PanelRule {
  const RealMap& g;
  const GaussRule& rule;

  // Returns (∫ g, ∫ |g|) over [lo, hi].
  std::pair<cplx, double> apply(double lo, double hi) const {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    cplx s{};
    double a = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const cplx v = g(c + h * rule.nodes[i]);
      s += rule.weights[i] * v;
      a += rule.weights[i] * std::abs(v);
    }
    return {s * h, a * h};
  }

  Panel make(double lo, double hi, cplx whole) const {
    const double mid = 0.5 * (lo + hi);
    const auto [l, la] = apply(lo, mid);
    const auto [r, ra] = apply(mid, hi);
    Panel p{lo, hi, whole, l + r, l, r, la + ra, 0.0};
    p.error = std::abs(p.whole - p.value);
    if (!std::isfinite(p.error)) p.error = std::numeric_limits<double>::infinity();
    return p;
  }

  Panel make(double lo, double hi) const { return make(lo, hi, apply(lo, hi).first); }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw InvalidArgument("quadrature tolerances must be positive");
  if (panel_order < 4) throw InvalidArgument("panel_order must be at least 4");
  if (max_panels < 1) throw InvalidArgument("max_panels must be at least 1");
}

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

QuadResult integrate_arc(const RealMap& g, double lo, double hi,
                         std::span<const double> breakpoints,
                         const QuadratureConfig& cfg, const ArcOptions& opts) {
  cfg.validate();
  if (!(lo < hi)) throw InvalidArgument("integrate_arc needs lo < hi");
  const PanelRule rule{g, gauss_legendre(cfg.panel_order)};

  std::vector<double> cuts{lo};
  std::vector<double> inner;
  for (double b : breakpoints)
    if (b > lo && b < hi) inner.push_back(b);
  std::sort(inner.begin(), inner.end());
  cuts.insert(cuts.end(), inner.begin(), inner.end());
  cuts.push_back(hi);

  std::priority_queue<Panel> queue;
  cplx total{};
  double total_err = 0.0, total_abs = 0.0;
  int count = 0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    int n = std::max(1, opts.initial_panels);
    if (opts.max_panel_width > 0.0)
      n = std::max(n, static_cast<int>(std::ceil((b - a) / opts.max_panel_width)));
    for (int i = 0; i < n; ++i) {
      const double pa = a + (b - a) * i / n;
      const double pb = i + 1 == n ? b : a + (b - a) * (i + 1) / n;
      Panel p = rule.make(pa, pb);
      total += p.value;
      total_err += p.error;
      total_abs += p.abs_value;
      queue.push(p);
      ++count;
    }
  }

  auto tolerance = [&] {
    return std::max({cfg.abs_tol, cfg.rel_tol * std::abs(total),
                     50.0 * kEps * total_abs});
  };
  while (total_err > tolerance()) {
    Panel p = queue.top();
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi)) break;  // cannot split further
    if (count + 1 > cfg.max_panels)
      throw NoConvergence("integrate_arc exhausted " + std::to_string(cfg.max_panels) +
                          " panels; error estimate " + num(total_err));
    queue.pop();
    Panel left = rule.make(p.lo, mid, p.left);
    Panel right = rule.make(mid, p.hi, p.right);
    total += left.value + right.value - p.value;
    total_abs += left.abs_value + right.abs_value - p.abs_value;
    total_err += left.error + right.error - p.error;
    queue.push(left);
    queue.push(right);
    ++count;
  }
  // Recompute the sums to avoid drift from incremental updates.
  cplx sum{};
  double err = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
    throw NoConvergence("integrate_arc produced a non-finite value");
  return {sum, err, count};
}

QuadResult integrate_periodic(const RealMap& g, const QuadratureConfig& cfg,
                              int initial_points) {
  cfg.validate();
  int n = std::max(4, initial_points);
  cplx sum{};
  double abs_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const cplx v = g(2.0 * kPi * i / n);
    sum += v;
    abs_sum += std::abs(v);
  }
  cplx prev = sum * (2.0 * kPi / n);
  while (true) {
    const int m = 2 * n;
    for (int i = 1; i < m; i += 2) {
      const cplx v = g(2.0 * kPi * i / m);
      sum += v;
      abs_sum += std::abs(v);
    }
    n = m;
    const cplx cur = sum * (2.0 * kPi / n);
    const double err = std::abs(cur - prev);
    const double tol = std::max({cfg.abs_tol, cfg.rel_tol * std::abs(cur),
                                 50.0 * kEps * abs_sum * (2.0 * kPi / n)});
    if (err <= tol) return {cur, err, n};
    if (n > cfg.max_panels * cfg.panel_order)
      throw NoConvergence("periodic trapezoidal rule did not converge with " +
                          std::to_string(n) + " points");
    prev = cur;
  }
}

QuadResult integrate_halfline_damped(const RealMap& h, double decay,
                                     const QuadratureConfig& cfg,
                                     const HalflineOptions& opts) {
  cfg.validate();
  if (!(decay > 0.0) || !std::isfinite(decay))
    throw InvalidArgument("decay rate must be positive");
  double C = 0.0;
  if (opts.envelope) {
    C = *opts.envelope;
  } else {
    for (int i = 0; i <= 8; ++i) {
      const double s = i / 8.0;
      const double v = std::abs(h(s)) * std::exp(decay * s);
      if (std::isfinite(v)) C = std::max(C, v);
    }
  }
  if (!(C > 0.0)) return {cplx{}, 0.0, 0};
  const double floor = cfg.abs_tol * std::min(decay, 1.0);
  const double T = std::max(1.0, std::log(C / floor) / decay);
  // Envelope check at the truncation point.
  for (double s : {T, 0.95 * T}) {
    const double bound = 10.0 * C * std::exp(-decay * s) + cfg.abs_tol;
    const double v = std::abs(h(s));
    if (v > bound)
      throw NonDecayingIntegrand("|h(" + num(s) + ")| = " + num(v) +
                                 " exceeds 10x the envelope " + num(bound));
  }
  ArcOptions ao;
  std::vector<double> cuts;
  if (opts.frequency_at) {
    // Ten radians of phase per initial panel.
    for (double t = 0.0;;) {
      const double w = std::max(opts.frequency_at(t), 1e-3);
      t += std::min(10.0 / w, T / 4.0);
      if (t >= T) break;
      cuts.push_back(t);
    }
  } else {
    ao.max_panel_width =
        opts.frequency > 0.0 ? 10.0 / opts.frequency : T / 8.0;
    ao.max_panel_width = std::min(ao.max_panel_width, T / 4.0);
  }
  QuadratureConfig inner = cfg;
  inner.abs_tol = 0.5 * cfg.abs_tol;
  QuadResult r = integrate_arc(h, 0.0, T, cuts, inner, ao);
  r.error += C * std::exp(-decay * T) / decay;
  return r;
}

void RayContour::validate() const {
  if (pieces.empty()) throw InvalidArgument("contour has no pieces");
  if (pieces.front().start != cplx{})
    throw InvalidArgument("contour must start at the origin");
  if (pieces.back().kind != ContourPiece::Kind::Ray)
    throw InvalidArgument("contour must end with a ray to infinity");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].kind == ContourPiece::Kind::Ray)
      throw InvalidArgument("only the last piece may be a ray");
    if (std::abs(pieces[i].end - pieces[i + 1].start) > 1e-12 * (1.0 + std::abs(pieces[i].end)))
      throw InvalidArgument("contour pieces are not connected");
  }
  for (const auto& p : pieces) {
    if (p.kind == ContourPiece::Kind::Arc) {
      const double r0 = std::abs(p.start), r1 = std::abs(p.end);
      if (std::abs(r0 - r1) > 1e-12 * r0)
        throw InvalidArgument("arc endpoints must share a radius");
      const cplx e = std::polar(r0, std::arg(p.start) + p.sweep);
      if (std::abs(e - p.end) > 1e-10 * r0)
        throw InvalidArgument("arc sweep does not reach its end point");
    }
  }
  if (!(decay_estimate > 0.0)) throw InvalidArgument("decay estimate must be positive");
}

double RayContour::angle_at_origin() const {
  const auto& p = pieces.front();
  if (p.kind == ContourPiece::Kind::Ray) return p.angle;
  return std::arg(p.end);
}

double RayContour::angle_at_infinity() const { return pieces.back().angle; }

RayContour make_ray(double angle, double decay_estimate) {
  RayContour c;
  ContourPiece p;
  p.kind = ContourPiece::Kind::Ray;
  p.start = 0.0;
  p.angle = angle;
  c.pieces.push_back(p);
  c.decay_estimate = decay_estimate;
  return c;
}

namespace {

// Samples |h| at geometrically spaced points approaching an end and checks
// that the last decade is decreasing.
void check_end_decay(const std::function<double(double)>& mag,
                     const std::vector<double>& params, const char* which) {
  std::vector<double> vals;
  for (double s : params) vals.push_back(mag(s));
  const double last = vals.back(), before = vals[vals.size() - 2];
  const double peak = *std::max_element(vals.begin(), vals.end());
  if (!std::isfinite(last) || (last > before && last > 1e-14 * peak && last > 1e-300)) {
    std::ostringstream os;
    os.precision(4);
    os << which << " end: sampled |h| =";
    for (double v : vals) os << " " << v;
    throw EndpointNotDecaying(os.str());
  }
}

}  // namespace

QuadResult integrate_ray_contour(const ComplexMap& h, const RayContour& contour,
                                 const QuadratureConfig& cfg) {
  contour.validate();
  cfg.validate();
  QuadResult total{cplx{}, 0.0, 0};
  const double share = 1.0 / contour.pieces.size();
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tol = cfg.abs_tol * share;

  for (const auto& p : contour.pieces) {
    QuadResult r{};
    if (p.kind == ContourPiece::Kind::Ray) {
      const cplx dir = std::polar(1.0, p.angle);
      auto g = [&](double s) { return h(p.start + s * dir) * dir; };
      const double scale = std::max(1.0, std::abs(p.start));
      std::vector<double> probes;
      for (int k = 0; k <= 4; ++k) probes.push_back(scale * std::pow(10.0, k) / contour.decay_estimate);
      check_end_decay([&](double s) { return std::abs(g(s)); }, probes, "infinity");
      if (p.start == cplx{})
        check_end_decay([&](double s) { return std::abs(g(s)); },
                        {1e-4, 1e-5, 1e-6, 1e-7, 1e-8}, "origin");
      r = integrate_halfline_damped(g, contour.decay_estimate, piece_cfg);
    } else if (p.kind == ContourPiece::Kind::Line && p.start == cplx{}) {
      const double R = std::abs(p.end);
      const cplx dir = p.end / R;
      auto g = [&](double s) { return h(s * dir) * dir; };
      std::vector<double> probes;
      for (int k = 4; k <= 8; ++k) probes.push_back(R * std::pow(10.0, -k));
      check_end_decay([&](double s) { return std::abs(g(s)); }, probes, "origin");
      // Geometric grading toward the origin.
      const double r_min = 1e-8 * R;
      std::vector<double> cuts;
      for (double s = R; s > r_min; s *= 0.5) cuts.push_back(s);
      cuts.push_back(r_min);
      std::reverse(cuts.begin(), cuts.end());
      r = integrate_arc(g, cuts.front(), cuts.back(),
                        std::span<const double>(cuts.data() + 1, cuts.size() - 2),
                        piece_cfg);
    } else if (p.kind == ContourPiece::Kind::Line) {
      const cplx d = p.end - p.start;
      auto g = [&](double s) { return h(p.start + s * d) * d; };
      r = integrate_arc(g, 0.0, 1.0, {}, piece_cfg, ArcOptions{0.0, 4});
    } else {
      const double R = std::abs(p.start), a0 = std::arg(p.start);
      auto g = [&](double s) {
        const cplx t = std::polar(R, a0 + s * p.sweep);
        return h(t) * cplx(0.0, 1.0) * t * p.sweep;
      };
      r = integrate_arc(g, 0.0, 1.0, {}, piece_cfg, ArcOptions{0.0, 4});
    }
    total.value += r.value;
    total.error += r.error;
    total.panels += r.panels;
  }
  return total;
}

}  // namespace utm
