#include "utm/laplace_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "utm/errors.hpp"

namespace utm {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_index(int j, const char* what) {
  if (j < 0 || j > 3) throw InvalidArgument(std::string(what) + " index must be in 0..3");
}

}  // namespace

SpectralEvaluator make_evaluator(const BoundaryCurve& domain,
                                 const Trapezoid& trapezoid,
                                 std::function<cplx(cplx)> g) {
  auto pos = domain;
  return {[g = std::move(g), pos](double th) { return g(pos.position(th)); },
          domain, trapezoid};
}

std::vector<double> breakpoints_in(const BoundaryCurve& domain, double lo,
                                   double hi) {
  std::vector<double> out;
  for (double b : domain.breakpoints()) {
    double t = b + kTwoPi * std::floor((lo - b) / kTwoPi);
    for (; t < hi; t += kTwoPi)
      if (t > lo) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

cplx spectral_function(const SpectralEvaluator& ev, int j, int k, cplx t,
                       const QuadratureConfig& cfg) {
  check_index(j, "side");
  check_index(k, "arc");
  const ArcInterval arc = ev.trapezoid.arcs[k];
  const cplx rot = std::polar(1.0, -ev.trapezoid.betas[j]);
  const cplx w = -kI * t * rot;
  auto g = [&](double th) {
    return ev.boundary_values(th) * std::exp(w * ev.domain.position(th)) *
           ev.domain.derivative(th);
  };
  // Quarter-wavelength panels for the fastest phase.
  ArcOptions ao;
  const double rate = std::abs(t) * ev.domain.max_speed();
  if (rate > 0.0) ao.max_panel_width = kTwoPi / (4.0 * rate);
  const auto bps = breakpoints_in(ev.domain, arc.lo, arc.hi);
  return integrate_arc(g, arc.lo, arc.hi, bps, cfg, ao).value;
}

cplx global_relation_residual(const SpectralEvaluator& ev, int j, cplx t,
                              const QuadratureConfig& cfg) {
  cplx s{};
  for (int k = 0; k < 4; ++k) s += spectral_function(ev, j, k, t, cfg);
  return s;
}

namespace {

// Composite Gauss–Legendre nodes on an arc, with panels no wider than
// `max_width` and never straddling a breakpoint.
struct ArcNodes {
  std::vector<double> theta, weight;
};

ArcNodes arc_nodes(double lo, double hi, const std::vector<double>& bps,
                   double max_width, int order) {
  const GaussRule& rule = gauss_legendre(order);
  ArcNodes out;
  std::vector<double> cuts{lo};
  cuts.insert(cuts.end(), bps.begin(), bps.end());
  cuts.push_back(hi);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    const int n = std::max(2, static_cast<int>(std::ceil((b - a) / max_width)));
    for (int p = 0; p < n; ++p) {
      const double pa = a + (b - a) * p / n, pb = a + (b - a) * (p + 1) / n;
      const double c = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
      for (int q = 0; q < order; ++q) {
        out.theta.push_back(c + h * rule.nodes[q]);
        out.weight.push_back(h * rule.weights[q]);
      }
    }
  }
  return out;
}

}  // namespace

cplx reconstruct(const SpectralEvaluator& ev, cplx z,
                 const ReconstructOptions& opts) {
  const Trapezoid& T = ev.trapezoid;
  const BoundaryCurve& dom = ev.domain;
  if (!T.contains(z, dom.tolerance()))
    throw NotInTrapezoid("reconstruction point is not inside the trapezoid");

  cplx total{};
  for (int j = 0; j < 4; ++j) {
    const ArcInterval arc = T.arcs[j];
    const auto bps = breakpoints_in(dom, arc.lo, arc.hi);
    const double eps = arc_separation(T, dom, z, j);
    if (!(eps > 0.0)) throw NotInTrapezoid("zero separation on arc " + std::to_string(j));
    const cplx rot = std::polar(1.0, -T.betas[j]);
    const double abs_tol = 0.25 * opts.abs_tol;

    // Coarse pass for the envelope |h_j(t)| ≤ (1/2π) ∫|f||dζ| e^{-εt}.
    const ArcNodes coarse = arc_nodes(arc.lo, arc.hi, bps, arc.width() / 8.0, 16);
    double l1 = 0.0;
    for (std::size_t i = 0; i < coarse.theta.size(); ++i)
      l1 += coarse.weight[i] *
            std::abs(ev.boundary_values(coarse.theta[i]) * dom.derivative(coarse.theta[i]));
    const double C = 1.05 * l1 / kTwoPi;
    if (!(C > 0.0)) continue;
    const double T_max = std::log(C / (abs_tol * std::min(eps, 1.0))) / eps;

    // Nodes for e^{itw(θ)}: the phase moves at most t·|ζ′| + bandwidth per
    // unit θ, and ten radians per 16-point panel keeps the rule at full
    // precision. Level ℓ serves t ≤ T·2^{ℓ−L}, so small t uses few nodes.
    struct Term {
      double damp, freq;
      cplx coef;
    };
    struct Level {
      double t_hi;
      std::vector<Term> terms;
      std::vector<double> damp;      // sorted copy for lookups
      std::vector<double> max_rate;  // prefix max of |w|
    };
    const int L = std::max(0, static_cast<int>(std::floor(std::log2(T_max * dom.max_speed() / 8.0))));
    std::vector<Level> levels(L + 1);
    double coef_sum = 0.0;
    for (int l = 0; l <= L; ++l) {
      Level& lev = levels[l];
      lev.t_hi = T_max * std::ldexp(1.0, l - L);
      const double rate = lev.t_hi * dom.max_speed() + opts.trace_bandwidth;
      const ArcNodes nodes = arc_nodes(arc.lo, arc.hi, bps, 10.0 / rate, 16);
      for (std::size_t i = 0; i < nodes.theta.size(); ++i) {
        const double th = nodes.theta[i];
        const cplx w = rot * (z - dom.position(th));
        const cplx c = nodes.weight[i] * ev.boundary_values(th) * dom.derivative(th) * rot / kTwoPi;
        if (c != cplx{}) lev.terms.push_back({w.imag(), w.real(), c});
      }
      std::sort(lev.terms.begin(), lev.terms.end(),
                [](const Term& a, const Term& b) { return a.damp < b.damp; });
      double m = 0.0, sum = 0.0;
      for (const Term& term : lev.terms) {
        lev.damp.push_back(term.damp);
        m = std::max(m, std::hypot(term.damp, term.freq));
        lev.max_rate.push_back(m);
        sum += std::abs(term.coef);
      }
      coef_sum = std::max(coef_sum, sum);
    }
    // Terms with t·Im w beyond this cannot move the result above the
    // per-node share of the tolerance.
    const double cutoff = std::log(1e3 * coef_sum * std::max(T_max, 1.0) / abs_tol);
    auto level_at = [&](double t) -> const Level& {
      for (const Level& lev : levels)
        if (t <= lev.t_hi) return lev;
      return levels.back();
    };

    // ρ_jj(t) e^{-iβ} e^{i t e^{-iβ} z} with the two exponentials combined so
    // the integrand never exceeds its damped size.
    auto h = [&](double t) {
      cplx s{};
      for (const Term& term : level_at(t).terms) {
        const double decay = t * term.damp;
        if (decay > cutoff) break;
        const double mag = std::exp(-decay);
        const double ph = t * term.freq;
        s += term.coef * cplx(mag * std::cos(ph), mag * std::sin(ph));
      }
      return s;
    };
    QuadratureConfig outer;
    outer.abs_tol = abs_tol;
    outer.rel_tol = opts.rel_tol;
    HalflineOptions ho;
    ho.envelope = C;
    ho.frequency_at = [&](double t) {
      const Level& lev = level_at(t);
      if (lev.terms.empty()) return 1.0;
      const double lim = t > 0.0 ? cutoff / t : std::numeric_limits<double>::infinity();
      auto it = std::upper_bound(lev.damp.begin(), lev.damp.end(), lim);
      const std::size_t n = std::max<std::size_t>(1, it - lev.damp.begin());
      return lev.max_rate[n - 1];
    };
    total += integrate_halfline_damped(h, eps, outer, ho).value;
  }
  return total;
}

}  // namespace utm
