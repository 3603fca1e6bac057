#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "utm/errors.hpp"
#include "utm/laplace_transform.hpp"

using namespace utm;

namespace {
constexpr cplx I{0.0, 1.0};

SpectralEvaluator disc_eval(std::function<cplx(cplx)> g, cplx z0 = 0.0) {
  const auto dom = BoundaryCurve::unit_circle();
  return make_evaluator(dom, inscribe_trapezoid(dom, z0), std::move(g));
}
}  // namespace

TEST_CASE("spectral functions of the constant trace") {
  const auto ev = disc_eval([](cplx) { return cplx(1.0); });
  for (int k = 0; k < 4; ++k) {
    const auto& arc = ev.trapezoid.arcs[k];
    const cplx expect = ev.domain.position(arc.hi) - ev.domain.position(arc.lo);
    CHECK(std::abs(spectral_function(ev, 2, k, 0.0) - expect) < 1e-14);
  }
  // Arc 1 runs from −π/6 to π/6 and side 0 has β = 0.
  const cplx a = std::polar(1.0, kPi / 6), b = std::polar(1.0, -kPi / 6);
  const cplx expect = I * (std::exp(-I * a) - std::exp(-I * b));
  CHECK(std::abs(spectral_function(ev, 0, 1, 1.0) - expect) < 1e-14);
  CHECK_THROWS_AS(spectral_function(ev, 4, 0, 1.0), InvalidArgument);
}

TEST_CASE("global relations") {
  const auto cube = disc_eval([](cplx z) { return z * z * z; });
  CHECK(std::abs(global_relation_residual(cube, 0, cplx(2, 1))) < 1e-10);
  const auto conj = disc_eval([](cplx z) { return std::conj(z); });
  CHECK(std::abs(global_relation_residual(conj, 0, 0.0) - cplx(0, kTwoPi)) < 1e-13);
  const auto one = disc_eval([](cplx) { return cplx(1.0); });
  for (int j = 0; j < 4; ++j) CHECK(std::abs(global_relation_residual(one, j, cplx(-3, 4))) < 1e-11);
}

TEST_CASE("spectral functions are entire in t") {
  const auto ev = disc_eval([](cplx z) { return std::exp(z) / (z - 3.0); }, cplx(0.2, -0.1));
  const double h = 1e-5;
  for (cplx t : {cplx(0.5, 0.2), cplx(-2, 1.5), cplx(3, -4)}) {
    for (int k = 0; k < 4; ++k) {
      const cplx dx = (spectral_function(ev, 1, k, t + h) - spectral_function(ev, 1, k, t - h)) / (2 * h);
      const cplx dy = (spectral_function(ev, 1, k, t + I * h) - spectral_function(ev, 1, k, t - I * h)) / (2 * h);
      // Cauchy-Riemann: ∂/∂y = i ∂/∂x.
      CHECK(std::abs(dy - I * dx) < 1e-6 * (1 + std::abs(dx)));
    }
  }
}

TEST_CASE("reconstruction of simple traces") {
  CHECK(std::abs(reconstruct(disc_eval([](cplx) { return cplx(1.0); }), 0.0) - 1.0) < 1e-8);
  const cplx z(0.2, 0.1);
  auto cube = [](cplx w) { return w * w * w; };
  // Expanded by hand: (0.2 + 0.1i)³ = 0.002 + 0.011i.
  const cplx expect(0.002, 0.011);
  REQUIRE(std::abs(cube(z) - expect) < 1e-15);
  const auto dom = BoundaryCurve::unit_circle();
  const cplx v1 = reconstruct(make_evaluator(dom, inscribe_trapezoid(dom, z), cube), z);
  InscribeOptions o;
  o.half_height = 0.3;
  o.skew = 0.4;
  const cplx v2 = reconstruct(make_evaluator(dom, inscribe_trapezoid(dom, z, o), cube), z);
  CHECK(std::abs(v1 - expect) < 1e-8);
  CHECK(std::abs(v1 - v2) < 1e-8);
}

TEST_CASE("reconstruction is linear") {
  const auto dom = BoundaryCurve::ellipse(2, 1);
  const cplx z(0.5, -0.3);
  const Trapezoid T = inscribe_trapezoid(dom, z);
  auto f = [](cplx w) { return std::exp(I * w); };
  auto g = [](cplx w) { return 1.0 / (w - cplx(0, 3)); };
  const cplx a(2, -1), b(0.5, 0.5);
  const cplx lhs = reconstruct(make_evaluator(dom, T, [&](cplx w) { return a * f(w) + b * g(w); }), z);
  const cplx rhs = a * reconstruct(make_evaluator(dom, T, f), z) + b * reconstruct(make_evaluator(dom, T, g), z);
  CHECK(std::abs(lhs - rhs) < 1e-9);
  CHECK(std::abs(lhs - (a * f(z) + b * g(z))) < 1e-8);
}

TEST_CASE("random polynomials on the ellipse") {
  std::mt19937 rng(11);
  const auto dom = BoundaryCurve::ellipse(2, 1);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int rep = 0; rep < 4; ++rep) {
    const auto p = oracle::random_polynomial(rng, 5);
    const cplx z(2 * u(rng), u(rng) * std::sqrt(1 - 0.0));
    if (!(std::norm(cplx(z.real() / 2, z.imag())) < 0.7)) continue;
    const auto ev = make_evaluator(dom, inscribe_trapezoid(dom, z), p);
    CHECK(std::abs(reconstruct(ev, z) - p(z)) < 1e-7);
  }
}

TEST_CASE("reconstruction outside the trapezoid is refused") {
  const auto ev = disc_eval([](cplx) { return cplx(1.0); });
  CHECK_THROWS_AS(reconstruct(ev, cplx(0.0, 0.7)), NotInTrapezoid);
}

TEST_CASE("general convex boundary") {
  // Superellipse-like convex curve given only by its parametrization.
  auto pos = [](double t) { return cplx(1.3 * std::cos(t) + 0.1 * std::cos(2 * t), std::sin(t)); };
  auto der = [](double t) { return cplx(-1.3 * std::sin(t) - 0.2 * std::sin(2 * t), std::cos(t)); };
  const auto dom = BoundaryCurve::general_convex(pos, der);
  const cplx z(0.1, 0.2);
  auto f = [](cplx w) { return std::sin(w) + w * w; };
  const auto ev = make_evaluator(dom, inscribe_trapezoid(dom, z), f);
  CHECK(std::abs(reconstruct(ev, z) - f(z)) < 1e-8);
}
