#include "utm/special.hpp"

#include <cmath>
#include <limits>

#include "utm/errors.hpp"
#include "utm/quadrature.hpp"

namespace utm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kSeriesRadius = 4.0;

void require_right_half(cplx x) {
  if (!(x.real() > 0.0) || !std::isfinite(std::abs(x)))
    throw InvalidArgument("Bessel K needs Re x > 0");
}

cplx k_integral(cplx x, int order) {
  require_right_half(x);
  // e^{-Re x cosh u} < 1e-17 e^{-Re x} beyond U.
  const double U = std::acosh(1.0 + 40.0 / x.real());
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 1e-300;
  const cplx scale = std::exp(-x);
  auto g = [&](double u) {
    // Factor e^{-x} keeps the integrand O(1) for large |x|.
    const cplx v = std::exp(-x * (std::cosh(u) - 1.0));
    return order == 0 ? v : v * std::cosh(u);
  };
  return scale * integrate_arc(g, 0.0, U, {}, cfg, ArcOptions{0.0, 8}).value;
}

}  // namespace

cplx bessel_k0_series(cplx x) {
  if (x == cplx{}) throw InvalidArgument("K0 is singular at 0");
  const cplx y = 0.25 * x * x;
  cplx term = 1.0, i0 = 1.0, tail = 0.0;
  double harmonic = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= y / (double(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail += harmonic * term;
    if (std::abs(term) * (1.0 + harmonic) < 1e-18 * std::abs(i0)) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0 + tail;
}

cplx bessel_k1_series(cplx x) {
  if (x == cplx{}) throw InvalidArgument("K1 is singular at 0");
  const cplx y = 0.25 * x * x;
  // term_k = y^k / (k!(k+1)!), ψ(k+1) + ψ(k+2) = 2H_k + 1/(k+1) − 2γ.
  cplx term = 1.0, i1 = 1.0;
  double harmonic = 0.0;
  cplx sum = (1.0 - 2.0 * kEulerGamma) * term;
  for (int k = 1; k < 200; ++k) {
    term *= y / (double(k) * (k + 1));
    harmonic += 1.0 / k;
    i1 += term;
    sum += (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * kEulerGamma) * term;
    if (std::abs(term) * (2.0 * harmonic + 2.0) < 1e-18 * std::abs(i1)) break;
  }
  i1 *= 0.5 * x;
  return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * sum;
}

cplx bessel_k0_integral(cplx x) { return k_integral(x, 0); }
cplx bessel_k1_integral(cplx x) { return k_integral(x, 1); }

cplx bessel_k0(cplx x) {
  require_right_half(x);
  return std::abs(x) <= kSeriesRadius ? bessel_k0_series(x) : bessel_k0_integral(x);
}

cplx bessel_k1(cplx x) {
  require_right_half(x);
  return std::abs(x) <= kSeriesRadius ? bessel_k1_series(x) : bessel_k1_integral(x);
}

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("agm needs positive arguments");
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

double elliptic_k(double m) {
  if (!(m >= 0.0 && m < 1.0)) throw InvalidArgument("elliptic_k needs 0 ≤ m < 1");
  return kPi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

JacobiReal jacobi_real(double u, double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw InvalidArgument("Jacobi parameter must lie in [0, 1]");
  double mc = 1.0 - m;
  if (mc == 0.0) {
    const double c = 1.0 / std::cosh(u);
    return {std::tanh(u), c, c};
  }
  // Descending Landen: a_{n+1} = (a_n + b_n)/2, b_{n+1} = √(a_n b_n).
  double em[16], en[16];
  double a = 1.0, c = 1.0, dn = 1.0;
  int l = 0;
  for (int i = 0; i < 16; ++i) {
    l = i;
    em[i] = a;
    mc = std::sqrt(mc);
    en[i] = mc;
    c = 0.5 * (a + mc);
    if (std::abs(a - mc) <= 1e-14 * a) break;
    mc *= a;
    a = c;
  }
  u *= c;
  double sn = std::sin(u), cn = std::cos(u);
  if (sn != 0.0) {
    a = cn / sn;
    c *= a;
    for (int i = l; i >= 0; --i) {
      const double b = em[i];
      a *= c;
      c *= dn;
      dn = (en[i] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn >= 0.0 ? a : -a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

JacobiComplex jacobi_complex(cplx u, double m) {
  const JacobiReal r = jacobi_real(u.real(), m);
  const JacobiReal q = jacobi_real(u.imag(), 1.0 - m);
  const double s = r.sn, c = r.cn, d = r.dn;
  const double s1 = q.sn, c1 = q.cn, d1 = q.dn;
  const double den = c1 * c1 + m * s * s * s1 * s1;
  return {cplx(s * d1, c * d * s1 * c1) / den,
          cplx(c * c1, -s * d * s1 * d1) / den,
          cplx(d * c1 * d1, -m * s * c * s1) / den};
}

double modulus_from_nome(double q) {
  if (!(q >= 0.0 && q < 1.0)) throw InvalidArgument("nome must lie in [0, 1)");
  if (q == 0.0) return 0.0;
  double t2 = 0.0, t3 = 1.0;
  for (int n = 0; n < 200; ++n) {
    const double a = std::pow(q, double(n) * (n + 1));
    t2 += a;
    if (n > 0) t3 += 2.0 * std::pow(q, double(n) * n);
    if (a < 1e-18 * t2) break;
  }
  t2 *= 2.0 * std::pow(q, 0.25);
  return (t2 * t2) / (t3 * t3);
}

}  // namespace utm
