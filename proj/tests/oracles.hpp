// Independent reference computations shared by the tests. Nothing here calls
// the library's quadrature or solvers.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Equispaced trapezoidal sum of g over [lo, hi] with n intervals (endpoints
// weighted 1/2).
inline cplx trapezoid(const std::function<cplx(double)>& g, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  cplx s = 0.5 * (g(lo) + g(hi));
  for (int i = 1; i < n; ++i) s += g(lo + i * h);
  return s * h;
}

// Composite Simpson rule, for non-periodic smooth integrands.
inline cplx simpson(const std::function<cplx(double)>& g, double lo, double hi, int n) {
  if (n % 2) ++n;
  const double h = (hi - lo) / n;
  cplx s = g(lo) + g(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
  return s * h / 3.0;
}

struct Polynomial {
  std::vector<cplx> c;
  cplx operator()(cplx z) const {
    cplx s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
    return s;
  }
};

inline Polynomial random_polynomial(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Polynomial p;
  const int d = deg(rng);
  for (int k = 0; k <= d; ++k) p.c.emplace_back(u(rng), u(rng));
  return p;
}

// Mixed-problem oracle on the unit disc: f(z) = Σ_{k≤K} c_k z^k fitted by
// dense least squares to Re f = cos mθ on (−π/2, π/2) and Im f = −sin mθ on
// (π/2, 3π/2).
struct TaylorOracle {
  std::vector<cplx> c;
  cplx operator()(cplx z) const {
    cplx s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
    return s;
  }
};

inline TaylorOracle taylor_collocation(int m, int K = 40, int samples = 4000) {
  Eigen::MatrixXd A(samples, 2 * (K + 1));
  Eigen::VectorXd b(samples);
  for (int i = 0; i < samples; ++i) {
    const double th = -pi / 2 + 2 * pi * (i + 0.5) / samples;
    const bool first = th < pi / 2;
    for (int k = 0; k <= K; ++k) {
      const cplx e = std::polar(1.0, k * th);
      // f = Σ (x_k + i y_k) e^{ikθ}
      A(i, 2 * k) = first ? e.real() : e.imag();
      A(i, 2 * k + 1) = first ? -e.imag() : e.real();
    }
    b(i) = first ? std::cos(m * th) : -std::sin(m * th);
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  TaylorOracle o;
  for (int k = 0; k <= K; ++k) o.c.emplace_back(x(2 * k), x(2 * k + 1));
  return o;
}

}  // namespace oracle
