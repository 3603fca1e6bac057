#include <doctest.h>

#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>

#include "utm/errors.hpp"
#include "utm/geometry.hpp"
#include "utm/special.hpp"

using namespace utm;

namespace {

// Power series for I0, I1 at complex argument.
cplx bessel_i(int nu, cplx x) {
  cplx term = nu == 0 ? cplx(1.0) : 0.5 * x, sum = term;
  const cplx q = 0.25 * x * x;
  for (int k = 1; k < 200; ++k) {
    term *= q / (double(k) * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// sn(u|m) from the theta series with nome q.
cplx sn_theta(cplx u, double m) {
  const double K = std::comp_ellint_1(std::sqrt(m));
  const double Kp = std::comp_ellint_1(std::sqrt(1 - m));
  const double q = std::exp(-kPi * Kp / K);
  const cplx z = kPi * u / (2 * K);
  cplx t1 = 0, t4 = 1;
  double t2 = 0, t3 = 1;
  for (int n = 0; n < 60; ++n) {
    const double sgn = n % 2 ? -1.0 : 1.0;
    t1 += 2 * sgn * std::pow(q, (n + 0.5) * (n + 0.5)) * std::sin((2.0 * n + 1) * z);
    t2 += 2 * std::pow(q, (n + 0.5) * (n + 0.5));
    if (n > 0) {
      t3 += 2 * std::pow(q, double(n) * n);
      t4 += 2 * sgn * std::pow(q, double(n) * n) * std::cos(2.0 * n * z);
    }
  }
  return t3 / t2 * t1 / t4;
}

}  // namespace

TEST_CASE("K0 and K1 on the real axis") {
  for (double x : {0.05, 0.5, 1.0, 2.0, 3.9, 4.1, 8.0, 20.0}) {
    CHECK(bessel_k0(x).real() == doctest::Approx(std::cyl_bessel_k(0.0, x)).epsilon(1e-13));
    CHECK(bessel_k1(x).real() == doctest::Approx(std::cyl_bessel_k(1.0, x)).epsilon(1e-13));
  }
  CHECK(bessel_k0(1.0).real() == doctest::Approx(0.42102).epsilon(1e-5));
}

TEST_CASE("K0 and K1 at complex argument") {
  for (cplx x : {cplx(1, 1), cplx(0.3, 2.5), cplx(2, -3), cplx(5, 5), cplx(0.8, 0.1), cplx(3, 2.9)}) {
    // Wronskian I0 K1 + I1 K0 = 1/x.
    const cplx w = bessel_i(0, x) * bessel_k1(x) + bessel_i(1, x) * bessel_k0(x);
    CHECK(std::abs(w * x - 1.0) < 1e-12);
    if (std::abs(x) <= 6) {
      CHECK(std::abs(bessel_k0_series(x) - bessel_k0_integral(x)) < 1e-12 * std::abs(bessel_k0_integral(x)));
      CHECK(std::abs(bessel_k1_series(x) - bessel_k1_integral(x)) < 1e-12 * std::abs(bessel_k1_integral(x)));
    }
  }
  CHECK_THROWS_AS(bessel_k0(cplx(-1, 0.5)), InvalidArgument);
  CHECK_THROWS_AS(bessel_k0(0.0), InvalidArgument);
}

TEST_CASE("complete elliptic integral and AGM") {
  CHECK(agm(1.0, std::sqrt(2.0)) == doctest::Approx(1.19814023473559220744).epsilon(1e-15));
  for (double m : {0.0, 0.1, 0.5, 0.9, 0.999})
    CHECK(elliptic_k(m) == doctest::Approx(std::comp_ellint_1(std::sqrt(m))).epsilon(1e-14));
  CHECK_THROWS_AS(elliptic_k(1.0), InvalidArgument);
}

TEST_CASE("Jacobi functions at real argument") {
  for (double m : {0.0, 0.2, 0.7, 0.99, 1.0}) {
    for (double u : {-3.1, -0.4, 0.0, 0.9, 2.2, 7.5}) {
      double cn, dn;
      const double k = std::sqrt(m);
      const double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
      const JacobiReal j = jacobi_real(u, m);
      CHECK(j.sn == doctest::Approx(sn).epsilon(1e-12).scale(1.0));
      CHECK(j.cn == doctest::Approx(cn).epsilon(1e-12).scale(1.0));
      CHECK(j.dn == doctest::Approx(dn).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("Jacobi sn at complex argument") {
  for (double m : {0.1, 0.5, 0.93}) {
    for (cplx u : {cplx(0.3, 0.2), cplx(1.1, -0.7), cplx(-0.4, 1.3), cplx(2.0, 0.05)}) {
      const cplx ref = sn_theta(u, m);
      CHECK(std::abs(jacobi_complex(u, m).sn - ref) < 1e-12 * (1 + std::abs(ref)));
    }
    const JacobiComplex j = jacobi_complex(cplx(0.7, 0.4), m);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-13);
    CHECK(std::abs(m * j.sn * j.sn + j.dn * j.dn - 1.0) < 1e-13);
  }
}

TEST_CASE("modulus from the nome") {
  for (double m : {0.01, 0.3, 0.8, 0.99}) {
    const double q = std::exp(-kPi * std::comp_ellint_1(std::sqrt(1 - m)) / std::comp_ellint_1(std::sqrt(m)));
    CHECK(modulus_from_nome(q) == doctest::Approx(std::sqrt(m)).epsilon(1e-13));
  }
  CHECK(modulus_from_nome(0.0) == 0.0);
  CHECK_THROWS_AS(modulus_from_nome(1.0), InvalidArgument);
}
