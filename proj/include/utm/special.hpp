#pragma once

#include <complex>

namespace utm {

using cplx = std::complex<double>;

// Modified Bessel functions K0, K1 for Re x > 0. Power series for |x| ≤ 4,
// otherwise the integral ∫_0^∞ e^{-x cosh u} cosh(νu) du.
cplx bessel_k0(cplx x);
cplx bessel_k1(cplx x);
cplx bessel_k0_series(cplx x);
cplx bessel_k1_series(cplx x);
cplx bessel_k0_integral(cplx x);
cplx bessel_k1_integral(cplx x);

// Arithmetic-geometric mean of positive reals.
double agm(double a, double b);
// Complete elliptic integral of the first kind, parameter m = k².
double elliptic_k(double m);

struct JacobiReal {
  double sn, cn, dn;
};
// sn, cn, dn(u | m) for real u and 0 ≤ m ≤ 1 by descending Landen.
JacobiReal jacobi_real(double u, double m);

struct JacobiComplex {
  cplx sn, cn, dn;
};
// Complex argument via the addition formulas with the complementary
// parameter 1 − m.
JacobiComplex jacobi_complex(cplx u, double m);

// Modulus k with nome q: k = θ2(q)² / θ3(q)².
double modulus_from_nome(double q);

}  // namespace utm
