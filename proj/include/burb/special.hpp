#ifndef BURB_SPECIAL_HPP
#define BURB_SPECIAL_HPP

#include <complex>

namespace burb {

using cdouble = std::complex<double>;

// Principal log-gamma on the right half-plane (Re z > 0), continuous in Im z.
// Stirling series after shifting |z| above the asymptotic radius.
cdouble log_gamma(cdouble z);

// Digamma for real x > 0.
double digamma(double x);

// Cancellation-free differences, for ratios like Gamma(x)/Gamma(y) with
// x - y = O(1): the naive subtraction of two large log-gammas loses ~|x log x|
// * eps absolute accuracy.
cdouble log_gamma_diff(cdouble x, cdouble y);  // log Gamma(x) - log Gamma(y)
double digamma_diff(double x, double y);       // psi(x) - psi(y)

// log[Gamma(alpha z + a)/Gamma(alpha z + b)] with the affine arguments formed
// in compensated arithmetic: the naive fl(alpha u + a) rounding costs
// |u| eps/2 * psi(u) absolute accuracy, which wrecks long product sums.
cdouble log_gamma_ratio_affine(double alpha, cdouble z, double a, double b);

// Rising factorial z(z+1)...(z+n-1); the degree-n polynomial form of
// Gamma(z+n)/Gamma(z). n=0 gives 1.
cdouble rising_factorial(cdouble z, int n);

} // namespace burb

#endif
