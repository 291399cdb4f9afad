#pragma once

#include "cqs/types.hpp"

namespace cqs
{

/// Complex Gamma function (Lanczos, g = 7) with reflection for Re z < 1/2.
/// Throws DomainError at the poles z = 0, -1, -2, ...
cplx gamma_complex(cplx z);

/// log Gamma(z). The imaginary part is not reduced to the principal branch;
/// exp(log_gamma(z)) == gamma_complex(z).
cplx log_gamma(cplx z);

/// Rising factorial (z)_n.
cplx pochhammer(cplx z, int n);

/// Gauss hypergeometric function 2F1(a, b; c; z), principal branch (cut z in [1, inf)).
///
/// Terminating series when a or b is a non-positive integer. Otherwise the
/// direct series is used for |z| < 0.7, the Pfaff transformation
/// z -> z/(z-1) when that image lies inside the same disk, and in the
/// remaining region the hypergeometric ODE is integrated by Taylor
/// re-expansion along the ray from 0.5 z/|z| to z.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx z);

/// Plain power series for 2F1 (|z| < 1). Exposed for tests and diagnostics.
cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z);

/// Generalized Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
cplx laguerre_poly(int n, cplx alpha, cplx x);
double laguerre_poly(int n, double alpha, double x);

/// Spherical Bessel function j0(x) = sin(x)/x.
double spherical_j0(double x);

/// n! as a double.
double factorial(int n);

}  // namespace cqs
