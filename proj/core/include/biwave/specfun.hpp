#ifndef BIWAVE_SPECFUN_HPP
#define BIWAVE_SPECFUN_HPP

#include "biwave/types.hpp"

namespace biwave {

/// Gamma function on the complex plane (Lanczos, reflection for Re z < 1/2).
/// Relative accuracy ~1e-13 away from the poles at 0, -1, -2, ...
cplx cgamma(cplx z);

/// log Gamma, principal value consistent with cgamma on Re z > 0.
cplx clgamma(cplx z);

/// Terminating Gauss series 2F1(-n, b; c; x); c must not be a non-positive
/// integer reached before the series terminates.
cplx hyp2f1_poly(int n, cplx b, cplx c, cplx x);

/// Terminating Kummer series 1F1(-n; c; x), same c guard.
cplx hyp1f1_poly(int n, cplx c, cplx x);

/// Rising factorial (z)_k.
cplx pochhammer(cplx z, int k);

} // namespace biwave

#endif
