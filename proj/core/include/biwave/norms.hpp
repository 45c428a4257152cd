#ifndef BIWAVE_NORMS_HPP
#define BIWAVE_NORMS_HPP

#include <vector>

#include "biwave/transform.hpp"
#include "biwave/types.hpp"

namespace biwave {

struct RealQuad {
    double value;
    double error;
};

/// integral(0,inf) q^2 conj(f) g dq in closed form on the atom class:
/// pairwise terms Gamma(aj+ak+1) [-i(conj(pj) - pk)]^-(aj+ak+1).
/// Sample-backed inputs are rejected (use the quadrature overloads).
cplx l2_weighted_inner(const RadialFunction& f, const RadialFunction& g);

/// Weighted L^2 norm squared integral q^2 |f|^2 dq; closed form when f is
/// pure atoms (error 0), adaptive quadrature otherwise.
RealQuad l2_weighted_norm_sq(const RadialFunction& f);

struct BergmanNorm {
    double order;   // weight exponent on Im z
    double value;   // the squared norm
    double error;
};

/// 2-D quadrature of (Im z)^order |F|^2 da db / a^2 over the half-plane on
/// the supplied mesh, with power-law tail corrections beyond a_max and a
/// constant-profile correction below a_min.
BergmanNorm bergman_norm(const AnalyticCoefficient& F, double order,
                         const HalfPlaneGrid& grid);

/// Sesquilinear version with the derivative weight:
/// <F|G> = integral dmu_L (Im z)^(2 gamma + 1) conj(dF/dzbar) dG/dzbar.
/// Symbolic inputs differentiate exactly; remainders use finite differences.
cplx a_gamma_inner_product(const AnalyticCoefficient& F,
                           const AnalyticCoefficient& G,
                           const WaveletParams& p, const HalfPlaneGrid& grid);

/// Constant linking the weighted L^2 norm to the Bergman norm of dF/dzbar:
/// integral q^2 |f|^2 dq = isometry_constant(gamma) * ||dF||^2 with weight
/// exponent 2 gamma + 1.
double isometry_constant(double gamma);

/// Constant linking <F|G> to (f,g) in L^2(q^2 dq).  A variant with the
/// exponent shifted by 2, 2 pi Gamma(2 gamma - 2)/2^(2 gamma - 2), circulates
/// alongside this identity but has poles inside the working range gamma <= 1;
/// the value below, 2 pi Gamma(2 gamma)/2^(2 gamma), is the one the basis
/// computation reproduces.  The shifted variant is kept for the cross-check.
double a_gamma_pairing_constant(double gamma);
double a_gamma_pairing_constant_printed(double gamma);

struct IsometryReport {
    double lhs;         // integral q^2 |f|^2 dq
    double rhs;         // scaled Bergman norm of dF/dzbar
    double rhs_error;
    double rel_discrepancy;
};

/// Computes both sides of the norm identity for f under the gamma-transform.
IsometryReport isometry_check(const RadialFunction& f, const WaveletParams& p,
                              const HalfPlaneGrid& grid);

} // namespace biwave

#endif
