#ifndef BIWAVE_TRANSFORM_HPP
#define BIWAVE_TRANSFORM_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "biwave/quadrature.hpp"
#include "biwave/types.hpp"

namespace biwave {

/// Closed form of the integral map applied to a single atom:
/// c q^(alpha-1) e^(i pole q)  ->  c Gamma(gamma+alpha) [i(zbar-pole)]^-(gamma+alpha).
/// Exact, no quadrature.
AnalyticCoefficient forward_atom(const WaveletParams& p, const Atom& atom);

/// Forward map of a RadialFunction: atoms go through the closed form; a
/// sampled part becomes a remainder evaluator that integrates over the
/// sample support on demand.
AnalyticCoefficient forward(const WaveletParams& p, const RadialFunction& f);

struct ForwardOptions {
    double tol_rel = 1e-8;
    double tol_abs = 1e-10;
    double q_small = 1e-8;    // below this the integrand uses a power model
    double q_large = 45.0;    // beyond this an exponential tail model
    int max_depth = 24;
};

/// Fully numeric transform integral(0,inf) e^(-i zbar q) q^gamma f(q) dq.
/// Panels are sized against both e^(-ibq) oscillation and e^(-aq) decay;
/// the first panel integrates a fitted local power law analytically and the
/// far tail a fitted exponential, so endpoint behavior q^(gamma+alpha-1)
/// with gamma+alpha < 1 keeps full accuracy.
QuadResult forward_quadrature(const WaveletParams& p,
                              const std::function<cplx(double)>& f, cplx zbar,
                              const ForwardOptions& opt = {});

/// Numeric transform of a RadialFunction.  Pure-sample inputs integrate
/// over the grid support only; anything with atoms gets the full endpoint
/// and tail treatment.
QuadResult forward_quadrature(const WaveletParams& p, const RadialFunction& f,
                              cplx zbar, const ForwardOptions& opt = {});

/// a^(gamma-1/2) F(b - ia): the coefficient against the wavelet centered at z.
cplx wavelet_coefficient(const WaveletParams& p, const AnalyticCoefficient& F,
                         const HalfPlanePoint& z);
cplx wavelet_coefficient(const WaveletParams& p, const RadialFunction& f,
                         const HalfPlanePoint& z);

/// Image of q d/dq under the transform: -zbar d/dzbar - (gamma+1), applied
/// symbolically to pole terms.  Remainder-backed inputs are rejected; use
/// fd_dzbar for those.
AnalyticCoefficient apply_operator_map_qddq(const AnalyticCoefficient& F);

/// Image of multiplication by q: i d/dzbar, symbolic.
AnalyticCoefficient apply_operator_map_q(const AnalyticCoefficient& F);

/// zbar d/dzbar, symbolic; building block shared by the q d/dq map and the
/// derivative-transport identity.
AnalyticCoefficient apply_zbar_dzbar(const AnalyticCoefficient& F);

/// Central-difference d/dzbar along the real direction, 4th order;
/// step h = max(1e-5, 1e-5 |zbar|) unless overridden.
cplx fd_dzbar(const std::function<cplx(cplx)>& F, cplx zbar, double h = 0.0);

/// Tensor mesh for half-plane integrals after a = e^u, b = tan v.  The
/// b panels are graded toward v = +-pi/2 because |F|^2 of a pole term
/// behaves like (pi/2 - |v|)^(2s-2) there, which Gauss panels resolve only
/// when panel widths shrink geometrically.
struct HalfPlaneGrid {
    std::vector<double> a_nodes;    // ascending, > 0
    std::vector<double> a_weights;  // quadrature weights for da
    std::vector<double> b_nodes;    // symmetric about 0
    std::vector<double> b_weights;  // quadrature weights for db
    double a_min = 0.0;
    double a_max = 0.0;

    static HalfPlaneGrid make(double a_min = 1e-5, double a_max = 1e5,
                              std::size_t u_panels = 40,
                              std::size_t b_core_panels = 8,
                              std::size_t b_graded_panels = 22,
                              std::size_t order = 16);
};

/// Log-log decay fit of |F| along three ray families: b -> +inf and
/// b -> -inf at fixed a = 1, and a -> inf at fixed b = 0.
struct DecayReport {
    double exponent_b_plus;
    double exponent_b_minus;
    double exponent_a;
    bool monotone_tail;
    double exponent() const {
        return (exponent_b_plus + exponent_b_minus + exponent_a) / 3.0;
    }
};

DecayReport decay_check(const AnalyticCoefficient& F, double r_lo = 1e3,
                        double r_hi = 1e6, std::size_t n_samples = 13);
DecayReport decay_check(const std::function<cplx(cplx)>& F, double r_lo = 1e3,
                        double r_hi = 1e6, std::size_t n_samples = 13);

/// Least-squares slope of log|f| vs log q; used for small-q exponent checks.
double log_log_slope(const std::function<double(double)>& absf, double x_lo,
                     double x_hi, std::size_t n_samples);

} // namespace biwave

#endif
