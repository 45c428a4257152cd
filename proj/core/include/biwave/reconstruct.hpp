#ifndef BIWAVE_RECONSTRUCT_HPP
#define BIWAVE_RECONSTRUCT_HPP

#include <vector>

#include "biwave/transform.hpp"
#include "biwave/types.hpp"

namespace biwave {

/// The reconstructing wavelet is the constant chi = 1/(2 pi Gamma(gamma)),
/// chosen so the pairing integral(0,inf) q psi(q) chi dq equals 1/(2 pi).
struct ReconstructionWavelet {
    explicit ReconstructionWavelet(const WaveletParams& p);
    double gamma;
    double value;
};

/// The pairing constant 1/(2 pi); the quadrature cross-check of the pairing
/// integral lives in the tests.
double pairing_target();

/// Exact inverse of a single pole term:
/// coeff [i(zbar-pole)]^(-s)  ->  (coeff/Gamma(s)) q^(s-gamma-1) e^(i pole q).
/// Requires s >= gamma so the atom exponent is admissible.
Atom reconstruct_pole_term(const WaveletParams& p, const PoleTerm& term);

/// Same inverse for a bare power (zbar-pole)^(-order), which carries an
/// extra i^order relative to the bracketed convention.
Atom reconstruct_bare_power(const WaveletParams& p, double order, cplx pole);

/// Symbolic inverse of a pole-term sum; remainder-backed inputs are rejected.
RadialFunction reconstruct_atoms(const WaveletParams& p,
                                 const AnalyticCoefficient& F);

struct GridReconOptions {
    std::vector<double> a_nodes = {0.25, 0.5};
    double b_cut = 100.0;
    std::size_t order = 16;
};

struct GridReconstruction {
    RadialFunction f;
    std::vector<double> errors;   // per grid point
    double max_error = 0.0;
};

/// Numeric inverse for remainders, b-integral first (the a-first order is
/// only conditionally convergent and is never evaluated here).  At fixed a
/// the b-integral of F(b-ia) e^(ibq) equals 2 pi q^gamma f(q) e^(-aq), so
/// each a node yields an independent estimate of f(q); the nodes are
/// averaged and their spread enters the error estimate.  Truncation at
/// |b| = b_cut is softened by an integration-by-parts endpoint correction.
GridReconstruction reconstruct_grid(const WaveletParams& p,
                                    const AnalyticCoefficient& F,
                                    const std::vector<double>& q_grid,
                                    const GridReconOptions& opt = {});

struct AdmissibleOptions {
    double a_min = 1e-5;
    std::size_t u_panels = 10;
    std::size_t u_order = 24;
    std::size_t b_order = 16;
};

/// Orthogonal-basis inverse, valid for gamma > 1 only:
/// f(q) = (2^(2 gamma - 2)/(2 pi Gamma(2 gamma - 2)))
///        q^(gamma-2) integral da a^(2 gamma - 3) e^(-aq) integral db F e^(ibq).
/// Reference path used to validate the bi-orthogonal route where both apply.
GridReconstruction reconstruct_admissible(const WaveletParams& p,
                                          const AnalyticCoefficient& F,
                                          const std::vector<double>& q_grid,
                                          const AdmissibleOptions& opt = {});

struct TransportReport {
    double max_rel_discrepancy;
    std::vector<double> lhs;    // |reconstruction of zbar dF/dzbar|
    std::vector<double> rhs;    // |-(q d/dq + gamma + 1) f|
};

/// Checks the derivative-transport identity: the inverse of zbar dF/dzbar
/// must equal -(q d/dq + gamma + 1) f.  Symbolic inputs use closed forms on
/// both sides; remainder-backed inputs fall back to grid reconstruction
/// with finite differences.
TransportReport derivative_transport_check(const WaveletParams& p,
                                           const AnalyticCoefficient& F,
                                           const std::vector<double>& q_grid);

} // namespace biwave

#endif
