#ifndef BIWAVE_DIRAC_ORACLE_HPP
#define BIWAVE_DIRAC_ORACLE_HPP

#include <utility>
#include <vector>

#include "biwave/dirac.hpp"

namespace biwave {
namespace oracle {

/// Direct integration of the radial system in q = 2 r sqrt(m^2 - e^2):
///   q f' = -(1+chi) f + (lambda + (q/2) c+) g
///   q g' = -(1-chi) g + ((q/2) c- - lambda) f
/// with c+- = sqrt((m +- e)/(m -+ e)).  No wavelet machinery anywhere in
/// this module; it is the ground truth the closed forms are tested against.
struct ShootingConfig {
    double q_min = 1e-6;    // Frobenius series start
    double q_max = 60.0;    // outer matching point
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double eps_rel_tol = 1e-13;   // eigenvalue root tolerance
};

struct Trajectory {
    std::vector<double> q;
    std::vector<double> f;
    std::vector<double> g;
};

/// Outward sweep from the two-term Frobenius start f,g ~ q^(gamma-1);
/// integrates in t = ln q so the regular singular point costs nothing.
Trajectory integrate_radial(const dirac::DiracParams& p, double epsilon,
                            const ShootingConfig& cfg = {});

/// Growing-mode amplitude gauge at q_max: (f' + f/2)/sqrt(f^2+g^2).
/// Decaying solutions make it vanish; its sign flips across an eigenvalue.
double matching_mismatch(const dirac::DiracParams& p, double epsilon,
                         const ShootingConfig& cfg = {});

/// Energy bracket for level n from the monotone quantization variable:
/// eta_tilde(eps) in (n - 0.45, n + 0.45) mapped back to eps.
std::pair<double, double> bracket_for_level(const dirac::DiracParams& p, int n);

/// Eigenvalue inside the bracket; the bracket must contain exactly one sign
/// change of the matching function.
double shoot_eigenvalue(const dirac::DiracParams& p,
                        std::pair<double, double> bracket,
                        const ShootingConfig& cfg = {});

/// Eigenfunction on the given grid by two-sided integration (outward from
/// the Frobenius start, inward from the decaying asymptotics at q_max)
/// stitched mid-grid; a single outward sweep would carry an e^(+q)
/// admixture into the tail.  Normalized to unit L^2(q^2 dq) with f > 0 at
/// small q.
Trajectory eigenfunction(const dirac::DiracParams& p, double epsilon,
                         const std::vector<double>& q_grid,
                         const ShootingConfig& cfg = {});

struct ResidualReport {
    double max_rel_residual;
    bool defined;   // false when the input is numerically zero
};

/// Pointwise residual of both first-order equations on a grid function,
/// derivatives taken from local polynomial fits in ln q, normalized by the
/// local solution magnitude.
ResidualReport residual(const dirac::DiracParams& p, double epsilon,
                        const std::vector<double>& q,
                        const std::vector<double>& f,
                        const std::vector<double>& g);

} // namespace oracle
} // namespace biwave

#endif
