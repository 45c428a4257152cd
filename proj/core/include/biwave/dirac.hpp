#ifndef BIWAVE_DIRAC_HPP
#define BIWAVE_DIRAC_HPP

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "biwave/types.hpp"

namespace biwave {
namespace dirac {

/// Coulomb-Dirac parameters in natural units: coupling lambda = N alpha,
/// angular number chi = +-(j + 1/2), derived gamma = sqrt(chi^2 - lambda^2).
struct DiracParams {
    DiracParams(double m_, double lambda_, double chi_);
    double m;
    double lambda;
    double chi;
    double gamma;   // derived

    /// lambda = N/137.035999... convention is NOT used; the plain N * alpha
    /// with alpha = 1/137 matches the tabulated examples.
    static DiracParams from_charge(int N, double chi_, double m_ = electron_mass_ev);
};

Classification validate_params(const DiracParams& p);

using Matrix2 = Eigen::Matrix2d;

struct SystemMatrices {
    Matrix2 Ap;               // A'
    Matrix2 Bp;               // B'
    Matrix2 A;                // (A' + B')/(-2 eta)
    std::optional<Matrix2> B; // (A' - B')/(-2 eta_tilde); absent at eta_tilde = 0
    double eta;               // -gamma - lambda e / sqrt(m^2 - e^2)
    double eta_tilde;         // -gamma + lambda e / sqrt(m^2 - e^2)

    const Matrix2& B_checked() const {
        if (!B)
            throw std::domain_error(
                "SystemMatrices: B undefined, eta_tilde vanishes");
        return *B;
    }
};

/// Builds the first-order-system matrices at energy epsilon, |epsilon| < m.
SystemMatrices build_matrices(const DiracParams& p, double epsilon);

/// Closed-form bound level: epsilon_n = m [1 + lambda^2/(gamma+n)^2]^(-1/2).
double spectrum(const DiracParams& p, int n);

/// Same level from the analyticity condition: root of
/// -gamma + lambda e/sqrt(m^2 - e^2) = n on (0, m), found by bracketed
/// root-finding with no reference to the closed form.
double quantize(const DiracParams& p, int n);

struct BoundState {
    int n;
    double epsilon;
    double eta;
    double eta_tilde;
    std::array<double, 2> spinorA;   // weight of the 1F1(-n, ...) channel
    std::array<double, 2> spinorB;   // weight of the 1F1(-n+1, ...) channel
};

/// Assembles the level data and the two spinor channel weights
/// (-gamma + chi -+ lambda c+) (1, -+ c-)^T.  The second channel weight
/// vanishes identically at n = 0 on the chi < 0 branch; n = 0 with chi > 0
/// has no bound state and is rejected.
BoundState bound_state(const DiracParams& p, int n);

/// Transform-side eigenfunction (two components), normalized so that the
/// configuration-space partner has unit L^2(q^2 dq) norm with f > 0 at
/// small q.  Requires Im(zbar) < 0.
std::array<cplx, 2> eigenfunction_z(const DiracParams& p, int n, cplx zbar);

/// Same object as a symbolic pole-term sum: component 0 is the upper (f)
/// channel, 1 the lower (g); poles all sit at i/2 with orders 2 gamma + k.
AnalyticCoefficient eigenfunction_z_coefficient(const DiracParams& p, int n,
                                                int component);

/// Configuration-space radial pair (f, g) at q > 0, unit L^2(q^2 dq) norm.
std::array<double, 2> eigenfunction_config(const DiracParams& p, int n, double q);

/// Signed normalization applied to both spaces (fixed by the closed-form
/// Gamma-sum norm and the small-q sign convention).
double norm_constant(const DiracParams& p, int n);

/// Residual of the first-order zbar-system
/// dPhi/dzbar + (1/2)[(A'+B')/(zbar-i/2) + (A'-B')/(zbar+i/2)] Phi = 0
/// at one point, relative to the local derivative scale.
double z_system_residual(const DiracParams& p, int n, cplx zbar);

} // namespace dirac
} // namespace biwave

#endif
