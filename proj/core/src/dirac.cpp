#include "biwave/dirac.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "biwave/specfun.hpp"
#include "biwave/summation.hpp"

namespace biwave {
namespace dirac {

namespace {
const cplx I{0.0, 1.0};
}

DiracParams::DiracParams(double m_, double lambda_, double chi_)
    : m(m_), lambda(lambda_), chi(chi_) {
    if (!(m > 0.0)) throw std::domain_error("DiracParams: m must be > 0");
    if (!(lambda > 0.0))
        throw std::domain_error("DiracParams: lambda must be > 0");
    if (chi == 0.0 || chi != std::round(chi))
        throw std::domain_error("DiracParams: chi must be a nonzero integer");
    if (!(chi * chi > lambda * lambda))
        throw std::domain_error("DiracParams: chi^2 > lambda^2 required");
    gamma = std::sqrt(chi * chi - lambda * lambda);
}

DiracParams DiracParams::from_charge(int N, double chi_, double m_) {
    if (N < 1) throw std::domain_error("DiracParams: charge must be >= 1");
    return DiracParams(m_, double(N) / 137.0, chi_);
}

Classification validate_params(const DiracParams& p) {
    return biwave::validate_params(WaveletParams(p.gamma));
}

SystemMatrices build_matrices(const DiracParams& p, double epsilon) {
    if (!(std::abs(epsilon) < p.m))
        throw std::domain_error("build_matrices: |epsilon| < m required");
    double g = p.gamma, chi = p.chi, lam = p.lambda;
    double root = std::sqrt(p.m * p.m - epsilon * epsilon);
    double cp = std::sqrt((p.m + epsilon) / (p.m - epsilon));
    double cm = 1.0 / cp;

    SystemMatrices s;
    s.Ap << g - chi, lam, -lam, g + chi;
    s.Bp << lam * cp, -(chi + g) * cp, -(g - chi) * cm, -lam * cm;
    s.eta = -g - lam * epsilon / root;
    s.eta_tilde = -g + lam * epsilon / root;
    s.A = (s.Ap + s.Bp) / (-2.0 * s.eta);
    if (s.eta_tilde != 0.0) s.B = (s.Ap - s.Bp) / (-2.0 * s.eta_tilde);
    return s;
}

double spectrum(const DiracParams& p, int n) {
    if (n < 0) throw std::domain_error("spectrum: n must be >= 0");
    double t = p.gamma + double(n);
    return p.m / std::sqrt(1.0 + p.lambda * p.lambda / (t * t));
}

double quantize(const DiracParams& p, int n) {
    if (n < 0) throw std::domain_error("quantize: n must be >= 0");
    auto eta_tilde = [&p](double e) {
        return -p.gamma +
               p.lambda * e / std::sqrt(p.m * p.m - e * e) ;
    };
    auto fn = [&](double e) { return eta_tilde(e) - double(n); };

    double lo = 1e-9 * p.m;
    double hi = p.m * (1.0 - 1e-6);
    while (fn(hi) < 0.0) {
        hi = 0.5 * (hi + p.m);
        if (p.m - hi < 1e-15 * p.m)
            throw std::domain_error("quantize: no bracket below m");
    }
    boost::math::tools::eps_tolerance<double> tol(53);
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(fn, lo, hi, tol, iters);
    return 0.5 * (r.first + r.second);
}

namespace {

// lambda c+ at the level epsilon_n equals T + sqrt(T^2 + lambda^2) with
// T = gamma + n; this form has no m - epsilon cancellation.
struct ChannelWeights {
    double c1, c2, cm;
};

ChannelWeights channel_weights(const DiracParams& p, int n) {
    double T = p.gamma + double(n);
    double R = std::sqrt(T * T + p.lambda * p.lambda);
    ChannelWeights w;
    double lcp = T + R;
    w.c1 = -p.gamma + p.chi - lcp;
    w.c2 = (n == 0) ? 0.0 : p.chi + double(n) + R;
    w.cm = p.lambda / lcp;
    return w;
}

void check_level(const DiracParams& p, int n, const char* who) {
    if (n < 0) throw std::domain_error(std::string(who) + ": n must be >= 0");
    if (n == 0 && p.chi > 0.0)
        throw std::domain_error(std::string(who) +
                                ": no n = 0 bound state for chi > 0");
}

// 1F1(-n, 2 gamma + 1; q) coefficient list, exact term recurrence.
std::vector<double> kummer_coeffs(int n, double two_g_plus_1) {
    std::vector<double> c(std::size_t(n) + 1);
    c[0] = 1.0;
    for (int k = 0; k < n; ++k)
        c[std::size_t(k) + 1] = c[std::size_t(k)] * double(-n + k) /
                                ((two_g_plus_1 + double(k)) * double(k + 1));
    return c;
}

// polynomial coefficients of the two spinor components (without the
// common N q^(gamma-1) e^(-q/2) factor); g also carries the cm factor
struct ComponentPolys {
    std::vector<double> pf;
    std::vector<double> pg;
};

ComponentPolys component_polys(const DiracParams& p, int n) {
    ChannelWeights w = channel_weights(p, n);
    std::vector<double> pn = kummer_coeffs(n, 2.0 * p.gamma + 1.0);
    std::vector<double> pm;
    if (n >= 1) pm = kummer_coeffs(n - 1, 2.0 * p.gamma + 1.0);
    ComponentPolys cp;
    cp.pf.assign(std::size_t(n) + 1, 0.0);
    cp.pg.assign(std::size_t(n) + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        double a = w.c1 * pn[std::size_t(j)];
        double b = (j < n && n >= 1) ? w.c2 * pm[std::size_t(j)] : 0.0;
        cp.pf[std::size_t(j)] = a + b;
        cp.pg[std::size_t(j)] = -a + b;
    }
    return cp;
}

} // namespace

BoundState bound_state(const DiracParams& p, int n) {
    check_level(p, n, "bound_state");
    ChannelWeights w = channel_weights(p, n);
    BoundState s;
    s.n = n;
    s.epsilon = spectrum(p, n);
    s.eta = -double(n) - 2.0 * p.gamma;
    s.eta_tilde = double(n);
    s.spinorA = {w.c1, -w.c1 * w.cm};
    s.spinorB = {w.c2, w.c2 * w.cm};
    return s;
}

double norm_constant(const DiracParams& p, int n) {
    check_level(p, n, "norm_constant");
    ChannelWeights w = channel_weights(p, n);
    ComponentPolys cp = component_polys(p, n);
    // integral q^2 (f^2 + g^2) dq with f,g = q^(gamma-1) e^(-q/2) poly:
    // pairwise Gamma(2 gamma + 1 + j + k) against the e^(-q) weight
    NeumaierSum<double> acc;
    for (std::size_t j = 0; j < cp.pf.size(); ++j)
        for (std::size_t k = 0; k < cp.pf.size(); ++k) {
            double gm =
                cgamma(cplx(2.0 * p.gamma + 1.0 + double(j + k), 0.0)).real();
            acc.add((cp.pf[j] * cp.pf[k] + w.cm * w.cm * cp.pg[j] * cp.pg[k]) *
                    gm);
        }
    double sign = (p.chi - p.gamma > 0.0) ? 1.0 : -1.0;
    return sign / std::sqrt(acc.value());
}

std::array<double, 2> eigenfunction_config(const DiracParams& p, int n,
                                           double q) {
    check_level(p, n, "eigenfunction_config");
    if (!(q > 0.0))
        throw std::domain_error("eigenfunction_config: q must be > 0");
    ChannelWeights w = channel_weights(p, n);
    double N = norm_constant(p, n);
    double f1 = hyp1f1_poly(n, cplx(2.0 * p.gamma + 1.0, 0.0), cplx(q, 0.0))
                    .real();
    double f2 = (n >= 1)
                    ? hyp1f1_poly(n - 1, cplx(2.0 * p.gamma + 1.0, 0.0),
                                  cplx(q, 0.0))
                          .real()
                    : 0.0;
    double common = N * std::pow(q, p.gamma - 1.0) * std::exp(-0.5 * q);
    double f = common * (w.c1 * f1 + w.c2 * f2);
    double g = common * w.cm * (-w.c1 * f1 + w.c2 * f2);
    return {f, g};
}

AnalyticCoefficient eigenfunction_z_coefficient(const DiracParams& p, int n,
                                                int component) {
    check_level(p, n, "eigenfunction_z_coefficient");
    if (component != 0 && component != 1)
        throw std::domain_error("eigenfunction_z_coefficient: component 0 or 1");
    ChannelWeights w = channel_weights(p, n);
    ComponentPolys cp = component_polys(p, n);
    double N = norm_constant(p, n);
    const cplx pole{0.0, 0.5};
    std::vector<PoleTerm> terms;
    for (int k = 0; k <= n; ++k) {
        double pk = (component == 0) ? cp.pf[std::size_t(k)]
                                     : w.cm * cp.pg[std::size_t(k)];
        if (pk == 0.0) continue;
        double s = 2.0 * p.gamma + double(k);
        cplx coeff = N * pk * cgamma(cplx(s, 0.0));
        terms.push_back(PoleTerm{coeff, s, pole});
    }
    return AnalyticCoefficient(p.gamma, std::move(terms));
}

std::array<cplx, 2> eigenfunction_z(const DiracParams& p, int n, cplx zbar) {
    AnalyticCoefficient F = eigenfunction_z_coefficient(p, n, 0);
    AnalyticCoefficient G = eigenfunction_z_coefficient(p, n, 1);
    return {F.eval(zbar), G.eval(zbar)};
}

double z_system_residual(const DiracParams& p, int n, cplx zbar) {
    check_level(p, n, "z_system_residual");
    if (!(zbar.imag() < 0.0))
        throw std::domain_error("z_system_residual: Im(zbar) must be < 0");
    AnalyticCoefficient F = eigenfunction_z_coefficient(p, n, 0);
    AnalyticCoefficient G = eigenfunction_z_coefficient(p, n, 1);
    cplx phi0 = F.eval(zbar), phi1 = G.eval(zbar);
    cplx dphi0 = F.derivative().eval(zbar), dphi1 = G.derivative().eval(zbar);

    SystemMatrices ms = build_matrices(p, spectrum(p, n));
    cplx w_minus = -0.5 / (zbar - cplx(0.0, 0.5));
    cplx w_plus = -0.5 / (zbar + cplx(0.0, 0.5));
    Matrix2 Sp = ms.Ap + ms.Bp, Sm = ms.Ap - ms.Bp;
    cplx rhs0 = w_minus * (Sp(0, 0) * phi0 + Sp(0, 1) * phi1) +
                w_plus * (Sm(0, 0) * phi0 + Sm(0, 1) * phi1);
    cplx rhs1 = w_minus * (Sp(1, 0) * phi0 + Sp(1, 1) * phi1) +
                w_plus * (Sm(1, 0) * phi0 + Sm(1, 1) * phi1);
    double scale = std::max({std::abs(dphi0), std::abs(dphi1),
                             std::abs(rhs0), std::abs(rhs1), 1e-300});
    return std::max(std::abs(dphi0 - rhs0), std::abs(dphi1 - rhs1)) / scale;
}

} // namespace dirac
} // namespace biwave
