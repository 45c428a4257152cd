#include "biwave/specfun.hpp"

#include <cmath>

#include "biwave/summation.hpp"

namespace biwave {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double log_sqrt_2pi = 0.91893853320467274178;

// Lanczos g = 607/128, 15 terms; good to ~1e-14 relative on Re z >= 1/2.
constexpr double lanczos_g = 4.7421875;
constexpr double lanczos_c[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(cplx z) {
    if (z.imag() != 0.0) return false;
    double r = z.real();
    return r <= 0.0 && r == std::floor(r);
}

cplx lgamma_core(cplx z) {
    // valid for Re z >= 0.5
    cplx zm1 = z - 1.0;
    NeumaierSum<cplx> acc;
    acc.add(cplx(lanczos_c[0], 0.0));
    for (int k = 1; k < 15; ++k) acc.add(lanczos_c[k] / (zm1 + double(k)));
    cplx t = zm1 + lanczos_g + 0.5;
    return (zm1 + 0.5) * std::log(t) - t + log_sqrt_2pi + std::log(acc.value());
}

} // namespace

cplx clgamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("clgamma: pole at non-positive integer");
    if (z.real() >= 0.5) return lgamma_core(z);
    // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    cplx s = std::sin(pi * z);
    return std::log(pi) - std::log(s) - lgamma_core(1.0 - z);
}

cplx cgamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("cgamma: pole at non-positive integer");
    if (z.real() >= 0.5) return std::exp(lgamma_core(z));
    cplx s = std::sin(pi * z);
    return pi / (s * std::exp(lgamma_core(1.0 - z)));
}

cplx pochhammer(cplx z, int k) {
    if (k < 0) throw std::domain_error("pochhammer: k must be >= 0");
    cplx p{1.0, 0.0};
    for (int j = 0; j < k; ++j) p *= z + double(j);
    return p;
}

namespace {

void check_lower_parameter(cplx c, int n, const char* who) {
    // denominators are (c + k) for k = 0..n-1
    if (c.imag() != 0.0) return;
    double r = c.real();
    if (r > 0.0 || r != std::floor(r)) return;
    if (-r <= double(n - 1))
        throw std::domain_error(std::string(who) +
                                ": lower parameter hits a non-positive integer");
}

} // namespace

cplx hyp2f1_poly(int n, cplx b, cplx c, cplx x) {
    if (n < 0) throw std::domain_error("hyp2f1_poly: n must be >= 0");
    if (n > 0) check_lower_parameter(c, n, "hyp2f1_poly");
    NeumaierSum<cplx> acc;
    cplx term{1.0, 0.0};
    acc.add(term);
    for (int k = 0; k < n; ++k) {
        term *= (double(-n + k) * (b + double(k))) /
                ((c + double(k)) * double(k + 1)) * x;
        acc.add(term);
    }
    return acc.value();
}

cplx hyp1f1_poly(int n, cplx c, cplx x) {
    if (n < 0) throw std::domain_error("hyp1f1_poly: n must be >= 0");
    if (n > 0) check_lower_parameter(c, n, "hyp1f1_poly");
    NeumaierSum<cplx> acc;
    cplx term{1.0, 0.0};
    acc.add(term);
    for (int k = 0; k < n; ++k) {
        term *= double(-n + k) / ((c + double(k)) * double(k + 1)) * x;
        acc.add(term);
    }
    return acc.value();
}

} // namespace biwave
