#ifndef BIWAVE_TYPES_HPP
#define BIWAVE_TYPES_HPP

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace biwave {

using cplx = std::complex<double>;

/// Thrown when a quadrature or iteration cannot certify the requested
/// tolerance; carries the best available estimate.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& msg, cplx best, double err)
        : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}
    cplx best_estimate;
    double error_estimate;
};

/// Principal branch of w^s via exp(s Log w); Log is the principal logarithm.
/// w = 0 is a branch point and is rejected.
cplx principal_power(cplx w, cplx s);

/// Point z = b + ia of the open upper half-plane (a > 0); transforms are
/// evaluated at the mirrored argument zbar = b - ia.
struct HalfPlanePoint {
    HalfPlanePoint(double b_, double a_) : b(b_), a(a_) {
        if (!(a > 0.0))
            throw std::domain_error("HalfPlanePoint: scale a must be > 0");
    }
    double b;
    double a;
    cplx z() const { return {b, a}; }
    cplx zbar() const { return {b, -a}; }
};

/// Analyzing-wavelet exponent; the wavelet is q^(gamma-2) e^-q on q > 0.
struct WaveletParams {
    explicit WaveletParams(double gamma_) : gamma(gamma_) {
        if (!(gamma > 0.0))
            throw std::domain_error("WaveletParams: gamma must be > 0");
    }
    double gamma;
};

enum class WaveletClass {
    admissible,                  // gamma > 1
    square_integrable_only,      // 1/2 < gamma <= 1
    not_square_integrable        // 0 < gamma <= 1/2
};

struct Classification {
    WaveletClass wavelet_class;
    double gamma;
    std::string description;
};

/// Classifies the analyzing wavelet per the L^2(q^2 dq) and admissibility
/// integrals; total on gamma > 0.
Classification validate_params(const WaveletParams& p);

/// Single decaying exponential atom c q^(alpha-1) e^(i pole q), Im pole > 0.
struct Atom {
    Atom(cplx coeff_, double alpha_, cplx pole_)
        : coeff(coeff_), alpha(alpha_), pole(pole_) {
        if (!(alpha >= 0.0))
            throw std::domain_error("Atom: alpha must be >= 0");
        if (!(pole.imag() > 0.0))
            throw std::domain_error("Atom: Im(pole) must be > 0");
    }
    cplx coeff;
    double alpha;
    cplx pole;

    cplx eval(double q) const;
};

/// Radial function on q > 0: a closed-form atom part plus an optional
/// sampled part interpolated with a local cubic in ln q.  Both parts
/// contribute to eval(); the sampled part is zero outside its grid.
struct RadialFunction {
    std::vector<Atom> atoms;
    std::vector<double> sample_q;   // strictly increasing, all > 0
    std::vector<cplx> sample_f;

    RadialFunction() = default;
    explicit RadialFunction(std::vector<Atom> atoms_) : atoms(std::move(atoms_)) {}
    RadialFunction(std::vector<double> q, std::vector<cplx> f);

    static RadialFunction sampled(const std::function<cplx(double)>& f,
                                  const std::vector<double>& grid);
    static std::vector<double> log_grid(double qmin, double qmax, std::size_t n);

    bool has_samples() const { return !sample_q.empty(); }
    cplx eval(double q) const;
};

/// One term coeff [i(zbar - pole)]^(-order) of a transform; order >= gamma
/// so the reconstructed atom exponent alpha = order - gamma is >= 0.
struct PoleTerm {
    cplx coeff;
    double order;
    cplx pole;

    cplx eval(cplx zbar) const;
    /// d/dzbar: the order is raised by one, the coefficient picks up -order*i.
    PoleTerm derivative() const { return {coeff * cplx(0.0, -order), order + 1.0, pole}; }
};

/// Transform-side function on the open lower half-plane Im zbar < 0:
/// a finite pole-term sum plus an optional remainder evaluator.
/// Evaluation outside the domain is rejected.
struct AnalyticCoefficient {
    double gamma = 0.0;
    std::vector<PoleTerm> pole_terms;
    std::function<cplx(cplx)> remainder;   // empty when absent

    AnalyticCoefficient() = default;
    AnalyticCoefficient(double gamma_, std::vector<PoleTerm> terms,
                        std::function<cplx(cplx)> rem = nullptr);

    bool has_remainder() const { return static_cast<bool>(remainder); }
    bool symbolic() const { return !has_remainder(); }
    cplx eval(cplx zbar) const;

    /// Exact d/dzbar of the pole-term part; requires a symbolic (pole-term
    /// only) representation.  Grid-backed remainders need finite differences
    /// (see fd_dzbar in transform.hpp).
    AnalyticCoefficient derivative() const;

    AnalyticCoefficient operator+(const AnalyticCoefficient& other) const;
    AnalyticCoefficient operator*(cplx scale) const;
};

/// Electron mass in eV used when a physical charge number is supplied.
inline constexpr double electron_mass_ev = 510998.95;

} // namespace biwave

#endif
