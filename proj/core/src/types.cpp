#include "biwave/types.hpp"

#include <algorithm>
#include <cmath>

namespace biwave {

cplx principal_power(cplx w, cplx s) {
    if (w == cplx(0.0, 0.0))
        throw std::domain_error("principal_power: base is zero");
    return std::exp(s * std::log(w));
}

Classification validate_params(const WaveletParams& p) {
    Classification c;
    c.gamma = p.gamma;
    if (p.gamma > 1.0) {
        c.wavelet_class = WaveletClass::admissible;
        c.description = "admissible";
    } else if (p.gamma > 0.5) {
        c.wavelet_class = WaveletClass::square_integrable_only;
        c.description = "square-integrable, not admissible";
    } else {
        c.wavelet_class = WaveletClass::not_square_integrable;
        c.description = "not square-integrable";
    }
    return c;
}

cplx Atom::eval(double q) const {
    if (!(q > 0.0))
        throw std::domain_error("Atom::eval: q must be > 0");
    return coeff * std::pow(q, alpha - 1.0) * std::exp(cplx(0.0, 1.0) * pole * q);
}

RadialFunction::RadialFunction(std::vector<double> q, std::vector<cplx> f)
    : sample_q(std::move(q)), sample_f(std::move(f)) {
    if (sample_q.size() != sample_f.size())
        throw std::invalid_argument("RadialFunction: grid/value size mismatch");
    if (sample_q.size() < 2)
        throw std::invalid_argument("RadialFunction: need at least 2 samples");
    double prev = 0.0;
    for (double x : sample_q) {
        if (!(x > prev))
            throw std::invalid_argument(
                "RadialFunction: grid must be positive and strictly increasing");
        prev = x;
    }
}

RadialFunction RadialFunction::sampled(const std::function<cplx(double)>& f,
                                       const std::vector<double>& grid) {
    std::vector<cplx> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
    return RadialFunction(grid, std::move(vals));
}

std::vector<double> RadialFunction::log_grid(double qmin, double qmax,
                                             std::size_t n) {
    if (!(qmin > 0.0) || !(qmax > qmin) || n < 2)
        throw std::invalid_argument("log_grid: need 0 < qmin < qmax, n >= 2");
    std::vector<double> g(n);
    double t0 = std::log(qmin), t1 = std::log(qmax);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(t0 + (t1 - t0) * double(i) / double(n - 1));
    g.front() = qmin;
    g.back() = qmax;
    return g;
}

namespace {

// Local cubic Lagrange on the 4 grid points around q (fewer when the grid
// is shorter); outside the grid the sampled part is zero by convention.
cplx interp_samples(const std::vector<double>& xs, const std::vector<cplx>& ys,
                    double q) {
    if (q < xs.front() || q > xs.back()) return {0.0, 0.0};
    std::size_t m = std::min<std::size_t>(4, xs.size());
    auto it = std::upper_bound(xs.begin(), xs.end(), q);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (i > 0) --i;                       // xs[i] <= q
    std::size_t lo = (i == 0) ? 0 : i - 1;
    if (lo + m > xs.size()) lo = xs.size() - m;
    cplx acc{0.0, 0.0};
    for (std::size_t j = lo; j < lo + m; ++j) {
        double w = 1.0;
        for (std::size_t k = lo; k < lo + m; ++k)
            if (k != j) w *= (q - xs[k]) / (xs[j] - xs[k]);
        acc += w * ys[j];
    }
    return acc;
}

} // namespace

cplx RadialFunction::eval(double q) const {
    if (!(q > 0.0))
        throw std::domain_error("RadialFunction::eval: q must be > 0");
    cplx v{0.0, 0.0};
    for (const Atom& a : atoms) v += a.eval(q);
    if (has_samples()) v += interp_samples(sample_q, sample_f, q);
    return v;
}

cplx PoleTerm::eval(cplx zbar) const {
    return coeff * principal_power(cplx(0.0, 1.0) * (zbar - pole), -order);
}

AnalyticCoefficient::AnalyticCoefficient(double gamma_,
                                         std::vector<PoleTerm> terms,
                                         std::function<cplx(cplx)> rem)
    : gamma(gamma_), pole_terms(std::move(terms)), remainder(std::move(rem)) {
    for (const PoleTerm& t : pole_terms) {
        if (!(t.order >= gamma - 1e-12))
            throw std::domain_error("AnalyticCoefficient: order must be >= gamma");
        if (!(t.pole.imag() > 0.0))
            throw std::domain_error("AnalyticCoefficient: Im(pole) must be > 0");
    }
}

cplx AnalyticCoefficient::eval(cplx zbar) const {
    if (!(zbar.imag() < 0.0))
        throw std::domain_error(
            "AnalyticCoefficient::eval: Im(zbar) must be < 0");
    cplx v{0.0, 0.0};
    for (const PoleTerm& t : pole_terms) v += t.eval(zbar);
    if (remainder) v += remainder(zbar);
    return v;
}

AnalyticCoefficient AnalyticCoefficient::derivative() const {
    if (has_remainder())
        throw std::logic_error(
            "AnalyticCoefficient::derivative: symbolic form required");
    std::vector<PoleTerm> out;
    out.reserve(pole_terms.size());
    for (const PoleTerm& t : pole_terms) out.push_back(t.derivative());
    return AnalyticCoefficient(gamma, std::move(out));
}

AnalyticCoefficient AnalyticCoefficient::operator+(
    const AnalyticCoefficient& other) const {
    if (gamma != other.gamma)
        throw std::invalid_argument("AnalyticCoefficient: gamma mismatch");
    std::vector<PoleTerm> terms = pole_terms;
    terms.insert(terms.end(), other.pole_terms.begin(), other.pole_terms.end());
    std::function<cplx(cplx)> rem;
    if (remainder && other.remainder) {
        auto r1 = remainder, r2 = other.remainder;
        rem = [r1, r2](cplx z) { return r1(z) + r2(z); };
    } else if (remainder) {
        rem = remainder;
    } else if (other.remainder) {
        rem = other.remainder;
    }
    return AnalyticCoefficient(gamma, std::move(terms), std::move(rem));
}

AnalyticCoefficient AnalyticCoefficient::operator*(cplx scale) const {
    std::vector<PoleTerm> terms = pole_terms;
    for (PoleTerm& t : terms) t.coeff *= scale;
    std::function<cplx(cplx)> rem;
    if (remainder) {
        auto r = remainder;
        rem = [r, scale](cplx z) { return scale * r(z); };
    }
    return AnalyticCoefficient(gamma, std::move(terms), std::move(rem));
}

} // namespace biwave
