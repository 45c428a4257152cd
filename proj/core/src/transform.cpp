#include "biwave/transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "biwave/specfun.hpp"
#include "biwave/summation.hpp"

namespace biwave {

namespace {

constexpr double pi = 3.14159265358979323846;
const cplx I{0.0, 1.0};

} // namespace

AnalyticCoefficient forward_atom(const WaveletParams& p, const Atom& atom) {
    double s = p.gamma + atom.alpha;
    cplx coeff = atom.coeff * cgamma(cplx(s, 0.0));
    return AnalyticCoefficient(p.gamma, {PoleTerm{coeff, s, atom.pole}});
}

namespace {

// Oscillation/decay-bounded breakpoints in t = ln q over [q_lo, q_hi].
std::vector<double> log_axis_breaks(double q_lo, double q_hi, cplx zbar) {
    double freq = std::abs(zbar.real()) + std::abs(zbar.imag());
    std::vector<double> t;
    double cur = std::log(q_lo), t_hi = std::log(q_hi);
    t.push_back(cur);
    while (cur < t_hi) {
        double q = std::exp(cur);
        double dt = 0.5;
        if (freq * q > 3.0) dt = std::min(dt, 1.5 / (freq * q));
        cur = std::min(cur + dt, t_hi);
        t.push_back(cur);
    }
    if (t.size() < 2) t.push_back(t_hi);
    return t;
}

// Integral over [q_lo, q_hi] of e^(-i zbar q) q^gamma f(q) dq in the log
// variable, with a same-panels lower-order pass as the error gauge.
QuadResult transform_panels(const std::function<cplx(double)>& f, double gamma,
                            cplx zbar, double q_lo, double q_hi) {
    auto integrand_t = [&](double t) {
        double q = std::exp(t);
        return std::exp(-I * zbar * q) * std::pow(q, gamma + 1.0) * f(q);
    };
    std::vector<double> breaks = log_axis_breaks(q_lo, q_hi, zbar);
    cplx v16 = integrate_panels(integrand_t, breaks, 16);
    cplx v8 = integrate_panels(integrand_t, breaks, 8);
    return {v16, std::abs(v16 - v8)};
}

// Integral over [0, q0] with f modeled as C q^p from two small-q samples;
// the e^(-i zbar q) factor is expanded since |zbar| q0 is small.
QuadResult endpoint_model(const std::function<cplx(double)>& f, double gamma,
                          cplx zbar, double q0) {
    cplx f1 = f(q0 / 4.0), f2 = f(q0 / 2.0);
    if (f2 == cplx(0.0, 0.0) || f1 == cplx(0.0, 0.0)) return {{0.0, 0.0}, 0.0};
    double pfit = std::log(std::abs(f2) / std::abs(f1)) / std::log(2.0);
    cplx C = f2 / std::pow(q0 / 2.0, pfit);
    if (gamma + pfit + 1.0 <= 0.0)
        throw AccuracyError("endpoint model: non-integrable small-q power",
                            {0.0, 0.0}, 1.0);
    NeumaierSum<cplx> acc;
    cplx pw{1.0, 0.0};
    double fact = 1.0;
    cplx last{0.0, 0.0};
    for (int j = 0; j < 40; ++j) {
        double e = gamma + pfit + 1.0 + double(j);
        cplx term = pw / fact * std::pow(q0, e) / e;
        acc.add(term);
        last = term;
        if (std::abs(term) < 1e-18 * std::abs(acc.value())) break;
        pw *= -I * zbar;
        fact *= double(j + 1);
    }
    return {C * acc.value(), std::abs(C) * std::abs(last)};
}

// Tail beyond Q with f modeled as f(Q) e^(-kappa (q-Q)).
QuadResult tail_model(const std::function<cplx(double)>& f, double gamma,
                      cplx zbar, double Q) {
    cplx fQ = f(Q);
    if (fQ == cplx(0.0, 0.0)) return {{0.0, 0.0}, 0.0};
    double delta = 0.02 * Q;
    cplx fQm = f(Q - delta);
    double kappa = 0.0;
    if (fQm != cplx(0.0, 0.0) && std::abs(fQm) > std::abs(fQ))
        kappa = std::log(std::abs(fQm) / std::abs(fQ)) / delta;
    cplx rate = kappa + I * zbar;   // Re = kappa - Im(zbar) > 0
    cplx head = fQ * std::pow(Q, gamma) * std::exp(-I * zbar * Q);
    cplx val = head * (1.0 / rate + gamma / (Q * rate * rate));
    double err = std::abs(head) * std::abs(gamma * (gamma - 1.0)) /
                 (Q * Q * std::pow(std::abs(rate), 3.0));
    return {val, err + 0.05 * std::abs(head * gamma / (Q * rate * rate))};
}

} // namespace

QuadResult forward_quadrature(const WaveletParams& p,
                              const std::function<cplx(double)>& f, cplx zbar,
                              const ForwardOptions& opt) {
    if (!(zbar.imag() < 0.0))
        throw std::domain_error("forward_quadrature: Im(zbar) must be < 0");
    QuadResult head = endpoint_model(f, p.gamma, zbar, opt.q_small);
    QuadResult bulk = transform_panels(f, p.gamma, zbar, opt.q_small, opt.q_large);
    QuadResult tail = tail_model(f, p.gamma, zbar, opt.q_large);
    cplx v = head.value + bulk.value + tail.value;
    double err = head.error + bulk.error + tail.error;
    double target = opt.tol_abs + opt.tol_rel * std::abs(v);
    if (err > 1e3 * target)
        throw AccuracyError("forward_quadrature: error estimate above tolerance",
                            v, err);
    return {v, err};
}

QuadResult forward_quadrature(const WaveletParams& p, const RadialFunction& f,
                              cplx zbar, const ForwardOptions& opt) {
    if (!(zbar.imag() < 0.0))
        throw std::domain_error("forward_quadrature: Im(zbar) must be < 0");
    if (f.atoms.empty() && !f.has_samples()) return {{0.0, 0.0}, 0.0};
    if (f.atoms.empty()) {
        // compact support on the sample grid: no endpoint or tail models
        auto eval = [&f](double q) { return f.eval(q); };
        return transform_panels(eval, p.gamma, zbar, f.sample_q.front(),
                                f.sample_q.back());
    }
    auto eval = [&f](double q) { return f.eval(q); };
    return forward_quadrature(p, eval, zbar, opt);
}

AnalyticCoefficient forward(const WaveletParams& p, const RadialFunction& f) {
    std::vector<PoleTerm> terms;
    terms.reserve(f.atoms.size());
    for (const Atom& a : f.atoms) {
        double s = p.gamma + a.alpha;
        terms.push_back(PoleTerm{a.coeff * cgamma(cplx(s, 0.0)), s, a.pole});
    }
    std::function<cplx(cplx)> rem;
    if (f.has_samples()) {
        auto samples = std::make_shared<RadialFunction>();
        samples->sample_q = f.sample_q;
        samples->sample_f = f.sample_f;
        double gamma = p.gamma;
        rem = [samples, gamma](cplx zbar) {
            auto eval = [&](double q) { return samples->eval(q); };
            return transform_panels(eval, gamma, zbar, samples->sample_q.front(),
                                    samples->sample_q.back())
                .value;
        };
    }
    return AnalyticCoefficient(p.gamma, std::move(terms), std::move(rem));
}

cplx wavelet_coefficient(const WaveletParams& p, const AnalyticCoefficient& F,
                         const HalfPlanePoint& z) {
    return std::pow(z.a, p.gamma - 0.5) * F.eval(z.zbar());
}

cplx wavelet_coefficient(const WaveletParams& p, const RadialFunction& f,
                         const HalfPlanePoint& z) {
    return wavelet_coefficient(p, forward(p, f), z);
}

namespace {

void require_symbolic(const AnalyticCoefficient& F, const char* who) {
    if (F.has_remainder())
        throw std::logic_error(std::string(who) +
                               ": symbolic (pole-term) form required");
}

} // namespace

AnalyticCoefficient apply_zbar_dzbar(const AnalyticCoefficient& F) {
    require_symbolic(F, "apply_zbar_dzbar");
    std::vector<PoleTerm> out;
    out.reserve(2 * F.pole_terms.size());
    for (const PoleTerm& t : F.pole_terms) {
        // zbar d/dzbar [i(zbar-p)]^(-s) = -s [.]^(-s) - s i p [.]^(-s-1)
        out.push_back(PoleTerm{-t.coeff * t.order, t.order, t.pole});
        out.push_back(
            PoleTerm{-t.coeff * t.order * I * t.pole, t.order + 1.0, t.pole});
    }
    return AnalyticCoefficient(F.gamma, std::move(out));
}

AnalyticCoefficient apply_operator_map_qddq(const AnalyticCoefficient& F) {
    require_symbolic(F, "apply_operator_map_qddq");
    std::vector<PoleTerm> out;
    out.reserve(2 * F.pole_terms.size());
    for (const PoleTerm& t : F.pole_terms) {
        out.push_back(
            PoleTerm{t.coeff * (t.order - F.gamma - 1.0), t.order, t.pole});
        out.push_back(
            PoleTerm{t.coeff * t.order * I * t.pole, t.order + 1.0, t.pole});
    }
    return AnalyticCoefficient(F.gamma, std::move(out));
}

AnalyticCoefficient apply_operator_map_q(const AnalyticCoefficient& F) {
    require_symbolic(F, "apply_operator_map_q");
    std::vector<PoleTerm> out;
    out.reserve(F.pole_terms.size());
    for (const PoleTerm& t : F.pole_terms)
        out.push_back(PoleTerm{t.coeff * t.order, t.order + 1.0, t.pole});
    return AnalyticCoefficient(F.gamma, std::move(out));
}

cplx fd_dzbar(const std::function<cplx(cplx)>& F, cplx zbar, double h) {
    if (h <= 0.0) h = std::max(1e-5, 1e-5 * std::abs(zbar));
    return (-F(zbar + 2.0 * h) + 8.0 * F(zbar + h) - 8.0 * F(zbar - h) +
            F(zbar - 2.0 * h)) /
           (12.0 * h);
}

HalfPlaneGrid HalfPlaneGrid::make(double a_min, double a_max,
                                  std::size_t u_panels,
                                  std::size_t b_core_panels,
                                  std::size_t b_graded_panels,
                                  std::size_t order) {
    if (!(a_min > 0.0) || !(a_max > a_min))
        throw std::invalid_argument("HalfPlaneGrid: need 0 < a_min < a_max");
    HalfPlaneGrid g;
    g.a_min = a_min;
    g.a_max = a_max;
    const GaussRule& rule = gauss_legendre(order);

    double u_lo = std::log(a_min), u_hi = std::log(a_max);
    for (std::size_t k = 0; k < u_panels; ++k) {
        double lo = u_lo + (u_hi - u_lo) * double(k) / double(u_panels);
        double hi = u_lo + (u_hi - u_lo) * double(k + 1) / double(u_panels);
        double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double u = c + h * rule.nodes[i];
            double a = std::exp(u);
            g.a_nodes.push_back(a);
            g.a_weights.push_back(h * rule.weights[i] * a);   // da = a du
        }
    }

    // v = atan b: uniform core on [-1, 1], then panels shrinking
    // geometrically toward +-pi/2 to resolve (pi/2 - |v|)^(2s-2) behavior.
    std::vector<double> v_breaks;
    for (std::size_t k = 0; k <= b_core_panels; ++k)
        v_breaks.push_back(-1.0 + 2.0 * double(k) / double(b_core_panels));
    std::vector<double> right;
    for (std::size_t k = 1; k <= b_graded_panels; ++k)
        right.push_back(0.5 * pi - (0.5 * pi - 1.0) * std::pow(2.0, -double(k)));
    std::vector<double> all;
    for (auto it = right.rbegin(); it != right.rend(); ++it) all.push_back(-*it);
    for (double v : v_breaks) all.push_back(v);
    for (double v : right) all.push_back(v);
    for (std::size_t k = 0; k + 1 < all.size(); ++k) {
        double c = 0.5 * (all[k + 1] + all[k]), h = 0.5 * (all[k + 1] - all[k]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double v = c + h * rule.nodes[i];
            double cs = std::cos(v);
            g.b_nodes.push_back(std::tan(v));
            g.b_weights.push_back(h * rule.weights[i] / (cs * cs));   // db
        }
    }
    return g;
}

namespace {

double fit_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
    double n = double(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double ray_exponent(const std::function<cplx(cplx)>& F,
                    const std::function<cplx(double)>& ray, double r_lo,
                    double r_hi, std::size_t n, bool& monotone) {
    std::vector<double> lx, ly;
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = r_lo * std::pow(r_hi / r_lo, double(i) / double(n - 1));
        cplx zb = ray(r);
        double m = std::abs(F(zb));
        if (m == 0.0) continue;
        if (!lx.empty() && m >= prev) monotone = false;
        prev = m;
        lx.push_back(std::log(std::abs(zb)));
        ly.push_back(std::log(m));
    }
    if (lx.size() < 2) return 0.0;
    return fit_slope(lx, ly);
}

} // namespace

DecayReport decay_check(const std::function<cplx(cplx)>& F, double r_lo,
                        double r_hi, std::size_t n_samples) {
    DecayReport rep{};
    rep.monotone_tail = true;
    rep.exponent_b_plus = ray_exponent(
        F, [](double r) { return cplx(r, -1.0); }, r_lo, r_hi, n_samples,
        rep.monotone_tail);
    rep.exponent_b_minus = ray_exponent(
        F, [](double r) { return cplx(-r, -1.0); }, r_lo, r_hi, n_samples,
        rep.monotone_tail);
    rep.exponent_a = ray_exponent(
        F, [](double r) { return cplx(0.0, -r); }, r_lo, r_hi, n_samples,
        rep.monotone_tail);
    return rep;
}

DecayReport decay_check(const AnalyticCoefficient& F, double r_lo, double r_hi,
                        std::size_t n_samples) {
    return decay_check([&F](cplx z) { return F.eval(z); }, r_lo, r_hi,
                       n_samples);
}

double log_log_slope(const std::function<double(double)>& absf, double x_lo,
                     double x_hi, std::size_t n_samples) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n_samples; ++i) {
        double x = x_lo * std::pow(x_hi / x_lo, double(i) / double(n_samples - 1));
        double m = absf(x);
        if (m <= 0.0) continue;
        lx.push_back(std::log(x));
        ly.push_back(std::log(m));
    }
    if (lx.size() < 2)
        throw std::domain_error("log_log_slope: not enough nonzero samples");
    return fit_slope(lx, ly);
}

} // namespace biwave
