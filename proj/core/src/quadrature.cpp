#include "biwave/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "biwave/summation.hpp"

namespace biwave {

namespace {

// Newton iteration on P_n with the usual cosine initial guesses; the rule
// is symmetric so only half the roots are solved for.
GaussRule compute_rule(std::size_t n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pi = 3.14159265358979323846;
    std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * double(j) + 1.0) * x * p1 - double(j) * p2) /
                     (double(j) + 1.0);
            }
            pp = double(n) * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

} // namespace

const GaussRule& gauss_legendre(std::size_t n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mu;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

cplx gl_panel(const std::function<cplx(double)>& f, double lo, double hi,
              const GaussRule& rule) {
    double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    NeumaierSum<cplx> s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s.add(rule.weights[i] * f(c + h * rule.nodes[i]));
    return h * s.value();
}

cplx integrate_panels(const std::function<cplx(double)>& f,
                      const std::vector<double>& breaks, std::size_t order) {
    if (breaks.size() < 2)
        throw std::invalid_argument("integrate_panels: need >= 2 breakpoints");
    const GaussRule& rule = gauss_legendre(order);
    NeumaierSum<cplx> s;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        s.add(gl_panel(f, breaks[k], breaks[k + 1], rule));
    return s.value();
}

namespace {

struct AdaptiveState {
    const std::function<cplx(double)>* f;
    const GaussRule* rule;
    int max_depth;
    double err_acc = 0.0;
    bool depth_hit = false;
};

cplx adapt(AdaptiveState& st, double lo, double hi, cplx whole, double tol,
           int depth) {
    double mid = 0.5 * (lo + hi);
    cplx left = gl_panel(*st.f, lo, mid, *st.rule);
    cplx right = gl_panel(*st.f, mid, hi, *st.rule);
    double err = std::abs(left + right - whole);
    if (err <= tol || depth >= st.max_depth) {
        if (err > tol) st.depth_hit = true;
        st.err_acc += err;
        return left + right;
    }
    return adapt(st, lo, mid, left, 0.5 * tol, depth + 1) +
           adapt(st, mid, hi, right, 0.5 * tol, depth + 1);
}

} // namespace

QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double lo,
                              double hi, double tol, int max_depth) {
    AdaptiveState st{&f, &gauss_legendre(16), max_depth};
    cplx whole = gl_panel(f, lo, hi, *st.rule);
    cplx v = adapt(st, lo, hi, whole, tol, 0);
    if (st.depth_hit && st.err_acc > 10.0 * tol)
        throw AccuracyError("integrate_adaptive: depth limit before tolerance",
                            v, st.err_acc);
    return {v, st.err_acc};
}

std::vector<double> uniform_breaks(double lo, double hi, double max_width) {
    if (!(max_width > 0.0))
        throw std::invalid_argument("uniform_breaks: width must be > 0");
    std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / max_width));
    if (n < 1) n = 1;
    std::vector<double> b(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        b[i] = lo + (hi - lo) * double(i) / double(n);
    b.front() = lo;
    b.back() = hi;
    return b;
}

} // namespace biwave
