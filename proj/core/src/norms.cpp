#include "biwave/norms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "biwave/specfun.hpp"
#include "biwave/summation.hpp"
#include "biwave/threads.hpp"

namespace biwave {

namespace {

constexpr double pi = 3.14159265358979323846;
const cplx I{0.0, 1.0};

cplx inner_closed_form(const std::vector<Atom>& fa, const std::vector<Atom>& ga) {
    NeumaierSum<cplx> acc;
    for (const Atom& aj : fa) {
        for (const Atom& ak : ga) {
            double s = aj.alpha + ak.alpha;   // q^s under the q^2 weight
            cplx w = ak.pole - std::conj(aj.pole);   // Im > 0
            acc.add(std::conj(aj.coeff) * ak.coeff *
                    cgamma(cplx(s + 1.0, 0.0)) *
                    principal_power(-I * w, -(s + 1.0)));
        }
    }
    return acc.value();
}

} // namespace

cplx l2_weighted_inner(const RadialFunction& f, const RadialFunction& g) {
    if (f.has_samples() || g.has_samples())
        throw std::logic_error("l2_weighted_inner: atom-only inputs required");
    return inner_closed_form(f.atoms, g.atoms);
}

namespace {

// integral q^2 |f|^2 dq by log-axis panels with small-q power and large-q
// exponential models, mirroring the forward-transform endpoint treatment.
RealQuad norm_sq_quadrature(const RadialFunction& f) {
    double q0 = 1e-8;
    double q_lo = q0, q_hi = 45.0;
    bool endpoint_models = !f.atoms.empty();
    if (!endpoint_models) {
        q_lo = f.sample_q.front();
        q_hi = f.sample_q.back();
    } else {
        double kappa = 1e300;
        for (const Atom& a : f.atoms) kappa = std::min(kappa, a.pole.imag());
        q_hi = std::min(1e4, std::max(25.0 / kappa, 10.0));
        if (f.has_samples()) q_hi = std::max(q_hi, f.sample_q.back());
    }

    auto density = [&f](double q) {
        double m = std::abs(f.eval(q));
        return cplx(q * q * m * m, 0.0);
    };

    double head = 0.0, head_err = 0.0;
    if (endpoint_models) {
        double m1 = std::abs(f.eval(q0 / 4.0)), m2 = std::abs(f.eval(q0 / 2.0));
        if (m1 > 0.0 && m2 > 0.0) {
            double pfit = std::log(m2 / m1) / std::log(2.0);
            double C2 = m2 * m2 / std::pow(q0 / 2.0, 2.0 * pfit);
            double e = 2.0 * pfit + 3.0;
            if (e <= 0.0)
                throw std::domain_error("l2_weighted_norm_sq: divergent at 0");
            head = C2 * std::pow(q0, e) / e;
            head_err = 0.01 * head;
        }
    }

    auto integrand_t = [&](double t) {
        double q = std::exp(t);
        return q * density(q);
    };
    std::vector<double> breaks =
        uniform_breaks(std::log(q_lo), std::log(q_hi), 0.25);
    double v16 = integrate_panels(integrand_t, breaks, 16).real();
    double v8 = integrate_panels(integrand_t, breaks, 8).real();

    double tail = 0.0, tail_err = 0.0;
    if (endpoint_models) {
        double mQ = std::abs(f.eval(q_hi));
        if (mQ > 0.0) {
            double d = 0.02 * q_hi;
            double mQm = std::abs(f.eval(q_hi - d));
            double kappa = (mQm > mQ) ? std::log(mQm / mQ) / d : 0.0;
            if (kappa > 0.0) {
                tail = mQ * mQ * q_hi * q_hi / (2.0 * kappa);
                tail_err = 0.1 * tail;
            } else {
                tail_err = mQ * mQ * q_hi * q_hi;   // unknown decay: flag it
            }
        }
    }
    return {head + v16 + tail, head_err + std::abs(v16 - v8) + tail_err};
}

} // namespace

RealQuad l2_weighted_norm_sq(const RadialFunction& f) {
    if (!f.has_samples()) {
        if (f.atoms.empty()) return {0.0, 0.0};
        double v = inner_closed_form(f.atoms, f.atoms).real();
        return {v, 1e-14 * std::abs(v)};
    }
    return norm_sq_quadrature(f);
}

namespace {

struct ProfileTails {
    cplx high;
    cplx low;
};

// a-integral of profile(a) * a^(order-2) over the mesh plus tail models:
// beyond a_max a fitted power law, below a_min a constant profile.
cplx weighted_a_integral(const HalfPlaneGrid& grid, double order,
                         const std::vector<cplx>& profile, ProfileTails* tails) {
    NeumaierSum<cplx> acc;
    for (std::size_t i = 0; i < grid.a_nodes.size(); ++i)
        acc.add(grid.a_weights[i] * std::pow(grid.a_nodes[i], order - 2.0) *
                profile[i]);

    std::size_t n = grid.a_nodes.size();
    cplx hi{0.0, 0.0}, lo{0.0, 0.0};
    double a1 = grid.a_nodes[n - 2], a2 = grid.a_nodes[n - 1];
    double m1 = std::abs(profile[n - 2]), m2 = std::abs(profile[n - 1]);
    if (m1 > 0.0 && m2 > 0.0 && m2 < m1) {
        double pfit = std::log(m1 / m2) / std::log(a2 / a1);
        if (pfit - (order - 1.0) > 0.05)
            hi = profile[n - 1] * std::pow(a2, pfit) *
                 std::pow(grid.a_max, order - 1.0 - pfit) /
                 (pfit - (order - 1.0));
    }
    if (order > 1.0)
        lo = profile[0] * std::pow(grid.a_min, order - 1.0) / (order - 1.0);
    else if (std::abs(profile[0]) > 0.0)
        throw std::domain_error(
            "weighted_a_integral: small-a contribution diverges for order <= 1");
    if (tails) {
        tails->high = hi;
        tails->low = lo;
    }
    return acc.value() + hi + lo;
}

} // namespace

BergmanNorm bergman_norm(const AnalyticCoefficient& F, double order,
                         const HalfPlaneGrid& grid) {
    std::size_t na = grid.a_nodes.size(), nb = grid.b_nodes.size();
    std::vector<cplx> profile(na);
    std::vector<double> edge(na);
    // the outermost 16 b-nodes per side belong to the last graded panels;
    // their contribution bounds what lies beyond the b-truncation
    std::size_t edge_lo = 16, edge_hi = nb - 16;
    parallel_for(na, [&](std::size_t i) {
        double a = grid.a_nodes[i];
        NeumaierSum<double> s;
        double e = 0.0;
        for (std::size_t j = 0; j < nb; ++j) {
            double m = std::abs(F.eval(cplx(grid.b_nodes[j], -a)));
            double c = grid.b_weights[j] * m * m;
            s.add(c);
            if (j < edge_lo || j >= edge_hi) e += c;
        }
        profile[i] = cplx(s.value(), 0.0);
        edge[i] = e;
    });

    ProfileTails tails;
    cplx v = weighted_a_integral(grid, order, profile, &tails);

    std::vector<cplx> edge_profile(na);
    for (std::size_t i = 0; i < na; ++i) edge_profile[i] = cplx(edge[i], 0.0);
    double edge_part = std::abs(
        weighted_a_integral(grid, order, edge_profile, nullptr));

    BergmanNorm out;
    out.order = order;
    out.value = v.real();
    out.error =
        edge_part + 0.5 * (std::abs(tails.high) + std::abs(tails.low));
    return out;
}

namespace {

std::function<cplx(cplx)> derivative_evaluator(const AnalyticCoefficient& F) {
    if (!F.has_remainder()) {
        auto dF = std::make_shared<AnalyticCoefficient>(F.derivative());
        return [dF](cplx z) { return dF->eval(z); };
    }
    auto Fc = std::make_shared<AnalyticCoefficient>(F);
    std::function<cplx(cplx)> ev = [Fc](cplx w) { return Fc->eval(w); };
    return [ev](cplx z) { return fd_dzbar(ev, z); };
}

} // namespace

cplx a_gamma_inner_product(const AnalyticCoefficient& F,
                           const AnalyticCoefficient& G,
                           const WaveletParams& p, const HalfPlaneGrid& grid) {
    auto dF = derivative_evaluator(F);
    auto dG = derivative_evaluator(G);
    double order = 2.0 * p.gamma + 1.0;
    std::size_t na = grid.a_nodes.size(), nb = grid.b_nodes.size();
    std::vector<cplx> profile(na);
    parallel_for(na, [&](std::size_t i) {
        double a = grid.a_nodes[i];
        NeumaierSum<cplx> s;
        for (std::size_t j = 0; j < nb; ++j) {
            cplx zb(grid.b_nodes[j], -a);
            s.add(grid.b_weights[j] * std::conj(dF(zb)) * dG(zb));
        }
        profile[i] = s.value();
    });
    return weighted_a_integral(grid, order, profile, nullptr);
}

double isometry_constant(double gamma) {
    return std::pow(2.0, 2.0 * gamma) /
           (2.0 * pi * cgamma(cplx(2.0 * gamma, 0.0)).real());
}

double a_gamma_pairing_constant(double gamma) {
    return 2.0 * pi * cgamma(cplx(2.0 * gamma, 0.0)).real() /
           std::pow(2.0, 2.0 * gamma);
}

double a_gamma_pairing_constant_printed(double gamma) {
    return 2.0 * pi * cgamma(cplx(2.0 * gamma - 2.0, 0.0)).real() /
           std::pow(2.0, 2.0 * gamma - 2.0);
}

IsometryReport isometry_check(const RadialFunction& f, const WaveletParams& p,
                              const HalfPlaneGrid& grid) {
    RealQuad lhs = l2_weighted_norm_sq(f);
    AnalyticCoefficient F = forward(p, f);
    double order = 2.0 * p.gamma + 1.0;

    BergmanNorm bn;
    if (!F.has_remainder()) {
        bn = bergman_norm(F.derivative(), order, grid);
    } else {
        auto dF = derivative_evaluator(F);
        bn = bergman_norm(AnalyticCoefficient(p.gamma, {}, dF), order, grid);
    }

    IsometryReport rep;
    rep.lhs = lhs.value;
    rep.rhs = isometry_constant(p.gamma) * bn.value;
    rep.rhs_error = isometry_constant(p.gamma) * bn.error + lhs.error;
    double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
    rep.rel_discrepancy = std::abs(rep.lhs - rep.rhs) / scale;
    return rep;
}

} // namespace biwave
