#include "biwave/dirac_oracle.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace biwave {
namespace oracle {

namespace {

namespace ode = boost::numeric::odeint;

struct Coeffs {
    double chi, lam, cp, cm;
};

Coeffs make_coeffs(const dirac::DiracParams& p, double epsilon) {
    if (!(std::abs(epsilon) < p.m))
        throw std::domain_error("dirac oracle: |epsilon| < m required");
    Coeffs c;
    c.chi = p.chi;
    c.lam = p.lambda;
    c.cp = std::sqrt((p.m + epsilon) / (p.m - epsilon));
    c.cm = 1.0 / c.cp;
    return c;
}

// radial system in t = ln q (the regular singular point at q = 0 becomes
// an ordinary limit): f' here means df/dt = q df/dq
template <typename State>
void rhs2(const Coeffs& c, const State& y, State& dy, double t) {
    double q = std::exp(t);
    dy[0] = -(1.0 + c.chi) * y[0] + (c.lam + 0.5 * q * c.cp) * y[1];
    dy[1] = -(1.0 - c.chi) * y[1] + (0.5 * q * c.cm - c.lam) * y[0];
}

// two-term Frobenius start f,g = q^(gamma-1)(x0 + x1 q)
struct SeriesStart {
    double a0, b0, a1, b1;
    std::array<double, 2> at(double q, double gamma) const {
        double head = std::pow(q, gamma - 1.0);
        return {head * (a0 + a1 * q), head * (b0 + b1 * q)};
    }
};

SeriesStart frobenius_start(const dirac::DiracParams& p, const Coeffs& c) {
    SeriesStart s;
    double g = p.gamma;
    s.a0 = 1.0;
    s.b0 = (g + c.chi) / c.lam;
    double det = 2.0 * g + 1.0;
    s.a1 = ((g + 1.0 - c.chi) * 0.5 * c.cp * s.b0 +
            c.lam * 0.5 * c.cm * s.a0) /
           det;
    s.b1 = ((g + 1.0 + c.chi) * 0.5 * c.cm * s.a0 -
            c.lam * 0.5 * c.cp * s.b0) /
           det;
    return s;
}

using state2 = std::array<double, 2>;
using state3 = std::array<double, 3>;

} // namespace

Trajectory integrate_radial(const dirac::DiracParams& p, double epsilon,
                            const ShootingConfig& cfg) {
    Coeffs c = make_coeffs(p, epsilon);
    SeriesStart start = frobenius_start(p, c);
    state2 y = start.at(cfg.q_min, p.gamma);
    double t0 = std::log(cfg.q_min), t1 = std::log(cfg.q_max);

    Trajectory tr;
    auto stepper = ode::make_controlled(cfg.abs_tol, cfg.rel_tol,
                                        ode::runge_kutta_fehlberg78<state2>());
    ode::integrate_adaptive(
        stepper,
        [&c](const state2& s, state2& ds, double t) { rhs2(c, s, ds, t); }, y,
        t0, t1, 0.01, [&tr](const state2& s, double t) {
            tr.q.push_back(std::exp(t));
            tr.f.push_back(s[0]);
            tr.g.push_back(s[1]);
        });
    return tr;
}

double matching_mismatch(const dirac::DiracParams& p, double epsilon,
                         const ShootingConfig& cfg) {
    Coeffs c = make_coeffs(p, epsilon);
    SeriesStart start = frobenius_start(p, c);
    state2 y = start.at(cfg.q_min, p.gamma);
    double t0 = std::log(cfg.q_min), t1 = std::log(cfg.q_max);
    auto stepper = ode::make_controlled(cfg.abs_tol, cfg.rel_tol,
                                        ode::runge_kutta_fehlberg78<state2>());
    ode::integrate_adaptive(
        stepper,
        [&c](const state2& s, state2& ds, double t) { rhs2(c, s, ds, t); }, y,
        t0, t1, 0.01);
    // df/dq from the system itself, then the decaying-mode gauge f' + f/2
    double q = cfg.q_max;
    double dfdq =
        (-(1.0 + c.chi) * y[0] + (c.lam + 0.5 * q * c.cp) * y[1]) / q;
    double norm = std::sqrt(y[0] * y[0] + y[1] * y[1]);
    if (norm == 0.0) return 0.0;
    return (dfdq + 0.5 * y[0]) / norm;
}

std::pair<double, double> bracket_for_level(const dirac::DiracParams& p,
                                            int n) {
    if (n < 0) throw std::domain_error("bracket_for_level: n must be >= 0");
    if (n == 0 && p.chi > 0.0)
        throw std::domain_error(
            "bracket_for_level: no n = 0 bound state for chi > 0");
    // eta_tilde + gamma = lambda e/sqrt(m^2-e^2) is monotone in e; bracket
    // the target value gamma + n in that variable and map back
    double t_lo = p.gamma + double(n) - 0.45;
    double t_hi = p.gamma + double(n) + 0.45;
    if (t_lo <= 0.0) t_lo = 0.5 * p.gamma;
    auto eps_of = [&p](double t) {
        return p.m * t / std::sqrt(p.lambda * p.lambda + t * t);
    };
    return {eps_of(t_lo), eps_of(t_hi)};
}

double shoot_eigenvalue(const dirac::DiracParams& p,
                        std::pair<double, double> bracket,
                        const ShootingConfig& cfg) {
    double lo = bracket.first, hi = bracket.second;
    if (!(lo < hi))
        throw std::invalid_argument("shoot_eigenvalue: degenerate bracket");
    double flo = matching_mismatch(p, lo, cfg);
    double fhi = matching_mismatch(p, hi, cfg);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument(
            "shoot_eigenvalue: no sign change inside bracket");
    auto fn = [&](double e) { return matching_mismatch(p, e, cfg); };
    auto tol = [&cfg](double a, double b) {
        return (b - a) <= cfg.eps_rel_tol * 0.5 * (std::abs(a) + std::abs(b));
    };
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

namespace {

struct SweepResult {
    std::vector<state2> at_grid;   // values at requested grid points
    state2 at_stitch;
    double weight;                 // accumulated integral of q^3 (f^2+g^2) dt
};

// integrates the system plus the running norm integral through a list of
// t checkpoints (ascending or descending; dt sign must match)
SweepResult sweep(const Coeffs& c, state3 y, const std::vector<double>& times,
                  double dt0, const ShootingConfig& cfg) {
    SweepResult out;
    auto stepper = ode::make_controlled(cfg.abs_tol, cfg.rel_tol,
                                        ode::runge_kutta_fehlberg78<state3>());
    auto rhs = [&c](const state3& s, state3& ds, double t) {
        state2 y2{s[0], s[1]}, dy2;
        rhs2(c, y2, dy2, t);
        ds[0] = dy2[0];
        ds[1] = dy2[1];
        double q = std::exp(t);
        ds[2] = q * q * q * (s[0] * s[0] + s[1] * s[1]);
    };
    std::vector<state2> rec;
    ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), dt0,
                         [&rec](const state3& s, double) {
                             rec.push_back(state2{s[0], s[1]});
                         });
    out.at_grid.assign(rec.begin() + 1, rec.end());   // skip the start point
    out.at_stitch = rec.back();
    out.weight = std::abs(y[2]);
    return out;
}

} // namespace

Trajectory eigenfunction(const dirac::DiracParams& p, double epsilon,
                         const std::vector<double>& q_grid,
                         const ShootingConfig& cfg) {
    if (q_grid.empty()) throw std::invalid_argument("eigenfunction: empty grid");
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        if (!(q_grid[i] > cfg.q_min) || !(q_grid[i] < cfg.q_max))
            throw std::domain_error(
                "eigenfunction: grid must lie inside (q_min, q_max)");
        if (i > 0 && !(q_grid[i] > q_grid[i - 1]))
            throw std::invalid_argument("eigenfunction: grid must increase");
    }
    Coeffs c = make_coeffs(p, epsilon);

    double q_stitch =
        std::clamp(0.4 * q_grid.back(), std::min(2.0, q_grid.back()), 10.0);
    double t_stitch = std::log(q_stitch);

    // outward sweep covers grid points below the stitch
    SeriesStart start = frobenius_start(p, c);
    state2 y0 = start.at(cfg.q_min, p.gamma);
    double small_tail = (start.a0 * start.a0 + start.b0 * start.b0) *
                        std::pow(cfg.q_min, 2.0 * p.gamma + 1.0) /
                        (2.0 * p.gamma + 1.0);
    std::vector<double> t_out{std::log(cfg.q_min)};
    std::size_t n_low = 0;
    for (double q : q_grid)
        if (q < q_stitch) {
            t_out.push_back(std::log(q));
            ++n_low;
        }
    t_out.push_back(t_stitch);
    SweepResult out_sweep =
        sweep(c, state3{y0[0], y0[1], small_tail}, t_out, 0.01, cfg);

    // inward sweep from the decaying asymptotics covers the rest
    double root = std::sqrt(p.m * p.m - epsilon * epsilon);
    double sigma = p.lambda * epsilon / root - 1.0;
    double v1 = 2.0 * c.cm * (sigma + 1.0 + p.chi + p.lambda * c.cm);
    double qM = cfg.q_max;
    double head = std::exp(-0.5 * qM) * std::pow(qM, sigma);
    state2 yM{head, head * (-c.cm + v1 / qM)};
    std::vector<double> t_in{std::log(qM)};
    for (std::size_t i = q_grid.size(); i-- > 0;)
        if (q_grid[i] >= q_stitch) t_in.push_back(std::log(q_grid[i]));
    t_in.push_back(t_stitch);
    SweepResult in_sweep = sweep(c, state3{yM[0], yM[1], 0.0}, t_in, -0.01, cfg);

    // least-squares scale matching the inward branch to the outward one
    const state2& o = out_sweep.at_stitch;
    const state2& iv = in_sweep.at_stitch;
    double denom = iv[0] * iv[0] + iv[1] * iv[1];
    if (denom == 0.0)
        throw std::runtime_error("eigenfunction: inward solution vanished");
    double s = (o[0] * iv[0] + o[1] * iv[1]) / denom;

    // small_tail is already seeded into the outward running integral
    double norm_sq = out_sweep.weight + s * s * in_sweep.weight;
    double scale = 1.0 / std::sqrt(norm_sq);

    Trajectory tr;
    tr.q = q_grid;
    tr.f.resize(q_grid.size());
    tr.g.resize(q_grid.size());
    for (std::size_t i = 0; i < n_low; ++i) {
        tr.f[i] = scale * out_sweep.at_grid[i][0];
        tr.g[i] = scale * out_sweep.at_grid[i][1];
    }
    std::size_t n_high = q_grid.size() - n_low;
    for (std::size_t j = 0; j < n_high; ++j) {
        // inward grid records run from high q down
        const state2& v = in_sweep.at_grid[j];
        std::size_t i = q_grid.size() - 1 - j;
        tr.f[i] = scale * s * v[0];
        tr.g[i] = scale * s * v[1];
    }
    if (tr.f.front() < 0.0) {
        for (double& x : tr.f) x = -x;
        for (double& x : tr.g) x = -x;
    }
    return tr;
}

namespace {

// Fornberg first-derivative weights on five arbitrary nodes
std::array<double, 5> deriv5_weights(const double* x, double x0) {
    std::array<double, 5> w{};
    for (int j = 0; j < 5; ++j) {
        double num = 0.0;
        for (int k = 0; k < 5; ++k) {
            if (k == j) continue;
            double prod = 1.0;
            for (int l = 0; l < 5; ++l) {
                if (l == j || l == k) continue;
                prod *= (x0 - x[l]);
            }
            num += prod;
        }
        double den = 1.0;
        for (int k = 0; k < 5; ++k)
            if (k != j) den *= (x[j] - x[k]);
        w[std::size_t(j)] = num / den;
    }
    return w;
}

} // namespace

ResidualReport residual(const dirac::DiracParams& p, double epsilon,
                        const std::vector<double>& q,
                        const std::vector<double>& f,
                        const std::vector<double>& g) {
    if (q.size() < 5 || f.size() != q.size() || g.size() != q.size())
        throw std::invalid_argument("residual: need matched grids, >= 5 points");
    Coeffs c = make_coeffs(p, epsilon);

    double peak = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        peak = std::max(peak, std::abs(f[i]) + std::abs(g[i]));
    if (peak == 0.0) return {0.0, false};

    std::vector<double> t(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) t[i] = std::log(q[i]);

    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < q.size(); ++i) {
        std::size_t lo = i - 2;
        auto w = deriv5_weights(t.data() + lo, t[i]);
        double dfdt = 0.0, dgdt = 0.0;
        for (int j = 0; j < 5; ++j) {
            dfdt += w[std::size_t(j)] * f[lo + std::size_t(j)];
            dgdt += w[std::size_t(j)] * g[lo + std::size_t(j)];
        }
        double qq = q[i];
        double r1 = dfdt + (1.0 + c.chi) * f[i] -
                    (c.lam + 0.5 * qq * c.cp) * g[i];
        double r2 = dgdt + (1.0 - c.chi) * g[i] -
                    (0.5 * qq * c.cm - c.lam) * f[i];
        double coeff_scale =
            1.0 + std::abs(c.chi) + c.lam + 0.5 * qq * (c.cp + c.cm);
        double scale = (std::abs(f[i]) + std::abs(g[i])) * coeff_scale;
        if (scale < 1e-14 * peak) continue;   // below noise floor of the input
        worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)) / scale);
    }
    return {worst, true};
}

} // namespace oracle
} // namespace biwave
