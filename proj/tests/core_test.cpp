#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "biwave/types.hpp"

using biwave::cplx;

TEST_CASE("principal power matches reference values") {
    CHECK(biwave::principal_power(2.0, -1.6).real() ==
          doctest::Approx(0.32987697769322356484).epsilon(1e-14));
    CHECK(biwave::principal_power(2.0, -1.6).imag() == doctest::Approx(0.0));
    // i^2 = -1 on the principal branch
    cplx sq = biwave::principal_power(cplx(0.0, 1.0), 2.0);
    CHECK(std::abs(sq - cplx(-1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(biwave::principal_power(0.0, 0.5), std::domain_error);
}

TEST_CASE("principal power is additive in the exponent off the cut") {
    const cplx ws[] = {{2.0, 1.0}, {0.3, -0.7}, {5.0, 0.0}, {1e-3, 2.0}};
    const cplx ss[] = {{-1.6, 0.0}, {2.3, 0.4}, {0.5, -1.0}};
    for (cplx w : ws)
        for (cplx s : ss)
            for (cplx t : ss) {
                cplx lhs = biwave::principal_power(w, s + t);
                cplx rhs = biwave::principal_power(w, s) *
                           biwave::principal_power(w, t);
                CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
            }
}

TEST_CASE("half-plane points live strictly above the axis") {
    biwave::HalfPlanePoint z(0.5, 2.0);
    CHECK(z.z() == cplx(0.5, 2.0));
    CHECK(z.zbar() == cplx(0.5, -2.0));
    CHECK_THROWS_AS(biwave::HalfPlanePoint(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(biwave::HalfPlanePoint(1.0, -0.1), std::domain_error);
}

TEST_CASE("wavelet classification covers the whole gamma axis") {
    using biwave::WaveletClass;
    CHECK(biwave::validate_params(biwave::WaveletParams(1.5)).wavelet_class ==
          WaveletClass::admissible);
    CHECK(biwave::validate_params(biwave::WaveletParams(1.0)).wavelet_class ==
          WaveletClass::square_integrable_only);
    CHECK(biwave::validate_params(biwave::WaveletParams(0.75)).wavelet_class ==
          WaveletClass::square_integrable_only);
    CHECK(biwave::validate_params(biwave::WaveletParams(0.5)).wavelet_class ==
          WaveletClass::not_square_integrable);
    CHECK(biwave::validate_params(biwave::WaveletParams(0.3)).wavelet_class ==
          WaveletClass::not_square_integrable);
    CHECK_THROWS_AS(biwave::WaveletParams(0.0), std::domain_error);
    CHECK_THROWS_AS(biwave::WaveletParams(-1.0), std::domain_error);
}

TEST_CASE("atoms evaluate and decay as advertised") {
    biwave::Atom a(cplx(2.0, 0.0), 1.5, cplx(0.3, 1.0));
    // c q^(alpha-1) e^(i pole q) at q = 2
    cplx want = 2.0 * std::sqrt(2.0) * std::exp(cplx(0.0, 0.6)) * std::exp(-2.0);
    CHECK(std::abs(a.eval(2.0) - want) < 1e-15 * std::abs(want));
    for (double q : {0.1, 1.0, 7.0, 30.0})
        CHECK(std::abs(a.eval(q)) <=
              2.0 * std::pow(q, 0.5) * std::exp(-q) * (1.0 + 1e-14));
    CHECK_THROWS_AS(biwave::Atom(1.0, -0.1, cplx(0.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(biwave::Atom(1.0, 1.0, cplx(0.0, -1.0)), std::domain_error);
    CHECK_THROWS_AS(a.eval(0.0), std::domain_error);
}

TEST_CASE("radial functions validate their grids") {
    CHECK_THROWS_AS(biwave::RadialFunction({1.0, 1.0}, {cplx(1.0), cplx(2.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(biwave::RadialFunction({-1.0, 1.0}, {cplx(1.0), cplx(2.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(biwave::RadialFunction({1.0, 2.0}, {cplx(1.0)}),
                    std::invalid_argument);
    auto grid = biwave::RadialFunction::log_grid(0.1, 10.0, 25);
    CHECK(grid.size() == 25);
    CHECK(grid.front() == doctest::Approx(0.1));
    CHECK(grid.back() == doctest::Approx(10.0));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("sampled radial functions interpolate smooth data") {
    auto grid = biwave::RadialFunction::log_grid(0.5, 2.0, 200);
    auto f = biwave::RadialFunction::sampled(
        [](double q) { return cplx(std::sin(q), 0.0); }, grid);
    for (double q : {0.61, 0.975, 1.33, 1.87}) {
        CHECK(std::abs(f.eval(q) - std::sin(q)) < 1e-9);
    }
    // zero outside the sampled support
    CHECK(std::abs(f.eval(0.01)) == 0.0);
    CHECK(std::abs(f.eval(50.0)) == 0.0);
}

TEST_CASE("radial eval sums atom and sampled parts") {
    biwave::RadialFunction f({biwave::Atom(1.0, 1.0, cplx(0.0, 1.0))});
    auto grid = biwave::RadialFunction::log_grid(0.5, 2.0, 50);
    f.sample_q = grid;
    f.sample_f.assign(grid.size(), cplx(0.25, 0.0));
    CHECK(std::abs(f.eval(1.0) - (std::exp(-1.0) + 0.25)) < 1e-12);
    CHECK(std::abs(f.eval(10.0) - std::exp(-10.0)) < 1e-15);
}

TEST_CASE("pole terms differentiate exactly") {
    biwave::PoleTerm t{cplx(1.3, -0.2), 1.6, cplx(0.0, 1.0)};
    biwave::PoleTerm dt = t.derivative();
    CHECK(dt.order == doctest::Approx(2.6));
    cplx zb(0.4, -0.8);
    double h = 1e-5;
    cplx fd = (-t.eval(zb + 2 * h) + 8.0 * t.eval(zb + h) - 8.0 * t.eval(zb - h) +
               t.eval(zb - 2 * h)) /
              (12.0 * h);
    CHECK(std::abs(fd - dt.eval(zb)) < 1e-9 * std::abs(dt.eval(zb)));
}

TEST_CASE("analytic coefficients enforce their domain") {
    biwave::AnalyticCoefficient F(
        0.6, {biwave::PoleTerm{1.0, 1.6, cplx(0.0, 1.0)}});
    CHECK_THROWS_AS(F.eval(cplx(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(F.eval(cplx(1.0, 0.5)), std::domain_error);
    CHECK(std::abs(F.eval(cplx(1.0, -0.5))) > 0.0);
    // order below gamma would reconstruct to a negative atom exponent
    CHECK_THROWS_AS(biwave::AnalyticCoefficient(
                        0.6, {biwave::PoleTerm{1.0, 0.3, cplx(0.0, 1.0)}}),
                    std::domain_error);
    CHECK_THROWS_AS(biwave::AnalyticCoefficient(
                        0.6, {biwave::PoleTerm{1.0, 1.6, cplx(0.0, -1.0)}}),
                    std::domain_error);
}

TEST_CASE("coefficient algebra: sum, scale, derivative") {
    biwave::PoleTerm t1{cplx(1.0, 0.0), 1.6, cplx(0.0, 1.0)};
    biwave::PoleTerm t2{cplx(0.0, 2.0), 2.1, cplx(0.5, 0.7)};
    biwave::AnalyticCoefficient F(0.6, {t1});
    biwave::AnalyticCoefficient G(0.6, {t2});
    cplx zb(0.3, -1.1);
    auto S = F + G;
    CHECK(std::abs(S.eval(zb) - (F.eval(zb) + G.eval(zb))) < 1e-15);
    auto M = F * cplx(0.0, 3.0);
    CHECK(std::abs(M.eval(zb) - cplx(0.0, 3.0) * F.eval(zb)) < 1e-15);
    biwave::AnalyticCoefficient H(0.8, {t1});
    CHECK_THROWS_AS(F + H, std::invalid_argument);

    biwave::AnalyticCoefficient R(0.6, {}, [](cplx z) { return z; });
    CHECK(R.has_remainder());
    CHECK_THROWS_AS(R.derivative(), std::logic_error);
}

TEST_CASE("accuracy errors carry their best estimate") {
    biwave::AccuracyError e("quadrature stalled", cplx(1.0, 2.0), 1e-3);
    CHECK(e.best_estimate == cplx(1.0, 2.0));
    CHECK(e.error_estimate == doctest::Approx(1e-3));
    CHECK(std::string(e.what()) == "quadrature stalled");
}
