// biwave: spectra, eigenfunction dumps, transform demos and a verification
// suite for the half-line wavelet transform applied to the Coulomb-Dirac
// bound-state problem.  Output is deterministic: fixed formatting, no
// timestamps in data files (run metadata goes to an optional sidecar).
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <random>
#include <string>
#include <vector>

#include "biwave/dirac.hpp"
#include "biwave/dirac_oracle.hpp"
#include "biwave/norms.hpp"
#include "biwave/reconstruct.hpp"
#include "biwave/threads.hpp"
#include "biwave/transform.hpp"

namespace {

using biwave::cplx;

constexpr const char* version_string = "0.1.0";

struct Sink {
    std::FILE* fp = stdout;
    bool owned = false;
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            fp = std::fopen(path.c_str(), "w");
            if (!fp) throw std::runtime_error("cannot open output file: " + path);
            owned = true;
        }
    }
    ~Sink() {
        if (owned) std::fclose(fp);
    }
    Sink(const Sink&) = delete;
    Sink& operator=(const Sink&) = delete;
};

// "a..b" inclusive or a single "a"; a > b is a valid empty range
std::pair<int, int> parse_range(const std::string& s) {
    auto to_int = [](const std::string& t) {
        std::size_t used = 0;
        int v = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad level range: " + t);
        if (v < 0) throw std::invalid_argument("levels must be >= 0");
        return v;
    };
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int v = to_int(s);
        return {v, v};
    }
    return {to_int(s.substr(0, dots)), to_int(s.substr(dots + 2))};
}

struct PhysicalOpts {
    double lambda = 0.6;
    int N = 0;            // 0 = not given; otherwise lambda = N/137
    double chi = -1.0;
    bool has_N() const { return N > 0; }

    biwave::dirac::DiracParams params() const {
        if (has_N()) return biwave::dirac::DiracParams::from_charge(N, chi);
        return biwave::dirac::DiracParams(1.0, lambda, chi);
    }
};

void add_physical_flags(CLI::App* cmd, PhysicalOpts& o) {
    auto* lam = cmd->add_option("--lambda", o.lambda, "Coulomb coupling (m = 1)");
    auto* n = cmd->add_option("--N", o.N, "nuclear charge; sets lambda = N/137 and m = 510998.95 eV");
    lam->excludes(n);
    n->excludes(lam);
    cmd->add_option("--chi", o.chi, "angular number, nonzero integer")->required();
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOpts {
    PhysicalOpts phys;
    std::string range = "0..5";
    std::string output;
};

int run_spectrum(const SpectrumOpts& o) {
    auto p = o.phys.params();
    auto [lo, hi] = parse_range(o.range);
    Sink out(o.output);
    if (o.phys.has_N())
        std::fprintf(out.fp,
                     "# n, eps_over_m, binding_over_m, eta, eta_tilde, eps_ev, binding_ev\n");
    else
        std::fprintf(out.fp, "# n, eps_over_m, binding_over_m, eta, eta_tilde\n");
    for (int n = lo; n <= hi; ++n) {
        double eps = biwave::dirac::spectrum(p, n);
        auto sm = biwave::dirac::build_matrices(p, eps);
        std::fprintf(out.fp, "%d,%.17g,%.17g,%.17g,%.17g", n, eps / p.m,
                     (p.m - eps) / p.m, sm.eta, sm.eta_tilde);
        if (o.phys.has_N())
            std::fprintf(out.fp, ",%.17g,%.17g", eps, p.m - eps);
        std::fprintf(out.fp, "\n");
    }
    return 0;
}

// ------------------------------------------------------------ wavefunction

struct WavefunctionOpts {
    PhysicalOpts phys;
    int n = 0;
    double q_min = 1e-3;
    double q_max = 40.0;
    std::size_t points = 800;
    std::string output;
};

int run_wavefunction(const WavefunctionOpts& o) {
    auto p = o.phys.params();
    double eps = biwave::dirac::spectrum(p, o.n);
    // reject n = 0 on the chi > 0 branch up front
    biwave::dirac::bound_state(p, o.n);
    auto grid = biwave::RadialFunction::log_grid(o.q_min, o.q_max, o.points);
    Sink out(o.output);
    std::fprintf(out.fp, "# q, f, g  (unit L2(q^2 dq) norm, f > 0 at small q)\n");
    std::fprintf(out.fp, "# n=%d lambda=%.17g chi=%.17g gamma=%.17g eps_over_m=%.17g\n",
                 o.n, p.lambda, p.chi, p.gamma, eps / p.m);
    for (double q : grid) {
        auto fg = biwave::dirac::eigenfunction_config(p, o.n, q);
        std::fprintf(out.fp, "%.17g,%.17g,%.17g\n", q, fg[0], fg[1]);
    }
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
    PhysicalOpts phys;
    double tol_override = 0.0;   // 0 = use per-check defaults
    std::string output;
};

struct CheckRow {
    std::string name;
    double value;
    double expected;
    double tolerance;
    bool pass() const { return std::abs(value - expected) <= tolerance; }
};

int run_verify(const VerifyOpts& o) {
    auto p = o.phys.params();
    std::vector<CheckRow> rows;
    auto tol = [&o](double dflt) {
        return o.tol_override > 0.0 ? o.tol_override : dflt;
    };

    for (int n = 0; n <= 5; ++n) {
        double s = biwave::dirac::spectrum(p, n);
        double q = biwave::dirac::quantize(p, n);
        rows.push_back({"quantize-vs-spectrum-n" + std::to_string(n),
                        q / s, 1.0, tol(1e-12)});
    }

    {
        std::mt19937 rng(20240815u);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            double chi = (k % 2 ? 1.0 : -1.0) * double(1 + k % 3);
            double lam = (0.1 + 0.8 * u01(rng)) * std::abs(chi) / 2.0;
            if (lam >= std::abs(chi)) lam = 0.9 * std::abs(chi);
            biwave::dirac::DiracParams dp(1.0, lam, chi);
            double eps;
            do {
                eps = (0.1 + 0.89 * u01(rng)) * dp.m;
            } while (std::abs(-dp.gamma + lam * eps /
                              std::sqrt(dp.m * dp.m - eps * eps)) < 1e-3);
            auto sm = biwave::dirac::build_matrices(dp, eps);
            double tau = sm.eta_tilde - sm.eta;
            biwave::dirac::Matrix2 lhs[8] = {
                sm.Ap * sm.Ap, sm.Ap * sm.Bp, sm.Bp * sm.Bp, sm.Bp * sm.Ap,
                sm.A * sm.A,   sm.A * sm.B_checked(),
                sm.B_checked() * sm.B_checked(), sm.B_checked() * sm.A};
            biwave::dirac::Matrix2 rhs[8] = {
                2.0 * dp.gamma * sm.Ap, tau * sm.Ap, tau * sm.Bp,
                2.0 * dp.gamma * sm.Bp, sm.A,        sm.A,
                sm.B_checked(),         sm.B_checked()};
            for (int i = 0; i < 8; ++i) {
                double scale = std::max(rhs[i].cwiseAbs().maxCoeff(), 1.0);
                worst = std::max(worst,
                                 (lhs[i] - rhs[i]).cwiseAbs().maxCoeff() / scale);
            }
        }
        rows.push_back({"matrix-identities-max-dev", worst, 0.0, tol(1e-12)});
    }

    {
        biwave::WaveletParams wp(0.6);
        biwave::Atom atom(1.0, 1.0, cplx(0.0, 1.0));
        auto F = biwave::forward_atom(wp, atom);
        auto back = biwave::reconstruct_atoms(wp, F);
        double worst = 0.0;
        for (double q : biwave::RadialFunction::log_grid(0.05, 20.0, 20)) {
            cplx a = atom.eval(q), b = back.eval(q);
            worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
        rows.push_back({"transform-roundtrip-symbolic", worst, 0.0, tol(1e-12)});

        double qworst = 0.0;
        for (double a : {0.3, 1.0, 3.0})
            for (double b : {-1.5, 0.0, 2.0}) {
                cplx zb(b, -a);
                auto qr = biwave::forward_quadrature(
                    wp, [&atom](double q) { return atom.eval(q); }, zb);
                qworst = std::max(qworst,
                                  std::abs(qr.value - F.eval(zb)) / std::abs(F.eval(zb)));
            }
        rows.push_back({"transform-quadrature", qworst, 0.0, tol(1e-8)});

        // q d/dq on the atom: q f' = (alpha-1) f + i pole q f
        auto mapped = biwave::apply_operator_map_qddq(F);
        auto qfp = [&atom](double q) {
            return (atom.alpha - 1.0) * atom.eval(q) +
                   cplx(0.0, 1.0) * atom.pole * q * atom.eval(q);
        };
        double mworst = 0.0;
        for (double a : {0.5, 2.0}) {
            cplx zb(0.7, -a);
            auto qr = biwave::forward_quadrature(wp, qfp, zb);
            mworst = std::max(mworst, std::abs(qr.value - mapped.eval(zb)));
        }
        rows.push_back({"operator-map-quadrature", mworst, 0.0, tol(1e-8)});

        biwave::ReconstructionWavelet rw(wp);
        auto pairing = biwave::forward_quadrature(
            wp, [](double q) { return std::exp(-0.5 * q) / q; }, cplx(0.0, -0.5));
        rows.push_back({"pairing-integral",
                        2.0 * M_PI * rw.value * pairing.value.real(), 1.0,
                        tol(1e-10)});
    }

    {
        int n0 = p.chi > 0 ? 1 : 0;
        for (int n = n0; n <= n0 + 2; ++n) {
            double worst = 0.0;
            for (double a : {0.4, 1.1})
                for (double b : {-0.8, 1.3})
                    worst = std::max(worst, biwave::dirac::z_system_residual(
                                                p, n, cplx(b, -a)));
            rows.push_back({"z-system-residual-n" + std::to_string(n), worst,
                            0.0, tol(1e-8)});
        }
    }

    bool all_pass = true;
    nlohmann::json report = nlohmann::json::array();
    for (const auto& r : rows) {
        all_pass = all_pass && r.pass();
        report.push_back({{"check", r.name},
                          {"status", r.pass() ? "pass" : "fail"},
                          {"value", r.value},
                          {"expected", r.expected},
                          {"tolerance", r.tolerance}});
    }
    Sink out(o.output);
    std::fprintf(out.fp, "%s\n", report.dump(2).c_str());
    return all_pass ? 0 : 1;
}

// ----------------------------------------------------------- transform-demo

struct DemoOpts {
    double gamma = 0.6;
    double coeff = 1.0;
    double alpha = 1.0;
    double pole_re = 0.0;
    double pole_im = 1.0;
    std::size_t a_count = 8;
    std::size_t b_count = 17;
    std::string output;
};

int run_transform_demo(const DemoOpts& o) {
    biwave::WaveletParams wp(o.gamma);
    biwave::Atom atom(o.coeff, o.alpha, cplx(o.pole_re, o.pole_im));
    auto F = biwave::forward_atom(wp, atom);

    Sink out(o.output);
    std::fprintf(out.fp, "# b, a, re_F, im_F, abs_coeff\n");
    std::fprintf(out.fp,
                 "# gamma=%.17g coeff=%.17g alpha=%.17g pole=%.17g%+.17gi\n",
                 o.gamma, o.coeff, o.alpha, o.pole_re, o.pole_im);
    for (std::size_t i = 0; i < o.a_count; ++i) {
        double a = 0.1 * std::pow(100.0, o.a_count == 1
                                             ? 0.0
                                             : double(i) / double(o.a_count - 1));
        for (std::size_t j = 0; j < o.b_count; ++j) {
            double b = -4.0 + 8.0 * (o.b_count == 1
                                         ? 0.5
                                         : double(j) / double(o.b_count - 1));
            biwave::HalfPlanePoint z(b, a);
            cplx v = F.eval(z.zbar());
            cplx w = biwave::wavelet_coefficient(wp, F, z);
            std::fprintf(out.fp, "%.17g,%.17g,%.17g,%.17g,%.17g\n", b, a,
                         v.real(), v.imag(), std::abs(w));
        }
    }

    auto back = biwave::reconstruct_atoms(wp, F);
    double worst = 0.0;
    for (double q : biwave::RadialFunction::log_grid(0.05, 20.0, 20)) {
        cplx want = atom.eval(q), got = back.eval(q);
        double scale = std::max(std::abs(want), 1e-300);
        double err = std::abs(want - got);
        worst = std::max(worst, o.coeff == 0.0 ? err : err / scale);
    }
    std::fprintf(out.fp, "# roundtrip_max_rel_error=%.17g\n", worst);

    if (o.gamma > 1.0) {
        // both inverse routes exist here; report their disagreement
        std::vector<double> probe{0.5, 1.0, 2.0};
        auto bi = biwave::reconstruct_grid(wp, F, probe);
        auto ad = biwave::reconstruct_admissible(wp, F, probe);
        double diff = 0.0;
        for (std::size_t i = 0; i < probe.size(); ++i)
            diff = std::max(diff, std::abs(bi.f.sample_f[i] - ad.f.sample_f[i]));
        std::fprintf(out.fp, "# biorthogonal_vs_admissible_max_diff=%.17g\n", diff);
    }
    return 0;
}

// ---------------------------------------------------------------- sidecar

void write_metadata(const std::string& path, int argc, char** argv) {
    if (path.empty()) return;
    nlohmann::json meta;
    meta["version"] = version_string;
    meta["threads"] = biwave::thread_count();
    std::string cmdline;
    for (int i = 0; i < argc; ++i) {
        if (i) cmdline += ' ';
        cmdline += argv[i];
    }
    meta["command"] = cmdline;
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta["generated"] = buf;
    Sink out(path);
    std::fprintf(out.fp, "%s\n", meta.dump(2).c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-line wavelet transform toolkit for the Coulomb-Dirac atom"};
    app.set_version_flag("--version", version_string);
    app.set_config("--config", "", "read options from a key=value file");
    app.require_subcommand(1);

    std::string metadata_path;
    app.add_option("--metadata", metadata_path,
                   "write run metadata (version, threads, time) to this sidecar file");

    SpectrumOpts so;
    auto* spectrum = app.add_subcommand("spectrum", "bound-level table");
    add_physical_flags(spectrum, so.phys);
    spectrum->add_option("--n", so.range, "level or inclusive range a..b");
    spectrum->add_option("--output", so.output, "output file (default stdout)");

    WavefunctionOpts wo;
    auto* wavefunction =
        app.add_subcommand("wavefunction", "radial eigenfunction dump");
    add_physical_flags(wavefunction, wo.phys);
    wavefunction->add_option("--n", wo.n, "level");
    wavefunction->add_option("--q-min", wo.q_min, "grid start");
    wavefunction->add_option("--q-max", wo.q_max, "grid end");
    wavefunction->add_option("--points", wo.points, "grid size (log-spaced)");
    wavefunction->add_option("--output", wo.output, "output file (default stdout)");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    add_physical_flags(verify, vo.phys);
    verify->add_option("--tol", vo.tol_override,
                       "override every check tolerance with this value");
    verify->add_option("--output", vo.output, "report file (default stdout)");

    DemoOpts dm;
    auto* demo = app.add_subcommand(
        "transform-demo", "transform an atom c q^(alpha-1) e^(i pole q)");
    demo->add_option("--gamma", dm.gamma, "wavelet exponent");
    demo->add_option("--coeff", dm.coeff, "atom coefficient");
    demo->add_option("--alpha", dm.alpha, "atom exponent");
    demo->add_option("--pole-re", dm.pole_re, "Re of the atom pole");
    demo->add_option("--pole-im", dm.pole_im, "Im of the atom pole (> 0)");
    demo->add_option("--a-count", dm.a_count, "scale grid size");
    demo->add_option("--b-count", dm.b_count, "shift grid size");
    demo->add_option("--output", dm.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        int rc = 0;
        if (app.got_subcommand(spectrum)) rc = run_spectrum(so);
        else if (app.got_subcommand(wavefunction)) rc = run_wavefunction(wo);
        else if (app.got_subcommand(verify)) rc = run_verify(vo);
        else rc = run_transform_demo(dm);
        write_metadata(metadata_path, argc, argv);
        return rc;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid arguments: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
