#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& outfile,
                  const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" BIWAVE_CLI_PATH
                      "\" " + args + " > " + outfile + " 2> cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    int code = -1;
#ifdef _WIN32
    code = rc;
#else
    if (WIFEXITED(rc)) code = WEXITSTATUS(rc);
#endif
    return {code, read_file(outfile)};
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

} // namespace

TEST_CASE("spectrum table matches the closed-form levels") {
    auto r = run_cli("spectrum --lambda 0.6 --chi -1 --n 0..3", "spec1.csv");
    REQUIRE(r.code == 0);
    auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0][0] == '#');
    CHECK(lines[0].find("eta_tilde") != std::string::npos);
    auto row = split_csv(lines[2]);   // level n = 1
    REQUIRE(row.size() == 5);
    CHECK(std::stoi(row[0]) == 1);
    CHECK(std::abs(std::stod(row[1]) - 0.9486832980505137996) <= 1e-14);
    CHECK(std::stod(row[3]) == doctest::Approx(-2.6).epsilon(1e-9));
    CHECK(std::stod(row[4]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("output bytes are run-to-run and thread-count independent") {
    const std::string args = "spectrum --lambda 0.9 --chi -2 --n 0..6";
    auto a = run_cli(args, "det_a.csv");
    auto b = run_cli(args, "det_b.csv");
    auto c = run_cli(args, "det_c.csv", "BIWAVE_THREADS=1");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(!a.out.empty());
}

TEST_CASE("physical charge adds the eV columns") {
    auto r = run_cli("spectrum --N 1 --chi -1 --n 0..2", "spec_ev.csv");
    REQUIRE(r.code == 0);
    auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 4);
    auto row = split_csv(lines[1]);
    REQUIRE(row.size() == 7);
    CHECK(std::abs(std::stod(row[6]) - 13.613025643441) <= 1e-6);
    CHECK(std::stod(row[5]) + std::stod(row[6]) ==
          doctest::Approx(510998.95).epsilon(1e-12));
}

TEST_CASE("empty level range emits only the header") {
    auto r = run_cli("spectrum --lambda 0.6 --chi -1 --n 3..1", "empty.csv");
    CHECK(r.code == 0);
    auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0][0] == '#');
}

TEST_CASE("usage and validation failures exit with code 2") {
    CHECK(run_cli("spectrum --bogus 1 --chi -1", "e1.txt").code == 2);
    CHECK(run_cli("spectrum --lambda 1.2 --chi -1 --n 0", "e2.txt").code == 2);
    CHECK(run_cli("spectrum --lambda 0.6 --chi -1 --n 1..x", "e3.txt").code == 2);
    CHECK(run_cli("spectrum --lambda 0.6 --chi -1 --n -2", "e4.txt").code == 2);
    CHECK(run_cli("spectrum --lambda 0.6", "e5.txt").code == 2);
    CHECK(run_cli("spectrum --lambda 0.6 --N 1 --chi -1", "e6.txt").code == 2);
    CHECK(run_cli("wavefunction --lambda 0.6 --chi 1 --n 0", "e7.txt").code == 2);
    CHECK(run_cli("", "e8.txt").code == 2);
    CHECK(run_cli("--help", "help.txt").code == 0);
    auto v = run_cli("--version", "ver.txt");
    CHECK(v.code == 0);
    CHECK(v.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("verification suite passes at default tolerances") {
    auto r = run_cli("verify --lambda 0.6 --chi -1", "verify_ok.json");
    REQUIRE(r.code == 0);
    auto rep = nlohmann::json::parse(r.out);
    REQUIRE(rep.is_array());
    CHECK(rep.size() >= 10);
    bool saw_pairing = false, saw_matrices = false;
    for (const auto& row : rep) {
        CHECK(row.contains("check"));
        CHECK(row.contains("status"));
        CHECK(row.contains("value"));
        CHECK(row.contains("expected"));
        CHECK(row.contains("tolerance"));
        CHECK(row["status"] == "pass");
        if (row["check"] == "pairing-integral") saw_pairing = true;
        if (row["check"] == "matrix-identities-max-dev") saw_matrices = true;
    }
    CHECK(saw_pairing);
    CHECK(saw_matrices);
}

TEST_CASE("verification respects a tolerance override") {
    auto r = run_cli("verify --lambda 0.6 --chi -1 --tol 1e-16",
                     "verify_tight.json");
    CHECK(r.code == 1);
    auto rep = nlohmann::json::parse(r.out);
    int fails = 0;
    bool quad_failed = false;
    for (const auto& row : rep) {
        if (row["status"] == "fail") ++fails;
        if (row["check"] == "transform-quadrature" && row["status"] == "fail")
            quad_failed = true;
        CHECK(row["tolerance"] == 1e-16);
    }
    CHECK(fails >= 1);
    CHECK(quad_failed);
}

TEST_CASE("wavefunction dump is normalized with the sign convention") {
    auto r = run_cli(
        "wavefunction --lambda 0.6 --chi -1 --n 2 --q-min 1e-3 --q-max 40 "
        "--points 2000",
        "wf.csv");
    REQUIRE(r.code == 0);
    auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2002);
    CHECK(lines[1].find("n=2") != std::string::npos);
    std::vector<double> q, f, g;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        auto row = split_csv(lines[i]);
        REQUIRE(row.size() == 3);
        q.push_back(std::stod(row[0]));
        f.push_back(std::stod(row[1]));
        g.push_back(std::stod(row[2]));
    }
    CHECK(f.front() > 0.0);
    double norm = 0.0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        double dt = std::log(q[i + 1] / q[i]);
        auto w = [&](std::size_t j) {
            return q[j] * q[j] * q[j] * (f[j] * f[j] + g[j] * g[j]);
        };
        norm += 0.5 * dt * (w(i) + w(i + 1));
    }
    CHECK(std::abs(norm - 1.0) <= 1e-4);
    int flips = 0;
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i - 1] * f[i] < 0.0) ++flips;
    CHECK(flips == 2);
}

TEST_CASE("transform demo reports an exact roundtrip") {
    auto r = run_cli("transform-demo --gamma 0.6 --a-count 3 --b-count 5",
                     "demo.csv");
    REQUIRE(r.code == 0);
    auto lines = split_lines(r.out);
    int data_rows = 0;
    double roundtrip = -1.0;
    for (const auto& line : lines) {
        if (line.rfind("# roundtrip_max_rel_error=", 0) == 0)
            roundtrip = std::stod(line.substr(line.find('=') + 1));
        else if (line[0] != '#')
            ++data_rows;
    }
    CHECK(data_rows == 15);
    REQUIRE(roundtrip >= 0.0);
    CHECK(roundtrip <= 1e-12);
}

TEST_CASE("demo compares both inverse routes above gamma one") {
    auto r = run_cli("transform-demo --gamma 1.5 --a-count 2 --b-count 3",
                     "demo_adm.csv");
    REQUIRE(r.code == 0);
    double diff = -1.0;
    for (const auto& line : split_lines(r.out))
        if (line.rfind("# biorthogonal_vs_admissible_max_diff=", 0) == 0)
            diff = std::stod(line.substr(line.find('=') + 1));
    REQUIRE(diff >= 0.0);
    CHECK(diff <= 1e-3);
}

TEST_CASE("zero coefficient transforms to identically zero output") {
    auto r = run_cli("transform-demo --coeff 0 --a-count 2 --b-count 3",
                     "demo_zero.csv");
    REQUIRE(r.code == 0);
    for (const auto& line : split_lines(r.out)) {
        if (line[0] == '#') continue;
        auto row = split_csv(line);
        REQUIRE(row.size() == 5);
        CHECK(std::stod(row[2]) == 0.0);
        CHECK(std::stod(row[3]) == 0.0);
        CHECK(std::stod(row[4]) == 0.0);
    }
}

TEST_CASE("config file supplies option values") {
    {
        std::ofstream cfg("spec_cfg.ini");
        cfg << "[spectrum]\nlambda=0.3\nchi=-1\nn=0..2\n";
    }
    auto via_cfg = run_cli("--config spec_cfg.ini spectrum", "cfg_run.csv");
    auto direct = run_cli("spectrum --lambda 0.3 --chi -1 --n 0..2",
                          "cfg_direct.csv");
    REQUIRE(via_cfg.code == 0);
    REQUIRE(direct.code == 0);
    CHECK(via_cfg.out == direct.out);
}

TEST_CASE("metadata goes to the sidecar only") {
    auto plain = run_cli("spectrum --lambda 0.6 --chi -1 --n 0..1",
                         "meta_plain.csv");
    auto with = run_cli(
        "--metadata meta.json spectrum --lambda 0.6 --chi -1 --n 0..1",
        "meta_data.csv");
    REQUIRE(plain.code == 0);
    REQUIRE(with.code == 0);
    CHECK(plain.out == with.out);
    auto meta = nlohmann::json::parse(read_file("meta.json"));
    CHECK(meta["version"] == "0.1.0");
    CHECK(meta["threads"].get<int>() >= 1);
    CHECK(meta["command"].get<std::string>().find("spectrum") !=
          std::string::npos);
    CHECK(meta.contains("generated"));
}
