// End-to-end tests of the qmask binary: output formats, exit codes,
// determinism, and the documented flag surface. The binary path arrives as
// the last command-line argument (see tests/CMakeLists.txt).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string g_binary;
std::filesystem::path g_workdir;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot read ", p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
    const auto out_path = g_workdir / "stdout.txt";
    const auto err_path = g_workdir / "stderr.txt";
    const std::string cmd = env + (env.empty() ? "" : " ") + g_binary + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string path_of(const std::string& name) { return (g_workdir / name).string(); }

} // namespace

TEST_CASE("mask bell d=2 basis 0 writes the four-qubit image dump") {
    const RunResult r = run("mask --scheme bell --d 2 --basis 0 --out " + path_of("b2.json"));
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(g_workdir / "b2.json"));
    CHECK(j["config"]["command"] == "mask");
    CHECK(j["dims"] == nlohmann::json({2, 2, 2, 2}));
    REQUIRE(j["amps"].size() == 4);
    CHECK(j["amps"][0]["idx"] == nlohmann::json({1, 1, 1, 1}));
    for (const auto& a : j["amps"]) {
        CHECK(a["re"].get<double>() == 0.5);
        CHECK(a["im"].get<double>() == 0.0);
    }
}

TEST_CASE("mask shor with basis coefficients gives 8 equal-magnitude entries") {
    const RunResult r = run("mask --scheme shor --coeffs 1,0 --out " + path_of("shor.json"));
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(g_workdir / "shor.json"));
    REQUIRE(j["amps"].size() == 8);
    const double a = 1.0 / (2.0 * std::sqrt(2.0));
    for (const auto& e : j["amps"]) {
        const double re = e["re"].get<double>();
        const double im = e["im"].get<double>();
        CHECK(std::abs(std::sqrt(re * re + im * im) - a) < 1e-15);
    }
}

TEST_CASE("mask mols with pair files encodes the basis ladder") {
    REQUIRE(run("latin cyclic --d 5 --out " + path_of("v5.txt") + "," + path_of("w5.txt"))
                .exit_code == 0);
    const RunResult r = run("mask --scheme mols --pair " + path_of("v5.txt") + "," +
                            path_of("w5.txt") + " --coeffs 1,0,0,0,0 --out " +
                            path_of("m5.json"));
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(g_workdir / "m5.json"));
    CHECK(j["dims"] == nlohmann::json({5, 5, 5}));
    CHECK(j["amps"].size() == 5);
}

TEST_CASE("mask mols d=4 reference pair: basis encoding is the diagonal ladder") {
    {
        std::ofstream v(g_workdir / "dv4.txt"), w(g_workdir / "dw4.txt");
        v << "1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n";
        w << "1 2 3 4\n4 3 2 1\n2 1 4 3\n3 4 1 2\n";
    }
    const std::string pair = path_of("dv4.txt") + "," + path_of("dw4.txt");
    const RunResult r =
        run("mask --scheme mols --pair " + pair + " --d 4 --coeffs 1,0,0,0");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["amps"].size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(j["amps"][k]["idx"] == nlohmann::json({k + 1, k + 1, k + 1}));
        CHECK(j["amps"][k]["re"].get<double>() == 0.5);
    }
    // --d must agree with the pair order when both are given.
    CHECK(run("mask --scheme mols --pair " + pair + " --d 7 --coeffs 1,0,0,0").exit_code == 1);
}

TEST_CASE("mask rejects unnormalized and malformed input") {
    CHECK(run("mask --scheme bell --d 2 --coeffs 1,1").exit_code == 1);
    CHECK(run("mask --scheme bell --d 2 --coeffs 1,zz").exit_code == 1);
    CHECK(run("mask --scheme bell --d 2 --coeffs 1,0 --basis 0").exit_code == 1);
    CHECK(run("mask --scheme bell --d 2").exit_code == 1);
    CHECK(run("mask --scheme bell --d 2 --basis -2").exit_code == 1);
    CHECK(run("mask --scheme bell --d 2 --basis 2").exit_code == 1);
    CHECK(run("mask --scheme nosuch --d 2 --basis 0").exit_code == 1);
    // Slightly off-normalized input is renormalized with a notice on stderr.
    const RunResult r = run("mask --scheme bell --d 2 --coeffs 1.0000001,0");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("renormaliz") != std::string::npos);
}

TEST_CASE("mask accepts complex coefficient literals") {
    const RunResult r =
        run("mask --scheme bell --d 2 --coeffs 0.7071067811865476+0.0J,0-0.7071067811865476j");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["amps"].size() == 4);
}

TEST_CASE("verify passes for bell d=3 and fails construction for an uncertified pair") {
    const RunResult ok =
        run("verify --scheme bell --d 3 --samples 20 --out " + path_of("rep.json"));
    CHECK(ok.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(g_workdir / "rep.json"));
    CHECK(j["report"]["pass"] == true);
    CHECK(j["report"]["scheme"] == "bell");
    CHECK(j["config"]["samples"] == 20);

    REQUIRE(run("latin cyclic --d 3 --out " + path_of("v3.txt") + "," + path_of("w3.txt"))
                .exit_code == 0);
    const RunResult bad = run("verify --scheme mols --pair " + path_of("v3.txt") + "," +
                              path_of("v3.txt"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("certified") != std::string::npos);
}

TEST_CASE("verify embedded d=6 passes via the order-7 cyclic pair") {
    const RunResult r = run("verify --scheme embedded --d 6 --samples 20");
    CHECK(r.exit_code == 0);
}

TEST_CASE("verify exit code 2 on a bogus tolerance") {
    const RunResult r = run("verify --scheme bell --d 2 --samples 5 --tol 1e-30");
    CHECK(r.exit_code == 2);
}

TEST_CASE("QMASK_CAP_D overrides the bell dimension cap") {
    CHECK(run("mask --scheme bell --d 5 --basis 0", "QMASK_CAP_D=4").exit_code == 1);
    CHECK(run("mask --scheme bell --d 5 --basis 0", "QMASK_CAP_D=5").exit_code == 0);
    CHECK(run("mask --scheme bell --d 5 --basis 0", "QMASK_CAP_D=bad").exit_code == 1);
}

TEST_CASE("latin cyclic + check round trip") {
    const std::string pair = path_of("cv.txt") + "," + path_of("cw.txt");
    REQUIRE(run("latin cyclic --d 5 --out " + pair).exit_code == 0);
    const RunResult chk = run("latin check " + path_of("cv.txt") + " " + path_of("cw.txt"));
    CHECK(chk.exit_code == 0);
    CHECK(chk.out == "orthogonal: true\n");

    const RunResult self = run("latin check " + path_of("cv.txt") + " " + path_of("cv.txt"));
    CHECK(self.exit_code == 2);
    CHECK(self.out == "orthogonal: false\n");

    CHECK(run("latin cyclic --d 4 --out " + pair).exit_code == 1);
}

TEST_CASE("latin check on the reference order-4 pair") {
    {
        std::ofstream v(g_workdir / "pv4.txt"), w(g_workdir / "pw4.txt");
        v << "1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n";
        w << "1 2 3 4\n4 3 2 1\n2 1 4 3\n3 4 1 2\n";
    }
    const RunResult r = run("latin check " + path_of("pv4.txt") + " " + path_of("pw4.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "orthogonal: true\n");

    std::ofstream(g_workdir / "bad.txt") << "1 2\n2 3\n";
    const RunResult bad = run("latin check " + path_of("bad.txt") + " " + path_of("pw4.txt"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("latin search output") {
    const RunResult none = run("latin search --d 2");
    CHECK(none.exit_code == 2);
    CHECK(none.out.find("none exists (exhaustive)") != std::string::npos);

    const RunResult found = run("latin search --d 4 --out " + path_of("sv4.txt") + "," +
                                path_of("sw4.txt"));
    CHECK(found.exit_code == 0);
    CHECK(found.out.find("found certified pair") != std::string::npos);
    const RunResult chk = run("latin check " + path_of("sv4.txt") + " " + path_of("sw4.txt"));
    CHECK(chk.out == "orthogonal: true\n");

    const RunResult budget = run("latin search --d 6 --budget 10000");
    CHECK(budget.exit_code == 2);
    CHECK(budget.out.find("not a nonexistence proof") != std::string::npos);
}

TEST_CASE("report: rows in argument order, determinism, error rows, empty list") {
    const std::string flags = "report --cells bell:2..3,mols:3 --samples 10 --out ";
    REQUIRE(run(flags + path_of("r1.csv")).exit_code == 0);
    REQUIRE(run(flags + path_of("r2.csv")).exit_code == 0);
    const std::string csv1 = slurp(g_workdir / "r1.csv");
    CHECK(csv1 == slurp(g_workdir / "r2.csv"));

    std::istringstream lines(csv1);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# config:", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "scheme,d,parties,local_dims,gram_dev,basis_dev,superpos_dev,pass");
    std::getline(lines, line);
    CHECK(line.rfind("bell,2,4,2x2x2x2,", 0) == 0);
    CHECK(line.find(",true") != std::string::npos);
    std::getline(lines, line);
    CHECK(line.rfind("bell,3,6,", 0) == 0);
    std::getline(lines, line);
    CHECK(line.rfind("mols,3,3,3x3x3,", 0) == 0);

    // JSON twin is deterministic too.
    REQUIRE(run(flags + path_of("rj1.csv") + " --json " + path_of("rj1.json")).exit_code == 0);
    REQUIRE(run(flags + path_of("rj2.csv") + " --json " + path_of("rj2.json")).exit_code == 0);
    CHECK(slurp(g_workdir / "rj1.json") == slurp(g_workdir / "rj2.json"));

    // A cell that cannot be built is an ERROR row and exit code 2.
    const RunResult err = run("report --cells mols:6 --samples 5 --out " + path_of("err.csv"));
    CHECK(err.exit_code == 2);
    CHECK(slurp(g_workdir / "err.csv").find("mols,6,,,,,,ERROR") != std::string::npos);

    // Empty cell list: header-only output, exit 0.
    const RunResult empty = run("report --out " + path_of("empty.csv"));
    CHECK(empty.exit_code == 0);
    const std::string empty_csv = slurp(g_workdir / "empty.csv");
    CHECK(empty_csv.find("scheme,d,parties") != std::string::npos);
    CHECK(empty_csv.find("bell") == std::string::npos);
}

TEST_CASE("usage errors exit 1, help exits 0") {
    CHECK(run("").exit_code == 1);
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("verify").exit_code == 1); // missing required --scheme
    CHECK(run("--help").exit_code == 0);
    CHECK(run("mask --help").exit_code == 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli [doctest flags] <path-to-qmask-binary>\n");
        return 1;
    }
    g_binary = argv[argc - 1];
    g_workdir = std::filesystem::temp_directory_path() /
                ("qmask_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_workdir);

    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv);
    const int rc = ctx.run();

    std::error_code ec;
    std::filesystem::remove_all(g_workdir, ec);
    return rc;
}
