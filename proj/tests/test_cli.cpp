#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <halfspace/io.hpp>

namespace fs = std::filesystem;
using halfspace::io::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path workdir() {
    static const fs::path d = [] {
        auto p = fs::temp_directory_path() / ("halfspace_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    static const struct Cleanup {
        fs::path p;
        ~Cleanup() {
            std::error_code ec;
            fs::remove_all(p, ec);
        }
    } cleanup{d};
    return d;
}

std::string slurp(const fs::path& p) { return halfspace::io::read_file(p.string()); }

Run run(const std::string& args) {
    const auto out = workdir() / "stdout.txt";
    const auto err = workdir() / "stderr.txt";
    const std::string cmd = std::string("cd '") + workdir().string() + "' && '" + HALFSPACE_CLI + "' " + args + " >'" +
                            out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST(Cli, ExactWritesTheSampledPowerProfile) {
    const auto r = run("exact --gamma 2 --t-max 10 --n 1000");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 1002u);
    EXPECT_EQ(r.out.substr(0, 16), "t,v,dv\n0,0,inf\n0");
    std::istringstream in(r.out);
    const auto p = halfspace::io::read_profile_csv(in, halfspace::GammaParam::make(2.0));
    EXPECT_NEAR(p.values.back(), 1.6509636244473133419 * std::pow(10.0, 2.0 / 3.0), 1e-12);
}

TEST(Cli, BadArgumentsExitWithTwo) {
    EXPECT_EQ(run("exact --gamma 0.5").code, 2);
    EXPECT_EQ(run("exact --gamma 1").code, 2);
    EXPECT_EQ(run("shoot --slope -1").code, 2);
    EXPECT_EQ(run("shoot --slope abc").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("halfplane --h 0.3").code, 2);
    EXPECT_EQ(run("scale --in missing.csv --lambda 2").code, 2);
    EXPECT_EQ(run("exact --help").code, 0);
}

TEST(Cli, ShootRoutesAgree) {
    const auto r = run("shoot --gamma 2 --slope 1 --tol 1e-6 --out s1.csv --report r1.json");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(slurp(workdir() / "r1.json"));
    EXPECT_LE(j["discrepancy_sup_rel"].get<double>(), 1e-4);
    EXPECT_NEAR(j["route_a_slope"].get<double>(), 1.0, 1e-6);
    EXPECT_NEAR(j["route_b_slope"].get<double>(), 1.0, 1e-6);
    EXPECT_GT(j["tau0"].get<double>(), 0.0);
    EXPECT_LE(j["tau0"].get<double>(), 1.0);
}

TEST(Cli, ScaledProfileMatchesADirectSolve) {
    ASSERT_EQ(run("shoot --slope 1 --out s1.csv --report r.json").code, 0);
    ASSERT_EQ(run("shoot --slope 2 --out s2.csv --report r.json").code, 0);
    const auto sc = run("scale --in s1.csv --to-slope 2 --out s1to2.csv");
    ASSERT_EQ(sc.code, 0) << sc.err;
    const auto g = halfspace::GammaParam::make(2.0);
    std::ifstream a(workdir() / "s2.csv"), b(workdir() / "s1to2.csv");
    const auto p2 = halfspace::io::read_profile_csv(a, g);
    const auto p12 = halfspace::io::read_profile_csv(b, g);
    double worst = 0.0;
    for (double t : {0.01, 0.1, 0.5, 1.0, 5.0, 20.0, 100.0}) {
        const double u = halfspace::evaluate(p2, t).v;
        worst = std::max(worst, std::abs(halfspace::evaluate(p12, t).v - u) / u);
    }
    EXPECT_LE(worst, 1e-5);
    EXPECT_EQ(run("scale --in s1.csv").code, 2);  // neither --lambda nor --to-slope
}

TEST(Cli, VerifyPassesOnTheExactProfile) {
    ASSERT_EQ(run("exact --t-max 10 --n 2000 --out p.csv").code, 0);
    const auto r = run("verify --in p.csv");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.size(), 5u);
    for (const auto& c : j) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
}

TEST(Cli, VerifyReportsTheCorruptLine) {
    ASSERT_EQ(run("exact --t-max 10 --n 20 --out p.csv").code, 0);
    std::string s = slurp(workdir() / "p.csv");
    // corrupt the fifth line (fourth data row)
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) pos = s.find('\n', pos) + 1;
    s.insert(pos, "x");
    halfspace::io::write_file((workdir() / "bad.csv").string(), s);
    const auto r = run("verify --in bad.csv");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
}

TEST(Cli, HalfplaneWithoutPerturbationIsSymmetric) {
    const auto r = run("halfplane --width 4 --height 2 --h 0.0625 --perturb 0 --out f.csv --report h.json");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(slurp(workdir() / "h.json"));
    EXPECT_LE(j["symmetry"]["max_dev"].get<double>(), 1e-10);
    EXPECT_TRUE(j["iteration"]["converged"].get<bool>());
    const auto v = run("verify --in f.csv --strip-height 1");
    EXPECT_NE(v.code, 2) << v.err;
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
    halfspace::io::write_file((workdir() / "cfg.json").string(),
                              R"({"gamma": 3, "shoot": {"slope": 2, "tol": 1e-6}})");
    ASSERT_EQ(run("shoot --config cfg.json --out c.csv --report c.json").code, 0);
    auto j = json::parse(slurp(workdir() / "c.json"));
    EXPECT_NEAR(j["route_a_slope"].get<double>(), 2.0, 1e-6);
    ASSERT_EQ(run("shoot --config cfg.json --slope 0.5 --out c.csv --report c.json").code, 0);
    j = json::parse(slurp(workdir() / "c.json"));
    EXPECT_NEAR(j["route_a_slope"].get<double>(), 0.5, 1e-6);
    std::ifstream in(workdir() / "c.csv");
    EXPECT_NO_THROW(halfspace::io::read_profile_csv(in, halfspace::GammaParam::make(3.0)));

    halfspace::io::write_file((workdir() / "bad_cfg.json").string(), R"({"slopee": 2})");
    EXPECT_EQ(run("shoot --config bad_cfg.json").code, 2);
    halfspace::io::write_file((workdir() / "broken.json").string(), "{\"slope\": ");
    EXPECT_EQ(run("shoot --config broken.json").code, 2);
}

TEST(Cli, OutputsAreDeterministic) {
    const auto a = run("halfplane --width 4 --height 2 --h 0.25 --perturb 0.3 --report h.json");
    const auto b = run("halfplane --width 4 --height 2 --h 0.25 --perturb 0.3 --report h.json");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto c = run("shoot --slope 4 --report r.json");
    const auto d = run("shoot --slope 4 --report r.json");
    EXPECT_EQ(c.out, d.out);
}

TEST(Cli, ReportWritesAllArtifacts) {
    fs::create_directories(workdir() / "rep");
    const auto r = run("report --slopes 1 --out-dir rep");
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"power.csv", "slope_1.csv", "certificates.json", "profiles.svg", "power_ratio.svg",
                          "summary.json"})
        EXPECT_TRUE(fs::exists(workdir() / "rep" / f)) << f;
}
