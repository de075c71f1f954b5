#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdio>
#include <string>

#include "json.hpp"

#ifndef HALFSPACE_CLI_PATH
#error "HALFSPACE_CLI_PATH must point at the CLI executable"
#endif

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(HALFSPACE_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("constants --dim 2").code, 1);
    EXPECT_EQ(run("thresholds --dim-range 4..3").code, 1);
    EXPECT_EQ(run("thresholds --dim-range 4-5").code, 1);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("--format xml constants --dim 5").code, 1);
    EXPECT_EQ(run("region --dim 7 --a 0 --q 2.5 --lambda-range 0:1:0.5 --mu-range 0:1:0.5").code, 1);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ConstantsIdentitiesPass) {
    const CliRun r = run("constants --dim 5");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out), "quantity,value,quadrature,closed_form,rel_diff,check");
    EXPECT_NE(r.out.find("K1-K2-K3,"), std::string::npos);
    EXPECT_EQ(r.out.find(",fail"), std::string::npos);
}

TEST(Cli, ThresholdsLowDimensions) {
    const CliRun r = run("thresholds --dim-range 3..4");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n3,1.309016994374947"), std::string::npos);
    EXPECT_NE(r.out.find("\n4,1,1,"), std::string::npos);
}

TEST(Cli, RegionCsvHeaderAndDeterminism) {
    const std::string args =
        "region --dim 4 --a 1 --q 2.5 --lambda-range 0:2.5:0.1 --mu-range 0:1:0.1 --mu1-lower 0 --mu1-upper 1";
    const CliRun a = run(args);
    const CliRun b = run("--threads 4 " + args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(first_line(a.out), "N,a,q,lambda,mu,verdict,clause");
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, JsonHasTheCsvFieldSet) {
    const CliRun csv = run("eigen --dim 4 --basis-size 4");
    const CliRun js = run("--format json eigen --dim 4 --basis-size 4");
    ASSERT_EQ(csv.code, 0);
    ASSERT_EQ(js.code, 0);
    const auto doc = nlohmann::ordered_json::parse(js.out);
    ASSERT_TRUE(doc.is_array());
    std::string keys;
    for (const auto& [k, v] : doc.front().items()) keys += (keys.empty() ? "" : ",") + k;
    // ordered_json keeps column order, so the key list equals the CSV header.
    EXPECT_EQ(keys, first_line(csv.out));
    EXPECT_EQ(doc.size() + 1, static_cast<std::size_t>(std::count(csv.out.begin(), csv.out.end(), '\n')));
}

TEST(Cli, EigenExample) {
    const CliRun r = run("--format json eigen --dim 4 --basis-size 8");
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_NEAR(doc[0]["value"].get<double>(), 2.0, 1e-8);
    double prev = 1e300;
    for (const auto& row : doc) {
        if (row["record"] != "mu1_ritz_upper_bound") continue;
        EXPECT_LE(row["value"].get<double>(), prev);
        prev = row["value"].get<double>();
    }
}

TEST(Cli, AsymptoticsExamples) {
    EXPECT_EQ(run("asymptotics --dim 5 --family u --quantity P").code, 0);
    EXPECT_EQ(run("asymptotics --dim 4 --family u --quantity E").code, 0);
    const CliRun v = run("asymptotics --dim 3 --family v --quantity E");
    EXPECT_NE(v.out.find("energy_upper_bound"), std::string::npos);
    EXPECT_NE(v.out.find("mass_lower_bound"), std::string::npos);
}

TEST(Cli, FiberExamples) {
    EXPECT_EQ(run("fiber --dim 7 --a 0 --lambda 2.2 --mu 0 --q 2").code, 0);
    EXPECT_EQ(run("fiber --dim 5 --a 1 --lambda 1.45 --mu 0 --q 2 --eps 0.02,0.01,0.007").code, 0);
    // Below the threshold the condition fails with the criterion exit code.
    EXPECT_EQ(run("fiber --dim 6 --a 1 --lambda 1.6 --mu 0 --q 2").code, 2);
}

TEST(Cli, OutFileMatchesStdout) {
    const std::string path = ::testing::TempDir() + "halfspace_cli_out.csv";
    const CliRun a = run("thresholds --dim-range 5..6 --out " + path);
    ASSERT_EQ(a.code, 0);
    EXPECT_TRUE(a.out.empty());
    FILE* f = std::fopen(path.c_str(), "rb");
    ASSERT_NE(f, nullptr);
    std::string content;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) content.append(buf.data(), n);
    std::fclose(f);
    EXPECT_EQ(content, run("thresholds --dim-range 5..6").out);
}

TEST(Cli, EnvironmentToleranceDefault) {
    EXPECT_EQ(run("constants --dim 4").out, run("--tol-rel 1e-8 constants --dim 4").out);
    const std::string cmd = std::string("HALFSPACE_TOL_REL=abc ") + HALFSPACE_CLI_PATH + " constants --dim 4 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 1);
}
