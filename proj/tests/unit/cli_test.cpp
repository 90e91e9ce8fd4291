#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ksu/cli.hpp"
#include "reference.hpp"

namespace ksu {
namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

// Data rows of a CSV document keyed by column name.
std::vector<std::map<std::string, std::string>> rows(const std::string& csv) {
    std::vector<std::map<std::string, std::string>> out;
    std::vector<std::string> header;
    std::stringstream ss(csv);
    for (std::string line; std::getline(ss, line);) {
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = split(line);
            continue;
        }
        const auto cells = split(line);
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
        out.push_back(row);
    }
    return out;
}

double num(const std::map<std::string, std::string>& row, const std::string& column) {
    return std::stod(row.at(column));
}

TEST(CliSensitivity, Examples) {
    const std::vector<std::string> base = {"sensitivity", "--g", "1", "--alpha", "1", "--theta-alpha", "1.5707963",
                                           "--phi", "0"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    auto k2 = with({"--k", "2"});
    ASSERT_EQ(k2.code, 0) << k2.err;
    EXPECT_NEAR(num(rows(k2.out).at(0), "delta_phi_analytic"), 0.038985, 1e-6);
    auto k1 = with({"--k", "1"});
    ASSERT_EQ(k1.code, 0) << k1.err;
    EXPECT_NEAR(num(rows(k1.out).at(0), "delta_phi_analytic"), 0.362030, 1e-6);
    auto lossy = with({"--k", "2", "--T1", "0.6", "--T2", "0.6"});
    ASSERT_EQ(lossy.code, 0) << lossy.err;
    EXPECT_NEAR(num(rows(lossy.out).at(0), "delta_phi_analytic"), 0.08379, 1e-5);
}

TEST(CliSensitivity, OracleColumns) {
    auto r = run({"sensitivity", "--g", "1", "--alpha", "1", "--k", "2", "--phi", "0.1", "--oracle"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto row = rows(r.out).at(0);
    EXPECT_LE(num(row, "rel_dev"), 1e-5);
    EXPECT_LE(test::rel_dev(num(row, "delta_phi_oracle"), num(row, "delta_phi_analytic")), 1e-5);
    EXPECT_GT(num(row, "oracle_n_max"), 0.0);
}

TEST(CliSensitivity, OracleNonConvergenceExitsThree) {
    auto r = run({"sensitivity", "--g", "1.5", "--alpha", "2", "--k", "2", "--phi", "0.1", "--oracle"});
    EXPECT_EQ(r.code, cli::numerical);
    EXPECT_NE(r.err.find("cutoff-too-small"), std::string::npos);
}

TEST(CliQfi, Examples) {
    auto k2 = run({"qfi", "--g", "1", "--alpha", "1", "--k", "2"});
    ASSERT_EQ(k2.code, 0) << k2.err;
    const auto row = rows(k2.out).at(0);
    EXPECT_LE(test::rel_dev(num(row, "f"), 4537.475), 1e-6);
    EXPECT_LE(test::rel_dev(num(row, "qcrb"), test::ref::qcrb_f2), 1e-8);

    auto baseline = run({"qfi", "--g", "1", "--alpha", "1", "--k", "1", "--eta", "0.6", "--baseline", "cs-vs"});
    ASSERT_EQ(baseline.code, 0) << baseline.err;
    EXPECT_LE(test::rel_dev(num(rows(baseline.out).at(0), "f"), test::ref::f_lossy_cs_vs), 1e-8);

    auto none = run({"qfi", "--g", "0", "--alpha", "1", "--k", "1"});
    ASSERT_EQ(none.code, 0) << none.err;
    EXPECT_EQ(num(rows(none.out).at(0), "f"), 0.0);
    EXPECT_EQ(rows(none.out).at(0).at("information_free"), "1");
}

TEST(CliQfi, LossyKerrBoundReportsMu) {
    auto r = run({"qfi", "--g", "1", "--alpha", "1", "--k", "2", "--eta", "0.6"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto row = rows(r.out).at(0);
    EXPECT_LE(test::rel_dev(num(row, "f"), test::ref::c_q), 1e-8);
    EXPECT_NEAR(num(row, "mu1"), test::ref::mu1, 1e-8);
    EXPECT_NEAR(num(row, "mu2"), test::ref::mu2, 1e-8);
}

TEST(CliLimits, Values) {
    auto r = run({"limits", "--g", "1", "--alpha", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto row = rows(r.out).at(0);
    EXPECT_LE(test::rel_dev(num(row, "sql"), test::ref::sql), 1e-8);
}

TEST(CliUsage, BadArgumentsExitOne) {
    EXPECT_EQ(run({}).code, cli::usage);
    EXPECT_EQ(run({"bogus"}).code, cli::usage);
    EXPECT_EQ(run({"sensitivity", "--k", "3"}).code, cli::usage);
    EXPECT_EQ(run({"sensitivity", "--g", "abc"}).code, cli::usage);
    EXPECT_EQ(run({"sensitivity", "--T1", "1.5"}).code, cli::usage);
    EXPECT_EQ(run({"figure", "99z"}).code, cli::usage);
    EXPECT_EQ(run({"verify", "--tol", "no_such_check=1"}).code, cli::usage);
    EXPECT_EQ(run({"sensitivity", "--g", "1", "--g2", "0.8"}).code, cli::usage);
    EXPECT_EQ(run({"--help"}).code, cli::ok);
}

TEST(CliConfig, FlagsOverrideConfigFile) {
    const auto path = std::filesystem::temp_directory_path() / "ksu_cli_test.ini";
    {
        std::ofstream f(path);
        f << "g=1\nalpha=1\nk=1\ntheta-alpha=pi/2\n";
    }
    auto from_file = run({"sensitivity", "--config", path.string()});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_NEAR(num(rows(from_file.out).at(0), "delta_phi_analytic"), test::ref::delta_phi1, 1e-9);
    auto overridden = run({"sensitivity", "--config", path.string(), "--k", "2"});
    ASSERT_EQ(overridden.code, 0) << overridden.err;
    EXPECT_NEAR(num(rows(overridden.out).at(0), "delta_phi_analytic"), test::ref::delta_phi2, 1e-9);
    std::filesystem::remove(path);
}

TEST(CliFigure, Figure2aDeterministicWithMinimaAtZero) {
    auto first = run({"figure", "2a"});
    auto second = run({"figure", "2a"});
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(first.out.find('\r'), std::string::npos);
    const auto data = rows(first.out);
    ASSERT_EQ(data.size(), 601u);
    for (const char* column : {"delta_phi_k1", "delta_phi_k2"}) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < data.size(); ++i)
            if (num(data[i], column) < num(data[best], column)) best = i;
        EXPECT_EQ(num(data[best], "phi"), 0.0) << column;
    }
    EXPECT_NE(first.out.find("# figure: 2a"), std::string::npos);
}

TEST(CliFigure, WritesFileWithOut) {
    const auto path = std::filesystem::temp_directory_path() / "ksu_fig4.csv";
    auto r = run({"figure", "4", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream f(path);
    std::stringstream content;
    content << f.rdbuf();
    const auto data = rows(content.str());
    ASSERT_FALSE(data.empty());
    for (const char* column : {"g", "delta_phi_k1", "delta_phi_k2", "sql", "hl", "shl"})
        EXPECT_TRUE(data[0].count(column)) << column;
    std::filesystem::remove(path);
}

TEST(CliFigure, OmittedCurvesAreDeclared) {
    auto r = run({"figure", "5qcrb"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# not emitted:"), std::string::npos);
}

TEST(CliVerify, SingleFaultIsDetected) {
    auto r = run({"verify", "--grid", "small", "--inject-fault", "abar3"});
    EXPECT_EQ(r.code, cli::breach);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace ksu
