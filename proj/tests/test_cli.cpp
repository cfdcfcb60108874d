#include <cstdio>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "mirrorgen/cli.hpp"
#include "nlohmann/json.hpp"

using namespace mirrorgen;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json call_json(std::vector<std::string> args)
{
    args.insert(args.end(), {"--format", "json"});
    const auto r = call(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(r.out);
}

std::string temp_path(const std::string &name)
{
    return (std::filesystem::temp_directory_path() / ("mirrorgen_test_" + name)).string();
}

} // namespace

TEST(Cli, PotentialRecordsAsJson)
{
    const auto j = call_json({"proper-potential", "-g", "p2_cubic", "-N", "6"});
    ASSERT_TRUE(j.contains("metadata"));
    EXPECT_EQ(j["metadata"]["geometry"], "p2_cubic");
    std::map<std::pair<int, int>, std::string> got;
    for (const auto &r : j["records"]) {
        got[{r["x_exp"].get<int>(), r["t_deg"].get<int>()}] = r["value"].get<std::string>();
    }
    EXPECT_EQ(got.at({1, 0}), "1");
    EXPECT_EQ(got.at({-2, 3}), "2");
    EXPECT_EQ(got.at({-5, 6}), "5");
    EXPECT_EQ(got.size(), 3u);
}

TEST(Cli, VerifySucceeds)
{
    const auto r = call({"verify", "-g", "p3_quartic", "-N", "8", "--negative-control", "--seed", "3"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    const auto j = call_json({"verify", "-g", "p2_cubic", "-N", "9"});
    ASSERT_FALSE(j["checks"].empty());
    for (const auto &c : j["checks"]) {
        EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
    }
}

TEST(Cli, IdentitiesSucceed)
{
    const auto r = call({"identities", "--seed", "7", "--cases", "5"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("lagrange"), std::string::npos);
}

TEST(Cli, ErrorExitCodes)
{
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"verify"}).code, 2);
    EXPECT_EQ(call({"verify", "-g", "nowhere.ini"}).code, 2);
    EXPECT_EQ(call({"verify", "-g", "p2_cubic", "-N", "1"}).code, 2);
    EXPECT_EQ(call({"verify", "-g", "p2_cubic", "--format", "xml"}).code, 2);
    const auto bad = call({"verify", "-g", std::string(MIRRORGEN_SOURCE_DIR) + "/tests/data/bad_curve_pairing.ini"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("intersection pairing"), std::string::npos);
    EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, ToricQuantumPeriodIsAnError)
{
    const auto r = call({"quantum-period", "-g", "blp3_k3", "-N", "4"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
    // verify reports the failed check instead of aborting.
    const auto v = call({"verify", "-g", "blp3_k3", "-N", "4"});
    EXPECT_EQ(v.code, 1);
}

TEST(Cli, OutputIsDeterministic)
{
    for (const auto &fmt : {"json", "csv", "pretty"}) {
        const std::vector<std::string> args{"mirror-map", "-g", "p3_quartic", "-N", "8", "--format", fmt};
        EXPECT_EQ(call(args).out, call(args).out) << fmt;
    }
}

TEST(Cli, EmittedInvariantsFeedBackIn)
{
    const auto path = temp_path("p3.csv");
    const auto a = call({"regularized-period", "-g", "p3_quartic", "-N", "8", "--emit-invariants", path});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_TRUE(std::filesystem::exists(path));
    const auto b = call({"regularized-period", "-g", "p3_quartic", "-N", "8", "--invariants", path});
    EXPECT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(a.out, b.out);
    std::filesystem::remove(path);
}

TEST(Cli, NegativeControlCheckIsReported)
{
    const auto j = call_json({"verify", "-g", "p2_cubic", "-N", "9", "--negative-control", "--seed", "1"});
    bool found = false;
    for (const auto &c : j["checks"]) {
        if (c["name"].get<std::string>().find("negative control") != std::string::npos) {
            found = true;
            EXPECT_TRUE(c["pass"].get<bool>());
            EXPECT_NE(c["detail"].get<std::string>().find("flagged at t^"), std::string::npos);
        }
    }
    EXPECT_TRUE(found);
}

TEST(Cli, CsvHeader)
{
    const auto r = call({"classical-period", "-g", "p2_cubic", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "series,selector,beta,x_exp,t_deg,z_exp,contact,class,value");
    EXPECT_NE(r.out.find("pi_W,t^6,,,6,,,,90"), std::string::npos) << r.out;
}

TEST(Cli, ShallowZWindowIsAnErrorNotZero)
{
    const auto r = call({"quantum-period", "-g", "p3_quartic", "-N", "8", "--z-min", "-2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("window error:", 0), 0u) << r.err;
    // verify turns the same failure into failed checks.
    EXPECT_EQ(call({"verify", "-g", "p3_quartic", "-N", "8", "--z-min", "-2"}).code, 1);
}
