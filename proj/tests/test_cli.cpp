#include "support.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

using namespace testing_support;

namespace {

const char* kZ2 = "group P = Z/2\ncomplex K1 = 0 --0--> P\ncomplex K2 = 0 --0--> P\ncomplex K3 = 0 --0--> P\n";

} // namespace

TEST(Cli, DeterministicJson) {
    auto a = run_cli("biext K1 K2 K3 --side both --json", std::string(kZ2));
    auto b = run_cli("biext K1 K2 K3 --side both --json", std::string(kZ2));
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(strip_timing(a.out), strip_timing(b.out));
}

TEST(Cli, BiextPayload) {
    auto r = run_cli("biext K1 K2 K3 --side both --json", std::string(kZ2));
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["result"]["geometric"]["biext1"]["torsion"], nlohmann::json({2, 2}));
    EXPECT_EQ(j["result"]["homological"]["ext1"]["torsion"], nlohmann::json({2, 2}));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("homology K1", std::string("group A = Z/\n")).exit_code, 1);
    EXPECT_EQ(run_cli("homology K1", std::string("complex K1 = A --0--> A\n")).exit_code, 1);
    EXPECT_EQ(run_cli("homology K", std::string("group A = Z/2\ngroup B = Z/4\nhom u : A -> B = [[1]]\n")).exit_code, 2);
    EXPECT_EQ(run_cli("resolve K", std::string("group B = Z/17\ncomplex K = 0 --0--> B\n")).exit_code, 3);
    EXPECT_EQ(run_cli("resolve K --max-order 17", std::string("group B = Z/17\ncomplex K = 0 --0--> B\n")).exit_code, 0);
    EXPECT_EQ(run_cli("resolve K", std::string("group B = Z/2 + Z\ncomplex K = 0 --0--> B\n")).exit_code, 2);
}

TEST(Cli, ErrorsAreSerialized) {
    auto r = run_cli("homology K1 --json", std::string("group A = Z/\n"));
    EXPECT_EQ(r.exit_code, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("error"));
    EXPECT_EQ(j["exit_code"], 1);
}

TEST(Cli, EnvironmentSizeGuard) {
    std::string doc = "group B = Z/17\ncomplex K = 0 --0--> B\n";
    EXPECT_EQ(run_cli("resolve K", doc).exit_code, 3);
    ::setenv("BIEXTLAB_MAX_ORDER", "20", 1);
    EXPECT_EQ(run_cli("resolve K", doc).exit_code, 0);
    EXPECT_EQ(run_cli("resolve K --max-order 4", doc).exit_code, 3);
    ::unsetenv("BIEXTLAB_MAX_ORDER");
}

TEST(Cli, StrictOnlyWhenHypothesesHold) {
    std::string doc = "group P = Z/2\ncomplex K1 = 0 --0--> P\ncomplex K3 = P --0--> 0\n";
    EXPECT_EQ(run_cli("verify K1 K1 K3 --strict", doc).exit_code, 0);
    EXPECT_EQ(run_cli("verify K1 K1 K1 --strict", std::string(kZ2)).exit_code, 0);
}

TEST(Cli, Snf) {
    auto m = std::filesystem::temp_directory_path() / ("biextlab_snf_" + std::to_string(::getpid()) + ".txt");
    std::ofstream(m) << "[[2,4,4],[-6,6,12],[10,-4,-16]]\n";
    auto r = run_cli("snf " + m.string() + " --json");
    std::filesystem::remove(m);
    ASSERT_EQ(r.exit_code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"]["diagonal"], nlohmann::json({2, 6, 12}));
}

TEST(Cli, CorpusVerifyKeepsInputOrder) {
    auto r = run_cli("corpus-verify samples/corpus --json");
    ASSERT_EQ(r.exit_code, 0);
    auto j = nlohmann::json::parse(r.out);
    auto& items = j["result"]["files"];
    ASSERT_EQ(items.size(), 3u);
    EXPECT_EQ(items[0]["file"], "01_all_z2.bx");
    EXPECT_EQ(items[2]["file"], "03_free.bx");
}

TEST(Cli, DocumentedSamples) {
    for (const char* name : {"biext_both", "resolve_stats", "verify_not_asserted"}) {
        std::string args = read_file(std::filesystem::path(PROJECT_DIR) / "samples" / (std::string(name) + ".cmd"));
        while (!args.empty() && args.back() == '\n') args.pop_back();
        auto r = run_cli(args);
        EXPECT_EQ(r.exit_code, 0) << name;
        EXPECT_EQ(strip_timing(r.out), read_file(std::filesystem::path(PROJECT_DIR) / "samples" / (std::string(name) + ".expected"))) << name;
    }
}
