#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "veerkit/errors.hpp"

using namespace veerkit;
using veerkit::cli::json;

namespace {

struct Output {
    int code;
    std::string out, err;
};

Output run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
    std::vector<json> v;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) v.push_back(json::parse(line));
    return v;
}

const std::string kTwoCusp = "eLMkbcddddedde_2100";

}  // namespace

TEST(Batch, ThreeValidEntries) {
    const std::string census = "# three\ncPcbbbiht_12 F0\ncPcbbbdxm_10 F0\n" + kTwoCusp + " F0\n";
    std::ostringstream out;
    const auto s = cli::run_batch(census, false, false, out);
    EXPECT_EQ(s.entries, 3);
    EXPECT_EQ(s.errors, 0);
    EXPECT_EQ(s.failures, 0);
    EXPECT_EQ(s.exit_code(), 0);
    const auto recs = lines(out.str());
    ASSERT_EQ(recs.size(), 3u);
    for (const auto& r : recs) EXPECT_EQ(r["verdict"], "EQUAL");
    EXPECT_EQ(recs[0]["line"], 2);
    EXPECT_EQ(recs[2]["id"], kTwoCusp);
}

TEST(Batch, MalformedLineGivesErrorRecord) {
    std::ostringstream out;
    const auto s = cli::run_batch("cPcbbbiht_12 F0\nnot_a_signature\n", false, false, out);
    EXPECT_EQ(s.errors, 1);
    EXPECT_NE(s.exit_code(), 0);
    const auto recs = lines(out.str());
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0]["verdict"], "EQUAL");
    EXPECT_EQ(recs[1]["line"], 2);
    EXPECT_TRUE(recs[1]["error"].contains("kind"));
    EXPECT_TRUE(recs[1]["error"].contains("message"));
}

TEST(Batch, EmptyInput) {
    std::ostringstream out;
    const auto s = cli::run_batch("# nothing\n\n", false, false, out);
    EXPECT_EQ(s.entries, 0);
    EXPECT_EQ(s.exit_code(), 0);
    EXPECT_TRUE(out.str().empty());
}

TEST(Batch, NonlayeredEntriesAreInformational) {
    std::ostringstream out;
    const auto& f = veerkit::testing::nonlayered_fixtures().front();
    const auto s = cli::run_batch(f.sig + " N0\n", false, false, out);
    EXPECT_EQ(s.exit_code(), 0);
    EXPECT_EQ(lines(out.str())[0]["verdict"], "INFORMATIONAL");
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"dual-check", kTwoCusp, "--assume-layered"};
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto c = run({"batch", veerkit::testing::data_path("layered_fixtures.txt")});
    const auto d = run({"batch", veerkit::testing::data_path("layered_fixtures.txt")});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.out, d.out);
}

TEST(Cli, FigureEightDualCheck) {
    const auto r = run({"dual-check", veerkit::testing::kFigureEight, "--assume-layered"});
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "EQUAL");
    EXPECT_EQ(j["carried_cone"]["rays"], json::parse("[[1]]"));
    EXPECT_EQ(j["dual_cone"]["rays"], json::parse("[[1]]"));
    EXPECT_TRUE(j["witnesses"].empty());
}

TEST(Cli, TwoCuspConeIsTwoDimensional) {
    const json j = json::parse(run({"carried-cone", kTwoCusp}).out);
    EXPECT_EQ(j["projected"]["dim"], 2);
    EXPECT_EQ(j["projected"]["equations"].size(), 0u);
    EXPECT_GE(j["projected"]["rays"].size(), 2u);
}

TEST(Cli, NoLoopsIsFail) {
    const auto cmp = compare_duality(RationalCone::from_generators(1, std::vector<ZVec>{{Int(1)}}), {});
    ASSERT_FALSE(cmp.witnesses.empty());
    EXPECT_EQ(cmp.witnesses[0].kind, DualityWitness::Kind::NoLoops);
    EXPECT_FALSE(cmp.equal());
    EXPECT_EQ(duality_verdict(cmp, true), DualityVerdict::Fail);
    EXPECT_EQ(duality_verdict(cmp, false), DualityVerdict::Fail);
    const auto ok = compare_duality(RationalCone::from_generators(1, std::vector<ZVec>{{Int(1)}}), {{Int(2)}});
    EXPECT_EQ(duality_verdict(ok, true), DualityVerdict::Equal);
    EXPECT_EQ(duality_verdict(ok, false), DualityVerdict::Informational);
    const auto bad = compare_duality(RationalCone::from_generators(2, std::vector<ZVec>{{Int(1), Int(0)}}),
                                     {{Int(1), Int(0)}});
    EXPECT_EQ(duality_verdict(bad, true), DualityVerdict::Fail);
    EXPECT_EQ(duality_verdict(bad, false), DualityVerdict::Informational);
}

TEST(Cli, ErrorsAreRecords) {
    auto r = run({"info", "garbage"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(json::parse(r.out).contains("error"));
    r = run({"validate", "garbage"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json::parse(r.out)["valid"], false);
    r = run({"flip", veerkit::testing::kFigureEight, "--tetra", "0", "--weights", "1,0,0,0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json::parse(r.out)["error"]["kind"], "NotCarried");
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    EXPECT_EQ(run({"flip", veerkit::testing::kFigureEight}).code, 2);
}

TEST(Cli, FamilyParsing) {
    EXPECT_EQ(cli::parse_family(6, "0:+,3:-").size(), 2);
    EXPECT_EQ(cli::parse_family(6, "0,3").size(), 2);
    EXPECT_THROW(cli::parse_family(6, "0:-,3"), StructureError);
    EXPECT_THROW(cli::parse_family(6, "x"), SchemaError);
    const auto r = run({"blowup", "--prongs", "3", "--family", "0:+,3:-", "--brute"});
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["valid"], true);
    EXPECT_EQ(j["filling"].size(), 1u);
    EXPECT_EQ(run({"blowup", "--prongs", "3", "--family", "0"}).code, 1);
}

TEST(Cli, WeightsParsing) {
    EXPECT_EQ(cli::parse_weights("1,2,30"), (ZVec{Int(1), Int(2), Int(30)}));
    EXPECT_THROW(cli::parse_weights("1,,2"), SchemaError);
    EXPECT_EQ(cli::to_json(Int("123456789012345678901234567890")), "123456789012345678901234567890");
    EXPECT_EQ(cli::to_json(Int(-7)), -7);
}

TEST(Cli, SubcommandsProduceJson) {
    const std::string s = veerkit::testing::kFigureEight;
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"validate", s}, {"info", s}, {"ladders", s}, {"stable-loops", s}, {"stable-loops", s, "--minimal"},
             {"stable-loops", s, "--unstable"}, {"homology", s}, {"carried-cone", s}, {"flip", s, "--tetra", "0"},
             {"is-fiber", s}, {"is-fiber", s, "--weights", "1,0,1,0"}}) {
        const auto r = run(args);
        EXPECT_EQ(r.code, 0) << args[0] << r.out;
        EXPECT_NO_THROW(json::parse(r.out)) << args[0];
    }
    const json j = json::parse(run({"is-fiber", s, "--pretty"}).out);
    EXPECT_EQ(j["certificate"]["verdict"], "fiber");
    EXPECT_EQ(j["replay"], true);
    const json l = json::parse(run({"ladders", s}).out);
    EXPECT_EQ(l["ladders_per_cusp"], json::parse("[4]"));
    EXPECT_EQ(l["veering_rule"]["failures"], 0);
}
