#include <gtest/gtest.h>

#include <sstream>

#include "cli_app.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = avoider_lab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string strip_duration(std::string json)
{
    auto at = json.find("\"duration_seconds\"");
    return at == std::string::npos ? json : json.substr(0, at);
}

} // namespace

TEST(CliCount, Examples)
{
    EXPECT_EQ(run({"count", "--patterns", "4321,3241", "--max-n", "3"}).out, "1,1,2,6\n");
    EXPECT_EQ(run({"count", "--patterns", "4321,3241", "--indecomposable", "--max-n", "3"}).out, "0,1,1,3\n");
    EXPECT_EQ(run({"count", "--patterns", "321", "--indecomposable", "--max-n", "4"}).out, "0,1,1,2,5\n");
}

TEST(CliCount, Formats)
{
    auto json = nlohmann::json::parse(run({"count", "--patterns", "4321,3241", "--max-n", "4", "--format", "json"}).out);
    EXPECT_EQ(json["schema"], "v1");
    EXPECT_EQ(json["counts"], nlohmann::json::parse("[1,1,2,6,22]"));
    EXPECT_EQ(json["patterns"], nlohmann::json::parse(R"(["3241","4321"])"));
    EXPECT_EQ(run({"count", "--patterns", "321", "--max-n", "2", "--format", "bfile"}).out, "0 1\n1 1\n2 2\n");
}

TEST(CliCount, UsageErrors)
{
    EXPECT_EQ(run({"count", "--patterns", "43x1", "--max-n", "3"}).code, 2);
    EXPECT_EQ(run({"count", "--patterns", "4421", "--max-n", "3"}).code, 2);
    Result over = run({"count", "--patterns", "321", "--max-n", "13"});
    EXPECT_EQ(over.code, 2);
    EXPECT_NE(over.err.find("--unsafe-no-limit"), std::string::npos);
    EXPECT_EQ(run({"count", "--max-n", "3", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliCount, ThreadsEnvironmentFallback)
{
    ::setenv("AVOIDER_LAB_THREADS", "3", 1);
    EXPECT_EQ(run({"count", "--patterns", "4321,3241", "--max-n", "6"}).out, "1,1,2,6,22,89,380\n");
    ::setenv("AVOIDER_LAB_THREADS", "zero", 1);
    EXPECT_EQ(run({"count", "--patterns", "321", "--max-n", "3"}).code, 2);
    ::unsetenv("AVOIDER_LAB_THREADS");
}

TEST(CliEnumerate, CsvAndJson)
{
    EXPECT_EQ(run({"enumerate", "--patterns", "321", "--n", "3", "--indecomposable"}).out, "2,3,1\n3,1,2\n");
    auto json = nlohmann::json::parse(run({"enumerate", "--patterns", "321", "--n", "3", "--indecomposable", "--format", "json"}).out);
    EXPECT_EQ(json["count"], 2);
    EXPECT_EQ(json["permutations"], nlohmann::json::parse("[[2,3,1],[3,1,2]]"));
}

TEST(CliMap, WorkedExample)
{
    Result r = run({"map", "--perm", "2735164"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("q=2,3,1 heights=2,3,1,2\n"), std::string::npos) << r.out;

    auto json = nlohmann::json::parse(run({"map", "--perm", "2735164", "--format", "json"}).out);
    EXPECT_EQ(json["blue"], nlohmann::json::parse("[3,4,5,6]"));
    EXPECT_EQ(json["peak_blue"], 6);
    EXPECT_EQ(json["triple"], nlohmann::json::parse(R"({"a":4,"b":6,"c":"inf","degenerate":false})"));
    EXPECT_EQ(json["insertion_list"], nlohmann::json::parse("[6,5,7]"));
    EXPECT_EQ(json["image"]["q"], nlohmann::json::parse("[2,3,1]"));
    EXPECT_EQ(json["image"]["heights"], nlohmann::json::parse("[2,3,1,2]"));
}

TEST(CliMap, EmptyImageAndDomainErrors)
{
    EXPECT_NE(run({"map", "--perm", "312"}).out.find("q=3,1,2 heights=(empty)"), std::string::npos);
    Result bad = run({"map", "--perm", "3241"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("contains 3241 at positions 1,2,3,4"), std::string::npos) << bad.err;
    Result decomposable = run({"map", "--perm", "2314"});
    EXPECT_EQ(decomposable.code, 1);
    EXPECT_NE(decomposable.err.find("not indecomposable"), std::string::npos);
    EXPECT_EQ(run({"map", "--perm", "2,2"}).code, 2);
}

TEST(CliAnalyze, AnyPermutation)
{
    auto json = nlohmann::json::parse(run({"analyze", "--perm", "3124", "--format", "json"}).out);
    EXPECT_EQ(json["avoider"], false);
    EXPECT_EQ(json["components"], nlohmann::json::parse("[[3,1,2],[1]]"));
    EXPECT_TRUE(json["witnesses"]["321"].is_null());
    EXPECT_FALSE(json.contains("image"));

    json = nlohmann::json::parse(run({"analyze", "--perm", "4631275", "--format", "json"}).out);
    EXPECT_EQ(json["avoider"], true);
    EXPECT_EQ(json["triple"], nlohmann::json::parse(R"({"a":2,"b":3,"c":5,"degenerate":false})"));
    EXPECT_EQ(json["witnesses"]["321"], nlohmann::json::parse("[1,3,4]"));
}

TEST(CliUnmap, Examples)
{
    EXPECT_EQ(run({"unmap", "--perm", "231", "--heights", "2,3,1,2"}).out, "2,7,3,5,1,6,4\n");
    EXPECT_EQ(run({"unmap", "--perm", "312"}).out, "3,1,2\n");
    EXPECT_EQ(run({"unmap", "--perm", "21", "--heights", "1"}).out, "3,2,1\n");
    EXPECT_EQ(run({"unmap", "--perm", "231", "--heights", "3"}).code, 2);
    EXPECT_EQ(run({"unmap", "--perm", "321", "--heights", ""}).code, 1);
}

TEST(CliPaths, Examples)
{
    EXPECT_EQ(run({"paths", "--to-heights", "UUDUUUDUDD"}).out, "3,4,4,2\n");
    EXPECT_EQ(run({"paths", "--from-heights", "3,4,4,2", "--ups", "2"}).out, "UUDUUUDUDD\n");
    EXPECT_EQ(run({"paths", "--classify", "UDUD"}).out, "nonnegative=true dyck=true components=2\n");
    EXPECT_EQ(run({"paths", "--to-heights", "UXD"}).code, 2);
    EXPECT_EQ(run({"paths", "--to-heights", "DU"}).code, 2);
    EXPECT_EQ(run({"paths", "--from-heights", "3,4,4,2"}).code, 2);
}

TEST(CliSeries, Examples)
{
    EXPECT_EQ(run({"series", "--which", "G", "--terms", "6"}).out, "0,1,1,3,11,44\n");
    EXPECT_EQ(run({"series", "--which", "F", "--terms", "5"}).out, "1,1,2,6,22\n");
    EXPECT_EQ(run({"series", "--which", "catalan", "--terms", "3", "--format", "bfile", "--offset", "1"}).out,
              "1 1\n2 1\n3 2\n");
    EXPECT_EQ(run({"series", "--which", "u", "--terms", "4", "--format", "json"}).out,
              "{\"schema\":\"v1\",\"command\":\"series\",\"which\":\"u\",\"terms\":[0,1,1,3]}\n");
    std::string big = run({"series", "--which", "G", "--terms", "41", "--format", "json"}).out;
    EXPECT_NE(big.find("61833451495358525229656570]"), std::string::npos);
}

TEST(CliVerify, PassesAndIsDeterministicAcrossThreadCounts)
{
    Result one = run({"verify", "--max-n", "6", "--threads", "1"});
    Result four = run({"verify", "--max-n", "6", "--threads", "4"});
    ASSERT_EQ(one.code, 0) << one.err;
    ASSERT_EQ(four.code, 0) << four.err;
    EXPECT_EQ(strip_duration(one.out), strip_duration(four.out));

    auto json = nlohmann::json::parse(one.out);
    EXPECT_EQ(json["schema"], "v1");
    EXPECT_EQ(json["passed"], true);
    EXPECT_EQ(json["round_trip_failures"], 0);
    for (const char* field : {"max_n", "ordering", "lengths", "suites", "duration_seconds"}) EXPECT_TRUE(json.contains(field)) << field;
    for (const auto& length : json["lengths"])
        for (const auto& row : length["per_k"]) EXPECT_EQ(row["avoiders"], row["product"]);
}

TEST(CliVerify, TrivialScale)
{
    Result r = run({"verify", "--max-n", "2", "--threads", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(CliVerify, CorruptedOrderingFails)
{
    Result r = run({"verify", "--max-n", "5", "--threads", "2", "--corrupt-ordering"});
    EXPECT_EQ(r.code, 1);
    auto json = nlohmann::json::parse(r.out);
    EXPECT_EQ(json["passed"], false);
    EXPECT_EQ(json["ordering"], "terminal_rotated");
    EXPECT_FALSE(r.err.empty());
}

TEST(CliVerify, Guardrail)
{
    EXPECT_EQ(run({"verify", "--max-n", "11"}).code, 2);
}
