#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Outcome
{
    int status;
    std::string out;
};

Outcome run(std::string const & args, std::string const & env = "")
{
    std::string const cmd = env + " " + POSDIV_CLI + " " + args + " 2>/dev/null";
    FILE * p = popen(cmd.c_str(), "r");
    if (!p)
        throw std::runtime_error("popen failed");
    std::string out;
    std::array<char, 4096> buf;
    for (size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;)
        out.append(buf.data(), n);
    int const st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

nlohmann::json analyze_json(std::string const & args)
{
    Outcome const r = run("analyze " + args + " --format json");
    EXPECT_EQ(r.status, 0) << args;
    return nlohmann::json::parse(r.out);
}

} // namespace

TEST(Cli, AnalyzeImaginary)
{
    auto const j = analyze_json("--disc -184");
    EXPECT_EQ(j["schema"], "posdiv-report/1");
    EXPECT_EQ(j["Cl_pos"], "[ 2 ]");
    EXPECT_EQ(j["rk2"], 1);
    EXPECT_EQ(j["case"], "iii");
}

TEST(Cli, WildKernelDeduction)
{
    auto const j = analyze_json("--disc -184 --k2 2 --index 1");
    EXPECT_EQ(j["WK2"], "[ 2 ]");
    auto const k = analyze_json("--disc -759 --k2 \"2,18\" --index 6");
    EXPECT_EQ(k["WK2"], "[ 6 ]");
}

TEST(Cli, VerifyRunsInvariantSuites)
{
    auto const j = analyze_json("--disc -399 --verify");
    EXPECT_EQ(j["verify"], "pass");
    ASSERT_TRUE(j["verification"].is_array());
    EXPECT_EQ(j["verification"].size(), 6u);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("analyze --disc 5").status, 0);
    EXPECT_EQ(run("analyze --disc 28").status, 3); // unsupported theorem case
    EXPECT_EQ(run("analyze --disc 18").status, 1);
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("analyze").status, 2);
    EXPECT_EQ(run("analyze --disc -184 --k2 2").status, 2);
    EXPECT_EQ(run("analyze --disc -184 --format xml").status, 2);
    EXPECT_EQ(run("batch --range 3 2").status, 2);
    EXPECT_EQ(run("batch --range 1 9 --filter 'pe=1'").status, 2);

    std::string const bad = testing::TempDir() + "posdiv_bad_field.json";
    std::ifstream in(std::string(POSDIV_TEST_DATA) + "/x3_10x_1.json");
    auto doc = nlohmann::json::parse(in);
    doc["class_number"] = 2;
    std::ofstream(bad) << doc.dump();
    EXPECT_EQ(run("analyze --field " + bad).status, 5);
}

TEST(Cli, IngestedField)
{
    auto const j = analyze_json(std::string("--field ") + POSDIV_TEST_DATA + "/x3_10x_1.json");
    EXPECT_EQ(j["P"], 2);
    EXPECT_EQ(j["PE"], 2);
    EXPECT_EQ(j["disc"], 3973);
}

TEST(Cli, PrecisionOverride)
{
    auto const a = nlohmann::json::parse(run("analyze --disc -959 --format json", "POSDIV_PRECISION=48").out);
    EXPECT_EQ(a["precision"], 64);
    auto const b = nlohmann::json::parse(run("analyze --disc -959 --format json --precision 32", "POSDIV_PRECISION=48").out);
    EXPECT_EQ(b["precision"], 48);
    EXPECT_EQ(a["Cl_pos"], b["Cl_pos"]);
    EXPECT_EQ(run("analyze --disc -959", "POSDIV_PRECISION=abc").status, 2);
    EXPECT_EQ(run("analyze --disc -959 --precision 8").status, 2);
}

TEST(Cli, BatchImaginaryRows)
{
    Outcome const r = run("batch --range -1000 -1 --filter 'pe>=1' --format csv");
    ASSERT_EQ(r.status, 0);
    for (char const * d : {"-184", "-248", "-399", "-632", "-759", "-799", "-959"})
        EXPECT_NE(r.out.find(std::string(",") + d + ",ok,"), std::string::npos) << d;
}

TEST(Cli, BatchEmptyRange)
{
    Outcome const r = run("batch --range 2 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, BatchJobsByteIdentical)
{
    Outcome const a = run("batch --range -400 400 --jobs 1 --format json");
    Outcome const b = run("batch --range -400 400 --jobs 8 --format json");
    EXPECT_EQ(a.status, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
}
