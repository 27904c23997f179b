#include <gtest/gtest.h>

#include <sepsys/cubillage.hpp>
#include <sepsys/io.hpp>
#include <sepsys/separation.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using namespace sepsys;

namespace {

struct CliRun {
    int code;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(SEPSYS_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t got = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(SEPSYS_DATA) + "/" + name; }

std::string tmp(const char* name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, Rank) {
    EXPECT_EQ(run("rank --kind c -n 4").out, "15\n");
    EXPECT_EQ(run("rank --kind s -n 5").out, "16\n");
    EXPECT_EQ(run("rank --kind q -n 5").code, 2);
}

TEST(Cli, SepCheck) {
    CliRun r = run("sep check --kind w " + data("w_violation.txt"));
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "violation 13 24\n");
    EXPECT_EQ(run("sep check --kind c " + data("w_violation.txt")).code, 1);
    EXPECT_EQ(run("sep check --kind s " + data("intervals4.txt")).out, "separated\n");
    EXPECT_EQ(run("sep check --kind s " + data("malformed.txt")).code, 2);
    EXPECT_EQ(run("sep check --kind s /nonexistent/file").code, 2);
}

TEST(Cli, SepCompleteUsesSeed) {
    CliRun a = run("sep complete --kind c --seed 3 " + data("intervals4.txt"));
    ASSERT_EQ(a.code, 0);
    Collection c = parse_collection(a.out);
    EXPECT_EQ(c.size(), 15u);
    EXPECT_EQ(run("sep complete --kind c " + data("intervals4.txt"), "SEPSYS_SEED=3").out, a.out);
}

TEST(Cli, Purity) {
    CliRun r = run("purity --kind c -n 4 --exhaustive");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("collections 2 "), std::string::npos);
    EXPECT_EQ(run("purity --kind w -n 5 --trials 5 --seed 2").code, 0);
}

TEST(Cli, WextendPipeline) {
    std::string q = tmp("wextend_q.txt");
    CliRun r = run("wextend run " + data("intervals4.txt") + " --emit-cubillage " + q);
    ASSERT_EQ(r.code, 0);
    Collection c = parse_collection(r.out);
    EXPECT_EQ(c.size(), 15u);
    EXPECT_TRUE(intervals(4).subset_of(c));
    EXPECT_TRUE(is_separated_collection(SeparationKind::Chord, c));
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 16);
    EXPECT_EQ(run("cubillage validate " + q).out, "valid\n");
    EXPECT_EQ(run("wextend run " + data("w_violation.txt")).code, 1);
    EXPECT_EQ(run("wextend run --lens-policy rightmost " + data("intervals4.txt")).out, r.out);
}

TEST(Cli, CubillageCommands) {
    EXPECT_EQ(run("cubillage validate " + data("q13.txt")).code, 0);
    CliRun m = run("cubillage membranes " + data("q13.txt"));
    std::size_t expected = enumerate_membranes(parse_cubillage(read_text(data("q13.txt")))).size();
    EXPECT_EQ(m.out.substr(0, m.out.find('\n')), "membranes " + std::to_string(expected));
    std::string mem = tmp("membrane.txt");
    CliRun c = run("cubillage contract --color 4 --membrane-out " + mem + " " + data("q13.txt"));
    ASSERT_EQ(c.code, 0);
    EXPECT_EQ(c.out, "n 3\ncube - | 1 2 3\n");
    std::string red = tmp("reduced.txt");
    write_text(red, c.out);
    CliRun e = run("cubillage expand " + red + " --membrane " + mem + " --color 4");
    EXPECT_EQ(parse_cubillage(e.out), parse_cubillage(read_text(data("q13.txt"))));
}

TEST(Cli, TilingAndRender) {
    CliRun t = run("tiling build " + data("intervals4.txt"));
    EXPECT_EQ(std::count(t.out.begin(), t.out.end(), '\n'), 7);
    EXPECT_EQ(run("tiling inversions " + data("intervals4.txt")).out, "");
    CliRun f = run("tiling flip " + data("intervals4.txt") + " --base - --colors \"1 2 3\"");
    ASSERT_EQ(f.code, 0);
    EXPECT_TRUE(parse_collection(f.out).contains(S("13")));
    EXPECT_EQ(run("tiling flip " + data("intervals4.txt") + " --base 1 --colors \"1 2 3\"").code, 1);
    std::string a = tmp("a.svg"), b = tmp("b.svg");
    EXPECT_EQ(run("render section " + data("q13.txt") + " --level 2 --svg " + a).code, 0);
    EXPECT_EQ(run("render section " + data("q13.txt") + " --level 2 --svg " + b).code, 0);
    EXPECT_EQ(read_text(a), read_text(b));
    EXPECT_EQ(run("render combi " + data("intervals4.txt") + " --svg " + a).code, 0);
    EXPECT_EQ(run("render tiling " + data("w_violation.txt") + " --svg " + a).code, 1);
}
