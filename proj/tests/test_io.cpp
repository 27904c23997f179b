#include <gtest/gtest.h>

#include <sepsys/io.hpp>
#include <sepsys/svg.hpp>

#include "oracles.hpp"

#include <random>

using namespace sepsys;

TEST(CollectionFile, ParsesCommentsAndEmptySet) {
    Collection c = parse_collection("# header comment\nn 3\n-\n1 3   # trailing\n\n2\n");
    EXPECT_EQ(c, (Collection{GroundSize(3), {S("0"), S("13"), S("2")}}));
    EXPECT_EQ(serialize_collection(c), "n 3\n-\n2\n1 3\n");
}

TEST(CollectionFile, Errors) {
    EXPECT_THROW(parse_collection(""), ParseError);
    EXPECT_THROW(parse_collection("m 3\n"), ParseError);
    EXPECT_THROW(parse_collection("n 0\n"), ParseError);
    EXPECT_THROW(parse_collection("n 3\n1 1\n"), ParseError);
    EXPECT_THROW(parse_collection("n 3\n3 1\n"), ParseError);
    EXPECT_THROW(parse_collection("n 3\n4\n"), ParseError);
    EXPECT_THROW(parse_collection("n 3\n0\n"), ParseError);
    EXPECT_THROW(parse_collection("n 3\n1 x\n"), ParseError);
    try {
        parse_collection("n 3\n1 2\n2\n1 2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4);
    }
}

TEST(CollectionFile, RoundTripFuzz) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        Collection c{GroundSize(n)};
        std::uint64_t lim = std::uint64_t{1} << n;
        for (int s = 0; s < 20; ++s) c.insert(Subset::from_bits(rng() % lim));
        Collection back = parse_collection(serialize_collection(c));
        EXPECT_EQ(back, c);
        EXPECT_EQ(serialize_collection(back), serialize_collection(c));
    }
}

TEST(CubillageFile, RoundTrip) {
    for (int n = 3; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Cubillage q = oracle::random_cubillage(n, seed);
            std::string text = serialize_cubillage(q);
            EXPECT_EQ(parse_cubillage(text), q);
            EXPECT_EQ(serialize_cubillage(parse_cubillage(text)), text);
        }
    Cubillage q = parse_cubillage("n 4\ncube - | 1 2 3\ncube - | 1 3 4\ncube 1 | 2 3 4\ncube 3 | 1 2 4\n");
    EXPECT_TRUE(validate_cubillage(q).ok());
    EXPECT_THROW(parse_cubillage("n 4\ncube - | 1 2\n"), ParseError);
    EXPECT_THROW(parse_cubillage("n 4\ncube 1 | 1 2 3\n"), ParseError);
    EXPECT_THROW(parse_cubillage("n 4\ncube - 1 2 3\n"), ParseError);
    EXPECT_THROW(parse_cubillage("n 4\ncube - | 1 2 3\ncube - | 1 2 3\n"), ParseError);
    EXPECT_THROW(parse_cubillage("n 4\ncubes - | 1 2 3\n"), ParseError);
}

namespace {
std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t c = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
    return c;
}
}  // namespace

TEST(Svg, TilingCombiSection) {
    std::string t = render_tiling_svg(standard_tiling(4));
    EXPECT_EQ(count(t, "<polygon"), 6u);
    EXPECT_EQ(t, render_tiling_svg(standard_tiling(4)));
    EXPECT_NE(t.find("version=\"1.1\""), std::string::npos);
    EXPECT_EQ(t.rfind("</svg>\n"), t.size() - 7);
    // 11 vertices, 6 faces: 16 edges, all V-edges
    EXPECT_EQ(count(t, "stroke-width=\"2.50\""), 16u);
    EXPECT_EQ(count(t, "stroke-width=\"0.80\""), 0u);

    QuasiCombi k = combi_from_w_collection(intervals(4));
    std::string c = render_combi_svg(k);
    EXPECT_EQ(count(c, "<polygon"), k.tiles().size());
    std::size_t h_edges = 0;
    std::set<Edge> es;
    for (const auto& tile : k.tiles())
        for (const auto& e : tile.edges()) es.insert(e);
    for (const auto& e : es) h_edges += e.u.size() == e.v.size();
    EXPECT_EQ(count(c, "stroke-width=\"0.80\""), h_edges);

    Collection c13 = power_set(4);
    c13.erase(S("24"));
    Fragmentation f(cubillage_from_c_collection(c13));
    std::string s = render_section_svg(f, 2);
    EXPECT_EQ(count(s, "<polygon"), 4u);
    EXPECT_EQ(count(s, "class=\"upper\""), 2u);
    EXPECT_EQ(count(s, "class=\"lower\""), 2u);
    EXPECT_EQ(s, render_section_svg(Fragmentation(cubillage_from_c_collection(c13)), 2));
}
