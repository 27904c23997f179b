#include <gtest/gtest.h>

#include <sepsys/wextend.hpp>

#include "oracles.hpp"

using namespace sepsys;

namespace {

Collection with(Collection c, std::initializer_list<const char*> extra) {
    for (const char* e : extra) c.insert(S(e));
    return c;
}

Collection all_but(int n, const char* x) {
    Collection c = power_set(n);
    c.erase(S(x));
    return c;
}

std::vector<Collection> maximal_w(int n) {
    std::vector<Collection> out;
    for (const auto& w : enumerate_maximal(SeparationKind::Weak, power_set(n)))
        if (w.size() == rank_formula(SeparationKind::Weak, n)) out.push_back(w);
    return out;
}

}  // namespace

TEST(Extend, Intervals) {
    auto r = extend_w_to_c(intervals(4));
    EXPECT_EQ(r.spectrum.size(), 15u);
    EXPECT_TRUE(intervals(4).subset_of(r.spectrum));
    EXPECT_TRUE(verify_extension(intervals(4), r.cubillage).ok());
    auto r5 = extend_w_to_c(intervals(5));
    EXPECT_EQ(r5.cubillage.cubes().size(), 10u);
    EXPECT_TRUE(validate_cubillage(r5.cubillage).ok());
}

TEST(Extend, ForcedSpectra) {
    // Each collection contains a set that lies in exactly one maximal chord separated collection on [4].
    Collection w24 = with(rim(4), {"2", "24", "124"});
    Collection w13 = with(rim(4), {"3", "23", "13"});
    EXPECT_EQ(extend_w_to_c(w24).spectrum, all_but(4, "13"));
    EXPECT_EQ(extend_w_to_c(w13).spectrum, all_but(4, "24"));
    for (auto p : {TriangulationPolicy::Leftmost, TriangulationPolicy::Rightmost}) {
        EXPECT_EQ(extend_w_to_c(w24, p).spectrum, all_but(4, "13"));
        EXPECT_EQ(extend_w_to_c(w13, p).spectrum, all_but(4, "24"));
    }
}

TEST(Extend, ExhaustiveAtFour) {
    auto ws = maximal_w(4);
    EXPECT_EQ(ws.size(), 10u);
    for (const auto& w : ws)
        for (auto p : {TriangulationPolicy::Leftmost, TriangulationPolicy::Rightmost}) {
            auto r = extend_w_to_c(w, p);
            EXPECT_TRUE(verify_extension(w, r.cubillage).ok()) << w.str();
            EXPECT_TRUE(w.subset_of(r.spectrum));
        }
}

TEST(Extend, SampledFiveAndSix) {
    for (int n = 5; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Collection w = oracle::random_w_collection(n, 40, seed);
            auto r = extend_w_to_c(w, seed % 2 ? TriangulationPolicy::Rightmost : TriangulationPolicy::Leftmost);
            Report rep = verify_extension(w, r.cubillage);
            EXPECT_TRUE(rep.ok()) << w.str() << " " << rep.str();
            // the geometric answer need not match the greedy completion, only contain W
            Collection greedy = greedy_complete(SeparationKind::Chord, w, seed);
            EXPECT_EQ(greedy.size(), r.spectrum.size());
        }
}

TEST(Extend, StartMembraneLiesInTheResult) {
    for (const auto& w : maximal_w(4)) {
        auto r = extend_w_to_c(w);
        Fragmentation f(r.cubillage);
        WMembrane m = r.front_part.rear;
        EXPECT_TRUE(is_w_membrane_of(f, m));
        EXPECT_EQ(m.spectrum(), w);
        EXPECT_EQ(w_front_heap(f, m), r.front_part.fragments);
        EXPECT_EQ(r.front_part.fragments.size() + r.rear_part.fragments.size(), 3 * r.cubillage.cubes().size());
    }
}

TEST(Extend, AnyFullyTriangulatedStart) {
    // start from w-membranes of known cubillages, which carry arbitrary lens triangulations
    for (const auto& q : oracle::all_cubillages(4)) {
        Fragmentation f(q);
        for (const auto& m : enumerate_w_membranes(f)) {
            auto k = membrane_to_quasi_combi(m);
            auto r = extend_quasi_combi(k);
            EXPECT_TRUE(verify_extension(k.spectrum(), r.cubillage).ok());
        }
    }
}

TEST(Extend, CaseCountsAndTermination) {
    int case2b = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Collection w = oracle::random_w_collection(6, 60, seed);
        auto r = extend_w_to_c(w);
        for (const auto* s : {&r.front_stats, &r.rear_stats}) {
            case2b += s->case2b;
            EXPECT_GE(s->delta_fragments_2b, s->case2b);
            std::size_t frags = static_cast<std::size_t>(s->case1 + s->case2a + s->delta_fragments_2b + s->case2b) +
                                3 * static_cast<std::size_t>(s->filled_cubes);
            EXPECT_EQ(frags, (s == &r.front_stats ? r.front_part : r.rear_part).fragments.size());
            EXPECT_LE(static_cast<std::size_t>(s->steps()), 3 * binomial(6, 3));
            // only a truncated cone adds horizontal triangles (p - 1 of them at the level below)
            int rises = 0;
            for (std::size_t t = 1; t < s->semi_lens_trace.size(); ++t) rises += s->semi_lens_trace[t] > s->semi_lens_trace[t - 1];
            EXPECT_LE(rises, s->case2b);
        }
    }
    RecordProperty("case2b_steps", case2b);
}

TEST(Assemble, InverseOfFragmentation) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Cubillage q = oracle::random_cubillage(5, seed);
        Fragmentation f(q);
        EXPECT_EQ(assemble_cubes(q.ground(), f.fragments()), q);
        auto part = f.fragments();
        part.pop_back();
        EXPECT_THROW(assemble_cubes(q.ground(), part), std::logic_error);
    }
}

TEST(Extend, RejectsNonMaximal) {
    EXPECT_THROW(extend_w_to_c(rim(4)), std::invalid_argument);
    EXPECT_THROW(extend_w_to_c(with(rim(4), {"2", "13", "24"})), std::invalid_argument);
}
