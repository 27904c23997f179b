// One line per acceptance criterion; exit status is the number of failed criteria.

#include <sepsys/sepsys.hpp>

#include "oracles.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace sepsys;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(SEPSYS_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return "";
    std::string out;
    std::array<char, 256> buf{};
    while (std::size_t got = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
    pclose(p);
    return out;
}

std::uint64_t choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int t = 1; t <= k; ++t) r = r * static_cast<std::uint64_t>(n - k + t) / static_cast<std::uint64_t>(t);
    return r;
}

Collection all_but(int n, const char* x) {
    Collection c = power_set(n);
    c.erase(S(x));
    return c;
}

std::vector<Collection> maximal_size(SeparationKind kind, const Collection& domain) {
    std::vector<Collection> out;
    for (const auto& c : enumerate_maximal(kind, domain))
        if (c.size() == rank_formula(kind, domain.n())) out.push_back(c);
    return out;
}

template <class T>
std::set<T> intersect(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

template <class T>
std::set<T> unite(std::set<T> a, const std::set<T>& b) {
    a.insert(b.begin(), b.end());
    return a;
}

Outcome rank_formulas() {
    Outcome o;
    const char* kinds[] = {"s", "w", "c"};
    for (int n = 1; n <= 8; ++n) {
        std::uint64_t sw = choose(n, 2) + static_cast<std::uint64_t>(n) + 1, c = sw + choose(n, 3);
        std::uint64_t expect[] = {sw, sw, c};
        for (int k = 0; k < 3; ++k) {
            std::string out = run_cli(std::string("rank --kind ") + kinds[k] + " -n " + std::to_string(n));
            o.require(out == std::to_string(expect[k]) + "\n", std::string("rank ") + kinds[k] + " n=" + std::to_string(n) + " printed '" + out + "'");
        }
    }
    o.require(run_cli("rank --kind s -n 4") == "11\n" && run_cli("rank --kind c -n 5") == "26\n", "spot values 11 / 26");
    if (o.pass) o.detail = "s, w, c for n=1..8 via the CLI";
    return o;
}

Outcome exhaustive_purity() {
    Outcome o;
    for (int n = 1; n <= 4; ++n)
        for (auto k : {SeparationKind::Strong, SeparationKind::Weak, SeparationKind::Chord}) {
            auto r = verify_purity_exhaustive(k, n);
            o.require(r.pure(), std::string(kind_name(k)) + " not pure at n=" + std::to_string(n));
        }
    auto cs = enumerate_maximal(SeparationKind::Chord, power_set(4));
    std::set<Collection> got(cs.begin(), cs.end());
    o.require(got == std::set<Collection>{all_but(4, "13"), all_but(4, "24")}, "maximal c-collections on [4] are not exactly 2^[4]-13, 2^[4]-24");
    o.detail = o.pass ? "n<=4 all kinds, 2 maximal c-collections" : o.detail;
    return o;
}

Outcome sampled_purity() {
    Outcome o;
    for (int n = 5; n <= 6; ++n)
        for (auto k : {SeparationKind::Strong, SeparationKind::Weak, SeparationKind::Chord}) {
            auto r = verify_purity_sampled(k, n, 100, 1000 + static_cast<std::uint64_t>(n));
            o.require(r.collections == 100 && r.pure(), std::string(kind_name(k)) + " sampled sizes " + std::to_string(r.min_size) + ".." +
                                                             std::to_string(r.max_size) + " at n=" + std::to_string(n));
        }
    if (o.pass) o.detail = "100 greedy collections per kind, n=5,6";
    return o;
}

Outcome lemma_golden() {
    Outcome o;
    Collection vq = cubillage_from_c_collection(all_but(4, "24")).spectrum();
    Collection s = rim(4);
    for (const char* x : {"2", "124"}) s.insert(S(x));
    o.require(vq == all_but(4, "24"), "spectrum of the 13-cubillage");
    o.require(s.size() == 10, "|S| != 10");
    for (auto k : {SeparationKind::Strong, SeparationKind::Weak}) {
        o.require(is_separated_collection(k, s), std::string("S not ") + kind_name(k) + " separated");
        o.require(is_maximal_in(k, s, vq), std::string("S not maximal ") + kind_name(k) + " in V_Q");
        o.require(rank_formula(k, 4) == 11, "rank 11");
    }
    if (o.pass) o.detail = "|S|=10 maximal in V_Q, rank 11";
    return o;
}

Outcome round_trips() {
    Outcome o;
    std::size_t count = 0;
    for (int n = 1; n <= 4; ++n)
        for (const auto& c : enumerate_maximal(SeparationKind::Strong, power_set(n))) {
            o.require(tiling_from_s_collection(c).spectrum() == c, "tiling round trip " + c.str());
            ++count;
        }
    for (const auto& c : enumerate_maximal(SeparationKind::Chord, power_set(4))) {
        o.require(cubillage_from_c_collection(c).spectrum() == c, "cubillage round trip " + c.str());
        ++count;
    }
    for (const auto& w : maximal_size(SeparationKind::Weak, power_set(4))) {
        QuasiCombi k = combi_from_w_collection(w);
        o.require(k.is_combi() && k.spectrum() == w, "combi round trip " + w.str());
        ++count;
    }
    for (int n = 5; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Collection s = greedy_complete(SeparationKind::Strong, Collection{GroundSize(n)}, seed);
            o.require(tiling_from_s_collection(s).spectrum() == s, "sampled tiling round trip");
            Collection c = greedy_complete(SeparationKind::Chord, Collection{GroundSize(n)}, seed);
            o.require(cubillage_from_c_collection(c).spectrum() == c, "sampled cubillage round trip");
            count += 2;
        }
    if (o.pass) o.detail = std::to_string(count) + " round trips";
    return o;
}

Outcome lattices() {
    Outcome o;
    std::size_t pairs = 0;
    std::vector<Cubillage> qs = oracle::all_cubillages(4);
    for (std::uint64_t seed = 0; seed < 5; ++seed) qs.push_back(oracle::random_cubillage(5, seed));
    for (const auto& q : qs) {
        o.require(precedence_dag(q).is_acyclic(), "cube precedence graph has a cycle");
        o.require(Fragmentation(q).dag().is_acyclic(), "fragment precedence graph has a cycle");
    }
    for (const auto& q : oracle::all_cubillages(4)) {
        auto ideals = precedence_dag(q).enumerate_ideals();
        auto ms = enumerate_membranes(q);
        std::set<std::set<Rhombus>> distinct;
        for (const auto& m : ms) distinct.insert(m.rhombi());
        o.require(distinct.size() == ideals.size() && ms.size() == ideals.size(), "s-membranes vs ideals count");
        for (const auto& a : ms)
            for (const auto& b : ms) {
                auto ha = front_heap(q, a), hb = front_heap(q, b);
                o.require(front_heap(q, meet(q, a, b)) == intersect(ha, hb), "s meet heap");
                o.require(front_heap(q, join(q, a, b)) == unite(ha, hb), "s join heap");
                ++pairs;
            }
        Fragmentation f(q);
        auto wideals = f.dag().enumerate_ideals();
        auto wms = enumerate_w_membranes(f);
        std::set<WMembrane> wdistinct(wms.begin(), wms.end());
        o.require(wdistinct.size() == wideals.size(), "w-membranes vs ideals count");
        for (const auto& a : wms)
            for (const auto& b : wms) {
                auto ha = w_front_heap(f, a), hb = w_front_heap(f, b);
                o.require(w_front_heap(f, w_meet(f, a, b)) == intersect(ha, hb), "w meet heap");
                o.require(w_front_heap(f, w_join(f, a, b)) == unite(ha, hb), "w join heap");
                ++pairs;
            }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " membrane pairs at n=4";
    return o;
}

void check_fill(Outcome& o, const Tiling& m, const Tiling& m2) {
    auto inv = inversion_set(m), inv2 = inversion_set(m2);
    bool contained = std::includes(inv2.begin(), inv2.end(), inv.begin(), inv.end());
    FillResult r = fill_between_membranes(m, m2);
    o.require(r.possible == contained, "fillability differs from inversion containment");
    if (!r.possible) return;
    o.require(r.cubes.size() == inv2.size() - inv.size(), "cube count differs from inversion difference");
    // the filling glued to the regions in front of M and behind M' is a whole cubillage
    std::set<Cube> all = r.cubes;
    for (const auto& c : extend_membrane_to_cubillage(m).front_part) all.insert(c);
    for (const auto& c : extend_membrane_to_cubillage(m2).rear_part) all.insert(c);
    o.require(validate_cubillage(Cubillage{m.ground(), all}).ok(), "filling does not complete to a cubillage");
}

Outcome fillings() {
    Outcome o;
    auto ts = oracle::all_tilings(4);
    std::size_t pairs = 0;
    for (const auto& a : ts)
        for (const auto& b : ts) {
            check_fill(o, a, b);
            ++pairs;
        }
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto ms = enumerate_membranes(oracle::random_cubillage(5, seed));
        for (int t = 0; t < 40; ++t) {
            check_fill(o, ms[rng() % ms.size()], ms[rng() % ms.size()]);
            ++pairs;
        }
    }
    for (int n = 3; n <= 6; ++n) {
        FillResult r = fill_between_membranes(standard_tiling(n), antistandard_tiling(n));
        o.require(r.possible && r.cubes.size() == choose(n, 3), "standard to antistandard needs C(n,3) cubes");
    }
    if (o.pass) o.detail = std::to_string(pairs) + " ordered pairs";
    return o;
}

Outcome extension() {
    Outcome o;
    double worst6 = 0;
    std::size_t runs = 0;
    auto check = [&](const Collection& w, TriangulationPolicy p) {
        auto t0 = Clock::now();
        ExtendResult r = extend_w_to_c(w, p);
        double dt = seconds_since(t0);
        if (w.n() == 6) worst6 = std::max(worst6, dt);
        o.require(verify_extension(w, r.cubillage).ok(), "extension does not verify for " + w.str());
        o.require(w.subset_of(r.spectrum), "spectrum misses W");
        o.require(r.spectrum.size() == rank_formula(SeparationKind::Chord, w.n()), "spectrum size");
        o.require(greedy_complete(SeparationKind::Chord, r.spectrum, 7) == r.spectrum, "spectrum not maximal");
        ++runs;
    };
    for (const auto& w : maximal_size(SeparationKind::Weak, power_set(4)))
        for (auto p : {TriangulationPolicy::Leftmost, TriangulationPolicy::Rightmost}) check(w, p);
    for (int n = 5; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 200; ++seed)
            check(oracle::random_w_collection(n, 30 + static_cast<int>(seed % 50), seed * 31 + static_cast<std::uint64_t>(n)),
                  seed % 2 ? TriangulationPolicy::Rightmost : TriangulationPolicy::Leftmost);
    std::string out = run_cli("wextend run " + std::string(SEPSYS_DATA) + "/intervals4.txt");
    try {
        Collection c = parse_collection(out);
        o.require(c.size() == 15 && intervals(4).subset_of(c), "cli output");
    } catch (const ParseError&) {
        o.require(false, "cli output does not parse");
    }
    o.require(worst6 < 1.0, "n=6 run slower than 1 s");
    std::ostringstream d;
    d.precision(3);
    d << runs << " runs, slowest n=6 run " << worst6 << " s";
    if (o.pass) o.detail = d.str();
    return o;
}

Outcome membrane_extraction() {
    Outcome o;
    std::size_t extracted = 0, flips = 0;
    for (const auto& q : oracle::all_cubillages(4)) {
        for (const auto& w : maximal_size(SeparationKind::Weak, q.spectrum())) {
            WMembrane m = w_membrane_for_w_collection(q, w);
            o.require(m.spectrum() == w, "extracted membrane spectrum");
            ++extracted;
        }
        Fragmentation f(q);
        for (const auto& m : enumerate_w_membranes(f))
            for (auto dir : {FlipDirection::Lower, FlipDirection::Raise})
                for (const auto& tau : flippable(f, m, dir)) {
                    Collection before = m.spectrum(), after = w_flip(f, m, tau, dir).spectrum();
                    if (tau.kind != FragKind::Square) {
                        o.require(before == after, "tetrahedral flip changed the spectrum");
                        continue;
                    }
                    const Cube& c = tau.cube;
                    Subset xj = c.bottom.with(c.j), xik = c.bottom.with(c.i).with(c.k);
                    Collection expect = before;
                    expect.erase(dir == FlipDirection::Lower ? xik : xj);
                    expect.insert(dir == FlipDirection::Lower ? xj : xik);
                    o.require(after == expect, "octahedral flip is not Xik <-> Xj");
                    ++flips;
                }
    }
    if (o.pass) o.detail = std::to_string(extracted) + " membranes, " + std::to_string(flips) + " octahedral flips";
    return o;
}

Outcome escorts() {
    Outcome o;
    std::size_t quasi = 0, escorts_seen = 0;
    for (const auto& q : oracle::all_cubillages(4)) {
        Fragmentation f(q);
        std::map<Collection, QuasiCombi> combi_of;
        for (const auto& m : enumerate_w_membranes(f)) {
            QuasiCombi k = membrane_to_quasi_combi(m);
            o.require(k.fully_triangulated() && validate_quasi_combi(k).ok(), "membrane is not a fully triangulated quasi-combi");
            QuasiCombi c = normalize_to_combi(k);
            for (std::uint64_t seed = 1; seed <= 5; ++seed) o.require(normalize_to_combi(k, seed) == c, "normalization depends on order");
            o.require(c.is_combi() && c.spectrum() == k.spectrum(), "normal form is not a combi with the same spectrum");
            o.require(c == combi_from_w_collection(k.spectrum()), "normal form differs from the combi of the spectrum");
            for (const auto& e : escort(f, m)) {
                QuasiCombi ce = normalize_to_combi(membrane_to_quasi_combi(e));
                o.require(ce == c, "escort members normalize to different combies");
            }
            auto [it, fresh] = combi_of.emplace(k.spectrum(), c);
            o.require(it->second == c, "two combies for one spectrum");
            escorts_seen += fresh;
            Report rep = check_fine_property(fine_w_membrane(f, m));
            o.require(rep.ok(), "fine membrane violates the horizontal-edge property: " + rep.str());
            ++quasi;
        }
    }
    if (o.pass) o.detail = std::to_string(quasi) + " quasi-combies, " + std::to_string(escorts_seen) + " escorts";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> cs = {
        {1, "rank formulas", 5, rank_formulas},
        {2, "exhaustive purity n<=4", 10, exhaustive_purity},
        {3, "randomized purity n=5,6", 60, sampled_purity},
        {4, "13-cubillage is neither s- nor w-pure", 5, lemma_golden},
        {5, "bijection round trips", 120, round_trips},
        {6, "precedence lattices", 120, lattices},
        {7, "membrane filling", 120, fillings},
        {8, "w- to c-extension", 300, extension},
        {9, "w-membrane extraction and octahedral flips", 120, membrane_extraction},
        {10, "escorts and normalization", 120, escorts},
    };
    int failed = 0;
    for (const auto& c : cs) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double dt = seconds_since(t0);
        if (o.pass && dt > c.budget) {
            o.pass = false;
            o.detail += " (over time budget)";
        }
        std::printf("criterion %2d: %s  %s: %s [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), dt);
        failed += !o.pass;
    }
    return failed;
}
