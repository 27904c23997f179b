#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "combi.hpp"
#include "cubillage.hpp"
#include "fragmentation.hpp"
#include "report.hpp"

namespace sepsys {

// Fragments filling the region between two w-membranes (front, rear).
struct PartialFragmentation {
    std::set<Fragment> fragments;
    WMembrane front;
    WMembrane rear;
};

// Upper fan at apex A: Delta(A|i_{r-1} i_r) for k = i_0 > ... > i_p = i.
struct FanContext {
    Subset apex;
    std::vector<int> colors;
    int p() const { return static_cast<int>(colors.size()) - 1; }
};

struct ExtendStats {
    int case1 = 0;
    int case2a = 0;
    int case2b = 0;
    int delta_fragments_2b = 0;  // sum of p - 1 over Subcase 2b steps
    int filled_cubes = 0;        // whole cubes added once the membrane has no horizontal triangles
    std::vector<std::size_t> semi_lens_trace;  // horizontal triangle count before each step
    int steps() const { return case1 + case2a + case2b; }
};

struct ExtendResult {
    Cubillage cubillage;
    Collection spectrum;
    QuasiCombi start;
    PartialFragmentation front_part;
    PartialFragmentation rear_part;
    ExtendStats front_stats;
    ExtendStats rear_stats;
};

namespace detail {

inline i64 membrane_area2(const std::set<Tri>& m, const Generators2D& g) {
    i64 s = 0;
    for (const auto& t : m) s += std::abs(area2({g.point(t.v[0]), g.point(t.v[1]), g.point(t.v[2])}));
    return s;
}

inline void lower_through(std::set<Tri>& m, const Fragment& tau) {
    for (const auto& t : tau.rear())
        if (!m.erase(t)) throw std::logic_error("rear side of " + tau.str() + " is not on the membrane at " + t.str());
    for (const auto& t : tau.front())
        if (!m.insert(t).second) throw std::logic_error("front side of " + tau.str() + " overlaps the membrane at " + t.str());
}

// Edges of the lower boundary of a horizontal triangle.
inline std::vector<Edge> lower_boundary(const Tri& t) {
    CombiTile c = t.tile();
    if (c.kind == TileKind::SemiLensUpper) return {c.long_edge()};
    Edge l = c.long_edge();
    std::vector<Edge> out;
    for (const auto& e : t.edges())
        if (!(e == l)) out.push_back(e);
    return out;
}

inline std::optional<Tri> pick_semi_lens(const std::set<Tri>& m) {
    int h = -1;
    for (const auto& t : m)
        if (t.horizontal() && (h < 0 || t.level() < h)) h = t.level();
    if (h < 0) return std::nullopt;
    std::vector<Tri> level;
    for (const auto& t : m)
        if (t.horizontal() && t.level() == h) level.push_back(t);
    for (const auto& lam : level) {
        bool free = true;
        for (const auto& e : lower_boundary(lam))
            for (const auto& other : level) {
                if (other == lam) continue;
                auto es = other.edges();
                if (std::find(es.begin(), es.end(), e) != es.end()) free = false;
            }
        if (free) return lam;
    }
    throw std::logic_error("every semi-lens of the lowest level has a lower edge on another semi-lens");
}

inline FanContext upper_fan(const std::set<Tri>& m, Subset apex, int from, int to) {
    FanContext fan{apex, {from}};
    int cur = from;
    while (cur != to) {
        int next = 0;
        for (int c : apex.elements())
            if (c < cur && m.count(Tri::of(apex.without(cur), apex.without(c), apex))) next = c;
        if (next == 0 || next < to) throw std::logic_error("broken upper fan at apex " + apex.str());
        fan.colors.push_back(next);
        cur = next;
    }
    return fan;
}

// Fan triangulation of the convex polygon A - i_0, ..., A - i_p from its vertex with the smallest bit value.
inline std::vector<Fragment> cone_fragments(const FanContext& fan) {
    auto m = fan.colors.size();
    std::size_t s = 0;
    for (std::size_t r = 1; r < m; ++r)
        if (fan.apex.without(fan.colors[r]) < fan.apex.without(fan.colors[s])) s = r;
    std::vector<Fragment> out;
    for (std::size_t q = 0; q + 2 < m; ++q) {
        std::array<int, 3> c{fan.colors[s], fan.colors[(s + 1 + q) % m], fan.colors[(s + 2 + q) % m]};
        std::sort(c.begin(), c.end());
        Subset base = fan.apex.without(c[0]).without(c[1]).without(c[2]);
        out.push_back({{base, c[0], c[1], c[2]}, FragKind::Delta});
    }
    return out;
}

}  // namespace detail

// First phase: fragments filling the region between the front side and K, by moving K frontward.
inline PartialFragmentation fill_front_region(const WMembrane& k, ExtendStats& stats) {
    int n = k.n();
    Generators2D g = Generators2D::strict_convex(n);
    const i64 area = g.zonogon_area2();
    if (detail::membrane_area2(k.triangles(), g) != area) throw std::invalid_argument("membrane does not cover the zonogon");
    std::set<Tri> m = k.triangles();
    std::set<Fragment> frags;
    auto add = [&](const Fragment& tau) {
        if (!frags.insert(tau).second) throw std::logic_error("fragment " + tau.str() + " added twice");
    };
    const std::size_t limit = 3 * binomial(n, 3) + 1;
    while (true) {
        auto lam = detail::pick_semi_lens(m);
        if (!lam) break;
        if (frags.size() > limit) throw std::logic_error("first phase does not terminate");
        stats.semi_lens_trace.push_back(static_cast<std::size_t>(
            std::count_if(m.begin(), m.end(), [](const Tri& t) { return t.horizontal(); })));
        CombiTile c = lam->tile();
        if (c.kind == TileKind::SemiLensUpper) {
            // lambda = {Xi, Xj, Xk}; the nabla below its long edge is nabla(X|ik)
            Subset x = c.root;
            Subset yv = lam->v[0] | lam->v[1] | lam->v[2];
            auto col = (yv - x).elements();
            Fragment tau{{x, col[0], col[1], col[2]}, FragKind::Nabla};
            if (!m.count(Tri::of(x, x.with(col[0]), x.with(col[2]))))
                throw std::logic_error("no nabla tile below the long edge of " + lam->str());
            detail::lower_through(m, tau);
            add(tau);
            ++stats.case1;
        } else {
            // lambda = {Y-k, Y-j, Y-i}
            Subset y = lam->v[0] | lam->v[1] | lam->v[2];
            Subset z = lam->v[0] & lam->v[1] & lam->v[2];
            auto col = (y - z).elements();
            int i = col[0], j = col[1], kk = col[2];
            Subset a = y.without(j), x = y.without(j).without(kk), x2 = y.without(i).without(j);
            if (!m.count(Tri::of(x, y.without(kk), a)) || !m.count(Tri::of(x2, a, y.without(i))))
                throw std::logic_error("no nabla tiles below the lower edges of " + lam->str());
            FanContext fan = detail::upper_fan(m, a, kk, i);
            if (fan.p() > 1) {
                auto cone = detail::cone_fragments(fan);
                for (int r = 0; r < fan.p(); ++r) m.erase(Tri::of(a.without(fan.colors[r]), a.without(fan.colors[r + 1]), a));
                for (const auto& tau : cone) {
                    auto f = tau.front();
                    m.insert(f[0]);  // the lower horizontal triangle sigma
                    add(tau);
                }
                m.insert(Tri::of(x, x2, a));
                stats.delta_fragments_2b += static_cast<int>(cone.size());
                ++stats.case2b;
                if (detail::membrane_area2(m, g) != area)
                    throw std::logic_error("truncated cone at apex " + a.str() + " leaves the region in front of the membrane");
            } else {
                ++stats.case2a;
            }
            Fragment oct{{z, i, j, kk}, FragKind::Square};
            detail::lower_through(m, oct);
            add(oct);
        }
        if (detail::membrane_area2(m, g) != area) throw std::logic_error("membrane stopped covering the zonogon after " + lam->str());
    }
    WMembrane last{k.ground(), m};
    auto tiling = as_rhombus_tiling(last);
    if (!tiling) throw std::logic_error("membrane without horizontal triangles is not a split rhombus tiling");
    for (const auto& cube : extend_membrane_to_cubillage(*tiling).front_part) {
        for (const auto& f : fragments_of(cube)) add(f);
        ++stats.filled_cubes;
    }
    return {frags, w_front_side(n), k};
}

// Second phase via X -> [n] - X, which exchanges the two sides of the zonotope.
inline PartialFragmentation fill_rear_region(const WMembrane& k, ExtendStats& stats) {
    int n = k.n();
    auto mirrored = fill_front_region(complement(k), stats);
    std::set<Fragment> frags;
    for (const auto& f : mirrored.fragments) frags.insert(complement(f, n));
    return {frags, k, w_rear_side(n)};
}

// Groups fragments by cube; every cube must appear with all three pieces exactly once.
inline Cubillage assemble_cubes(GroundSize g, const std::vector<Fragment>& frags) {
    std::map<Cube, std::set<FragKind>> by;
    for (const auto& f : frags)
        if (!by[f.cube].insert(f.kind).second) throw std::logic_error("duplicate fragment " + f.str());
    std::set<Cube> cubes;
    std::string missing;
    for (const auto& [c, ks] : by) {
        if (ks.size() != 3) {
            missing += " " + c.str() + "{";
            for (auto k : ks) missing += std::string(" ") + frag_kind_name(k);
            missing += " }";
        }
        cubes.insert(c);
    }
    if (!missing.empty()) throw std::logic_error("incomplete fragment triples:" + missing);
    return Cubillage{g, cubes};
}

inline Report verify_extension(const Collection& w, const Cubillage& q) {
    Report rep;
    rep.merge(validate_cubillage(q), "cubillage: ");
    Collection spec = q.spectrum();
    if (!w.subset_of(spec)) rep.add("spectrum does not contain the collection");
    if (spec.size() != rank_formula(SeparationKind::Chord, q.n())) rep.add("spectrum size differs from the chord rank");
    if (!is_separated_collection(SeparationKind::Chord, spec)) rep.add("spectrum is not chord separated");
    return rep;
}

// A cubillage whose fragmentation has the fully triangulated quasi-combi K as a w-membrane.
inline ExtendResult extend_quasi_combi(const QuasiCombi& k) {
    if (!k.fully_triangulated()) throw std::invalid_argument("quasi-combi is not fully triangulated");
    auto rep = validate_quasi_combi(k);
    if (!rep.ok()) throw std::invalid_argument("invalid quasi-combi: " + rep.str());
    std::set<Tri> tris;
    for (const auto& t : k.tiles()) tris.insert(Tri::of(t));
    WMembrane m{k.ground(), tris};
    ExtendStats fs, rs;
    auto fr = fill_front_region(m, fs);
    auto re = fill_rear_region(m, rs);
    std::vector<Fragment> all(fr.fragments.begin(), fr.fragments.end());
    all.insert(all.end(), re.fragments.begin(), re.fragments.end());
    Cubillage q = assemble_cubes(k.ground(), all);
    Collection w = k.spectrum();
    auto vrep = verify_extension(w, q);
    Fragmentation f(q);
    if (vrep.ok() && w_front_heap(f, m) != fr.fragments) vrep.add("front heap of the start membrane differs from the first phase");
    if (!vrep.ok()) throw std::logic_error("extension failed verification: " + vrep.str());
    return {q, q.spectrum(), k, fr, re, fs, rs};
}

// A maximal chord separated collection containing the maximal weakly separated collection W.
inline ExtendResult extend_w_to_c(const Collection& w, TriangulationPolicy policy = TriangulationPolicy::Leftmost) {
    if (w.size() != rank_formula(SeparationKind::Weak, w.n()) || !is_separated_collection(SeparationKind::Weak, w))
        throw std::invalid_argument("collection is not a maximal weakly separated collection");
    return extend_quasi_combi(triangulate(combi_from_w_collection(w), policy));
}

}  // namespace sepsys
