#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "report.hpp"
#include "separation.hpp"

namespace sepsys {

// rho(X|ij): vertices X, Xi, Xj, Xij.
struct Rhombus {
    Subset bottom;
    int i = 0, j = 0;

    std::array<Subset, 4> vertices() const { return {bottom, bottom.with(i), bottom.with(i).with(j), bottom.with(j)}; }
    std::array<Edge, 4> edges() const {
        auto v = vertices();
        return {Edge::of(v[0], v[1]), Edge::of(v[1], v[2]), Edge::of(v[2], v[3]), Edge::of(v[3], v[0])};
    }
    std::vector<Vec2> polygon(const Generators2D& g) const {
        std::vector<Vec2> p;
        for (Subset v : vertices()) p.push_back(g.point(v));
        return make_ccw(p);
    }
    // Doubled center.
    Vec2 center2(const Generators2D& g) const { return 2 * g.point(bottom) + g[i] + g[j]; }
    bool well_formed(int n) const {
        return 1 <= i && i < j && j <= n && bottom.fits(n) && !bottom.contains(i) && !bottom.contains(j);
    }
    std::string str() const { return "rho(" + bottom.str() + "|" + std::to_string(i) + "," + std::to_string(j) + ")"; }

    friend constexpr bool operator==(const Rhombus&, const Rhombus&) = default;
    friend constexpr auto operator<=>(const Rhombus&, const Rhombus&) = default;
};

// Edges of the boundary of Z(n,2): left chain [c-1]->[c], right chain {c+1..n}->{c..n}.
inline std::set<Edge> zonogon_boundary(int n) {
    std::set<Edge> b;
    for (int c = 1; c <= n; ++c) {
        b.insert(Edge::of(Subset::interval(1, c - 1), Subset::interval(1, c)));
        b.insert(Edge::of(Subset::interval(c + 1, n), Subset::interval(c, n)));
    }
    return b;
}

class Tiling {
public:
    Tiling(GroundSize g, std::set<Rhombus> rhombi) : ground_(g), rhombi_(std::move(rhombi)) {}

    int n() const { return ground_.value(); }
    GroundSize ground() const { return ground_; }
    const std::set<Rhombus>& rhombi() const { return rhombi_; }
    bool contains(const Rhombus& r) const { return rhombi_.count(r) != 0; }

    // Vertex union together with the rim (only matters for n = 1, where there are no rhombi).
    Collection spectrum() const {
        Collection c = rim(n());
        for (const auto& r : rhombi_)
            for (Subset v : r.vertices()) c.insert(v);
        return c;
    }

    // The rhombus of colors (i, j), if any.
    std::optional<Rhombus> rhombus_of(int i, int j) const {
        for (const auto& r : rhombi_)
            if (r.i == i && r.j == j) return r;
        return std::nullopt;
    }

    friend bool operator==(const Tiling& a, const Tiling& b) { return a.ground_ == b.ground_ && a.rhombi_ == b.rhombi_; }

private:
    GroundSize ground_;
    std::set<Rhombus> rhombi_;
};

inline Report validate_tiling(const Tiling& t, const Generators2D& g) {
    Report rep;
    int n = t.n();
    if (g.n() != n) {
        rep.add("generator count differs from ground size");
        return rep;
    }
    std::map<std::pair<int, int>, int> per_pair;
    std::vector<std::vector<Vec2>> polys;
    std::vector<Rhombus> rs;
    i64 area = 0;
    for (const auto& r : t.rhombi()) {
        if (!r.well_formed(n)) {
            rep.add("malformed rhombus " + r.str());
            continue;
        }
        ++per_pair[{r.i, r.j}];
        polys.push_back(r.polygon(g));
        rs.push_back(r);
        area += area2(polys.back());
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            int c = per_pair.count({i, j}) ? per_pair[{i, j}] : 0;
            if (c == 0) rep.add("missing color pair " + std::to_string(i) + "," + std::to_string(j));
            if (c > 1) rep.add("duplicate color pair " + std::to_string(i) + "," + std::to_string(j));
        }
    if (area != g.zonogon_area2())
        rep.add("area mismatch: tiles " + std::to_string(area) + " vs zonogon " + std::to_string(g.zonogon_area2()));
    for (std::size_t a = 0; a < polys.size(); ++a)
        for (std::size_t b = a + 1; b < polys.size(); ++b)
            if (!interiors_disjoint(polys[a], polys[b])) rep.add("overlap " + rs[a].str() + " / " + rs[b].str());
    if (n >= 2) {
        std::map<Edge, int> uses;
        for (const auto& r : rs)
            for (Edge e : r.edges()) ++uses[e];
        auto boundary = zonogon_boundary(n);
        for (Edge e : boundary)
            if (!uses.count(e) || uses[e] != 1) rep.add("boundary edge " + e.u.str() + "-" + e.v.str() + " not covered once");
        for (auto& [e, c] : uses)
            if (!boundary.count(e) && c != 2) rep.add("unmatched edge " + e.u.str() + "-" + e.v.str());
    }
    auto spec_size = t.spectrum().size();
    if (spec_size != rank_formula(SeparationKind::Strong, n))
        rep.add("spectrum size " + std::to_string(spec_size) + " differs from rank");
    return rep;
}

inline Report validate_tiling(const Tiling& t) { return validate_tiling(t, Generators2D::tiling(t.n())); }

// Rhombi spanned by quadruples {X, Xi, Xj, Xij} inside a set system.
inline std::set<Rhombus> rhombi_in(const Collection& c) {
    std::set<Rhombus> out;
    int n = c.n();
    for (Subset x : c)
        for (int i = 1; i <= n; ++i) {
            if (x.contains(i) || !c.contains(x.with(i))) continue;
            for (int j = i + 1; j <= n; ++j)
                if (!x.contains(j) && c.contains(x.with(j)) && c.contains(x.with(i).with(j))) out.insert({x, i, j});
        }
    return out;
}

inline Tiling tiling_from_s_collection(const Collection& s) {
    int n = s.n();
    if (auto v = find_violation(SeparationKind::Strong, s))
        throw std::invalid_argument("not strongly separated: " + v->first.str() + ", " + v->second.str());
    if (s.size() != rank_formula(SeparationKind::Strong, n))
        throw std::invalid_argument("not a maximal strongly separated collection (size " + std::to_string(s.size()) + ")");
    Tiling t{s.ground(), rhombi_in(s)};
    auto rep = validate_tiling(t);
    if (!rep.ok()) throw std::logic_error("tiling construction failed validation: " + rep.str());
    return t;
}

inline Tiling standard_tiling(int n) { return tiling_from_s_collection(intervals(n)); }
inline Tiling antistandard_tiling(int n) { return tiling_from_s_collection(co_intervals(n)); }

enum class HexConfig { Y, TurnedY };

enum class FlipDirection { Lower, Raise };

// H(X|ijk). Y: rho(X|ij), rho(X|jk), rho(Xj|ik) (contains Xj); turned Y: rho(X|ik), rho(Xi|jk), rho(Xk|ij) (contains Xik).
struct Hexagon {
    Subset base;
    int i = 0, j = 0, k = 0;
    HexConfig config = HexConfig::Y;

    static std::array<Rhombus, 3> y_rhombi(Subset x, int i, int j, int k) {
        return {Rhombus{x, i, j}, Rhombus{x, j, k}, Rhombus{x.with(j), i, k}};
    }
    static std::array<Rhombus, 3> turned_rhombi(Subset x, int i, int j, int k) {
        return {Rhombus{x, i, k}, Rhombus{x.with(i), j, k}, Rhombus{x.with(k), i, j}};
    }
    std::array<Rhombus, 3> rhombi() const {
        return config == HexConfig::Y ? y_rhombi(base, i, j, k) : turned_rhombi(base, i, j, k);
    }
    std::array<Rhombus, 3> flipped_rhombi() const {
        return config == HexConfig::Y ? turned_rhombi(base, i, j, k) : y_rhombi(base, i, j, k);
    }
    std::string str() const {
        return "H(" + base.str() + "|" + Triple{i, j, k}.str() + ")" + (config == HexConfig::Y ? "Y" : "^");
    }
    friend constexpr bool operator==(const Hexagon&, const Hexagon&) = default;
    friend constexpr auto operator<=>(const Hexagon&, const Hexagon&) = default;
};

template <class RhombusSet>
std::vector<Hexagon> find_hexagons_in(const RhombusSet& rs, int n, std::optional<HexConfig> config = std::nullopt) {
    std::vector<Hexagon> out;
    for (const auto& r : rs) {
        if (!config || *config == HexConfig::Y)
            for (int k = r.j + 1; k <= n; ++k)
                if (!r.bottom.contains(k) && rs.count(Rhombus{r.bottom, r.j, k}) &&
                    rs.count(Rhombus{r.bottom.with(r.j), r.i, k}))
                    out.push_back({r.bottom, r.i, r.j, k, HexConfig::Y});
        if (!config || *config == HexConfig::TurnedY)
            for (int j = r.i + 1; j < r.j; ++j)
                if (!r.bottom.contains(j) && rs.count(Rhombus{r.bottom.with(r.i), j, r.j}) &&
                    rs.count(Rhombus{r.bottom.with(r.j), r.i, j}))
                    out.push_back({r.bottom, r.i, j, r.j, HexConfig::TurnedY});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Hexagon> find_hexagons(const Tiling& t, std::optional<HexConfig> config = std::nullopt) {
    return find_hexagons_in(t.rhombi(), t.n(), config);
}

// Raising on a Y hexagon (Xj -> Xik), lowering on a turned one.
inline Tiling strong_flip(const Tiling& t, const Hexagon& h) {
    auto rs = t.rhombi();
    for (const auto& r : h.rhombi())
        if (!rs.erase(r)) throw std::invalid_argument("hexagon " + h.str() + " not present in tiling");
    for (const auto& r : h.flipped_rhombi()) rs.insert(r);
    return Tiling{t.ground(), std::move(rs)};
}

// D_j in doubled coordinates, from the left boundary j-edge to the right one.
struct DualPath {
    int color = 0;
    std::vector<Vec2> points;
};

inline DualPath dual_path(const Tiling& t, int j, const Generators2D& g) {
    int n = t.n();
    if (j < 1 || j > n) throw std::invalid_argument("dual_path: color out of range");
    std::map<Edge, std::vector<Rhombus>> by_edge;
    for (const auto& r : t.rhombi())
        if (r.i == j || r.j == j)
            for (Edge e : r.edges())
                if (e.v.size() == e.u.size() + 1 && (e.v - e.u) == Subset{}.with(j)) by_edge[e].push_back(r);
    auto mid2 = [&](Edge e) { return 2 * g.point(e.u) + g[j]; };
    Edge cur = Edge::of(Subset::interval(1, j - 1), Subset::interval(1, j));
    Edge last = Edge::of(Subset::interval(j + 1, n), Subset::interval(j, n));
    DualPath d{j, {mid2(cur)}};
    std::optional<Rhombus> prev;
    while (!(cur == last)) {
        const Rhombus* next = nullptr;
        for (const auto& r : by_edge[cur])
            if (!prev || !(r == *prev)) next = &r;
        if (!next) throw std::logic_error("dual path broken at color " + std::to_string(j));
        int other = next->i == j ? next->j : next->i;
        Edge opp = cur.u.contains(other) ? Edge::of(cur.u.without(other), cur.v.without(other))
                                         : Edge::of(cur.u.with(other), cur.v.with(other));
        d.points.push_back(next->center2(g));
        d.points.push_back(mid2(opp));
        prev = *next;
        cur = opp;
        if (d.points.size() > 4 * static_cast<std::size_t>(n) + 4) throw std::logic_error("dual path does not terminate");
    }
    return d;
}

// Side of a doubled point q relative to D_j: +1 on the +xi_j side, -1 below, 0 on the path.
inline int side_of_dual_path(const DualPath& d, Vec2 q, const Generators2D& g) {
    Vec2 xj = g[d.color];
    i64 s = cross(xj, q);
    for (std::size_t p = 0; p + 1 < d.points.size(); ++p) {
        Vec2 a = d.points[p], b = d.points[p + 1];
        i64 sa = cross(xj, a), sb = cross(xj, b);
        if (!(std::min(sa, sb) <= s && s <= std::max(sa, sb))) continue;
        i64 o = orient(a, b, q), up = orient(a, b, a + xj);
        if (o == 0) return 0;
        return (o > 0) == (up > 0) ? 1 : -1;
    }
    throw std::logic_error("point outside the dual path range");
}

inline std::set<Triple> inversion_set(const Tiling& t, const Generators2D& g) {
    std::set<Triple> inv;
    int n = t.n();
    for (int j = 2; j < n; ++j) {
        DualPath d = dual_path(t, j, g);
        for (const auto& r : t.rhombi())
            if (r.i < j && j < r.j && side_of_dual_path(d, r.center2(g), g) < 0) inv.insert({r.i, j, r.j});
    }
    return inv;
}

inline std::set<Triple> inversion_set(const Tiling& t) { return inversion_set(t, Generators2D::tiling(t.n())); }

// ijk is an inversion iff j is not in X for the rhombus rho(X|ik).
template <class RhombusSet>
std::set<Triple> inversion_set_fast(const RhombusSet& rs) {
    std::set<Triple> inv;
    for (const auto& r : rs)
        for (int j = r.i + 1; j < r.j; ++j)
            if (!r.bottom.contains(j)) inv.insert({r.i, j, r.j});
    return inv;
}

inline std::set<Triple> inversion_set_fast(const Tiling& t) { return inversion_set_fast(t.rhombi()); }

}  // namespace sepsys
