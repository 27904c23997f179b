#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "report.hpp"
#include "separation.hpp"
#include "tiling.hpp"

namespace sepsys {

enum class TileKind { Delta, Nabla, Lens, SemiLensLower, SemiLensUpper };

inline const char* tile_kind_name(TileKind k) {
    switch (k) {
        case TileKind::Delta: return "delta";
        case TileKind::Nabla: return "nabla";
        case TileKind::Lens: return "lens";
        case TileKind::SemiLensLower: return "lower-semilens";
        case TileKind::SemiLensUpper: return "upper-semilens";
    }
    return "?";
}

// A tile of a quasi-combi.
// Vertical tiles are the two halves of rho(root|ab): nabla = {X, Xa, Xb}, delta = {Xa, Xb, Xab}.
// Horizontal tiles have upper chain Xa, Xu.., Xb and lower chain Y-b, Y-l.., Y-a with Y = Xab,
// where u runs over `up` (outside X) and l over `low` (inside X), all strictly between a and b.
struct CombiTile {
    TileKind kind = TileKind::Nabla;
    Subset root;
    int a = 0, b = 0;
    Subset up, low;

    static CombiTile nabla(Subset bottom, int i, int j) { return {TileKind::Nabla, bottom, i, j, {}, {}}; }
    // Delta(top|ji): vertices top, top-i, top-j.
    static CombiTile delta(Subset top, int i, int j) { return {TileKind::Delta, top.without(i).without(j), i, j, {}, {}}; }
    static CombiTile horizontal(Subset x, int a, int b, Subset up, Subset low) {
        if (up.empty() && low.empty()) throw std::invalid_argument("a horizontal tile needs three or more vertices");
        TileKind k = up.empty() ? TileKind::SemiLensLower : low.empty() ? TileKind::SemiLensUpper : TileKind::Lens;
        return {k, x, a, b, up, low};
    }
    // {Xi, Xj, Xk}
    static CombiTile upper_triangle(Subset x, int i, int j, int k) { return horizontal(x, i, k, Subset::of({j}), {}); }
    // {Y-k, Y-j, Y-i}
    static CombiTile lower_triangle(Subset y, int i, int j, int k) {
        return horizontal(y.without(i).without(k), i, k, {}, Subset::of({j}));
    }

    bool vertical() const { return kind == TileKind::Delta || kind == TileKind::Nabla; }
    bool horizontal() const { return !vertical(); }
    bool semi_lens() const { return kind == TileKind::SemiLensLower || kind == TileKind::SemiLensUpper; }
    bool triangle() const { return vertical() || up.size() + low.size() == 1; }
    // Upper root Y of a horizontal tile, top vertex of a delta tile.
    Subset top() const { return root.with(a).with(b); }
    Subset left() const { return root.with(a); }
    Subset right() const { return root.with(b); }
    int level() const { return vertical() ? -1 : root.size() + 1; }

    // Colors along the upper chain: a, up.., b.
    std::vector<int> upper_colors() const {
        std::vector<int> c{a};
        for (int u : up.elements()) c.push_back(u);
        c.push_back(b);
        return c;
    }
    // Colors removed from Y along the lower chain: b, low (descending).., a.
    std::vector<int> lower_colors() const {
        std::vector<int> c{b};
        auto l = low.elements();
        for (auto it = l.rbegin(); it != l.rend(); ++it) c.push_back(*it);
        c.push_back(a);
        return c;
    }
    std::vector<Subset> upper_chain() const {
        std::vector<Subset> v;
        for (int c : upper_colors()) v.push_back(root.with(c));
        return v;
    }
    std::vector<Subset> lower_chain() const {
        std::vector<Subset> v;
        Subset y = top();
        for (int c : lower_colors()) v.push_back(y.without(c));
        return v;
    }
    // Boundary cycle.
    std::vector<Subset> vertices() const {
        if (kind == TileKind::Nabla) return {root, root.with(a), root.with(b)};
        if (kind == TileKind::Delta) return {root.with(a), root.with(b), top()};
        auto v = lower_chain();
        auto u = upper_chain();
        for (std::size_t p = u.size() - 2; p >= 1; --p) v.push_back(u[p]);
        return v;
    }
    std::vector<Edge> edges() const {
        auto v = vertices();
        std::vector<Edge> e;
        for (std::size_t p = 0; p < v.size(); ++p) e.push_back(Edge::of(v[p], v[(p + 1) % v.size()]));
        return e;
    }
    // The edge (left, right): the base of a vertical tile, the longest edge of a semi-lens.
    Edge long_edge() const { return Edge::of(left(), right()); }
    std::vector<Vec2> polygon(const Generators2D& g) const {
        std::vector<Vec2> p;
        for (Subset v : vertices()) p.push_back(g.point(v));
        return make_ccw(p);
    }

    std::optional<std::string> defect(int n) const {
        if (!(1 <= a && a < b && b <= n)) return "bad colors";
        if (!root.fits(n) || root.contains(a) || root.contains(b)) return "bad root";
        if (vertical()) {
            if (!up.empty() || !low.empty()) return "vertical tile with chains";
            return std::nullopt;
        }
        Subset between = Subset::interval(a + 1, b - 1);
        if (!up.subset_of(between) || !(up & root).empty()) return "upper chain out of range";
        if (!low.subset_of(between & root)) return "lower chain out of range";
        if (kind == TileKind::Lens && low.empty()) return "lens without lower chain";
        if (kind == TileKind::Lens && up.empty()) return "lens without upper chain";
        if (kind == TileKind::SemiLensUpper && (up.empty() || !low.empty())) return "upper semi-lens chains";
        if (kind == TileKind::SemiLensLower && (low.empty() || !up.empty())) return "lower semi-lens chains";
        return std::nullopt;
    }

    std::string str() const {
        std::string ab = std::to_string(a) + "," + std::to_string(b);
        if (kind == TileKind::Nabla) return "nabla(" + root.str() + "|" + ab + ")";
        if (kind == TileKind::Delta) return "delta(" + top().str() + "|" + std::to_string(b) + "," + std::to_string(a) + ")";
        return std::string(tile_kind_name(kind)) + "(" + root.str() + "|" + ab + "|up " + up.str() + "|low " + low.str() + ")";
    }

    friend constexpr bool operator==(const CombiTile&, const CombiTile&) = default;
    friend constexpr auto operator<=>(const CombiTile&, const CombiTile&) = default;
};

// The triangle tile with exactly these vertices, if any.
inline std::optional<CombiTile> triangle_tile(Subset p, Subset q, Subset r) {
    std::array<Subset, 3> v{p, q, r};
    std::sort(v.begin(), v.end(), [](Subset x, Subset y) { return x.size() != y.size() ? x.size() < y.size() : x < y; });
    if (v[0] == v[1] || v[1] == v[2]) return std::nullopt;
    int s0 = v[0].size(), s1 = v[1].size(), s2 = v[2].size();
    auto one_more = [](Subset lo, Subset hi) { return lo.subset_of(hi) && hi.size() == lo.size() + 1; };
    if (s0 + 1 == s1 && s1 == s2) {
        if (!one_more(v[0], v[1]) || !one_more(v[0], v[2])) return std::nullopt;
        int i = (v[1] - v[0]).min(), j = (v[2] - v[0]).min();
        return CombiTile::nabla(v[0], std::min(i, j), std::max(i, j));
    }
    if (s0 == s1 && s1 + 1 == s2) {
        if (!one_more(v[0], v[2]) || !one_more(v[1], v[2])) return std::nullopt;
        int i = (v[2] - v[0]).min(), j = (v[2] - v[1]).min();
        return CombiTile::delta(v[2], std::min(i, j), std::max(i, j));
    }
    if (s0 != s1 || s1 != s2) return std::nullopt;
    Subset x = v[0] & v[1] & v[2], u = v[0] | v[1] | v[2];
    if (x.size() == s0 - 1 && u.size() == s0 + 2) {
        auto e = (u - x).elements();
        return CombiTile::upper_triangle(x, e[0], e[1], e[2]);
    }
    if (x.size() == s0 - 2 && u.size() == s0 + 1) {
        auto e = (u - x).elements();
        return CombiTile::lower_triangle(u, e[0], e[1], e[2]);
    }
    return std::nullopt;
}

class QuasiCombi {
public:
    QuasiCombi(GroundSize g, std::set<CombiTile> tiles) : ground_(g), tiles_(std::move(tiles)) {}

    int n() const { return ground_.value(); }
    GroundSize ground() const { return ground_; }
    const std::set<CombiTile>& tiles() const { return tiles_; }
    bool contains(const CombiTile& t) const { return tiles_.count(t) != 0; }

    Collection spectrum() const {
        Collection c = rim(n());
        for (const auto& t : tiles_)
            for (Subset v : t.vertices()) c.insert(v);
        return c;
    }
    std::size_t count(TileKind k) const {
        std::size_t m = 0;
        for (const auto& t : tiles_) m += t.kind == k;
        return m;
    }
    std::size_t semi_lens_count() const { return count(TileKind::SemiLensLower) + count(TileKind::SemiLensUpper); }
    bool is_combi() const { return semi_lens_count() == 0; }
    bool fully_triangulated() const {
        return std::all_of(tiles_.begin(), tiles_.end(), [](const CombiTile& t) { return t.triangle(); });
    }

    friend bool operator==(const QuasiCombi& x, const QuasiCombi& y) {
        return x.ground_ == y.ground_ && x.tiles_ == y.tiles_;
    }

private:
    GroundSize ground_;
    std::set<CombiTile> tiles_;
};

inline Report validate_quasi_combi(const QuasiCombi& k, const Generators2D& g) {
    Report rep;
    int n = k.n();
    if (g.n() != n || !g.strictly_convex()) {
        rep.add("generators are not strictly convex");
        return rep;
    }
    std::vector<CombiTile> ts;
    std::vector<std::vector<Vec2>> polys;
    i64 area = 0;
    for (const auto& t : k.tiles()) {
        if (auto d = t.defect(n)) {
            rep.add("malformed tile " + t.str() + ": " + *d);
            continue;
        }
        auto p = t.polygon(g);
        if (!is_strictly_convex_ccw(p)) rep.add("non-convex tile " + t.str());
        area += area2(p);
        ts.push_back(t);
        polys.push_back(std::move(p));
    }
    if (area != g.zonogon_area2())
        rep.add("area mismatch: tiles " + std::to_string(area) + " vs zonogon " + std::to_string(g.zonogon_area2()));
    for (std::size_t x = 0; x < ts.size(); ++x)
        for (std::size_t y = x + 1; y < ts.size(); ++y)
            if (!interiors_disjoint(polys[x], polys[y])) rep.add("overlap " + ts[x].str() + " / " + ts[y].str());
    if (n >= 2) {
        std::map<Edge, int> uses;
        for (const auto& t : ts)
            for (const auto& e : t.edges()) ++uses[e];
        auto boundary = zonogon_boundary(n);
        for (auto& [e, m] : uses)
            if (m != (boundary.count(e) ? 1 : 2)) rep.add("unmatched edge " + e.u.str() + "-" + e.v.str());
        for (const auto& e : boundary)
            if (!uses.count(e)) rep.add("missing boundary edge " + e.u.str() + "-" + e.v.str());
    }
    auto spec = k.spectrum();
    if (spec.size() != rank_formula(SeparationKind::Weak, n))
        rep.add("spectrum size " + std::to_string(spec.size()) + " differs from rank");
    else if (!is_separated_collection(SeparationKind::Weak, spec))
        rep.add("spectrum is not weakly separated");
    return rep;
}

inline Report validate_quasi_combi(const QuasiCombi& k) { return validate_quasi_combi(k, Generators2D::strict_convex(k.n())); }

namespace detail {

inline std::map<Edge, std::vector<CombiTile>> tiles_by_edge(const QuasiCombi& k) {
    std::map<Edge, std::vector<CombiTile>> idx;
    for (const auto& t : k.tiles())
        for (const auto& e : t.edges()) idx[e].push_back(t);
    return idx;
}

inline QuasiCombi replace_tiles(const QuasiCombi& k, const std::vector<CombiTile>& out, const std::vector<CombiTile>& in) {
    auto ts = k.tiles();
    for (const auto& t : out)
        if (!ts.erase(t)) throw std::invalid_argument("tile " + t.str() + " is not in the quasi-combi");
    for (const auto& t : in) ts.insert(t);
    return QuasiCombi{k.ground(), ts};
}

inline std::optional<std::size_t> position(const std::vector<int>& v, int x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
}

inline Subset collect(const std::vector<int>& v, std::size_t from, std::size_t to) {
    Subset s;
    for (std::size_t p = from; p < to; ++p) s = s.with(v[p]);
    return s;
}

// Host with the semi-lens glued along the semi-lens's longest edge.
inline std::optional<CombiTile> glue(const CombiTile& host, const CombiTile& semi) {
    if (!host.horizontal() || !semi.semi_lens()) return std::nullopt;
    if (semi.kind == TileKind::SemiLensUpper) {
        if (host.root != semi.root) return std::nullopt;
        auto c = host.upper_colors();
        auto p = position(c, semi.a);
        if (!p || *p + 1 >= c.size() || c[*p + 1] != semi.b) return std::nullopt;
        return CombiTile::horizontal(host.root, host.a, host.b, host.up | semi.up, host.low);
    }
    if (host.top() != semi.top()) return std::nullopt;
    auto c = host.lower_colors();
    auto p = position(c, semi.b);
    if (!p || *p + 1 >= c.size() || c[*p + 1] != semi.a) return std::nullopt;
    return CombiTile::horizontal(host.root, host.a, host.b, host.up, host.low | semi.low);
}

}  // namespace detail

// (S): cut a horizontal tile along [u, v], u and v non-adjacent on one boundary chain.
inline QuasiCombi op_split(const QuasiCombi& k, const CombiTile& t, Subset u, Subset v) {
    if (!k.contains(t)) throw std::invalid_argument("tile " + t.str() + " is not in the quasi-combi");
    if (!t.horizontal()) throw std::invalid_argument("only horizontal tiles can be split");
    auto uc = t.upper_chain(), lc = t.lower_chain();
    auto at = [](const std::vector<Subset>& ch, Subset x) -> std::optional<std::size_t> {
        auto it = std::find(ch.begin(), ch.end(), x);
        if (it == ch.end()) return std::nullopt;
        return static_cast<std::size_t>(it - ch.begin());
    };
    auto pu = at(uc, u), pv = at(uc, v);
    if (pu && pv) {
        auto s = std::min(*pu, *pv), e = std::max(*pu, *pv);
        if (e - s < 2) throw std::invalid_argument("split vertices are adjacent");
        if (s == 0 && e + 1 == uc.size() && t.low.empty()) throw std::invalid_argument("split chord is already an edge");
        auto c = t.upper_colors();
        Subset inner = detail::collect(c, s + 1, e);
        auto piece = CombiTile::horizontal(t.root, c[s], c[e], inner, {});
        auto rest = CombiTile::horizontal(t.root, t.a, t.b, t.up - inner, t.low);
        return detail::replace_tiles(k, {t}, {piece, rest});
    }
    pu = at(lc, u), pv = at(lc, v);
    if (pu && pv) {
        auto s = std::min(*pu, *pv), e = std::max(*pu, *pv);
        if (e - s < 2) throw std::invalid_argument("split vertices are adjacent");
        if (s == 0 && e + 1 == lc.size() && t.up.empty()) throw std::invalid_argument("split chord is already an edge");
        auto c = t.lower_colors();
        Subset inner = detail::collect(c, s + 1, e);
        auto piece = CombiTile::horizontal(t.top().without(c[s]).without(c[e]), c[e], c[s], {}, inner);
        auto rest = CombiTile::horizontal(t.root, t.a, t.b, t.up, t.low - inner);
        return detail::replace_tiles(k, {t}, {piece, rest});
    }
    throw std::invalid_argument("split vertices must lie on one boundary chain of the tile");
}

// (M): merge two horizontal tiles sharing the longest edge of a semi-lens.
inline QuasiCombi op_merge(const QuasiCombi& k, const CombiTile& t1, const CombiTile& t2) {
    if (!k.contains(t1) || !k.contains(t2)) throw std::invalid_argument("merge tiles must belong to the quasi-combi");
    if (auto m = detail::glue(t2, t1)) return detail::replace_tiles(k, {t1, t2}, {*m});
    if (auto m = detail::glue(t1, t2)) return detail::replace_tiles(k, {t1, t2}, {*m});
    throw std::invalid_argument("tiles do not share the longest edge of a semi-lens");
}

// (E): a semi-lens and the vertical tile on its longest edge become a fan.
inline QuasiCombi op_eliminate(const QuasiCombi& k, const CombiTile& s, const CombiTile& v) {
    bool lower = s.kind == TileKind::SemiLensLower && v.kind == TileKind::Delta;
    bool upper = s.kind == TileKind::SemiLensUpper && v.kind == TileKind::Nabla;
    if (!(lower || upper) || v.root != s.root || v.a != s.a || v.b != s.b)
        throw std::invalid_argument("the vertical tile does not sit on the semi-lens's longest edge");
    std::vector<CombiTile> fan;
    if (lower) {
        auto c = s.lower_colors();
        for (std::size_t r = 1; r < c.size(); ++r) fan.push_back(CombiTile::delta(s.top(), c[r], c[r - 1]));
    } else {
        auto c = s.upper_colors();
        for (std::size_t r = 1; r < c.size(); ++r) fan.push_back(CombiTile::nabla(s.root, c[r - 1], c[r]));
    }
    return detail::replace_tiles(k, {s, v}, fan);
}

// (C): a fan of two or more vertical tiles becomes a semi-lens plus one vertical tile.
inline QuasiCombi op_create(const QuasiCombi& k, std::vector<CombiTile> fan) {
    if (fan.size() < 2) throw std::invalid_argument("a fan has at least two tiles");
    TileKind kind = fan.front().kind;
    if (kind != TileKind::Delta && kind != TileKind::Nabla) throw std::invalid_argument("a fan consists of vertical tiles");
    for (const auto& t : fan) {
        if (t.kind != kind) throw std::invalid_argument("fan tiles must all be delta or all be nabla");
        if (kind == TileKind::Nabla ? t.root != fan.front().root : t.top() != fan.front().top())
            throw std::invalid_argument("fan tiles must share the apex");
    }
    std::sort(fan.begin(), fan.end(), [](const CombiTile& x, const CombiTile& y) { return x.a < y.a; });
    for (std::size_t r = 0; r + 1 < fan.size(); ++r)
        if (fan[r].b != fan[r + 1].a) throw std::invalid_argument("fan tiles are not consecutive");
    int lo = fan.front().a, hi = fan.back().b;
    Subset inner;
    for (std::size_t r = 0; r + 1 < fan.size(); ++r) inner = inner.with(fan[r].b);
    std::vector<CombiTile> in;
    if (kind == TileKind::Nabla) {
        Subset x = fan.front().root;
        in = {CombiTile::horizontal(x, lo, hi, inner, {}), CombiTile::nabla(x, lo, hi)};
    } else {
        Subset y = fan.front().top();
        in = {CombiTile::horizontal(y.without(lo).without(hi), lo, hi, {}, inner), CombiTile::delta(y, lo, hi)};
    }
    return detail::replace_tiles(k, fan, in);
}

// One applicable (M) or (E) step on a semi-lens.
struct NormalizeMove {
    bool merge = false;
    CombiTile semi, other;
};

inline std::vector<NormalizeMove> normalize_moves(const QuasiCombi& k) {
    auto idx = detail::tiles_by_edge(k);
    std::vector<NormalizeMove> out;
    for (const auto& s : k.tiles()) {
        if (!s.semi_lens()) continue;
        for (const auto& t : idx[s.long_edge()]) {
            if (t == s) continue;
            if (t.horizontal() && detail::glue(t, s)) out.push_back({true, s, t});
            TileKind want = s.kind == TileKind::SemiLensLower ? TileKind::Delta : TileKind::Nabla;
            if (t.kind == want && t.root == s.root && t.a == s.a && t.b == s.b) out.push_back({false, s, t});
        }
    }
    return out;
}

// Repeated (M)/(E) down to the unique combi of the escort; seed picks a random applicable move each step.
inline QuasiCombi normalize_to_combi(const QuasiCombi& k, std::optional<std::uint64_t> seed = std::nullopt) {
    QuasiCombi cur = k;
    std::mt19937_64 rng(seed.value_or(0));
    while (cur.semi_lens_count() > 0) {
        auto moves = normalize_moves(cur);
        if (moves.empty()) throw std::logic_error("normalize_to_combi: no merge or elimination applies");
        const auto& m = moves[seed ? rng() % moves.size() : 0];
        cur = m.merge ? op_merge(cur, m.semi, m.other) : op_eliminate(cur, m.semi, m.other);
    }
    return cur;
}

enum class TriangulationPolicy { Leftmost, Rightmost };

inline std::vector<CombiTile> triangulate_tile(const CombiTile& t, TriangulationPolicy p) {
    if (t.triangle()) return {t};
    std::vector<CombiTile> out;
    bool left = p == TriangulationPolicy::Leftmost;
    if (!t.up.empty()) {
        auto c = t.upper_colors();
        std::size_t m = c.size() - 1;
        for (std::size_t r = 1; r < m; ++r) {
            if (left)
                out.push_back(CombiTile::upper_triangle(t.root, c[0], c[r], c[r + 1]));
            else
                out.push_back(CombiTile::upper_triangle(t.root, c[r - 1], c[r], c[m]));
        }
    }
    if (!t.low.empty()) {
        auto c = t.lower_colors();
        std::size_t m = c.size() - 1;
        Subset y = t.top();
        for (std::size_t r = 1; r < m; ++r) {
            if (left)
                out.push_back(CombiTile::lower_triangle(y, c[r + 1], c[r], c[0]));
            else
                out.push_back(CombiTile::lower_triangle(y, c[m], c[r], c[r - 1]));
        }
    }
    return out;
}

// Lenses are cut along (left, right) into two semi-lenses and every semi-lens is fanned into triangles.
inline QuasiCombi triangulate(const QuasiCombi& k, TriangulationPolicy p = TriangulationPolicy::Leftmost) {
    std::set<CombiTile> ts;
    for (const auto& t : k.tiles())
        for (const auto& s : triangulate_tile(t, p)) ts.insert(s);
    return QuasiCombi{k.ground(), ts};
}

namespace detail {

// Triangulation of Z(n,2) with vertex set W by triangle tiles, advancing from the boundary.
class CoverSearch {
public:
    explicit CoverSearch(const Collection& w) : g_(Generators2D::strict_convex(w.n())) {
        for (Subset s : w) {
            id_[s] = static_cast<int>(pts_.size());
            pts_.push_back(s);
            pos_.push_back(g_.point(s));
        }
        int m = static_cast<int>(pts_.size());
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y)
                for (int z = y + 1; z < m; ++z) add_candidate(x, y, z);
        Vec2 c2 = g_.point(Subset::full(w.n()));  // twice the zonogon center
        for (const auto& e : zonogon_boundary(w.n())) {
            int u = id_.at(e.u), v = id_.at(e.v);
            Vec2 pu = 2 * pos_[static_cast<std::size_t>(u)], pv = 2 * pos_[static_cast<std::size_t>(v)];
            if (orient(pu, pv, c2) < 0) std::swap(u, v);
            open_[key(u, v)] = {u, v};
        }
    }

    std::optional<std::set<CombiTile>> solve() {
        if (!search()) return std::nullopt;
        std::set<CombiTile> out;
        for (int c : placed_) out.insert(cands_[static_cast<std::size_t>(c)].tile);
        return out;
    }

private:
    struct Cand {
        CombiTile tile;
        std::array<int, 3> v;  // counterclockwise
        std::vector<Vec2> poly;
    };
    using Key = std::pair<int, int>;
    static Key key(int u, int v) { return u < v ? Key{u, v} : Key{v, u}; }

    void add_candidate(int x, int y, int z) {
        auto t = triangle_tile(pts_[static_cast<std::size_t>(x)], pts_[static_cast<std::size_t>(y)],
                               pts_[static_cast<std::size_t>(z)]);
        if (!t) return;
        std::array<int, 3> v{x, y, z};
        if (orient(pos_[static_cast<std::size_t>(x)], pos_[static_cast<std::size_t>(y)], pos_[static_cast<std::size_t>(z)]) < 0)
            std::swap(v[1], v[2]);
        std::vector<Vec2> poly;
        for (int p : v) poly.push_back(pos_[static_cast<std::size_t>(p)]);
        if (area2(poly) == 0) return;
        for (std::size_t q = 0; q < pts_.size(); ++q) {
            if (static_cast<int>(q) == x || static_cast<int>(q) == y || static_cast<int>(q) == z) continue;
            if (locate(pos_[q], poly) >= 0) return;
        }
        int c = static_cast<int>(cands_.size());
        cands_.push_back({*t, v, std::move(poly)});
        for (int s = 0; s < 3; ++s) by_edge_[key(v[static_cast<std::size_t>(s)], v[static_cast<std::size_t>((s + 1) % 3)])].push_back(c);
    }

    // Candidates lying left of u->v and clear of all placed triangles.
    std::vector<int> viable(int u, int v) const {
        std::vector<int> out;
        auto it = by_edge_.find(key(u, v));
        if (it == by_edge_.end()) return out;
        for (int c : it->second) {
            const auto& cd = cands_[static_cast<std::size_t>(c)];
            bool forward = false;
            for (int s = 0; s < 3; ++s)
                if (cd.v[static_cast<std::size_t>(s)] == u && cd.v[static_cast<std::size_t>((s + 1) % 3)] == v) forward = true;
            if (!forward) continue;
            bool clear = true;
            for (int p : placed_)
                if (!interiors_disjoint(cd.poly, cands_[static_cast<std::size_t>(p)].poly)) {
                    clear = false;
                    break;
                }
            if (clear) out.push_back(c);
        }
        return out;
    }

    bool search() {
        if (open_.empty()) return true;
        std::vector<int> best;
        bool have = false;
        for (const auto& [k, dir] : open_) {
            auto vs = viable(dir.first, dir.second);
            if (vs.empty()) return false;
            if (!have || vs.size() < best.size()) {
                best = std::move(vs);
                have = true;
                if (best.size() == 1) break;
            }
        }
        for (int c : best) {
            std::vector<std::pair<Key, std::optional<Key>>> undo;
            const auto& v = cands_[static_cast<std::size_t>(c)].v;
            for (int s = 0; s < 3; ++s) {
                int p = v[static_cast<std::size_t>(s)], q = v[static_cast<std::size_t>((s + 1) % 3)];
                auto k = key(p, q);
                auto it = open_.find(k);
                if (it != open_.end()) {
                    undo.emplace_back(k, it->second);
                    open_.erase(it);
                } else {
                    undo.emplace_back(k, std::nullopt);
                    open_[k] = {q, p};
                }
            }
            placed_.push_back(c);
            if (search()) return true;
            placed_.pop_back();
            for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
                if (it->second)
                    open_[it->first] = *it->second;
                else
                    open_.erase(it->first);
            }
        }
        return false;
    }

    Generators2D g_;
    std::vector<Subset> pts_;
    std::vector<Vec2> pos_;
    std::unordered_map<Subset, int, SubsetHash> id_;
    std::vector<Cand> cands_;
    std::map<Key, std::vector<int>> by_edge_;
    std::vector<int> placed_;
    std::map<Key, Key> open_;
};

}  // namespace detail

// Some fully triangulated quasi-combi with spectrum W.
inline QuasiCombi triangulated_quasi_combi(const Collection& w) {
    int n = w.n();
    if (w.size() != rank_formula(SeparationKind::Weak, n) || !is_separated_collection(SeparationKind::Weak, w))
        throw std::invalid_argument("not a maximal weakly separated collection");
    if (n < 2) return QuasiCombi{w.ground(), {}};
    auto tiles = detail::CoverSearch(w).solve();
    if (!tiles) throw std::logic_error("no triangulation with the given spectrum exists");
    return QuasiCombi{w.ground(), *tiles};
}

// The unique combi with spectrum W.
inline QuasiCombi combi_from_w_collection(const Collection& w) {
    QuasiCombi k = normalize_to_combi(triangulated_quasi_combi(w));
    auto rep = validate_quasi_combi(k);
    if (!rep.ok() || k.spectrum() != w) throw std::logic_error("combi construction failed validation: " + rep.str());
    return k;
}

// Mutation Xj <-> Xik in the presence of Xi, Xk, Xij, Xjk.
struct WeakFlipSite {
    Subset base;
    Triple colors;
    FlipDirection dir = FlipDirection::Raise;
    friend constexpr bool operator==(const WeakFlipSite&, const WeakFlipSite&) = default;
    friend constexpr auto operator<=>(const WeakFlipSite&, const WeakFlipSite&) = default;
};

inline bool weak_flip_applies(const Collection& w, const WeakFlipSite& s) {
    auto [i, j, k] = s.colors;
    Subset x = s.base;
    if (!(1 <= i && i < j && j < k && k <= w.n()) || x.contains(i) || x.contains(j) || x.contains(k)) return false;
    for (Subset v : {x.with(i), x.with(k), x.with(i).with(j), x.with(j).with(k)})
        if (!w.contains(v)) return false;
    return w.contains(s.dir == FlipDirection::Raise ? x.with(j) : x.with(i).with(k));
}

inline std::vector<WeakFlipSite> weak_flip_sites(const Collection& w) {
    std::vector<WeakFlipSite> out;
    int n = w.n();
    for (Subset v : w) {
        for (int j : v.elements()) {
            Subset x = v.without(j);
            for (int i = 1; i < j; ++i)
                for (int k = j + 1; k <= n; ++k) {
                    WeakFlipSite s{x, {i, j, k}, FlipDirection::Raise};
                    if (weak_flip_applies(w, s)) out.push_back(s);
                }
        }
        auto e = v.elements();
        for (std::size_t p = 0; p < e.size(); ++p)
            for (std::size_t q = p + 1; q < e.size(); ++q) {
                Subset x = v.without(e[p]).without(e[q]);
                for (int j = e[p] + 1; j < e[q]; ++j) {
                    WeakFlipSite s{x, {e[p], j, e[q]}, FlipDirection::Lower};
                    if (weak_flip_applies(w, s)) out.push_back(s);
                }
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Collection apply_weak_flip(const Collection& w, const WeakFlipSite& s) {
    if (!weak_flip_applies(w, s)) throw std::invalid_argument("weak flip witnesses are absent");
    auto [i, j, k] = s.colors;
    Collection out = w;
    Subset xj = s.base.with(j), xik = s.base.with(i).with(k);
    out.erase(s.dir == FlipDirection::Raise ? xj : xik);
    out.insert(s.dir == FlipDirection::Raise ? xik : xj);
    return out;
}

inline QuasiCombi weak_flip(const QuasiCombi& k, Subset x, Triple t, FlipDirection dir) {
    return combi_from_w_collection(apply_weak_flip(k.spectrum(), {x, t, dir}));
}

}  // namespace sepsys
