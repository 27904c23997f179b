#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "combi.hpp"
#include "cubillage.hpp"
#include "dag.hpp"
#include "report.hpp"

namespace sepsys {

// Triangular 2-face of a fragmentation, by its vertex sets (sorted).
struct Tri {
    std::array<Subset, 3> v;

    static Tri of(Subset a, Subset b, Subset c) {
        Tri t{{a, b, c}};
        std::sort(t.v.begin(), t.v.end());
        return t;
    }
    static Tri of(const CombiTile& t) {
        if (!t.triangle()) throw std::invalid_argument("tile " + t.str() + " is not a triangle");
        auto v = t.vertices();
        return of(v[0], v[1], v[2]);
    }
    bool horizontal() const { return v[0].size() == v[1].size() && v[1].size() == v[2].size(); }
    int level() const { return v[0].size(); }
    // The tile with these vertices; throws for a non-tile triple.
    CombiTile tile() const {
        auto t = triangle_tile(v[0], v[1], v[2]);
        if (!t) throw std::invalid_argument("vertex triple " + str() + " is not a triangle tile");
        return *t;
    }
    std::array<Edge, 3> edges() const { return {Edge::of(v[0], v[1]), Edge::of(v[1], v[2]), Edge::of(v[0], v[2])}; }
    std::string str() const { return "[" + v[0].str() + "," + v[1].str() + "," + v[2].str() + "]"; }

    friend constexpr bool operator==(const Tri&, const Tri&) = default;
    friend constexpr auto operator<=>(const Tri&, const Tri&) = default;
};

enum class FragKind { Nabla, Square, Delta };

inline const char* frag_kind_name(FragKind k) {
    return k == FragKind::Nabla ? "nabla" : k == FragKind::Square ? "square" : "delta";
}

// Piece of a cube between consecutive horizontal planes.
struct Fragment {
    Cube cube;
    FragKind kind = FragKind::Nabla;

    int height() const { return cube.bottom.size() + static_cast<int>(kind); }  // lies between z = height and height + 1
    std::vector<Subset> vertices() const {
        Subset x = cube.bottom;
        int i = cube.i, j = cube.j, k = cube.k;
        if (kind == FragKind::Nabla) return {x, x.with(i), x.with(j), x.with(k)};
        if (kind == FragKind::Delta) return {x.with(i).with(j), x.with(i).with(k), x.with(j).with(k), cube.top()};
        return {x.with(i), x.with(j), x.with(k), x.with(i).with(j), x.with(i).with(k), x.with(j).with(k)};
    }
    // Faces seen from the front (smaller y) along the tilted viewing direction.
    std::vector<Tri> front() const {
        Subset x = cube.bottom;
        int i = cube.i, j = cube.j, k = cube.k;
        Subset xi = x.with(i), xj = x.with(j), xk = x.with(k), xij = xi.with(j), xik = xi.with(k), xjk = xj.with(k);
        if (kind == FragKind::Nabla) return {Tri::of(x, xi, xj), Tri::of(x, xj, xk)};
        if (kind == FragKind::Delta) return {Tri::of(xij, xik, xjk), Tri::of(xij, xjk, cube.top())};
        return {Tri::of(xi, xj, xk), Tri::of(xi, xj, xij), Tri::of(xj, xk, xjk), Tri::of(xj, xij, xjk)};
    }
    std::vector<Tri> rear() const {
        Subset x = cube.bottom;
        int i = cube.i, j = cube.j, k = cube.k;
        Subset xi = x.with(i), xj = x.with(j), xk = x.with(k), xij = xi.with(j), xik = xi.with(k), xjk = xj.with(k);
        if (kind == FragKind::Nabla) return {Tri::of(x, xi, xk), Tri::of(xi, xj, xk)};
        if (kind == FragKind::Delta) return {Tri::of(xij, xik, cube.top()), Tri::of(xik, xjk, cube.top())};
        return {Tri::of(xij, xik, xjk), Tri::of(xi, xk, xik), Tri::of(xi, xij, xik), Tri::of(xk, xik, xjk)};
    }
    std::string str() const { return std::string(frag_kind_name(kind)) + ":" + cube.str(); }

    friend constexpr bool operator==(const Fragment&, const Fragment&) = default;
    friend constexpr auto operator<=>(const Fragment&, const Fragment&) = default;
};

inline std::array<Fragment, 3> fragments_of(const Cube& c) {
    return {Fragment{c, FragKind::Nabla}, Fragment{c, FragKind::Square}, Fragment{c, FragKind::Delta}};
}

// A 2-dimensional disk of fragmentation triangles; identified with its triangle set.
class WMembrane {
public:
    WMembrane(GroundSize g, std::set<Tri> tris) : ground_(g), tris_(std::move(tris)) {}

    int n() const { return ground_.value(); }
    GroundSize ground() const { return ground_; }
    const std::set<Tri>& triangles() const { return tris_; }
    bool contains(const Tri& t) const { return tris_.count(t) != 0; }
    Collection spectrum() const {
        Collection c = rim(n());
        for (const auto& t : tris_)
            for (Subset v : t.v) c.insert(v);
        return c;
    }
    std::size_t horizontal_count() const {
        return static_cast<std::size_t>(std::count_if(tris_.begin(), tris_.end(), [](const Tri& t) { return t.horizontal(); }));
    }

    friend bool operator==(const WMembrane& a, const WMembrane& b) { return a.ground_ == b.ground_ && a.tris_ == b.tris_; }
    friend bool operator<(const WMembrane& a, const WMembrane& b) { return a.tris_ < b.tris_; }

private:
    GroundSize ground_;
    std::set<Tri> tris_;
};

// Each rhombus rho(X|ij) cut into nabla(X|ij) and delta(Xij|ji).
inline WMembrane split_rhombi(const Tiling& t) {
    std::set<Tri> tris;
    for (const auto& r : t.rhombi()) {
        Subset x = r.bottom;
        tris.insert(Tri::of(x, x.with(r.i), x.with(r.j)));
        tris.insert(Tri::of(x.with(r.i), x.with(r.j), x.with(r.i).with(r.j)));
    }
    return WMembrane{t.ground(), tris};
}

// The rhombus tiling of a membrane without horizontal triangles.
inline std::optional<Tiling> as_rhombus_tiling(const WMembrane& m) {
    std::set<Rhombus> rs;
    for (const auto& t : m.triangles()) {
        if (t.horizontal()) return std::nullopt;
        auto tile = t.tile();
        if (tile.kind == TileKind::Nabla) rs.insert({tile.root, tile.a, tile.b});
    }
    Tiling til{m.ground(), rs};
    if (!(split_rhombi(til) == m)) return std::nullopt;
    return til;
}

inline QuasiCombi membrane_to_quasi_combi(const WMembrane& m) {
    std::set<CombiTile> ts;
    for (const auto& t : m.triangles()) ts.insert(t.tile());
    return QuasiCombi{m.ground(), ts};
}

inline WMembrane complement(const WMembrane& m) {
    int n = m.n();
    std::set<Tri> out;
    for (const auto& t : m.triangles()) out.insert(Tri::of(t.v[0].complement(n), t.v[1].complement(n), t.v[2].complement(n)));
    return WMembrane{m.ground(), out};
}

// Image under X -> [n] - X (central symmetry of the zonotope); swaps front and rear, nabla and delta.
inline Fragment complement(const Fragment& f, int n) {
    Cube c{f.cube.top().complement(n), f.cube.i, f.cube.j, f.cube.k};
    FragKind k = f.kind == FragKind::Nabla ? FragKind::Delta : f.kind == FragKind::Delta ? FragKind::Nabla : FragKind::Square;
    return {c, k};
}

class Fragmentation {
public:
    explicit Fragmentation(const Cubillage& q) : host_(q) {
        for (const auto& c : q.cubes())
            for (const auto& f : fragments_of(c)) {
                int v = static_cast<int>(frags_.size());
                id_[f] = v;
                frags_.push_back(f);
                for (const auto& t : f.front()) {
                    behind_[t] = v;
                    faces_.insert(t);
                }
                for (const auto& t : f.rear()) {
                    ahead_[t] = v;
                    faces_.insert(t);
                }
            }
        if (q.n() < 3)
            for (const auto& t : split_rhombi(standard_tiling(q.n())).triangles()) faces_.insert(t);
        for (const auto& t : faces_)
            for (const auto& e : t.edges()) edges_.insert(e);
    }

    int n() const { return host_.n(); }
    const Cubillage& host() const { return host_; }
    const std::vector<Fragment>& fragments() const { return frags_; }
    std::size_t size() const { return frags_.size(); }
    const std::set<Tri>& faces() const { return faces_; }
    bool has_face(const Tri& t) const { return faces_.count(t) != 0; }
    bool has_edge(const Edge& e) const { return edges_.count(e) != 0; }
    std::optional<int> id(const Fragment& f) const {
        auto it = id_.find(f);
        if (it == id_.end()) return std::nullopt;
        return it->second;
    }
    // Fragment having t on its front side, i.e. directly behind t.
    std::optional<int> behind(const Tri& t) const {
        auto it = behind_.find(t);
        if (it == behind_.end()) return std::nullopt;
        return it->second;
    }
    // Fragment having t on its rear side.
    std::optional<int> ahead(const Tri& t) const {
        auto it = ahead_.find(t);
        if (it == ahead_.end()) return std::nullopt;
        return it->second;
    }

    // Edge tau -> tau' when the rear of tau meets the front of tau' in a triangle.
    Dag dag() const {
        Dag d(frags_.size());
        for (auto& [t, a] : ahead_) {
            auto it = behind_.find(t);
            if (it != behind_.end()) d.add_edge(a, it->second);
        }
        return d;
    }

    NodeSet to_nodes(const std::set<Fragment>& fs) const {
        NodeSet s(frags_.size(), false);
        for (const auto& f : fs) {
            auto v = id(f);
            if (!v) throw std::invalid_argument("fragment " + f.str() + " not in fragmentation");
            s[static_cast<std::size_t>(*v)] = true;
        }
        return s;
    }
    std::set<Fragment> to_fragments(const NodeSet& s) const {
        std::set<Fragment> out;
        for (std::size_t v = 0; v < frags_.size(); ++v)
            if (s[v]) out.insert(frags_[v]);
        return out;
    }

private:
    Cubillage host_;
    std::vector<Fragment> frags_;
    std::map<Fragment, int> id_;
    std::map<Tri, int> behind_, ahead_;
    std::set<Tri> faces_;
    std::set<Edge> edges_;
};

inline Fragmentation fragment(const Cubillage& q) { return Fragmentation(q); }

// Horizontal triangles of the section z = h.
inline std::vector<Tri> section(const Fragmentation& f, int h) {
    if (h < 1 || h > f.n() - 1) throw std::invalid_argument("section level out of range");
    std::vector<Tri> out;
    for (const auto& t : f.faces())
        if (t.horizontal() && t.level() == h) out.push_back(t);
    return out;
}

inline WMembrane w_front_side(int n) { return split_rhombi(standard_tiling(n)); }
inline WMembrane w_rear_side(int n) { return split_rhombi(antistandard_tiling(n)); }

// Triangles with the heap in front of them and the rest of the fragments behind.
inline WMembrane w_membrane_of_heap(const Fragmentation& f, const std::set<Fragment>& heap) {
    NodeSet in = f.to_nodes(heap);
    if (!f.dag().is_ideal(in)) throw std::invalid_argument("fragment set is not an ideal of the precedence order");
    std::set<Tri> m;
    for (const auto& t : f.faces()) {
        auto a = f.ahead(t), b = f.behind(t);
        bool front_ok = !a || in[static_cast<std::size_t>(*a)];
        bool rear_ok = !b || !in[static_cast<std::size_t>(*b)];
        if (front_ok && rear_ok) m.insert(t);
    }
    return WMembrane{GroundSize(f.n()), m};
}

inline WMembrane w_flip(const Fragmentation& f, const WMembrane& m, const Fragment& tau, FlipDirection dir) {
    if (!f.id(tau)) throw std::invalid_argument(tau.str() + " is not a fragment of the fragmentation");
    auto tris = m.triangles();
    auto from = dir == FlipDirection::Lower ? tau.rear() : tau.front();
    auto to = dir == FlipDirection::Lower ? tau.front() : tau.rear();
    for (const auto& t : from)
        if (!tris.count(t)) throw std::invalid_argument(tau.str() + " is not flippable at this membrane");
    for (const auto& t : from) tris.erase(t);
    for (const auto& t : to) tris.insert(t);
    return WMembrane{m.ground(), tris};
}

// Front heap by lowering flips down to the front side; throws when M is not a w-membrane of F.
inline std::set<Fragment> w_front_heap(const Fragmentation& f, const WMembrane& m) {
    std::set<Fragment> heap;
    std::set<Tri> cur = m.triangles();
    const auto zfr = w_front_side(f.n()).triangles();
    std::size_t guard = f.size() + 1;
    while (cur != zfr) {
        if (guard-- == 0) throw std::invalid_argument("not a w-membrane of the fragmentation");
        bool moved = false;
        for (const auto& t : cur) {
            auto a = f.ahead(t);
            if (!a) continue;
            const Fragment& tau = f.fragments()[static_cast<std::size_t>(*a)];
            auto rear = tau.rear();
            if (!std::all_of(rear.begin(), rear.end(), [&](const Tri& r) { return cur.count(r) != 0; })) continue;
            for (const auto& r : rear) cur.erase(r);
            for (const auto& r : tau.front()) cur.insert(r);
            heap.insert(tau);
            moved = true;
            break;
        }
        if (!moved) throw std::invalid_argument("not a w-membrane of the fragmentation");
    }
    return heap;
}

inline bool is_w_membrane_of(const Fragmentation& f, const WMembrane& m) {
    try {
        return w_membrane_of_heap(f, w_front_heap(f, m)) == m;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

inline std::vector<WMembrane> enumerate_w_membranes(const Fragmentation& f) {
    std::vector<WMembrane> out;
    for (const auto& ideal : f.dag().enumerate_ideals()) out.push_back(w_membrane_of_heap(f, f.to_fragments(ideal)));
    return out;
}

inline WMembrane w_meet(const Fragmentation& f, const WMembrane& a, const WMembrane& b) {
    auto ha = w_front_heap(f, a), hb = w_front_heap(f, b);
    std::set<Fragment> h;
    std::set_intersection(ha.begin(), ha.end(), hb.begin(), hb.end(), std::inserter(h, h.end()));
    return w_membrane_of_heap(f, h);
}

inline WMembrane w_join(const Fragmentation& f, const WMembrane& a, const WMembrane& b) {
    auto h = w_front_heap(f, a);
    auto hb = w_front_heap(f, b);
    h.insert(hb.begin(), hb.end());
    return w_membrane_of_heap(f, h);
}

// Fragments flippable at M in the given direction.
inline std::vector<Fragment> flippable(const Fragmentation& f, const WMembrane& m, FlipDirection dir) {
    std::vector<Fragment> out;
    for (const auto& tau : f.fragments()) {
        auto side = dir == FlipDirection::Lower ? tau.rear() : tau.front();
        if (std::all_of(side.begin(), side.end(), [&](const Tri& t) { return m.contains(t); })) out.push_back(tau);
    }
    return out;
}

// All w-membranes reachable from M by tetrahedral flips; they share M's spectrum.
inline std::vector<WMembrane> escort(const Fragmentation& f, const WMembrane& m) {
    std::set<WMembrane> seen{m};
    std::deque<WMembrane> queue{m};
    while (!queue.empty()) {
        WMembrane cur = queue.front();
        queue.pop_front();
        for (auto dir : {FlipDirection::Lower, FlipDirection::Raise})
            for (const auto& tau : flippable(f, cur, dir)) {
                if (tau.kind == FragKind::Square) continue;
                auto next = w_flip(f, cur, tau, dir);
                if (seen.insert(next).second) queue.push_back(next);
            }
    }
    return {seen.begin(), seen.end()};
}

inline std::size_t v_edge_count(const WMembrane& m) {
    std::set<Edge> es;
    for (const auto& t : m.triangles())
        for (const auto& e : t.edges())
            if (e.u.size() != e.v.size()) es.insert(e);
    return es.size();
}

// Escort member with the most V-edges; ties go to the least triangle set.
inline WMembrane fine_w_membrane(const Fragmentation& f, const WMembrane& m) {
    auto es = escort(f, m);
    const WMembrane* best = &es.front();
    for (const auto& e : es)
        if (v_edge_count(e) > v_edge_count(*best)) best = &e;
    return *best;
}

// Every horizontal triangle's longest edge lies on a second horizontal triangle of the membrane.
inline Report check_fine_property(const WMembrane& m) {
    Report rep;
    std::map<Edge, int> horizontal_on;
    for (const auto& t : m.triangles())
        if (t.horizontal())
            for (const auto& e : t.edges()) ++horizontal_on[e];
    for (const auto& t : m.triangles())
        if (t.horizontal() && horizontal_on[t.tile().long_edge()] < 2)
            rep.add("longest edge of " + t.str() + " borders no other horizontal triangle");
    return rep;
}

// A vertical triangle on the longest edge of a horizontal one forms with it one side of a single fragment.
inline Report check_vertical_horizontal(const Fragmentation& f) {
    Report rep;
    std::map<Edge, std::vector<Tri>> vertical_on;
    for (const auto& t : f.faces())
        if (!t.horizontal())
            for (const auto& e : t.edges()) vertical_on[e].push_back(t);
    for (const auto& s : f.faces()) {
        if (!s.horizontal()) continue;
        auto st = s.tile();
        bool lower = st.kind == TileKind::SemiLensLower;
        for (const auto& v : vertical_on[st.long_edge()]) {
            auto vt = v.tile();
            if (vt.kind != (lower ? TileKind::Delta : TileKind::Nabla)) continue;
            auto tau = lower ? f.behind(s) : f.ahead(s);
            bool ok = false;
            if (tau) {
                const auto& fr = f.fragments()[static_cast<std::size_t>(*tau)];
                auto side = lower ? fr.front() : fr.rear();
                ok = std::find(side.begin(), side.end(), v) != side.end();
            }
            if (!ok) rep.add(s.str() + " and " + v.str() + " are not one side of a fragment");
        }
    }
    return rep;
}

// A quasi-combi all of whose edges are fragmentation edges, with horizontal tiles cut by the sections.
inline WMembrane compatible_quasi_combi_to_membrane(const Fragmentation& f, const QuasiCombi& k) {
    if (k.n() != f.n()) throw std::invalid_argument("ground mismatch");
    for (const auto& t : k.tiles())
        for (const auto& e : t.edges())
            if (!f.has_edge(e)) throw std::invalid_argument("quasi-combi edge " + e.u.str() + "-" + e.v.str() + " is not a fragmentation edge");
    Generators2D g = Generators2D::strict_convex(f.n());
    std::set<Tri> tris;
    for (const auto& t : k.tiles()) {
        if (t.triangle()) {
            Tri tr = Tri::of(t);
            if (!f.has_face(tr)) throw std::invalid_argument("tile " + t.str() + " is not a fragmentation face");
            tris.insert(tr);
            continue;
        }
        auto poly = t.polygon(g);
        std::vector<Vec2> scaled;
        for (Vec2 p : poly) scaled.push_back(3 * p);
        i64 covered = 0;
        for (const auto& s : section(f, t.level())) {
            Vec2 c = g.point(s.v[0]) + g.point(s.v[1]) + g.point(s.v[2]);
            if (locate(c, scaled) <= 0) continue;
            tris.insert(s);
            covered += std::abs(area2({g.point(s.v[0]), g.point(s.v[1]), g.point(s.v[2])}));
        }
        if (covered != area2(poly)) throw std::invalid_argument("section triangles do not tile " + t.str());
    }
    WMembrane m{k.ground(), tris};
    if (!is_w_membrane_of(f, m)) throw std::invalid_argument("quasi-combi does not lift to a w-membrane");
    return m;
}

// A w-membrane of the fragmentation with spectrum W.
inline WMembrane w_membrane_for_w_collection(const Cubillage& q, const Collection& w) {
    if (w.n() != q.n()) throw std::invalid_argument("ground mismatch");
    if (!w.subset_of(q.spectrum())) throw std::invalid_argument("collection is not inside the cubillage spectrum");
    if (w.size() != rank_formula(SeparationKind::Weak, w.n()) || !is_separated_collection(SeparationKind::Weak, w))
        throw std::invalid_argument("collection is not a maximal-size weakly separated collection");
    Fragmentation f(q);
    QuasiCombi k = combi_from_w_collection(w);
    for (const auto& t : k.tiles())
        if (t.vertical() && !f.has_face(Tri::of(t)))
            throw std::logic_error("vertical tile " + t.str() + " does not extend to a rhombus of the cubillage");
    WMembrane m = compatible_quasi_combi_to_membrane(f, k);
    if (m.spectrum() != w) throw std::logic_error("membrane spectrum differs from the collection");
    return m;
}

}  // namespace sepsys
