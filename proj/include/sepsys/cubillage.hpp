#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dag.hpp"
#include "geometry.hpp"
#include "report.hpp"
#include "separation.hpp"
#include "tiling.hpp"

namespace sepsys {

// zeta(X|ijk); front = Y hexagon rhombi, rear = turned-Y hexagon rhombi.
struct Cube {
    Subset bottom;
    int i = 0, j = 0, k = 0;

    Triple colors() const { return {i, j, k}; }
    Subset top() const { return bottom.with(i).with(j).with(k); }
    std::array<Subset, 8> vertices() const {
        Subset x = bottom;
        return {x, x.with(i), x.with(j), x.with(k), x.with(i).with(j), x.with(i).with(k), x.with(j).with(k), top()};
    }
    std::array<Rhombus, 3> front() const { return Hexagon::y_rhombi(bottom, i, j, k); }
    std::array<Rhombus, 3> rear() const { return Hexagon::turned_rhombi(bottom, i, j, k); }
    std::array<Rhombus, 6> faces() const {
        auto f = front(), r = rear();
        return {f[0], f[1], f[2], r[0], r[1], r[2]};
    }
    Parallelepiped box(const Generators3D& g) const { return {g.point(bottom), {g[i], g[j], g[k]}}; }
    bool well_formed(int n) const {
        return 1 <= i && i < j && j < k && k <= n && bottom.fits(n) && !bottom.contains(i) && !bottom.contains(j) &&
               !bottom.contains(k);
    }
    std::string str() const { return "zeta(" + bottom.str() + "|" + colors().str() + ")"; }

    friend constexpr bool operator==(const Cube&, const Cube&) = default;
    friend constexpr auto operator<=>(const Cube&, const Cube&) = default;
};

class Cubillage {
public:
    Cubillage(GroundSize g, std::set<Cube> cubes) : ground_(g), cubes_(std::move(cubes)) {}

    int n() const { return ground_.value(); }
    GroundSize ground() const { return ground_; }
    const std::set<Cube>& cubes() const { return cubes_; }
    bool contains(const Cube& c) const { return cubes_.count(c) != 0; }

    // For n < 3 the zonotope is flat and every subset is a vertex.
    Collection spectrum() const {
        if (n() < 3) return power_set(n());
        Collection c{ground_};
        for (const auto& q : cubes_)
            for (Subset v : q.vertices()) c.insert(v);
        return c;
    }
    std::set<Rhombus> faces() const {
        std::set<Rhombus> f;
        if (n() < 3)
            for (const auto& r : standard_tiling(n()).rhombi()) f.insert(r);
        for (const auto& q : cubes_)
            for (const auto& r : q.faces()) f.insert(r);
        return f;
    }

    friend bool operator==(const Cubillage& a, const Cubillage& b) {
        return a.ground_ == b.ground_ && a.cubes_ == b.cubes_;
    }

private:
    GroundSize ground_;
    std::set<Cube> cubes_;
};

// An s-membrane is identified with its rhombus set; its projection is a tiling with the same labels.
using SMembrane = Tiling;

inline Report validate_cubillage(const Cubillage& q, const Generators3D& g) {
    Report rep;
    int n = q.n();
    if (g.n() != n || !g.well_formed()) {
        rep.add("bad generators");
        return rep;
    }
    std::map<Triple, int> per_triple;
    std::vector<Cube> cs;
    i64 vol = 0;
    for (const auto& c : q.cubes()) {
        if (!c.well_formed(n)) {
            rep.add("malformed cube " + c.str());
            continue;
        }
        ++per_triple[c.colors()];
        cs.push_back(c);
        vol += std::abs(det(g[c.i], g[c.j], g[c.k]));
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                int m = per_triple.count({i, j, k}) ? per_triple[{i, j, k}] : 0;
                if (m != 1) rep.add("triple " + Triple{i, j, k}.str() + " has " + std::to_string(m) + " cubes");
            }
    if (vol != g.zonotope_volume())
        rep.add("volume mismatch: cubes " + std::to_string(vol) + " vs zonotope " + std::to_string(g.zonotope_volume()));
    for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b)
            if (!interiors_disjoint(cs[a].box(g), cs[b].box(g))) rep.add("overlap " + cs[a].str() + " / " + cs[b].str());
    if (n >= 3) {
        std::map<Rhombus, int> as_front, as_rear;
        for (const auto& c : cs) {
            for (const auto& r : c.front()) ++as_front[r];
            for (const auto& r : c.rear()) ++as_rear[r];
        }
        const auto zfr = standard_tiling(n).rhombi();
        const auto zre = antistandard_tiling(n).rhombi();
        std::set<Rhombus> all;
        for (auto& [r, m] : as_front) all.insert(r);
        for (auto& [r, m] : as_rear) all.insert(r);
        for (const auto& r : zfr) all.insert(r);
        for (const auto& r : zre) all.insert(r);
        for (const auto& r : all) {
            int f = as_front.count(r) ? as_front[r] : 0;
            int b = as_rear.count(r) ? as_rear[r] : 0;
            bool ok = zfr.count(r) ? (f == 1 && b == 0) : zre.count(r) ? (f == 0 && b == 1) : (f == 1 && b == 1);
            if (!ok) rep.add("facet mismatch at " + r.str());
        }
    }
    auto spec = q.spectrum().size();
    if (spec != rank_formula(SeparationKind::Chord, n)) rep.add("spectrum size " + std::to_string(spec) + " differs from rank");
    return rep;
}

inline Report validate_cubillage(const Cubillage& q) { return validate_cubillage(q, Generators3D::standard(q.n())); }

// Cubes whose eight vertices all lie in the collection.
inline std::set<Cube> cubes_in(const Collection& c) {
    std::set<Cube> out;
    int n = c.n();
    for (const auto& r : rhombi_in(c))
        for (int k = r.j + 1; k <= n; ++k) {
            if (r.bottom.contains(k)) continue;
            Cube q{r.bottom, r.i, r.j, k};
            bool all = true;
            for (Subset v : q.vertices()) all = all && c.contains(v);
            if (all) out.insert(q);
        }
    return out;
}

inline Cubillage cubillage_from_c_collection(const Collection& c) {
    int n = c.n();
    if (auto v = find_violation(SeparationKind::Chord, c))
        throw std::invalid_argument("not chord separated: " + v->first.str() + ", " + v->second.str());
    if (c.size() != rank_formula(SeparationKind::Chord, n))
        throw std::invalid_argument("not a maximal chord separated collection (size " + std::to_string(c.size()) + ")");
    Cubillage q{c.ground(), cubes_in(c)};
    auto rep = validate_cubillage(q);
    if (!rep.ok()) throw std::logic_error("cubillage construction failed validation: " + rep.str());
    return q;
}

inline std::pair<SMembrane, SMembrane> front_rear_sides(const Cubillage& q) {
    int n = q.n();
    if (n < 3) return {standard_tiling(n), antistandard_tiling(n)};
    std::map<Rhombus, int> uses;
    for (const auto& c : q.cubes())
        for (const auto& r : c.faces()) ++uses[r];
    std::set<Rhombus> fr, re;
    for (const auto& c : q.cubes()) {
        for (const auto& r : c.front())
            if (uses[r] == 1) fr.insert(r);
        for (const auto& r : c.rear())
            if (uses[r] == 1) re.insert(r);
    }
    return {Tiling{q.ground(), fr}, Tiling{q.ground(), re}};
}

// Mirror i -> n+1-i (reflection x -> -x); keeps front and rear.
inline Subset mirror(Subset x, int n) {
    Subset m;
    for (int e : x.elements()) m = m.with(n + 1 - e);
    return m;
}
inline Rhombus mirror(const Rhombus& r, int n) { return {mirror(r.bottom, n), n + 1 - r.j, n + 1 - r.i}; }
inline Cube mirror(const Cube& c, int n) { return {mirror(c.bottom, n), n + 1 - c.k, n + 1 - c.j, n + 1 - c.i}; }
inline std::set<Rhombus> mirror(const std::set<Rhombus>& rs, int n) {
    std::set<Rhombus> out;
    for (const auto& r : rs) out.insert(mirror(r, n));
    return out;
}
inline std::set<Cube> mirror(const std::set<Cube>& cs, int n) {
    std::set<Cube> out;
    for (const auto& c : cs) out.insert(mirror(c, n));
    return out;
}
inline Tiling mirror(const Tiling& t) { return Tiling{t.ground(), mirror(t.rhombi(), t.n())}; }
inline Cubillage mirror(const Cubillage& q) { return Cubillage{q.ground(), mirror(q.cubes(), q.n())}; }

// Cube numbering plus, for each rhombus face, the cube directly behind it and the one directly ahead of it.
struct CubillageIndex {
    std::vector<Cube> cubes;
    std::map<Cube, int> id;
    std::map<Rhombus, int> behind;  // cube having the rhombus in its front
    std::map<Rhombus, int> ahead;   // cube having the rhombus in its rear

    explicit CubillageIndex(const Cubillage& q) : cubes(q.cubes().begin(), q.cubes().end()) {
        for (std::size_t v = 0; v < cubes.size(); ++v) {
            id[cubes[v]] = static_cast<int>(v);
            for (const auto& r : cubes[v].front()) behind[r] = static_cast<int>(v);
            for (const auto& r : cubes[v].rear()) ahead[r] = static_cast<int>(v);
        }
    }
    std::set<Cube> to_cubes(const NodeSet& s) const {
        std::set<Cube> out;
        for (std::size_t v = 0; v < cubes.size(); ++v)
            if (s[v]) out.insert(cubes[v]);
        return out;
    }
    NodeSet to_nodes(const std::set<Cube>& cs) const {
        NodeSet s(cubes.size(), false);
        for (const auto& c : cs) {
            auto it = id.find(c);
            if (it == id.end()) throw std::invalid_argument("cube " + c.str() + " not in cubillage");
            s[static_cast<std::size_t>(it->second)] = true;
        }
        return s;
    }
};

// Edge zeta -> zeta' when the rear of zeta meets the front of zeta' in a rhombus.
inline Dag precedence_dag(const Cubillage& q) {
    CubillageIndex ix(q);
    Dag d(ix.cubes.size());
    for (auto& [r, a] : ix.ahead) {
        auto it = ix.behind.find(r);
        if (it != ix.behind.end()) d.add_edge(a, it->second);
    }
    return d;
}

// Rhombi with the heap on their front side and the rest behind.
inline SMembrane membrane_of_heap(const Cubillage& q, const std::set<Cube>& heap) {
    CubillageIndex ix(q);
    NodeSet in = ix.to_nodes(heap);
    if (!precedence_dag(q).is_ideal(in)) throw std::invalid_argument("cube set is not an ideal of the precedence order");
    if (q.n() < 3) return standard_tiling(q.n());
    std::set<Rhombus> m;
    for (const auto& r : q.faces()) {
        auto a = ix.ahead.find(r), b = ix.behind.find(r);
        bool front_ok = a == ix.ahead.end() || in[static_cast<std::size_t>(a->second)];
        bool rear_ok = b == ix.behind.end() || !in[static_cast<std::size_t>(b->second)];
        if (front_ok && rear_ok) m.insert(r);
    }
    return Tiling{q.ground(), m};
}

inline SMembrane membrane_flip(const Cubillage& q, const SMembrane& m, const Cube& c, FlipDirection dir) {
    if (!q.contains(c)) throw std::invalid_argument(c.str() + " is not a cube of the cubillage");
    auto rs = m.rhombi();
    auto from = dir == FlipDirection::Lower ? c.rear() : c.front();
    auto to = dir == FlipDirection::Lower ? c.front() : c.rear();
    for (const auto& r : from)
        if (!rs.erase(r)) throw std::invalid_argument(c.str() + " is not flippable at this membrane");
    for (const auto& r : to) rs.insert(r);
    return Tiling{m.ground(), rs};
}

// Front heap Q^-(M) by lowering flips down to Z^fr; throws when M is not an s-membrane of Q.
inline std::set<Cube> front_heap(const Cubillage& q, const SMembrane& m) {
    std::set<Cube> heap;
    std::set<Rhombus> cur = m.rhombi();
    const auto zfr = standard_tiling(q.n()).rhombi();
    std::size_t guard = q.cubes().size() + 1;
    while (cur != zfr) {
        if (guard-- == 0) throw std::invalid_argument("not an s-membrane of the cubillage");
        bool moved = false;
        for (const auto& h : find_hexagons_in(cur, q.n(), HexConfig::TurnedY)) {
            Cube c{h.base, h.i, h.j, h.k};
            if (!q.contains(c) || heap.count(c)) continue;
            for (const auto& r : c.rear()) cur.erase(r);
            for (const auto& r : c.front()) cur.insert(r);
            heap.insert(c);
            moved = true;
            break;
        }
        if (!moved) throw std::invalid_argument("not an s-membrane of the cubillage");
    }
    return heap;
}

inline bool is_membrane_of(const Cubillage& q, const SMembrane& m) {
    try {
        front_heap(q, m);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

inline std::vector<SMembrane> enumerate_membranes(const Cubillage& q) {
    CubillageIndex ix(q);
    std::vector<SMembrane> out;
    for (const auto& ideal : precedence_dag(q).enumerate_ideals()) out.push_back(membrane_of_heap(q, ix.to_cubes(ideal)));
    return out;
}

namespace detail {
template <class Op>
SMembrane combine(const Cubillage& q, const SMembrane& a, const SMembrane& b, Op op) {
    auto ha = front_heap(q, a), hb = front_heap(q, b);
    std::set<Cube> h;
    op(ha, hb, h);
    return membrane_of_heap(q, h);
}
}  // namespace detail

inline SMembrane meet(const Cubillage& q, const SMembrane& a, const SMembrane& b) {
    return detail::combine(q, a, b, [](const auto& x, const auto& y, auto& out) {
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::inserter(out, out.end()));
    });
}

inline SMembrane join(const Cubillage& q, const SMembrane& a, const SMembrane& b) {
    return detail::combine(q, a, b, [](const auto& x, const auto& y, auto& out) {
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::inserter(out, out.end()));
    });
}

// The lift of T into Q; requires V_T inside V_Q.
inline SMembrane membrane_from_tiling(const Cubillage& q, const Tiling& t) {
    if (!(t.ground() == q.ground())) throw std::invalid_argument("ground mismatch");
    if (!t.spectrum().subset_of(q.spectrum())) throw std::invalid_argument("tiling spectrum not contained in cubillage spectrum");
    auto faces = q.faces();
    for (const auto& r : t.rhombi())
        if (!faces.count(r)) throw std::logic_error("rhombus " + r.str() + " does not lift to a face");
    front_heap(q, t);
    return t;
}

struct PieResult {
    int color = 0;
    std::set<Cube> pie;             // cubes using the color
    std::set<Rhombus> disk_front;   // rho(X|ij) for the pie cubes (color removed)
    std::set<Rhombus> disk_rear;    // the same disk shifted by theta_color
    std::set<Cube> before, behind;  // Q^- and Q^+
    std::set<Rhombus> belt;         // boundary rhombi using the color
};

namespace detail {
inline PieResult pie_last(const Cubillage& q) {
    int n = q.n();
    PieResult p;
    p.color = n;
    for (const auto& c : q.cubes()) {
        if (c.k == n) {
            p.pie.insert(c);
            p.disk_front.insert({c.bottom, c.i, c.j});
            p.disk_rear.insert({c.bottom.with(n), c.i, c.j});
        } else if (c.bottom.contains(n)) {
            p.behind.insert(c);
        } else {
            p.before.insert(c);
        }
    }
    auto [fr, re] = front_rear_sides(q);
    for (const auto& r : fr.rhombi())
        if (r.j == n) p.belt.insert(r);
    for (const auto& r : re.rhombi())
        if (r.j == n) p.belt.insert(r);
    return p;
}
}  // namespace detail

inline PieResult pie(const Cubillage& q, int color) {
    int n = q.n();
    if (n < 3) throw std::invalid_argument("pie needs n >= 3");
    if (color == n) return detail::pie_last(q);
    if (color != 1) throw std::invalid_argument("pie color must be 1 or n");
    PieResult m = detail::pie_last(mirror(q));
    return {1, mirror(m.pie, n), mirror(m.disk_front, n), mirror(m.disk_rear, n), mirror(m.before, n),
            mirror(m.behind, n), mirror(m.belt, n)};
}

struct Contraction {
    Cubillage reduced;
    SMembrane membrane;
};

namespace detail {
inline Contraction contract_last(const Cubillage& q) {
    int n = q.n();
    GroundSize g(n - 1);
    std::set<Cube> cs;
    std::set<Rhombus> m;
    for (const auto& c : q.cubes()) {
        if (c.k == n)
            m.insert({c.bottom, c.i, c.j});
        else
            cs.insert({c.bottom.contains(n) ? c.bottom.without(n) : c.bottom, c.i, c.j, c.k});
    }
    if (n - 1 < 3) m = standard_tiling(n - 1).rhombi();
    return {Cubillage{g, cs}, Tiling{g, m}};
}

inline Cubillage expand_last(const Cubillage& q, const SMembrane& m) {
    int n = q.n() + 1;
    if (!(m.ground() == q.ground())) throw std::invalid_argument("membrane and cubillage grounds differ");
    std::set<Cube> heap = front_heap(q, m);
    std::set<Cube> cs;
    for (const auto& c : q.cubes()) cs.insert(heap.count(c) ? c : Cube{c.bottom.with(n), c.i, c.j, c.k});
    for (const auto& r : m.rhombi()) cs.insert({r.bottom, r.i, r.j, n});
    return Cubillage{GroundSize(n), cs};
}
}  // namespace detail

// Removes the pie of color 1 or n; color 1 relabels c -> c-1.
inline Contraction contract(const Cubillage& q, int color) {
    int n = q.n();
    if (n < 2) throw std::invalid_argument("contract needs n >= 2");
    if (color == n) return detail::contract_last(q);
    if (color != 1) throw std::invalid_argument("contract color must be 1 or n");
    Contraction c = detail::contract_last(mirror(q));
    return {mirror(c.reduced), mirror(c.membrane)};
}

// Inverse of contract: inserts a pie of color 1 or n+1 along the membrane.
inline Cubillage expand(const Cubillage& q, const SMembrane& m, int color) {
    int n = q.n() + 1;
    Cubillage out = color == n ? detail::expand_last(q, m)
                  : color == 1 ? mirror(detail::expand_last(mirror(q), mirror(m)))
                               : throw std::invalid_argument("expand color must be 1 or n+1");
    auto rep = validate_cubillage(out);
    if (!rep.ok()) throw std::logic_error("expansion failed validation: " + rep.str());
    return out;
}

struct MembraneExtension {
    Cubillage cubillage;
    std::set<Cube> front_part;  // between Z^fr and M
    std::set<Cube> rear_part;   // between M and Z^re
};

// Glue cubes on turned-Y hexagons toward Z^fr, then on Y hexagons toward Z^re.
inline MembraneExtension extend_membrane_to_cubillage(const Tiling& t) {
    auto rep = validate_tiling(t);
    if (!rep.ok()) throw std::invalid_argument("invalid membrane: " + rep.str());
    int n = t.n();
    auto sweep = [&](HexConfig cfg) {
        std::set<Cube> part;
        std::set<Rhombus> cur = t.rhombi();
        while (true) {
            auto hs = find_hexagons_in(cur, n, cfg);
            if (hs.empty()) break;
            const Hexagon& h = hs.front();
            for (const auto& r : h.rhombi()) cur.erase(r);
            for (const auto& r : h.flipped_rhombi()) cur.insert(r);
            part.insert({h.base, h.i, h.j, h.k});
        }
        return part;
    };
    auto fr = sweep(HexConfig::TurnedY), re = sweep(HexConfig::Y);
    std::set<Cube> all = fr;
    all.insert(re.begin(), re.end());
    Cubillage q{t.ground(), all};
    auto qrep = validate_cubillage(q);
    if (!qrep.ok()) throw std::logic_error("membrane extension failed validation: " + qrep.str());
    return {q, fr, re};
}

struct FillResult {
    bool possible = false;
    std::set<Cube> cubes;
    std::optional<Triple> witness;  // triple of Inv(M) missing from Inv(M')
};

// Cubes filling the region between M (front) and M' (rear), or a certificate that none exists.
inline FillResult fill_between_membranes(const Tiling& m, const Tiling& m2) {
    if (!(m.ground() == m2.ground())) throw std::invalid_argument("ground mismatch");
    for (const auto* t : {&m, &m2}) {
        auto rep = validate_tiling(*t);
        if (!rep.ok()) throw std::invalid_argument("invalid membrane: " + rep.str());
    }
    auto inv = inversion_set_fast(m), inv2 = inversion_set_fast(m2);
    for (const auto& tr : inv)
        if (!inv2.count(tr)) return {false, {}, tr};
    FillResult res{true, {}, std::nullopt};
    std::set<Rhombus> cur = m.rhombi();
    while (cur != m2.rhombi()) {
        bool moved = false;
        for (const auto& h : find_hexagons_in(cur, m.n(), HexConfig::Y)) {
            if (!inv2.count({h.i, h.j, h.k})) continue;
            for (const auto& r : h.rhombi()) cur.erase(r);
            for (const auto& r : h.flipped_rhombi()) cur.insert(r);
            res.cubes.insert({h.base, h.i, h.j, h.k});
            moved = true;
            break;
        }
        if (!moved) throw std::logic_error("no elementary triple found between comparable membranes");
    }
    return res;
}

}  // namespace sepsys
