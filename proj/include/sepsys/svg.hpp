#pragma once

#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "combi.hpp"
#include "fragmentation.hpp"
#include "tiling.hpp"

namespace sepsys {

// Minimal SVG 1.1 writer over integer zonogon coordinates; y grows upward in the input.
class SvgCanvas {
public:
    SvgCanvas(double sx, double sy) : sx_(sx), sy_(sy) {}

    void polygon(const std::vector<Vec2>& pts, const std::string& cls, const std::string& fill) {
        std::string p;
        for (Vec2 v : pts) p += (p.empty() ? "" : " ") + coord(v);
        for (Vec2 v : pts) grow(v);
        body_ += "  <polygon class=\"" + cls + "\" points=\"" + p + "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
    }
    void line(Vec2 a, Vec2 b, double width) {
        grow(a);
        grow(b);
        auto pa = xy(a), pb = xy(b);
        body_ += "  <line x1=\"" + num(pa.first) + "\" y1=\"" + num(pa.second) + "\" x2=\"" + num(pb.first) + "\" y2=\"" +
                 num(pb.second) + "\" stroke=\"black\" stroke-width=\"" + num(width) + "\"/>\n";
    }
    void label(Vec2 at, const std::string& text) {
        grow(at);
        auto p = xy(at);
        body_ += "  <text x=\"" + num(p.first + 3) + "\" y=\"" + num(p.second - 3) + "\" font-size=\"9\">" + text + "</text>\n";
    }
    std::string str() const {
        double pad = 20;
        double x0 = minx_ - pad, y0 = miny_ - pad, w = maxx_ - minx_ + 2 * pad, h = maxy_ - miny_ + 2 * pad;
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
               num(w) + "\" height=\"" + num(h) + "\" viewBox=\"" + num(x0) + " " + num(y0) + " " + num(w) + " " + num(h) +
               "\">\n" + body_ + "</svg>\n";
    }

private:
    std::pair<double, double> xy(Vec2 v) const { return {static_cast<double>(v.x) * sx_, -static_cast<double>(v.y) * sy_}; }
    std::string coord(Vec2 v) const {
        auto p = xy(v);
        return num(p.first) + "," + num(p.second);
    }
    static std::string num(double d) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", d);
        return buf;
    }
    void grow(Vec2 v) {
        auto [x, y] = xy(v);
        if (empty_) {
            minx_ = maxx_ = x;
            miny_ = maxy_ = y;
            empty_ = false;
        }
        minx_ = std::min(minx_, x);
        maxx_ = std::max(maxx_, x);
        miny_ = std::min(miny_, y);
        maxy_ = std::max(maxy_, y);
    }

    double sx_, sy_;
    std::string body_;
    bool empty_ = true;
    double minx_ = 0, maxx_ = 0, miny_ = 0, maxy_ = 0;
};

namespace detail {

// V-edges (cardinalities differ) thick, H-edges thin.
inline void draw_edges(SvgCanvas& cv, const std::set<Edge>& es, const Generators2D& g) {
    for (const auto& e : es) cv.line(g.point(e.u), g.point(e.v), e.u.size() != e.v.size() ? 2.5 : 0.8);
}

inline void draw_labels(SvgCanvas& cv, const std::set<Subset>& vs, const Generators2D& g) {
    for (Subset v : vs) cv.label(g.point(v), v.empty() ? "0" : v.str());
}

inline double strict_y_scale(int n) { return 40.0 / static_cast<double>(Generators2D::strict_k(std::max(n, 1))); }

}  // namespace detail

inline std::string render_tiling_svg(const Tiling& t) {
    Generators2D g = Generators2D::tiling(t.n());
    SvgCanvas cv(20, 20);
    std::set<Edge> es;
    std::set<Subset> vs;
    for (const auto& r : t.rhombi()) {
        cv.polygon(r.polygon(g), "rhombus", "#dde6f0");
        for (const auto& e : r.edges()) es.insert(e);
        for (Subset v : r.vertices()) vs.insert(v);
    }
    detail::draw_edges(cv, es, g);
    detail::draw_labels(cv, vs, g);
    return cv.str();
}

inline const char* tile_fill(TileKind k) {
    switch (k) {
        case TileKind::Delta: return "#f3e3c3";
        case TileKind::Nabla: return "#d7e8d0";
        case TileKind::Lens: return "#e0d7ee";
        case TileKind::SemiLensLower: return "#c9d6ee";
        case TileKind::SemiLensUpper: return "#eecfd2";
    }
    return "#ffffff";
}

inline std::string render_combi_svg(const QuasiCombi& k) {
    Generators2D g = Generators2D::strict_convex(k.n());
    SvgCanvas cv(20, detail::strict_y_scale(k.n()));
    std::set<Edge> es;
    std::set<Subset> vs;
    for (const auto& t : k.tiles()) {
        cv.polygon(t.polygon(g), std::string("tile ") + tile_kind_name(t.kind), tile_fill(t.kind));
        for (const auto& e : t.edges()) es.insert(e);
        for (Subset v : t.vertices()) vs.insert(v);
    }
    detail::draw_edges(cv, es, g);
    detail::draw_labels(cv, vs, g);
    return cv.str();
}

// Horizontal section z = h of a fragmentation, upper and lower triangles shaded differently.
inline std::string render_section_svg(const Fragmentation& f, int h) {
    Generators2D g = Generators2D::strict_convex(f.n());
    SvgCanvas cv(20, detail::strict_y_scale(f.n()));
    std::set<Edge> es;
    std::set<Subset> vs;
    for (const auto& t : section(f, h)) {
        auto kind = t.tile().kind;
        std::vector<Vec2> p{g.point(t.v[0]), g.point(t.v[1]), g.point(t.v[2])};
        cv.polygon(make_ccw(p), kind == TileKind::SemiLensUpper ? "upper" : "lower", tile_fill(kind));
        for (const auto& e : t.edges()) es.insert(e);
        for (Subset v : t.v) vs.insert(v);
    }
    detail::draw_edges(cv, es, g);
    detail::draw_labels(cv, vs, g);
    return cv.str();
}

}  // namespace sepsys
