#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "subset.hpp"

namespace sepsys {

using i64 = std::int64_t;

struct Vec2 {
    i64 x = 0, y = 0;
    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(i64 k, Vec2 a) { return {k * a.x, k * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr i64 cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr i64 dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// > 0 when c is left of a->b
constexpr i64 orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

struct Vec3 {
    i64 x = 0, y = 0, z = 0;
    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr i64 dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
constexpr i64 det(Vec3 a, Vec3 b, Vec3 c) { return dot(a, cross(b, c)); }

// Planar generators, ordered left to right in the upper half-plane.
struct Generators2D {
    std::vector<Vec2> xi;  // xi[0] is the generator of color 1
    bool strict = false;

    int n() const { return static_cast<int>(xi.size()); }
    Vec2 operator[](int color) const { return xi[static_cast<std::size_t>(color - 1)]; }
    Vec2 point(Subset x) const {
        Vec2 p;
        for (int i : x.elements()) p = p + (*this)[i];
        return p;
    }

    // xi_i = (2i-n-1, 2): the scaled default (i - (n+1)/2, 1).
    static Generators2D tiling(int n) {
        Generators2D g;
        for (int i = 1; i <= n; ++i) g.xi.push_back({2 * i - n - 1, 2});
        return g;
    }
    // Image of the cubillage generators under the tilted projection, scaled by K: (x_i, K - x_i^2).
    static i64 strict_k(int n) { return 2 * static_cast<i64>(n) * n; }
    static Generators2D strict_convex(int n) {
        Generators2D g;
        g.strict = true;
        i64 k = strict_k(n);
        for (int i = 1; i <= n; ++i) {
            i64 x = 2 * i - n - 1;
            g.xi.push_back({x, k - x * x});
        }
        return g;
    }

    // Every generator in the open upper half-plane, strictly clockwise (left to right).
    bool well_formed() const {
        for (int i = 1; i <= n(); ++i)
            if ((*this)[i].y <= 0) return false;
        for (int i = 1; i < n(); ++i)
            if (cross((*this)[i], (*this)[i + 1]) >= 0) return false;
        return true;
    }
    // For i<j<k, xi_j lies strictly beyond the segment xi_i xi_k (lambda + lambda' > 1).
    bool strictly_convex() const {
        if (!well_formed()) return false;
        for (int i = 1; i <= n(); ++i)
            for (int j = i + 1; j <= n(); ++j)
                for (int k = j + 1; k <= n(); ++k)
                    if (orient((*this)[i], (*this)[k], (*this)[j]) <= 0) return false;
        return true;
    }

    // Twice the area of Z(n,2).
    i64 zonogon_area2() const {
        i64 a = 0;
        for (int i = 1; i <= n(); ++i)
            for (int j = i + 1; j <= n(); ++j) a += 2 * std::abs(cross((*this)[i], (*this)[j]));
        return a;
    }
};

// Twice the signed area.
inline i64 area2(const std::vector<Vec2>& poly) {
    i64 a = 0;
    for (std::size_t p = 0; p < poly.size(); ++p) a += cross(poly[p], poly[(p + 1) % poly.size()]);
    return a;
}

inline std::vector<Vec2> make_ccw(std::vector<Vec2> poly) {
    if (area2(poly) < 0) std::reverse(poly.begin(), poly.end());
    return poly;
}

// Strictly convex, counterclockwise.
inline bool is_strictly_convex_ccw(const std::vector<Vec2>& poly) {
    std::size_t m = poly.size();
    if (m < 3) return false;
    for (std::size_t p = 0; p < m; ++p)
        if (orient(poly[p], poly[(p + 1) % m], poly[(p + 2) % m]) <= 0) return false;
    return true;
}

namespace detail {
// Some edge of a (ccw) has all of b on its closed outer side.
inline bool edge_separates(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    for (std::size_t p = 0; p < a.size(); ++p) {
        Vec2 u = a[p], v = a[(p + 1) % a.size()];
        if (u == v) continue;
        bool all_out = true;
        for (Vec2 q : b)
            if (orient(u, v, q) > 0) {
                all_out = false;
                break;
            }
        if (all_out) return true;
    }
    return false;
}
}  // namespace detail

// Convex ccw polygons with disjoint interiors.
inline bool interiors_disjoint(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    return detail::edge_separates(a, b) || detail::edge_separates(b, a);
}

// Point location in a convex ccw polygon: 1 inside, 0 on boundary, -1 outside.
inline int locate(Vec2 q, const std::vector<Vec2>& poly) {
    bool on_edge = false;
    for (std::size_t p = 0; p < poly.size(); ++p) {
        i64 o = orient(poly[p], poly[(p + 1) % poly.size()], q);
        if (o < 0) return -1;
        if (o == 0) on_edge = true;
    }
    return on_edge ? 0 : 1;
}

// Cubillage generators theta_i = (x_i, x_i^2, 1), x_i = 2i-n-1.
struct Generators3D {
    std::vector<Vec3> theta;

    int n() const { return static_cast<int>(theta.size()); }
    Vec3 operator[](int color) const { return theta[static_cast<std::size_t>(color - 1)]; }
    Vec3 point(Subset x) const {
        Vec3 p;
        for (int i : x.elements()) p = p + (*this)[i];
        return p;
    }

    static Generators3D standard(int n) {
        Generators3D g;
        for (int i = 1; i <= n; ++i) {
            i64 x = 2 * i - n - 1;
            g.theta.push_back({x, x * x, 1});
        }
        return g;
    }

    // x strictly increasing, z = 1, the points (x_i, y_i) in convex position.
    bool well_formed() const {
        for (int i = 1; i <= n(); ++i)
            if ((*this)[i].z != 1) return false;
        for (int i = 1; i < n(); ++i)
            if ((*this)[i].x >= (*this)[i + 1].x) return false;
        auto pt = [&](int i) { return Vec2{(*this)[i].x, (*this)[i].y}; };
        for (int a = 1; a <= n(); ++a)
            for (int b = a + 1; b <= n(); ++b)
                for (int c = b + 1; c <= n(); ++c) {
                    if (orient(pt(a), pt(b), pt(c)) == 0) return false;
                    auto tri = make_ccw({pt(a), pt(b), pt(c)});
                    for (int d = 1; d <= n(); ++d)
                        if (d != a && d != b && d != c && locate(pt(d), tri) >= 0) return false;
                }
        return true;
    }

    i64 zonotope_volume() const {
        i64 v = 0;
        for (int i = 1; i <= n(); ++i)
            for (int j = i + 1; j <= n(); ++j)
                for (int k = j + 1; k <= n(); ++k) v += std::abs(det((*this)[i], (*this)[j], (*this)[k]));
        return v;
    }
};

// Parallelepiped origin + box of three edge vectors.
struct Parallelepiped {
    Vec3 origin;
    Vec3 e[3];
};

namespace detail {
inline void project(const Parallelepiped& p, Vec3 axis, i64& lo, i64& hi) {
    lo = hi = dot(p.origin, axis);
    for (const Vec3& e : p.e) {
        i64 d = dot(e, axis);
        (d < 0 ? lo : hi) += d;
    }
}
}  // namespace detail

inline bool interiors_disjoint(const Parallelepiped& a, const Parallelepiped& b) {
    std::vector<Vec3> axes;
    for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) {
            axes.push_back(cross(a.e[s], a.e[t]));
            axes.push_back(cross(b.e[s], b.e[t]));
        }
    for (const Vec3& u : a.e)
        for (const Vec3& v : b.e) axes.push_back(cross(u, v));
    for (const Vec3& ax : axes) {
        if (ax == Vec3{}) continue;
        i64 alo, ahi, blo, bhi;
        detail::project(a, ax, alo, ahi);
        detail::project(b, ax, blo, bhi);
        if (ahi <= blo || bhi <= alo) return true;
    }
    return false;
}

}  // namespace sepsys
