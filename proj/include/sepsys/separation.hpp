#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "subset.hpp"

namespace sepsys {

enum class SeparationKind { Strong, Weak, Chord };

inline const char* kind_name(SeparationKind k) {
    switch (k) {
        case SeparationKind::Strong: return "strong";
        case SeparationKind::Weak: return "weak";
        case SeparationKind::Chord: return "chord";
    }
    return "?";
}

namespace detail {
inline void check_ground(Subset a, Subset b, GroundSize g) {
    if (!a.fits(g.value()) || !b.fits(g.value())) throw std::invalid_argument("subset outside ground set");
}
}  // namespace detail

inline bool rel_global_lt(Subset a, Subset b) { return a.max() < b.min(); }

inline bool rel_lessdot(Subset a, Subset b) { return rel_global_lt(a - b, b - a); }

// A splits B: B-A = B' u B'' with B' < A-B < B'', both parts nonempty.
inline bool rel_split(Subset a, Subset b) {
    Subset ab = a - b, ba = b - a;
    if (ab.empty()) return false;
    Subset below = ba & Subset::interval(1, ab.min() - 1);
    Subset above = ba & Subset::interval(ab.max() + 1, 64);
    return !below.empty() && !above.empty() && (below | above) == ba;
}

// No i<j<k with i,k in B-A and j in A-B.
inline bool surrounds(Subset a, Subset b) {
    Subset ba = b - a;
    if (ba.size() < 2) return true;
    return ((a - b) & Subset::interval(ba.min() + 1, ba.max() - 1)).empty();
}

inline bool separated(SeparationKind kind, Subset a, Subset b) {
    switch (kind) {
        case SeparationKind::Strong: return a == b || rel_lessdot(a, b) || rel_lessdot(b, a);
        case SeparationKind::Weak:
            return (a.size() <= b.size() && surrounds(a, b)) || (b.size() <= a.size() && surrounds(b, a));
        case SeparationKind::Chord: return surrounds(a, b) || surrounds(b, a);
    }
    return false;
}

inline bool rel_global_lt(Subset a, Subset b, GroundSize g) { return detail::check_ground(a, b, g), rel_global_lt(a, b); }
inline bool rel_lessdot(Subset a, Subset b, GroundSize g) { return detail::check_ground(a, b, g), rel_lessdot(a, b); }
inline bool rel_split(Subset a, Subset b, GroundSize g) { return detail::check_ground(a, b, g), rel_split(a, b); }
inline bool surrounds(Subset a, Subset b, GroundSize g) { return detail::check_ground(a, b, g), surrounds(a, b); }
inline bool separated(SeparationKind k, Subset a, Subset b, GroundSize g) {
    return detail::check_ground(a, b, g), separated(k, a, b);
}

// First non-separated pair, if any.
inline std::optional<std::pair<Subset, Subset>> find_violation(SeparationKind kind, const Collection& c) {
    const auto& m = c.members();
    for (std::size_t p = 0; p < m.size(); ++p)
        for (std::size_t q = p + 1; q < m.size(); ++q)
            if (!separated(kind, m[p], m[q])) return std::make_pair(m[p], m[q]);
    return std::nullopt;
}

inline bool is_separated_collection(SeparationKind kind, const Collection& c) { return !find_violation(kind, c); }

inline bool separated_from_all(SeparationKind kind, Subset x, const Collection& c) {
    for (Subset y : c)
        if (!separated(kind, x, y)) return false;
    return true;
}

inline bool is_maximal_in(SeparationKind kind, const Collection& c, const Collection& domain) {
    if (!(c.ground() == domain.ground())) throw std::invalid_argument("ground mismatch");
    if (!c.subset_of(domain)) throw std::invalid_argument("collection not contained in domain");
    for (Subset x : domain)
        if (!c.contains(x) && separated_from_all(kind, x, c)) return false;
    return true;
}

inline bool is_maximal_in(SeparationKind kind, const Collection& c) { return is_maximal_in(kind, c, power_set(c.n())); }

inline std::uint64_t rank_formula(SeparationKind kind, int n) {
    std::uint64_t r = binomial(n, 2) + static_cast<std::uint64_t>(n) + 1;
    return kind == SeparationKind::Chord ? r + binomial(n, 3) : r;
}

// Scans 2^[n] in ascending bit order (or a seeded shuffle) and adds every compatible candidate.
inline Collection greedy_complete(SeparationKind kind, const Collection& c, std::optional<std::uint64_t> seed = std::nullopt) {
    int n = c.n();
    if (n > 20) throw std::invalid_argument("greedy_complete: n too large for candidate scan");
    if (auto v = find_violation(kind, c))
        throw std::invalid_argument("input not " + std::string(kind_name(kind)) + " separated: " + v->first.str() + ", " +
                                    v->second.str());
    std::vector<Subset> cand;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) cand.push_back(Subset::from_bits(b));
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::shuffle(cand.begin(), cand.end(), rng);
    }
    Collection out = c;
    for (Subset x : cand)
        if (!out.contains(x) && separated_from_all(kind, x, out)) out.insert(x);
    return out;
}

// Bron-Kerbosch with pivoting on the compatibility graph of a domain of at most 64 sets.
inline std::vector<Collection> enumerate_maximal(SeparationKind kind, const Collection& domain) {
    const auto& d = domain.members();
    std::size_t m = d.size();
    if (m > 64) throw std::invalid_argument("enumerate_maximal: domain larger than 64 sets");
    std::vector<std::uint64_t> adj(m, 0);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            if (p != q && separated(kind, d[p], d[q])) adj[p] |= std::uint64_t{1} << q;
    std::vector<Collection> out;
    auto bk = [&](auto&& self, std::uint64_t r, std::uint64_t p, std::uint64_t x) -> void {
        if (!p && !x) {
            Collection c{domain.ground()};
            for (std::uint64_t b = r; b; b &= b - 1) c.insert(d[static_cast<std::size_t>(std::countr_zero(b))]);
            out.push_back(std::move(c));
            return;
        }
        std::uint64_t px = p | x;
        int pivot = std::countr_zero(px);
        std::size_t best = 0;
        for (std::uint64_t b = px; b; b &= b - 1) {
            int u = std::countr_zero(b);
            auto cnt = static_cast<std::size_t>(std::popcount(p & adj[static_cast<std::size_t>(u)]));
            if (cnt >= best) best = cnt, pivot = u;
        }
        for (std::uint64_t b = p & ~adj[static_cast<std::size_t>(pivot)]; b; b &= b - 1) {
            int v = std::countr_zero(b);
            std::uint64_t bit = std::uint64_t{1} << v;
            self(self, r | bit, p & adj[static_cast<std::size_t>(v)], x & adj[static_cast<std::size_t>(v)]);
            p &= ~bit;
            x |= bit;
        }
    };
    std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    bk(bk, 0, all, 0);
    return out;
}

struct PurityReport {
    SeparationKind kind;
    int n = 0;
    bool exhaustive = false;
    std::uint64_t expected_rank = 0;
    std::size_t collections = 0;
    std::size_t min_size = 0;
    std::size_t max_size = 0;
    bool pure() const { return collections > 0 && min_size == expected_rank && max_size == expected_rank; }
};

inline PurityReport summarize_purity(SeparationKind kind, int n, bool exhaustive, const std::vector<Collection>& cs) {
    PurityReport r{kind, n, exhaustive, rank_formula(kind, n), cs.size(), 0, 0};
    bool first = true;
    for (const auto& c : cs) {
        r.min_size = first ? c.size() : std::min(r.min_size, c.size());
        r.max_size = first ? c.size() : std::max(r.max_size, c.size());
        first = false;
    }
    return r;
}

inline PurityReport verify_purity_exhaustive(SeparationKind kind, int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("exhaustive purity check needs 1 <= n <= 4");
    return summarize_purity(kind, n, true, enumerate_maximal(kind, power_set(n)));
}

inline PurityReport verify_purity_sampled(SeparationKind kind, int n, int trials, std::uint64_t seed) {
    if (n < 1 || n > 7) throw std::invalid_argument("sampled purity check needs 1 <= n <= 7");
    std::vector<Collection> cs;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) cs.push_back(greedy_complete(kind, Collection{GroundSize(n)}, rng()));
    return summarize_purity(kind, n, false, cs);
}

}  // namespace sepsys
