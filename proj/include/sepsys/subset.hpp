#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace sepsys {

class GroundSize {
public:
    explicit GroundSize(int n) : n_(n) {
        if (n < 1 || n > 64) throw std::invalid_argument("ground size must be in 1..64, got " + std::to_string(n));
    }
    int value() const { return n_; }
    friend bool operator==(GroundSize, GroundSize) = default;

private:
    int n_;
};

// Element i of [n] lives in bit i-1.
class Subset {
public:
    constexpr Subset() = default;
    static constexpr Subset from_bits(std::uint64_t b) {
        Subset s;
        s.bits_ = b;
        return s;
    }
    static Subset of(std::initializer_list<int> elems) {
        Subset s;
        for (int e : elems) s = s.with(e);
        return s;
    }
    static Subset of(const std::vector<int>& elems) {
        Subset s;
        for (int e : elems) s = s.with(e);
        return s;
    }
    // [1..n]
    static constexpr Subset full(int n) { return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1); }
    // {lo, ..., hi}; empty when lo > hi
    static constexpr Subset interval(int lo, int hi) {
        if (lo > hi) return {};
        return from_bits(full(hi).bits_ & ~full(lo - 1).bits_);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int i) const { return i >= 1 && i <= 64 && ((bits_ >> (i - 1)) & 1U); }
    constexpr Subset with(int i) const {
        check_elem(i);
        return from_bits(bits_ | (std::uint64_t{1} << (i - 1)));
    }
    constexpr Subset without(int i) const {
        check_elem(i);
        return from_bits(bits_ & ~(std::uint64_t{1} << (i - 1)));
    }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr int min() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }
    constexpr int max() const { return bits_ ? 64 - std::countl_zero(bits_) : 0; }
    constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool fits(int n) const { return subset_of(full(n)); }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    constexpr Subset operator|(Subset o) const { return from_bits(bits_ | o.bits_); }
    constexpr Subset operator&(Subset o) const { return from_bits(bits_ & o.bits_); }
    constexpr Subset operator-(Subset o) const { return from_bits(bits_ & ~o.bits_); }
    constexpr Subset complement(int n) const { return full(n) - *this; }

    friend constexpr bool operator==(Subset, Subset) = default;
    friend constexpr auto operator<=>(Subset a, Subset b) { return a.bits_ <=> b.bits_; }

    // Concatenated digits for n < 10 ("134"), braces otherwise; "0" for the empty set.
    std::string str() const {
        if (empty()) return "0";
        auto el = elements();
        std::string s;
        if (max() < 10) {
            for (int e : el) s += static_cast<char>('0' + e);
            return s;
        }
        s = "{";
        for (std::size_t k = 0; k < el.size(); ++k) s += (k ? "," : "") + std::to_string(el[k]);
        return s + "}";
    }

private:
    static constexpr void check_elem(int i) {
        if (i < 1 || i > 64) throw std::out_of_range("element out of range: " + std::to_string(i));
    }
    std::uint64_t bits_ = 0;
};

struct SubsetHash {
    std::size_t operator()(Subset s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

// Parses "134" style literals used in tests and docs (single-digit elements only, "0" = empty).
inline Subset S(const char* lit) {
    Subset s;
    for (const char* p = lit; *p; ++p) {
        if (*p == '0') continue;
        if (*p < '1' || *p > '9') throw std::invalid_argument(std::string("bad subset literal: ") + lit);
        s = s.with(*p - '0');
    }
    return s;
}

class Collection {
public:
    explicit Collection(GroundSize g) : ground_(g) {}
    Collection(GroundSize g, const std::vector<Subset>& members) : ground_(g) {
        for (Subset s : members) insert(s);
    }
    Collection(GroundSize g, std::initializer_list<Subset> members) : ground_(g) {
        for (Subset s : members) insert(s);
    }

    GroundSize ground() const { return ground_; }
    int n() const { return ground_.value(); }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(Subset s) const { return index_.count(s) != 0; }

    // Returns false when already present.
    bool insert(Subset s) {
        if (!s.fits(n())) throw std::invalid_argument("subset " + s.str() + " exceeds ground [" + std::to_string(n()) + "]");
        if (!index_.insert(s).second) return false;
        members_.insert(std::upper_bound(members_.begin(), members_.end(), s), s);
        return true;
    }
    bool erase(Subset s) {
        if (!index_.erase(s)) return false;
        members_.erase(std::lower_bound(members_.begin(), members_.end(), s));
        return true;
    }

    const std::vector<Subset>& members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool subset_of(const Collection& o) const {
        return std::all_of(begin(), end(), [&](Subset s) { return o.contains(s); });
    }

    friend bool operator==(const Collection& a, const Collection& b) {
        return a.ground_ == b.ground_ && a.members_ == b.members_;
    }
    friend bool operator<(const Collection& a, const Collection& b) {
        return a.n() != b.n() ? a.n() < b.n() : a.members_ < b.members_;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t k = 0; k < members_.size(); ++k) s += (k ? "," : "") + members_[k].str();
        return s + "}";
    }

private:
    GroundSize ground_;
    std::vector<Subset> members_;
    std::unordered_set<Subset, SubsetHash> index_;
};

inline Collection power_set(int n) {
    if (n > 24) throw std::invalid_argument("power set too large");
    Collection c{GroundSize(n)};
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) c.insert(Subset::from_bits(b));
    return c;
}

// Intervals [i..j] of [n] plus the empty set.
inline Collection intervals(int n) {
    Collection c{GroundSize(n)};
    c.insert({});
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) c.insert(Subset::interval(i, j));
    return c;
}

inline Collection co_intervals(int n) {
    Collection c{GroundSize(n)};
    for (Subset s : intervals(n)) c.insert(s.complement(n));
    return c;
}

// Boundary vertices of the zonogon: initial and final intervals.
inline Collection rim(int n) {
    Collection c{GroundSize(n)};
    for (int i = 0; i <= n; ++i) {
        c.insert(Subset::interval(1, i));
        c.insert(Subset::interval(i + 1, n));
    }
    return c;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

// Undirected edge between two vertex subsets, endpoints ordered by bit value.
struct Edge {
    Subset u, v;
    static Edge of(Subset a, Subset b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    friend constexpr bool operator==(Edge, Edge) = default;
    friend constexpr auto operator<=>(Edge, Edge) = default;
};

// Color triple i<j<k.
struct Triple {
    int i = 0, j = 0, k = 0;
    friend constexpr bool operator==(Triple, Triple) = default;
    friend constexpr auto operator<=>(Triple, Triple) = default;
    std::string str() const {
        if (k < 10) return std::string{static_cast<char>('0' + i), static_cast<char>('0' + j), static_cast<char>('0' + k)};
        return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
    }
};

}  // namespace sepsys
