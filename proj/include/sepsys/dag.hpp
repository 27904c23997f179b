#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sepsys {

// Node set over a fixed node numbering.
using NodeSet = std::vector<bool>;

// Immediate-precedence graph on nodes 0..size-1.
struct Dag {
    std::vector<std::vector<int>> succ, pred;

    explicit Dag(std::size_t n = 0) : succ(n), pred(n) {}
    std::size_t size() const { return succ.size(); }
    void add_edge(int a, int b) {
        for (int s : succ[static_cast<std::size_t>(a)])
            if (s == b) return;
        succ[static_cast<std::size_t>(a)].push_back(b);
        pred[static_cast<std::size_t>(b)].push_back(a);
    }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& s : succ) e += s.size();
        return e;
    }

    // Kahn order; shorter than size() when there is a cycle.
    std::vector<int> topological_order() const {
        std::vector<int> indeg(size(), 0), order, queue;
        for (std::size_t v = 0; v < size(); ++v) indeg[v] = static_cast<int>(pred[v].size());
        for (std::size_t v = 0; v < size(); ++v)
            if (!indeg[v]) queue.push_back(static_cast<int>(v));
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            order.push_back(v);
            for (int w : succ[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
        }
        return order;
    }
    bool is_acyclic() const { return topological_order().size() == size(); }

    bool is_ideal(const NodeSet& s) const {
        for (std::size_t v = 0; v < size(); ++v)
            if (s[v])
                for (int p : pred[v])
                    if (!s[static_cast<std::size_t>(p)]) return false;
        return true;
    }

    // All down-closed node sets, each once.
    std::vector<NodeSet> enumerate_ideals(std::size_t limit = 1u << 22) const {
        auto order = topological_order();
        if (order.size() != size()) throw std::logic_error("enumerate_ideals: graph has a cycle");
        std::vector<NodeSet> out;
        NodeSet cur(size(), false);
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (out.size() > limit) throw std::length_error("enumerate_ideals: too many ideals");
            if (pos == order.size()) {
                out.push_back(cur);
                return;
            }
            auto v = static_cast<std::size_t>(order[pos]);
            self(self, pos + 1);
            bool ok = true;
            for (int p : pred[v]) ok = ok && cur[static_cast<std::size_t>(p)];
            if (ok) {
                cur[v] = true;
                self(self, pos + 1);
                cur[v] = false;
            }
        };
        rec(rec, 0);
        return out;
    }
};

inline NodeSet node_intersection(const NodeSet& a, const NodeSet& b) {
    NodeSet r(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) r[v] = a[v] && b[v];
    return r;
}

inline NodeSet node_union(const NodeSet& a, const NodeSet& b) {
    NodeSet r(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) r[v] = a[v] || b[v];
    return r;
}

}  // namespace sepsys
