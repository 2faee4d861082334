#pragma once

#include <bcube/error.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace bcube {

/// Undirected simple graph on nodes 0..n-1 with adjacency lists plus a
/// dense adjacency matrix for O(1) edge tests.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(std::size_t n) : adj_(n), matrix_(n * n, false) {}

    std::size_t size() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }

    void add_edge(std::uint32_t u, std::uint32_t v) {
        if (u == v) throw DomainError("self-loops are not allowed in a simple graph");
        if (u >= size() || v >= size()) throw DomainError("edge endpoint out of range");
        if (matrix_[u * size() + v]) return;
        matrix_[u * size() + v] = true;
        matrix_[v * size() + u] = true;
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        ++edges_;
    }

    bool has_edge(std::uint32_t u, std::uint32_t v) const { return matrix_[u * size() + v]; }
    std::span<const std::uint32_t> neighbors(std::uint32_t u) const { return adj_[u]; }
    std::size_t degree(std::uint32_t u) const { return adj_[u].size(); }

    std::size_t max_degree() const {
        std::size_t m = 0;
        for (const auto& a : adj_) m = std::max(m, a.size());
        return m;
    }

    bool is_regular() const {
        for (const auto& a : adj_) {
            if (a.size() != adj_.front().size()) return false;
        }
        return true;
    }

    bool is_complete() const { return edges_ == size() * (size() - (size() > 0 ? 1 : 0)) / 2; }

private:
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<bool> matrix_;
    std::size_t edges_ = 0;
};

struct Coloring {
    std::vector<std::uint32_t> color;  // per node
    std::uint32_t count = 0;

    bool is_proper(const SimpleGraph& g) const {
        if (color.size() != g.size()) return false;
        for (std::uint32_t u = 0; u < g.size(); ++u) {
            if (color[u] >= count) return false;
            for (std::uint32_t v : g.neighbors(u)) {
                if (color[u] == color[v]) return false;
            }
        }
        return true;
    }
};

// Nodes by descending degree, ties by ascending key.
inline std::vector<std::uint32_t> degree_descending_order(const SimpleGraph& g, std::span<const std::uint64_t> keys) {
    if (keys.size() != g.size()) throw DomainError("degree_descending_order: one key per node required");
    std::vector<std::uint32_t> order(g.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return keys[a] < keys[b];
    });
    return order;
}

// First-fit coloring in the given order. Uses at most max_degree + 1 colors.
inline Coloring color_greedy(const SimpleGraph& g, std::span<const std::uint32_t> order) {
    if (order.size() != g.size()) throw DomainError("color_greedy: order must list every node once");
    constexpr std::uint32_t none = static_cast<std::uint32_t>(-1);
    Coloring c{std::vector<std::uint32_t>(g.size(), none), 0};
    std::vector<char> seen(g.size(), 0);
    std::vector<char> taken(g.max_degree() + 2, 0);
    for (std::uint32_t u : order) {
        if (u >= g.size() || seen[u]) throw DomainError("color_greedy: order must list every node once");
        seen[u] = 1;
        for (std::uint32_t v : g.neighbors(u)) {
            if (c.color[v] != none) taken[c.color[v]] = 1;
        }
        std::uint32_t pick = 0;
        while (taken[pick]) ++pick;
        c.color[u] = pick;
        c.count = std::max(c.count, pick + 1);
        for (std::uint32_t v : g.neighbors(u)) {
            if (c.color[v] != none) taken[c.color[v]] = 0;
        }
    }
    return c;
}

// DSatur: repeatedly color the node with the most distinctly-colored neighbours.
inline Coloring color_dsatur(const SimpleGraph& g) {
    constexpr std::uint32_t none = static_cast<std::uint32_t>(-1);
    const std::size_t n = g.size();
    Coloring c{std::vector<std::uint32_t>(n, none), 0};
    std::vector<std::vector<char>> neighbour_colors(n, std::vector<char>(g.max_degree() + 2, 0));
    std::vector<std::size_t> saturation(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        std::uint32_t best = none;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (c.color[u] != none) continue;
            if (best == none || saturation[u] > saturation[best] ||
                (saturation[u] == saturation[best] && g.degree(u) > g.degree(best))) {
                best = u;
            }
        }
        std::uint32_t pick = 0;
        while (neighbour_colors[best][pick]) ++pick;
        c.color[best] = pick;
        c.count = std::max(c.count, pick + 1);
        for (std::uint32_t v : g.neighbors(best)) {
            if (!neighbour_colors[v][pick]) {
                neighbour_colors[v][pick] = 1;
                ++saturation[v];
            }
        }
    }
    return c;
}

namespace detail {

// Greedy clique, seeded from every node; a lower bound on the chromatic number.
inline std::vector<std::uint32_t> large_clique(const SimpleGraph& g) {
    std::vector<std::uint32_t> best;
    for (std::uint32_t seed = 0; seed < g.size(); ++seed) {
        std::vector<std::uint32_t> clique{seed};
        std::vector<std::uint32_t> candidates(g.neighbors(seed).begin(), g.neighbors(seed).end());
        std::sort(candidates.begin(), candidates.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return g.degree(a) > g.degree(b); });
        for (std::uint32_t v : candidates) {
            bool ok = true;
            for (std::uint32_t u : clique) {
                if (!g.has_edge(u, v)) {
                    ok = false;
                    break;
                }
            }
            if (ok) clique.push_back(v);
        }
        if (clique.size() > best.size()) best = std::move(clique);
    }
    return best;
}

struct ExactColorSearch {
    const SimpleGraph& g;
    std::vector<std::uint32_t> color;
    std::vector<std::uint32_t> best_color;
    std::uint32_t best = 0;
    std::uint32_t lower = 0;
    static constexpr std::uint32_t none = static_cast<std::uint32_t>(-1);

    // DSatur-ordered branch and bound.
    void search(std::size_t colored, std::uint32_t used) {
        if (used >= best) return;
        if (colored == g.size()) {
            best = used;
            best_color = color;
            return;
        }
        std::uint32_t pick = none;
        std::size_t pick_sat = 0;
        for (std::uint32_t u = 0; u < g.size(); ++u) {
            if (color[u] != none) continue;
            std::vector<char> seen(used + 1, 0);
            std::size_t sat = 0;
            for (std::uint32_t v : g.neighbors(u)) {
                if (color[v] != none && !seen[color[v]]) {
                    seen[color[v]] = 1;
                    ++sat;
                }
            }
            if (pick == none || sat > pick_sat || (sat == pick_sat && g.degree(u) > g.degree(pick))) {
                pick = u;
                pick_sat = sat;
            }
        }
        for (std::uint32_t c = 0; c <= used; ++c) {
            const std::uint32_t next_used = std::max(used, c + 1);
            if (next_used >= best) break;
            bool ok = true;
            for (std::uint32_t v : g.neighbors(pick)) {
                if (color[v] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[pick] = c;
            search(colored + 1, next_used);
            color[pick] = none;
            if (best <= lower) return;
        }
    }
};

} // namespace detail

/// Minimum coloring by exhaustive branch and bound, for small graphs only.
inline Coloring color_exact(const SimpleGraph& g, std::size_t node_limit = 24) {
    if (g.size() > node_limit) {
        throw CapacityError("exact coloring limited to " + std::to_string(node_limit) + " nodes, graph has " +
                            std::to_string(g.size()));
    }
    if (g.size() == 0) return {};
    Coloring upper = color_dsatur(g);
    detail::ExactColorSearch s{g, std::vector<std::uint32_t>(g.size(), detail::ExactColorSearch::none),
                               upper.color, upper.count, 0};
    const auto clique = detail::large_clique(g);
    s.lower = static_cast<std::uint32_t>(clique.size());
    if (s.best > s.lower) {
        // Pre-color the clique; colors are interchangeable so this loses nothing.
        for (std::uint32_t i = 0; i < clique.size(); ++i) s.color[clique[i]] = i;
        s.search(clique.size(), static_cast<std::uint32_t>(clique.size()));
    }
    return Coloring{s.best_color, s.best};
}

inline std::uint32_t chromatic_number(const SimpleGraph& g, std::size_t node_limit = 24) {
    return color_exact(g, node_limit).count;
}

} // namespace bcube
