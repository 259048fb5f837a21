#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// The oracles work on plain adjacency matrices and never touch the bitset
// or anchored-counting code paths they are checking.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "onecopy/blowup.hpp"
#include "onecopy/suitable.hpp"
#include "onecopy/verify.hpp"

namespace testutil {

struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Plain adjacency-matrix graph for oracle computations.
struct MatGraph {
    int n = 0;
    std::vector<std::vector<bool>> adj;

    explicit MatGraph(int vertices)
        : n(vertices), adj(static_cast<std::size_t>(vertices),
                           std::vector<bool>(static_cast<std::size_t>(vertices), false)) {}

    void add_edge(int u, int v) {
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
        adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }
};

inline MatGraph random_graph(int n, double density, std::uint64_t seed) {
    MatGraph g(n);
    SplitMix rng{seed};
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.unit() < density) g.add_edge(u, v);
        }
    }
    return g;
}

/// Labeled embeddings of the base pattern into g (edges must map to edges;
/// non-edges are unconstrained), by straight backtracking.
inline std::uint64_t labeled_embeddings(const onecopy::BaseGraph& base, const MatGraph& g) {
    const int nb = base.num_vertices;
    std::vector<std::vector<int>> req(static_cast<std::size_t>(nb) + 1);
    for (auto [i, j] : base.edges) req[static_cast<std::size_t>(std::max(i, j))].push_back(std::min(i, j));
    std::vector<int> image(static_cast<std::size_t>(nb) + 1, -1);
    std::vector<bool> used(static_cast<std::size_t>(g.n), false);
    std::uint64_t count = 0;

    auto rec = [&](auto&& self, int v) -> void {
        if (v > nb) {
            ++count;
            return;
        }
        for (int cand = 0; cand < g.n; ++cand) {
            if (used[static_cast<std::size_t>(cand)]) continue;
            bool ok = true;
            for (int prev : req[static_cast<std::size_t>(v)]) {
                if (!g.adj[static_cast<std::size_t>(image[static_cast<std::size_t>(prev)])]
                          [static_cast<std::size_t>(cand)]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[static_cast<std::size_t>(v)] = cand;
            used[static_cast<std::size_t>(cand)] = true;
            self(self, v + 1);
            used[static_cast<std::size_t>(cand)] = false;
        }
    };
    rec(rec, 1);
    return count;
}

/// |Aut(base)| as labeled self-embeddings (the base has as many edges as
/// any edge-preserving injection can hit, so these are automorphisms).
inline std::uint64_t automorphism_count(const onecopy::BaseGraph& base) {
    MatGraph self(base.num_vertices);
    for (auto [i, j] : base.edges) self.add_edge(i - 1, j - 1);
    return labeled_embeddings(base, self);
}

/// Brute-force count of pattern copies as subgraphs.
inline std::uint64_t copy_count_oracle(const onecopy::BaseGraph& base, const MatGraph& g) {
    return labeled_embeddings(base, g) / automorphism_count(base);
}

/// Any C4 (as 4 distinct vertices with the cycle edges) in the graph.
inline bool has_c4_oracle(const MatGraph& g) {
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) {
            if (b == a || !g.adj[a][b]) continue;
            for (int c = 0; c < g.n; ++c) {
                if (c == a || c == b || !g.adj[b][c]) continue;
                for (int d = 0; d < g.n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (g.adj[c][d] && g.adj[d][a]) return true;
                }
            }
        }
    }
    return false;
}

/// Number of C4 copies through the edge (u, v).
inline std::uint64_t c4_through_edge_oracle(const MatGraph& g, int u, int v) {
    std::uint64_t count = 0;
    for (int x = 0; x < g.n; ++x) {
        if (x == u || x == v || !g.adj[v][x]) continue;
        for (int y = 0; y < g.n; ++y) {
            if (y == u || y == v || y == x) continue;
            if (g.adj[x][y] && g.adj[y][u]) ++count;
        }
    }
    return count;
}

/// Selection oracle for berge girth five: pick one vertex pair from every
/// hyperedge in all ways; girth five means no selection ever produces a
/// multigraph cycle of length at most four (double edges included).
inline bool girth5_selection_oracle(const onecopy::Hypergraph& h) {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> choices;
    for (const auto& e : h.edges) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = i + 1; j < e.size(); ++j) pairs.emplace_back(e[i], e[j]);
        }
        choices.push_back(std::move(pairs));
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> picked(choices.size());

    auto selection_bad = [&]() {
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (auto [u, v] : picked) {
            if (!seen.insert({std::min(u, v), std::max(u, v)}).second) return true;
        }
        const int n = static_cast<int>(h.num_vertices);
        std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                           std::vector<bool>(static_cast<std::size_t>(n), false));
        for (auto [u, v] : picked) adj[u][v] = adj[v][u] = true;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (!adj[a][b]) continue;
                for (int c = b + 1; c < n; ++c) {
                    if (adj[a][c] && adj[b][c]) return true;
                }
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (b == a || !adj[a][b]) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == a || c == b || !adj[b][c]) continue;
                    for (int d = 0; d < n; ++d) {
                        if (d == a || d == b || d == c) continue;
                        if (adj[c][d] && adj[d][a]) return true;
                    }
                }
            }
        }
        return false;
    };

    auto rec = [&](auto&& self, std::size_t edge) -> bool {
        if (edge == choices.size()) return selection_bad();
        for (const auto& pair : choices[edge]) {
            picked[edge] = pair;
            if (self(self, edge + 1)) return true;
        }
        return false;
    };
    return !rec(rec, 0);
}

/// The shared k = 5, p = 29 pipeline graph (built once).
const onecopy::BlowupGraph& pipeline_29();

/// The quadrilateral pipeline over Z_59 with the 3-fold sidon set {0,1,7,17}.
const onecopy::BlowupGraph& quad_pipeline_59();

}  // namespace testutil
