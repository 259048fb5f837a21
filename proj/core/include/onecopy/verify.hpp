#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "onecopy/blowup.hpp"
#include "onecopy/sidon.hpp"
#include "onecopy/suitable.hpp"

namespace onecopy {

/// Restriction of a blow-up graph to two or three named parts; adjacency is
/// the graph's adjacency intersected with the part ranges (for the 3-part
/// path view, only the h-i and i-j sides count as edges).
struct PairGraphView {
    const BlowupGraph* g = nullptr;
    std::array<int, 3> parts{0, 0, 0};  // 1-based labels, parts[2] == 0 for pair views
    int count = 0;

    static PairGraphView pair(const BlowupGraph& g, int i, int j);
    static PairGraphView path(const BlowupGraph& g, int h, int i, int j);

    bool contains(std::uint32_t v) const noexcept;
    bool view_adjacent(std::uint32_t u, std::uint32_t v) const noexcept;
};

struct C4Witness {
    // x1, y1, x2, y2 with x's in part i and y's common neighbors in part j
    std::array<std::uint32_t, 4> vertices{};
};

/// Lemma check: the bipartite graph between parts i and j has no C4, i.e.
/// every pair of distinct vertices of X_i has at most one common neighbor
/// in X_j. Requires ij to be a base edge.
std::optional<C4Witness> c4_free_pairgraph(const BlowupGraph& g, int part_i, int part_j,
                                           unsigned threads = 0);

struct K23Witness {
    std::array<std::uint32_t, 2> centers{};
    std::array<std::uint32_t, 3> leaves{};
};

/// Lemma check: the union of the h-i and i-j bipartite layers has no
/// K_{2,3}: every vertex pair of the view has at most two common neighbors.
/// Requires hi and ij to be base edges.
std::optional<K23Witness> k23_free_pathgraph(const BlowupGraph& g, int part_h, int part_i,
                                             int part_j, unsigned threads = 0);

struct C4CountHistogram {
    std::map<std::uint64_t, std::uint64_t> histogram;  // C4s through edge -> #edges
    /// One edge per distinct count, first in edge order.
    std::map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> examples;

    bool all_equal(std::uint64_t value) const noexcept {
        return histogram.size() == 1 && histogram.begin()->first == value;
    }
};

/// For every edge uv, the number of quadrilaterals through uv, from
/// codegree counts of neighbor pairs.
C4CountHistogram per_edge_c4_count(const Graph& g, unsigned threads = 0);

struct CopyCountReport {
    std::uint64_t anchored_tuples = 0;
    std::uint64_t copies = 0;  // anchored_tuples / 2
    std::optional<std::uint64_t> expected;
    std::uint64_t rich_pairs = 0;
    std::uint64_t max_codegree = 0;
    std::uint64_t codegree_bound = 0;
    bool codegree_bound_exceeded = false;
    bool overflow = false;

    bool counts_match() const noexcept { return expected && copies == *expected && !overflow; }
};

/// Structure-agnostic count of H_k subgraph copies via anchored tuples:
/// pairs {a,b} with codegree >= k, inner pairs {c,d} in their common
/// neighborhood, and disjoint (k-2)-subsets completing the two stars. Each
/// copy corresponds to exactly two tuples (the anchor-role swap), so
/// copies = tuples / 2.
CopyCountReport count_hk_copies(const Graph& g, int k,
                                std::optional<std::uint64_t> expected = std::nullopt,
                                unsigned threads = 0);

struct AbsorptionReport {
    std::uint64_t seed = 0;
    bool full = false;
    /// Quadrilaterals over four distinct parts whose chi sign product is -1,
    /// each required to lie inside a single copy.
    std::uint64_t chi_quads_checked = 0;
    std::uint64_t chi_violations = 0;
    /// Quadrilaterals closing a 3-vertex path that lies in a copy, each
    /// required to stay in that copy.
    std::uint64_t path_quads_checked = 0;
    std::uint64_t path_violations = 0;
    /// Quadrilaterals spanning fewer than four parts: reported, not judged.
    std::uint64_t nondistinct_part_quads = 0;
    std::optional<std::array<std::uint32_t, 4>> first_violation;

    bool pass() const noexcept { return chi_violations == 0 && path_violations == 0; }
};

/// Requires a field-pair group with the parabola set. Sampled mode draws
/// mode.samples seeded attempts per scan; full mode enumerates everything.
AbsorptionReport absorption_scan(const BlowupGraph& g, ScanMode mode, std::uint64_t seed = 0,
                                 unsigned threads = 0);

struct HkCopy {
    /// Images of the base vertices 1..2k in role order.
    std::vector<std::uint32_t> vertices;
};

/// Greedy embedding: a pair {x1,x2} with codegree > k+2 whose common
/// neighborhood holds a pair {y1,y2} with codegree > 2k yields a copy.
std::optional<HkCopy> embed_hk_greedy(const Graph& g, int k);

struct Hypergraph {
    int r = 2;
    std::uint32_t num_vertices = 0;
    std::vector<std::vector<std::uint32_t>> edges;

    Hypergraph(int r, std::uint32_t num_vertices,
               std::vector<std::vector<std::uint32_t>> edges);
};

struct BergeWitness {
    int length = 0;                        // 2, 3 or 4
    std::vector<std::uint32_t> edge_ids;   // length distinct hyperedges
    std::vector<std::uint32_t> vertices;   // v_t, v_{t+1} in e_t cyclically
};

/// Pass iff there is no Berge cycle of length 2, 3 or 4.
std::optional<BergeWitness> girth5_check(const Hypergraph& h);

struct DensityReport {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double ratio = 0.0;  // m / n^{3/2}
    std::optional<double> closed_form;
};

/// Closed-form m / n^{3/2} of the field-parabola pipeline:
/// (4k-4)(p-1) / ((2k)^{3/2} p).
double pipeline_density_closed_form(int k, std::int64_t p);

DensityReport density_report(const BlowupGraph& g);

}  // namespace onecopy
