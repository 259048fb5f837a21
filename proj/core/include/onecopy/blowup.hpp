#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "onecopy/algebra.hpp"
#include "onecopy/bitmatrix.hpp"
#include "onecopy/sidon.hpp"

namespace onecopy {

/// Small pattern graph on vertices 1..num_vertices, loop- and
/// multi-edge-free, stored pairs with i < j.
struct BaseGraph {
    enum class Kind { hk, c4, custom };

    Kind kind = Kind::custom;
    int hk_param = 0;  // k for H_k bases
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;

    bool adjacent(int i, int j) const;
    std::vector<int> neighbors(int v) const;
    /// 3-vertex paths (h, i, j) through center i, canonicalized with h < j.
    std::vector<std::array<int, 3>> paths() const;
    /// 4-cycles (a, b, c, d) with consecutive edges, canonicalized: a is the
    /// least vertex and b < d among its two cycle neighbors.
    std::vector<std::array<int, 4>> four_cycles() const;
};

/// H_k: vertices 1..2k, with 1 and 2 joined to 3..k+2, and 3 and 4 joined
/// to k+3..2k.
BaseGraph make_hk(int k);
/// The quadrilateral 1-2-3-4-1.
BaseGraph make_c4();
BaseGraph make_custom(int num_vertices, std::vector<std::pair<int, int>> edges);

/// Integer labels aligned with base vertices: value for vertex i is values[i-1].
struct LambdaSet {
    std::vector<std::int64_t> values;

    std::size_t size() const noexcept { return values.size(); }
    std::int64_t at(int label) const { return values[static_cast<std::size_t>(label - 1)]; }
};

/// Immutable graph container: bitset rows plus CSR neighbor lists and a
/// flat sorted edge list. Optionally carries a contiguous equal-size part
/// structure (vertex v lies in part v / part_size).
class Graph {
public:
    Graph() = default;
    Graph(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list,
          std::uint32_t num_parts = 0);

    std::uint32_t n() const noexcept { return n_; }
    std::uint64_t m() const noexcept { return edges_.size(); }
    std::uint32_t num_parts() const noexcept { return num_parts_; }
    std::uint32_t part_size() const noexcept { return part_size_; }
    std::uint32_t part_of(std::uint32_t v) const noexcept { return v / part_size_; }
    std::uint32_t part_begin(std::uint32_t part) const noexcept { return part * part_size_; }
    std::uint32_t part_end(std::uint32_t part) const noexcept { return (part + 1) * part_size_; }

    std::uint32_t degree(std::uint32_t v) const noexcept {
        return offsets_[v + 1] - offsets_[v];
    }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const noexcept {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    /// Neighbors of v inside [lo, hi), as a subrange of the sorted list.
    std::span<const std::uint32_t> neighbors_in(std::uint32_t v, std::uint32_t lo,
                                                std::uint32_t hi) const noexcept;

    bool adjacent(std::uint32_t u, std::uint32_t v) const noexcept { return bits_.test(u, v); }
    const std::uint64_t* row(std::uint32_t v) const noexcept { return bits_.row(v); }
    std::size_t words() const noexcept { return bits_.words_per_row(); }

    std::uint64_t codegree(std::uint32_t u, std::uint32_t v) const noexcept {
        return BitMatrix::and_popcount(row(u), row(v), words());
    }
    std::uint64_t codegree_in(std::uint32_t u, std::uint32_t v, std::uint32_t lo,
                              std::uint32_t hi) const noexcept {
        return BitMatrix::and_popcount_range(row(u), row(v), lo, hi);
    }

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const noexcept {
        return edges_;
    }
    /// Index of edge {u, v} in the sorted edge list, if present.
    std::optional<std::uint64_t> edge_id(std::uint32_t u, std::uint32_t v) const noexcept;

private:
    std::uint32_t n_ = 0;
    std::uint32_t num_parts_ = 0;
    std::uint32_t part_size_ = 1;
    BitMatrix bits_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> adj_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

/// The canonical copy H(v, a) on vertices v + lambda_i * a.
struct CopyHandle {
    GroupElement v;
    GroupElement a;
};

/// The k-partite graph with parts Gamma x {i}: x in part i is adjacent to
/// x + (lambda_j - lambda_i) * a in part j for every a in S and base edge ij.
/// Vertex id = (part - 1) * |Gamma| + element index.
struct BlowupGraph {
    GroupSpec group;
    BaseGraph base;
    LambdaSet lambda;
    SidonSet sidon;
    Graph graph;

    std::uint32_t vertex(int part_label, GroupElement e) const noexcept {
        return static_cast<std::uint32_t>((part_label - 1) * group.order() + e.index);
    }
    GroupElement element_of(std::uint32_t v) const noexcept {
        return GroupElement{v % group.order()};
    }
    int part_label_of(std::uint32_t v) const noexcept {
        return static_cast<int>(v / group.order()) + 1;
    }
};

/// Deterministic construction; throws on non-invertible lambda differences,
/// duplicate lambda values, or group mismatches.
BlowupGraph blowup(const GroupSpec& group, const LambdaSet& lambda, const SidonSet& sidon,
                   const BaseGraph& base);

/// Wrap an explicit edge list (for example a re-imported export) in the
/// given blow-up context without rebuilding edges from the rule.
BlowupGraph assemble_blowup(const GroupSpec& group, const BaseGraph& base,
                            const LambdaSet& lambda, const SidonSet& sidon,
                            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

/// The vertices of H(v, a), one per part, in part order.
std::vector<std::uint32_t> copy_vertices(const CopyHandle& handle, const BlowupGraph& g);

struct DecompositionReport {
    struct Violation {
        enum class Kind { uncovered_edge, overcovered_edge, missing_copy_edge };
        Kind kind;
        std::uint32_t u = 0, v = 0;
        std::uint64_t cover = 0;
    };

    std::uint64_t copies = 0;
    std::map<std::uint64_t, std::uint64_t> cover_histogram;  // cover count -> #edges
    std::uint64_t total_violations = 0;
    std::vector<Violation> violations;  // first few, deterministic order

    bool pass() const noexcept { return total_violations == 0; }
};

/// Walks all |Gamma| * |S| copy handles in (v, a) lexicographic order and
/// checks that the copies tile the edge set: every edge covered exactly once.
DecompositionReport enumerate_decomposition(const BlowupGraph& g);

}  // namespace onecopy
