#include "onecopy/blowup.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace onecopy {

bool BaseGraph::adjacent(int i, int j) const {
    if (i == j) return false;
    auto e = std::minmax(i, j);
    return std::find(edges.begin(), edges.end(), std::make_pair(e.first, e.second)) !=
           edges.end();
}

std::vector<int> BaseGraph::neighbors(int v) const {
    std::vector<int> out;
    for (auto [i, j] : edges) {
        if (i == v) out.push_back(j);
        if (j == v) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::array<int, 3>> BaseGraph::paths() const {
    std::vector<std::array<int, 3>> out;
    for (int center = 1; center <= num_vertices; ++center) {
        auto nbrs = neighbors(center);
        for (std::size_t x = 0; x < nbrs.size(); ++x) {
            for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
                out.push_back({nbrs[x], center, nbrs[y]});
            }
        }
    }
    return out;
}

std::vector<std::array<int, 4>> BaseGraph::four_cycles() const {
    std::vector<std::array<int, 4>> out;
    for (int a = 1; a <= num_vertices; ++a) {
        auto nbrs = neighbors(a);
        for (std::size_t x = 0; x < nbrs.size(); ++x) {
            for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
                int b = nbrs[x], d = nbrs[y];
                if (b < a || d < a) continue;
                for (int c = 1; c <= num_vertices; ++c) {
                    if (c == a || c < a) continue;
                    if (adjacent(b, c) && adjacent(c, d)) out.push_back({a, b, c, d});
                }
            }
        }
    }
    return out;
}

namespace {

BaseGraph validate_base(BaseGraph g) {
    if (g.num_vertices < 1) throw std::invalid_argument("BaseGraph: empty vertex set");
    for (auto& [i, j] : g.edges) {
        if (i >= j || i < 1 || j > g.num_vertices) {
            throw std::invalid_argument("BaseGraph: bad edge (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
        throw std::invalid_argument("BaseGraph: duplicate edge");
    }
    return g;
}

}  // namespace

BaseGraph make_hk(int k) {
    if (k < 3) throw std::invalid_argument("make_hk: k must be >= 3");
    BaseGraph g;
    g.kind = BaseGraph::Kind::hk;
    g.hk_param = k;
    g.num_vertices = 2 * k;
    for (int i = 3; i <= k + 2; ++i) {
        g.edges.emplace_back(1, i);
        g.edges.emplace_back(2, i);
    }
    for (int j = k + 3; j <= 2 * k; ++j) {
        g.edges.emplace_back(3, j);
        g.edges.emplace_back(4, j);
    }
    return validate_base(std::move(g));
}

BaseGraph make_c4() {
    BaseGraph g;
    g.kind = BaseGraph::Kind::c4;
    g.num_vertices = 4;
    g.edges = {{1, 2}, {2, 3}, {3, 4}, {1, 4}};
    return validate_base(std::move(g));
}

BaseGraph make_custom(int num_vertices, std::vector<std::pair<int, int>> edges) {
    BaseGraph g;
    g.kind = BaseGraph::Kind::custom;
    g.num_vertices = num_vertices;
    g.edges = std::move(edges);
    return validate_base(std::move(g));
}

Graph::Graph(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list,
             std::uint32_t num_parts)
    : n_(n), num_parts_(num_parts), edges_(std::move(edge_list)) {
    if (num_parts_ > 0) {
        if (n_ % num_parts_ != 0) {
            throw std::invalid_argument("Graph: vertex count not divisible by part count");
        }
        part_size_ = n_ / num_parts_;
    } else {
        part_size_ = n_ > 0 ? n_ : 1;
    }
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("Graph: self-loop at " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (v >= n_) throw std::invalid_argument("Graph: vertex " + std::to_string(v) +
                                                 " out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw std::invalid_argument("Graph: duplicate edge");
    }

    bits_ = BitMatrix(n_);
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (auto [u, v] : edges_) {
        bits_.set(u, v);
        bits_.set(v, u);
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adj_.resize(2 * edges_.size());
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges_) {
        adj_[cursor[u]++] = v;
        adj_[cursor[v]++] = u;
    }
    for (std::uint32_t v = 0; v < n_; ++v) {
        std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);
    }
}

std::span<const std::uint32_t> Graph::neighbors_in(std::uint32_t v, std::uint32_t lo,
                                                   std::uint32_t hi) const noexcept {
    auto nbrs = neighbors(v);
    auto first = std::lower_bound(nbrs.begin(), nbrs.end(), lo);
    auto last = std::lower_bound(first, nbrs.end(), hi);
    return {first, last};
}

std::optional<std::uint64_t> Graph::edge_id(std::uint32_t u, std::uint32_t v) const noexcept {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it == edges_.end() || *it != std::make_pair(u, v)) return std::nullopt;
    return static_cast<std::uint64_t>(it - edges_.begin());
}

namespace {

std::int64_t reduced_lambda(std::int64_t value, const GroupSpec& group) {
    std::int64_t e = group.exponent();
    std::int64_t r = value % e;
    return r < 0 ? r + e : r;
}

void validate_blowup_inputs(const GroupSpec& group, const LambdaSet& lambda,
                            const SidonSet& sidon, const BaseGraph& base) {
    if (lambda.size() != static_cast<std::size_t>(base.num_vertices)) {
        throw std::invalid_argument("blowup: lambda size " + std::to_string(lambda.size()) +
                                    " != base vertex count " +
                                    std::to_string(base.num_vertices));
    }
    if (!(sidon.group == group)) {
        throw std::invalid_argument("blowup: sidon set lives in a different group");
    }
    for (int i = 1; i <= base.num_vertices; ++i) {
        for (int j = i + 1; j <= base.num_vertices; ++j) {
            std::int64_t diff = lambda.at(j) - lambda.at(i);
            if (reduced_lambda(diff, group) == 0) {
                throw std::invalid_argument("blowup: lambda values for vertices " +
                                            std::to_string(i) + " and " + std::to_string(j) +
                                            " coincide in the scalar ring");
            }
            if (!scalar_invertible(diff, group)) {
                throw std::invalid_argument(
                    "blowup: lambda difference for vertices (" + std::to_string(i) + "," +
                    std::to_string(j) + ") = " + std::to_string(diff) +
                    " does not act invertibly on the group");
            }
        }
    }
    std::uint64_t n = group.order() * static_cast<std::uint64_t>(base.num_vertices);
    if (n > 0xffffffffULL) {
        throw std::invalid_argument("blowup: graph too large (" + std::to_string(n) +
                                    " vertices)");
    }
}

}  // namespace

BlowupGraph blowup(const GroupSpec& group, const LambdaSet& lambda, const SidonSet& sidon,
                   const BaseGraph& base) {
    validate_blowup_inputs(group, lambda, sidon, base);
    const std::uint64_t order = group.order();
    const auto n = static_cast<std::uint32_t>(order * base.num_vertices);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(base.edges.size() * order * sidon.size());
    for (auto [i, j] : base.edges) {
        const std::int64_t diff = lambda.at(j) - lambda.at(i);
        const std::uint64_t base_i = static_cast<std::uint64_t>(i - 1) * order;
        const std::uint64_t base_j = static_cast<std::uint64_t>(j - 1) * order;
        for (GroupElement a : sidon.elements) {
            const GroupElement step = scalar_act(diff, a, group);
            for (std::uint64_t x = 0; x < order; ++x) {
                const std::uint64_t y = group_add(GroupElement{x}, step, group).index;
                edges.emplace_back(static_cast<std::uint32_t>(base_i + x),
                                   static_cast<std::uint32_t>(base_j + y));
            }
        }
    }
    Graph graph(n, std::move(edges), static_cast<std::uint32_t>(base.num_vertices));
    if (graph.m() != base.edges.size() * order * sidon.size()) {
        throw std::runtime_error("blowup: edge count mismatch after build");
    }
    return BlowupGraph{group, base, lambda, sidon, std::move(graph)};
}

BlowupGraph assemble_blowup(const GroupSpec& group, const BaseGraph& base,
                            const LambdaSet& lambda, const SidonSet& sidon,
                            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    if (lambda.size() != static_cast<std::size_t>(base.num_vertices)) {
        throw std::invalid_argument("assemble_blowup: lambda size mismatch");
    }
    if (!(sidon.group == group)) {
        throw std::invalid_argument("assemble_blowup: sidon set lives in a different group");
    }
    const auto n = static_cast<std::uint32_t>(group.order() * base.num_vertices);
    Graph graph(n, std::move(edges), static_cast<std::uint32_t>(base.num_vertices));
    return BlowupGraph{group, base, lambda, sidon, std::move(graph)};
}

std::vector<std::uint32_t> copy_vertices(const CopyHandle& handle, const BlowupGraph& g) {
    if (!g.sidon.contains(handle.a)) {
        throw std::invalid_argument("copy_vertices: a is not an element of S");
    }
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(g.base.num_vertices));
    for (int i = 1; i <= g.base.num_vertices; ++i) {
        GroupElement e = group_add(handle.v, scalar_act(g.lambda.at(i), handle.a, g.group),
                                   g.group);
        out.push_back(g.vertex(i, e));
    }
    return out;
}

DecompositionReport enumerate_decomposition(const BlowupGraph& g) {
    DecompositionReport report;
    constexpr std::size_t kMaxWitnesses = 16;
    std::vector<std::uint32_t> cover(g.graph.m(), 0);

    for (std::uint64_t v = 0; v < g.group.order(); ++v) {
        for (GroupElement a : g.sidon.elements) {
            CopyHandle handle{GroupElement{v}, a};
            auto verts = copy_vertices(handle, g);
            ++report.copies;
            for (auto [i, j] : g.base.edges) {
                std::uint32_t u = verts[static_cast<std::size_t>(i - 1)];
                std::uint32_t w = verts[static_cast<std::size_t>(j - 1)];
                if (auto id = g.graph.edge_id(u, w)) {
                    ++cover[*id];
                } else {
                    ++report.total_violations;
                    if (report.violations.size() < kMaxWitnesses) {
                        report.violations.push_back(
                            {DecompositionReport::Violation::Kind::missing_copy_edge,
                             std::min(u, w), std::max(u, w), 0});
                    }
                }
            }
        }
    }
    for (std::uint64_t id = 0; id < cover.size(); ++id) {
        ++report.cover_histogram[cover[id]];
        if (cover[id] != 1) {
            ++report.total_violations;
            if (report.violations.size() < kMaxWitnesses) {
                auto [u, v] = g.graph.edges()[id];
                report.violations.push_back(
                    {cover[id] == 0 ? DecompositionReport::Violation::Kind::uncovered_edge
                                    : DecompositionReport::Violation::Kind::overcovered_edge,
                     u, v, cover[id]});
            }
        }
    }
    return report;
}

}  // namespace onecopy
