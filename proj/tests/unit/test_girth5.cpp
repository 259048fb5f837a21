#include <doctest.h>

#include <set>

#include "onecopy/verify.hpp"
#include "helpers.hpp"

using namespace onecopy;
using testutil::SplitMix;

namespace {

Hypergraph petersen_hypergraph() {
    std::vector<std::vector<std::uint32_t>> edges = {
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
        {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
    return Hypergraph(2, 10, std::move(edges));
}

Hypergraph k4_hypergraph() {
    std::vector<std::vector<std::uint32_t>> edges = {{0, 1}, {0, 2}, {0, 3},
                                                     {1, 2}, {1, 3}, {2, 3}};
    return Hypergraph(2, 4, std::move(edges));
}

Hypergraph fano_plane() {
    std::vector<std::vector<std::uint32_t>> edges = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                                     {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    return Hypergraph(3, 7, std::move(edges));
}

bool witness_is_valid(const Hypergraph& h, const BergeWitness& w) {
    if (w.edge_ids.size() != static_cast<std::size_t>(w.length)) return false;
    if (std::set<std::uint32_t>(w.edge_ids.begin(), w.edge_ids.end()).size() !=
        w.edge_ids.size()) {
        return false;
    }
    if (w.length == 2) {
        const auto& a = h.edges[w.edge_ids[0]];
        const auto& b = h.edges[w.edge_ids[1]];
        for (std::uint32_t v : w.vertices) {
            if (!std::binary_search(a.begin(), a.end(), v)) return false;
            if (!std::binary_search(b.begin(), b.end(), v)) return false;
        }
        return w.vertices[0] != w.vertices[1];
    }
    if (std::set<std::uint32_t>(w.vertices.begin(), w.vertices.end()).size() !=
        w.vertices.size()) {
        return false;
    }
    for (int t = 0; t < w.length; ++t) {
        const auto& e = h.edges[w.edge_ids[static_cast<std::size_t>(t)]];
        std::uint32_t v1 = w.vertices[static_cast<std::size_t>(t)];
        std::uint32_t v2 = w.vertices[static_cast<std::size_t>((t + 1) % w.length)];
        if (!std::binary_search(e.begin(), e.end(), v1)) return false;
        if (!std::binary_search(e.begin(), e.end(), v2)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("girth-five check on known hypergraphs") {
    CHECK_FALSE(girth5_check(petersen_hypergraph()).has_value());

    auto k4 = girth5_check(k4_hypergraph());
    REQUIRE(k4.has_value());
    CHECK(k4->length == 3);
    CHECK(witness_is_valid(k4_hypergraph(), *k4));

    auto fano = girth5_check(fano_plane());
    REQUIRE(fano.has_value());
    CHECK(witness_is_valid(fano_plane(), *fano));
}

TEST_CASE("hypergraph validation") {
    CHECK_THROWS_AS(Hypergraph(1, 3, {{0}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(2, 3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(2, 3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(2, 3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("girth-five agrees with the selection oracle on random hypergraphs") {
    SplitMix rng{6174};
    int agreements = 0;
    while (agreements < 40) {
        int r = 2 + static_cast<int>(rng.below(2));
        auto n = static_cast<std::uint32_t>(r + 2 + rng.below(6));
        auto m = 1 + rng.below(6);
        std::set<std::vector<std::uint32_t>> edge_set;
        bool degenerate = false;
        for (std::uint64_t e = 0; e < m; ++e) {
            std::set<std::uint32_t> verts;
            while (verts.size() < static_cast<std::size_t>(r)) {
                verts.insert(static_cast<std::uint32_t>(rng.below(n)));
            }
            if (!edge_set.insert(std::vector<std::uint32_t>(verts.begin(), verts.end()))
                     .second) {
                degenerate = true;  // duplicate hyperedge; skip this draw
            }
        }
        if (degenerate) continue;
        Hypergraph h(r, n, {edge_set.begin(), edge_set.end()});
        auto witness = girth5_check(h);
        CHECK(!witness.has_value() == testutil::girth5_selection_oracle(h));
        if (witness) CHECK(witness_is_valid(h, *witness));
        ++agreements;
    }
}
