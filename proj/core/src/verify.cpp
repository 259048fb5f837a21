#include "onecopy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "onecopy/parallel.hpp"

namespace onecopy {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

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
};

void require_base_edge(const BlowupGraph& g, int i, int j, const char* where) {
    if (!g.base.adjacent(i, j)) {
        throw std::invalid_argument(std::string(where) + ": (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is not a base edge");
    }
}

}  // namespace

PairGraphView PairGraphView::pair(const BlowupGraph& g, int i, int j) {
    return PairGraphView{&g, {i, j, 0}, 2};
}

PairGraphView PairGraphView::path(const BlowupGraph& g, int h, int i, int j) {
    return PairGraphView{&g, {h, i, j}, 3};
}

bool PairGraphView::contains(std::uint32_t v) const noexcept {
    int label = g->part_label_of(v);
    for (int c = 0; c < count; ++c) {
        if (parts[static_cast<std::size_t>(c)] == label) return true;
    }
    return false;
}

bool PairGraphView::view_adjacent(std::uint32_t u, std::uint32_t v) const noexcept {
    if (!contains(u) || !contains(v)) return false;
    if (count == 3) {
        // path view: only the h-i and i-j layers are edges
        int lu = g->part_label_of(u), lv = g->part_label_of(v);
        int center = parts[1];
        if (lu != center && lv != center) return false;
    }
    return g->graph.adjacent(u, v);
}

std::optional<C4Witness> c4_free_pairgraph(const BlowupGraph& g, int part_i, int part_j,
                                           unsigned threads) {
    require_base_edge(g, part_i, part_j, "c4_free_pairgraph");
    const Graph& gr = g.graph;
    const std::uint32_t ilo = gr.part_begin(static_cast<std::uint32_t>(part_i - 1));
    const std::uint32_t ihi = gr.part_end(static_cast<std::uint32_t>(part_i - 1));
    const std::uint32_t jlo = gr.part_begin(static_cast<std::uint32_t>(part_j - 1));
    const std::uint32_t jhi = gr.part_end(static_cast<std::uint32_t>(part_j - 1));
    const std::uint64_t span = ihi - ilo;

    unsigned workers = resolve_threads(threads);
    std::vector<std::optional<C4Witness>> found(workers);
    parallel_chunks(span, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> common;
        for (std::uint64_t off = begin; off < end && !found[w]; ++off) {
            const auto u1 = static_cast<std::uint32_t>(ilo + off);
            for (std::uint32_t u2 = u1 + 1; u2 < ihi; ++u2) {
                if (gr.codegree_in(u1, u2, jlo, jhi) >= 2) {
                    common.clear();
                    BitMatrix::and_collect_range(gr.row(u1), gr.row(u2), jlo, jhi, common);
                    found[w] = C4Witness{{u1, common[0], u2, common[1]}};
                    break;
                }
            }
        }
    });
    for (auto& f : found) {
        if (f) return f;
    }
    return std::nullopt;
}

namespace {

// scans unordered pairs from [alo,ahi) x [blo,bhi) (upper triangle when the
// ranges coincide) whose common-neighbor count within the view exceeds 2
std::optional<K23Witness> k23_scan_family(const Graph& gr, std::uint32_t alo, std::uint32_t ahi,
                                          std::uint32_t blo, std::uint32_t bhi,
                                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ranges,
                                          unsigned threads) {
    unsigned workers = resolve_threads(threads);
    std::vector<std::optional<K23Witness>> found(workers);
    parallel_chunks(ahi - alo, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> common;
        for (std::uint64_t off = begin; off < end && !found[w]; ++off) {
            const auto u = static_cast<std::uint32_t>(alo + off);
            const std::uint32_t vstart = (alo == blo) ? u + 1 : blo;
            for (std::uint32_t v = vstart; v < bhi; ++v) {
                std::uint64_t codeg = 0;
                for (auto [lo, hi] : ranges) codeg += gr.codegree_in(u, v, lo, hi);
                if (codeg > 2) {
                    common.clear();
                    for (auto [lo, hi] : ranges) {
                        BitMatrix::and_collect_range(gr.row(u), gr.row(v), lo, hi, common);
                    }
                    found[w] = K23Witness{{u, v}, {common[0], common[1], common[2]}};
                    break;
                }
            }
        }
    });
    for (auto& f : found) {
        if (f) return f;
    }
    return std::nullopt;
}

}  // namespace

std::optional<K23Witness> k23_free_pathgraph(const BlowupGraph& g, int part_h, int part_i,
                                             int part_j, unsigned threads) {
    require_base_edge(g, part_h, part_i, "k23_free_pathgraph");
    require_base_edge(g, part_i, part_j, "k23_free_pathgraph");
    const Graph& gr = g.graph;
    auto range = [&](int label) {
        auto p = static_cast<std::uint32_t>(label - 1);
        return std::make_pair(gr.part_begin(p), gr.part_end(p));
    };
    auto [hlo, hhi] = range(part_h);
    auto [ilo, ihi] = range(part_i);
    auto [jlo, jhi] = range(part_j);

    const std::vector<std::pair<std::uint32_t, std::uint32_t>> center{{ilo, ihi}};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> sides{{hlo, hhi}, {jlo, jhi}};
    // pairs inside X_h, inside X_j, and across X_h x X_j meet in X_i;
    // pairs inside X_i meet in X_h or X_j
    if (auto w = k23_scan_family(gr, hlo, hhi, hlo, hhi, center, threads)) return w;
    if (auto w = k23_scan_family(gr, jlo, jhi, jlo, jhi, center, threads)) return w;
    if (auto w = k23_scan_family(gr, hlo, hhi, jlo, jhi, center, threads)) return w;
    if (auto w = k23_scan_family(gr, ilo, ihi, ilo, ihi, sides, threads)) return w;
    return std::nullopt;
}

C4CountHistogram per_edge_c4_count(const Graph& g, unsigned threads) {
    const auto& edges = g.edges();
    unsigned workers = resolve_threads(threads);
    std::vector<C4CountHistogram> partial(workers);
    parallel_chunks(edges.size(), workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        auto& local = partial[w];
        for (std::uint64_t id = begin; id < end; ++id) {
            auto [u, v] = edges[id];
            std::uint64_t count = 0;
            for (std::uint32_t x : g.neighbors(v)) {
                if (x == u) continue;
                count += g.codegree(x, u) - 1;  // y = u..v..x..y; drop y = v
            }
            ++local.histogram[count];
            local.examples.try_emplace(count, edges[id]);
        }
    });
    C4CountHistogram out;
    for (auto& part : partial) {
        for (auto [count, edges_with] : part.histogram) out.histogram[count] += edges_with;
        for (auto& [count, example] : part.examples) out.examples.try_emplace(count, example);
    }
    return out;
}

namespace {

constexpr unsigned __int128 kU128Max = ~static_cast<unsigned __int128>(0);

// C(n, r), false on overflow
bool binom128(std::uint64_t n, std::uint64_t r, unsigned __int128& out) {
    if (r > n) {
        out = 0;
        return true;
    }
    if (r > n - r) r = n - r;
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        const std::uint64_t factor = n - r + i;
        if (result > kU128Max / factor) return false;
        result = result * factor / i;
    }
    out = result;
    return true;
}

bool mul128(unsigned __int128 a, unsigned __int128 b, unsigned __int128& out) {
    if (a != 0 && b > kU128Max / a) return false;
    out = a * b;
    return true;
}

struct RichPair {
    std::uint32_t u, v;
    std::uint32_t codegree;
};

}  // namespace

CopyCountReport count_hk_copies(const Graph& g, int k, std::optional<std::uint64_t> expected,
                                unsigned threads) {
    if (k < 3) throw std::invalid_argument("count_hk_copies: k must be >= 3");
    CopyCountReport report;
    report.expected = expected;
    report.codegree_bound = 8ULL * static_cast<std::uint64_t>(k) + 32;
    const std::uint32_t n = g.n();
    const auto kk = static_cast<std::uint32_t>(k);
    unsigned workers = resolve_threads(threads);

    // pass 1: pairs with codegree >= k, by two-hop counting
    std::vector<std::vector<RichPair>> rich_parts(workers);
    std::vector<std::uint64_t> max_codeg(workers, 0);
    parallel_chunks(n, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> count(n, 0);
        std::vector<std::uint32_t> touched;
        for (std::uint64_t uu = begin; uu < end; ++uu) {
            const auto u = static_cast<std::uint32_t>(uu);
            touched.clear();
            for (std::uint32_t mid : g.neighbors(u)) {
                for (std::uint32_t v : g.neighbors(mid)) {
                    if (v <= u) continue;
                    if (count[v]++ == 0) touched.push_back(v);
                }
            }
            for (std::uint32_t v : touched) {
                max_codeg[w] = std::max<std::uint64_t>(max_codeg[w], count[v]);
                if (count[v] >= kk) rich_parts[w].push_back({u, v, count[v]});
                count[v] = 0;
            }
        }
    });
    std::vector<RichPair> rich;
    for (unsigned w = 0; w < workers; ++w) {
        report.max_codegree = std::max(report.max_codegree, max_codeg[w]);
        rich.insert(rich.end(), rich_parts[w].begin(), rich_parts[w].end());
    }
    report.rich_pairs = rich.size();
    report.codegree_bound_exceeded = report.max_codegree > report.codegree_bound;

    // pass 2: anchored tuples per rich pair
    const std::size_t words = g.words();
    const auto r = static_cast<std::uint64_t>(k - 2);
    std::vector<unsigned __int128> sums(workers, 0);
    std::vector<bool> overflow(workers, false);
    parallel_chunks(rich.size(), workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> row_ab(words);
        std::vector<std::uint32_t> common;
        unsigned __int128 local = 0;
        bool bad = false;
        for (std::uint64_t idx = begin; idx < end && !bad; ++idx) {
            const RichPair& pr = rich[idx];
            const std::uint64_t* ra = g.row(pr.u);
            const std::uint64_t* rb = g.row(pr.v);
            for (std::size_t t = 0; t < words; ++t) row_ab[t] = ra[t] & rb[t];
            common.clear();
            BitMatrix::and_collect_range(ra, rb, 0, n, common);
            const std::uint64_t alpha = common.size() - 2;  // |N(a,b) \ {c,d}|
            for (std::size_t ci = 0; ci < common.size(); ++ci) {
                for (std::size_t cj = ci + 1; cj < common.size(); ++cj) {
                    const std::uint64_t* rc = g.row(common[ci]);
                    const std::uint64_t* rd = g.row(common[cj]);
                    std::uint64_t beta0 = 0, t4 = 0;
                    for (std::size_t t = 0; t < words; ++t) {
                        const std::uint64_t cd = rc[t] & rd[t];
                        beta0 += std::popcount(cd);
                        t4 += std::popcount(cd & row_ab[t]);
                    }
                    const std::uint64_t beta = beta0 - 2;  // a and b are always common
                    if (beta < r) continue;
                    for (std::uint64_t j = 0; j <= std::min(t4, r); ++j) {
                        unsigned __int128 c1, c2, c3, term;
                        if (!binom128(t4, j, c1) || !binom128(alpha - t4, r - j, c2) ||
                            !binom128(beta - j, r, c3) || !mul128(c1, c2, term) ||
                            !mul128(term, c3, term)) {
                            bad = true;
                            break;
                        }
                        if (local > kU128Max - term) {
                            bad = true;
                            break;
                        }
                        local += term;
                    }
                    if (bad) break;
                }
                if (bad) break;
            }
        }
        sums[w] = local;
        overflow[w] = bad;
    });

    unsigned __int128 total = 0;
    for (unsigned w = 0; w < workers; ++w) {
        if (overflow[w] || total > kU128Max - sums[w]) {
            report.overflow = true;
            break;
        }
        total += sums[w];
    }
    if (!report.overflow && total > static_cast<unsigned __int128>(~std::uint64_t{0})) {
        report.overflow = true;
    }
    if (report.overflow) {
        report.anchored_tuples = ~std::uint64_t{0};
        report.copies = ~std::uint64_t{0};
    } else {
        report.anchored_tuples = static_cast<std::uint64_t>(total);
        report.copies = report.anchored_tuples / 2;
    }
    return report;
}

namespace {

/// Precomputed arithmetic for scans over a field-pair blow-up with the
/// parabola set: lambda residues, pairwise difference inverses, chi table.
struct ParabolaScan {
    const BlowupGraph& g;
    PrimeField field;
    std::int64_t p;
    std::uint64_t order;
    int num_parts;
    std::vector<std::int64_t> lam;       // residue of lambda per 1-based label
    std::vector<std::int64_t> diff;      // lam[j] - lam[i] mod p, (i,j) 1-based
    std::vector<std::int64_t> diff_inv;  // modular inverse of diff
    ChiDifferenceTable chi;

    explicit ParabolaScan(const BlowupGraph& graph)
        : g(graph),
          field(graph.group.modulus),
          p(graph.group.modulus),
          order(graph.group.order()),
          num_parts(graph.base.num_vertices),
          chi(graph.lambda, field) {
        if (g.group.kind != GroupKind::field_pair) {
            throw std::invalid_argument("absorption_scan: group must be a field pair");
        }
        if (!g.sidon.is_parabola()) {
            throw std::invalid_argument("absorption_scan: sidon set must be the parabola");
        }
        lam.assign(static_cast<std::size_t>(num_parts) + 1, 0);
        for (int i = 1; i <= num_parts; ++i) lam[static_cast<std::size_t>(i)] = field.reduce(g.lambda.at(i));
        diff.assign(lam.size() * lam.size(), 0);
        diff_inv.assign(lam.size() * lam.size(), 0);
        for (int i = 1; i <= num_parts; ++i) {
            for (int j = 1; j <= num_parts; ++j) {
                if (i == j) continue;
                std::int64_t d = field.reduce(lam[static_cast<std::size_t>(j)] -
                                              lam[static_cast<std::size_t>(i)]);
                if (d == 0) {
                    throw std::invalid_argument(
                        "absorption_scan: lambda values not distinct mod p");
                }
                at(diff, i, j) = d;
                at(diff_inv, i, j) = field.inverse(d);
            }
        }
    }

    std::int64_t& at(std::vector<std::int64_t>& table, int i, int j) const {
        return table[static_cast<std::size_t>(i) * lam.size() + static_cast<std::size_t>(j)];
    }
    std::int64_t get(const std::vector<std::int64_t>& table, int i, int j) const {
        return table[static_cast<std::size_t>(i) * lam.size() + static_cast<std::size_t>(j)];
    }

    std::pair<std::int64_t, std::int64_t> elem_xy(std::uint32_t vertex) const {
        std::uint64_t e = vertex % order;
        return {static_cast<std::int64_t>(e / static_cast<std::uint64_t>(p)),
                static_cast<std::int64_t>(e % static_cast<std::uint64_t>(p))};
    }

    /// Vertex of H(v, a) in the given part. v is (vx, vy).
    std::uint32_t copy_vertex(std::int64_t vx, std::int64_t vy, std::int64_t a,
                              int part_label) const {
        std::int64_t l = lam[static_cast<std::size_t>(part_label)];
        std::int64_t x = (vx + l * a) % p;
        std::int64_t y = (vy + l * a % p * a) % p;
        return static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(part_label - 1) * order +
            static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(p) +
            static_cast<std::uint64_t>(y));
    }

    struct Handle {
        std::int64_t vx, vy, a;
    };

    /// The unique copy that can contain both endpoints of a part-crossing
    /// pair, if the pair difference decodes as lambda_ij * (a, a^2).
    std::optional<Handle> derive(std::uint32_t u, int part_u, std::uint32_t w,
                                 int part_w) const {
        auto [ux, uy] = elem_xy(u);
        auto [wx, wy] = elem_xy(w);
        std::int64_t dx = field.reduce(wx - ux), dy = field.reduce(wy - uy);
        std::int64_t a = dx * get(diff_inv, part_u, part_w) % p;
        if (a == 0) return std::nullopt;
        if (dy != get(diff, part_u, part_w) * a % p * a % p) return std::nullopt;
        std::int64_t l = lam[static_cast<std::size_t>(part_u)];
        std::int64_t vx = field.reduce(ux - l * a);
        std::int64_t vy = field.reduce(uy - l * a % p * a);
        return Handle{vx, vy, a};
    }

    std::uint32_t part_lo(int label) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(label - 1) * order);
    }
    std::uint32_t part_hi(int label) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(label) * order);
    }
};

struct ScanSlot {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t nondistinct = 0;
    std::optional<std::array<std::uint32_t, 4>> witness;
};

void merge_slots(const std::vector<ScanSlot>& slots, std::uint64_t& checked,
                 std::uint64_t& violations, std::uint64_t& nondistinct,
                 std::optional<std::array<std::uint32_t, 4>>& witness) {
    for (const auto& s : slots) {
        checked += s.checked;
        violations += s.violations;
        nondistinct += s.nondistinct;
        if (!witness && s.witness) witness = s.witness;
    }
}

}  // namespace

AbsorptionReport absorption_scan(const BlowupGraph& g, ScanMode mode, std::uint64_t seed,
                                 unsigned threads) {
    ParabolaScan ctx(g);
    const Graph& gr = g.graph;
    AbsorptionReport report;
    report.seed = seed;
    report.full = mode.full;
    unsigned workers = resolve_threads(threads);

    auto cycles = g.base.four_cycles();
    std::vector<std::array<int, 4>> minus_cycles;
    for (const auto& c : cycles) {
        if (ctx.chi.cycle_product(c[0], c[1], c[2], c[3]) == -1) minus_cycles.push_back(c);
    }
    auto paths = g.base.paths();

    // A quadrilateral lies in one copy iff the handle derived from its first
    // edge matches the remaining vertices; shared pairs pin the handle.
    auto judge_quad = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z, std::uint32_t w,
                          int li, int lj, int lk, int ll, ScanSlot& slot) {
        ++slot.checked;
        auto h = ctx.derive(x, li, y, lj);
        bool ok = h.has_value();
        if (ok) {
            ok = z == ctx.copy_vertex(h->vx, h->vy, h->a, lk) &&
                 w == ctx.copy_vertex(h->vx, h->vy, h->a, ll);
        }
        if (!ok) {
            ++slot.violations;
            if (!slot.witness) slot.witness = std::array<std::uint32_t, 4>{x, y, z, w};
        }
    };

    if (mode.full) {
        // Lemma scan 1: chi-minus quadrilaterals over distinct parts
        for (const auto& cyc : minus_cycles) {
            const int li = cyc[0], lj = cyc[1], lk = cyc[2], ll = cyc[3];
            std::vector<ScanSlot> slots(workers);
            parallel_chunks(ctx.order, workers,
                            [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
                std::vector<std::uint32_t> closures;
                for (std::uint64_t off = begin; off < end; ++off) {
                    const auto x = static_cast<std::uint32_t>(ctx.part_lo(li) + off);
                    for (std::uint32_t y :
                         gr.neighbors_in(x, ctx.part_lo(lj), ctx.part_hi(lj))) {
                        for (std::uint32_t z :
                             gr.neighbors_in(y, ctx.part_lo(lk), ctx.part_hi(lk))) {
                            closures.clear();
                            BitMatrix::and_collect_range(gr.row(z), gr.row(x), ctx.part_lo(ll),
                                                         ctx.part_hi(ll), closures);
                            for (std::uint32_t quad_w : closures) {
                                judge_quad(x, y, z, quad_w, li, lj, lk, ll, slots[w]);
                            }
                        }
                    }
                }
            });
            merge_slots(slots, report.chi_quads_checked, report.chi_violations,
                        report.nondistinct_part_quads, report.first_violation);
        }
        // Lemma scan 2: quadrilaterals extending an in-copy 3-vertex path
        for (const auto& pth : paths) {
            const int lh = pth[0], li = pth[1], lj = pth[2];
            std::vector<int> closure_parts;
            for (int l = 1; l <= ctx.num_parts; ++l) {
                if (l != lh && l != lj && g.base.adjacent(lj, l) && g.base.adjacent(l, lh)) {
                    closure_parts.push_back(l);
                }
            }
            if (closure_parts.empty()) continue;
            std::vector<ScanSlot> slots(workers);
            parallel_chunks(ctx.order, workers,
                            [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
                std::vector<std::uint32_t> closures;
                for (std::uint64_t off = begin; off < end; ++off) {
                    const auto x = static_cast<std::uint32_t>(ctx.part_lo(lh) + off);
                    for (std::uint32_t y :
                         gr.neighbors_in(x, ctx.part_lo(li), ctx.part_hi(li))) {
                        auto h = ctx.derive(x, lh, y, li);
                        if (!h) continue;
                        std::uint32_t z = ctx.copy_vertex(h->vx, h->vy, h->a, lj);
                        if (!gr.adjacent(y, z)) continue;
                        for (int l : closure_parts) {
                            closures.clear();
                            BitMatrix::and_collect_range(gr.row(z), gr.row(x), ctx.part_lo(l),
                                                         ctx.part_hi(l), closures);
                            if (l == li) {
                                // quadrilaterals re-entering the center part:
                                // reported, not judged
                                slots[w].nondistinct += closures.size() - 1;  // minus y itself
                                continue;
                            }
                            std::uint32_t expect = ctx.copy_vertex(h->vx, h->vy, h->a, l);
                            for (std::uint32_t quad_w : closures) {
                                ++slots[w].checked;
                                if (quad_w != expect) {
                                    ++slots[w].violations;
                                    if (!slots[w].witness) {
                                        slots[w].witness =
                                            std::array<std::uint32_t, 4>{x, y, z, quad_w};
                                    }
                                }
                            }
                        }
                    }
                }
            });
            merge_slots(slots, report.path_quads_checked, report.path_violations,
                        report.nondistinct_part_quads, report.first_violation);
        }
        return report;
    }

    // sampled mode: per-attempt state derives from (seed, stream, index) so
    // results do not depend on the thread partition
    const std::uint64_t ns = mode.samples;
    if (!minus_cycles.empty()) {
        std::vector<ScanSlot> slots(workers);
        parallel_chunks(ns, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
            std::vector<std::uint32_t> closures;
            for (std::uint64_t s = begin; s < end; ++s) {
                SplitMix rng{mix64(seed ^ 0x5161a5u ^ mix64(s))};
                const auto& cyc = minus_cycles[rng.below(minus_cycles.size())];
                const int li = cyc[0], lj = cyc[1], lk = cyc[2], ll = cyc[3];
                const std::uint64_t ex = rng.below(ctx.order);
                const auto x = static_cast<std::uint32_t>(ctx.part_lo(li) + ex);
                const auto sa = static_cast<std::int64_t>(
                    1 + rng.below(static_cast<std::uint64_t>(ctx.p - 1)));
                auto [xx, xy] = ctx.elem_xy(x);
                std::int64_t vx = ctx.field.reduce(xx - ctx.lam[static_cast<std::size_t>(li)] * sa);
                std::int64_t vy = ctx.field.reduce(
                    xy - ctx.lam[static_cast<std::size_t>(li)] * sa % ctx.p * sa);
                const std::uint32_t y = ctx.copy_vertex(vx, vy, sa, lj);
                if (!gr.adjacent(x, y)) continue;
                const auto sb = static_cast<std::int64_t>(
                    1 + rng.below(static_cast<std::uint64_t>(ctx.p - 1)));
                auto [yx, yy] = ctx.elem_xy(y);
                std::int64_t d = ctx.get(ctx.diff, lj, lk);
                std::int64_t zx = (yx + d * sb) % ctx.p;
                std::int64_t zy = (yy + d * sb % ctx.p * sb) % ctx.p;
                const auto z = static_cast<std::uint32_t>(
                    static_cast<std::uint64_t>(lk - 1) * ctx.order +
                    static_cast<std::uint64_t>(zx) * static_cast<std::uint64_t>(ctx.p) +
                    static_cast<std::uint64_t>(zy));
                if (!gr.adjacent(y, z)) continue;
                closures.clear();
                BitMatrix::and_collect_range(gr.row(z), gr.row(x), ctx.part_lo(ll),
                                             ctx.part_hi(ll), closures);
                for (std::uint32_t quad_w : closures) {
                    judge_quad(x, y, z, quad_w, li, lj, lk, ll, slots[w]);
                }
            }
        });
        merge_slots(slots, report.chi_quads_checked, report.chi_violations,
                    report.nondistinct_part_quads, report.first_violation);
    }
    if (!paths.empty()) {
        std::vector<ScanSlot> slots(workers);
        parallel_chunks(ns, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
            std::vector<std::uint32_t> closures;
            for (std::uint64_t s = begin; s < end; ++s) {
                SplitMix rng{mix64(seed ^ 0x9a7b4u ^ mix64(s))};
                const auto& pth = paths[rng.below(paths.size())];
                const int lh = pth[0], li = pth[1], lj = pth[2];
                const std::uint64_t ex = rng.below(ctx.order);
                const auto x = static_cast<std::uint32_t>(ctx.part_lo(lh) + ex);
                const auto sa = static_cast<std::int64_t>(
                    1 + rng.below(static_cast<std::uint64_t>(ctx.p - 1)));
                auto [xx, xy] = ctx.elem_xy(x);
                std::int64_t vx = ctx.field.reduce(xx - ctx.lam[static_cast<std::size_t>(lh)] * sa);
                std::int64_t vy = ctx.field.reduce(
                    xy - ctx.lam[static_cast<std::size_t>(lh)] * sa % ctx.p * sa);
                const std::uint32_t y = ctx.copy_vertex(vx, vy, sa, li);
                if (!gr.adjacent(x, y)) continue;
                const std::uint32_t z = ctx.copy_vertex(vx, vy, sa, lj);
                if (!gr.adjacent(y, z)) continue;
                for (int l = 1; l <= ctx.num_parts; ++l) {
                    if (l == lh || l == lj) continue;
                    if (!g.base.adjacent(lj, l) || !g.base.adjacent(l, lh)) continue;
                    closures.clear();
                    BitMatrix::and_collect_range(gr.row(z), gr.row(x), ctx.part_lo(l),
                                                 ctx.part_hi(l), closures);
                    if (l == li) {
                        slots[w].nondistinct += closures.size() - 1;
                        continue;
                    }
                    std::uint32_t expect = ctx.copy_vertex(vx, vy, sa, l);
                    for (std::uint32_t quad_w : closures) {
                        ++slots[w].checked;
                        if (quad_w != expect) {
                            ++slots[w].violations;
                            if (!slots[w].witness) {
                                slots[w].witness = std::array<std::uint32_t, 4>{x, y, z, quad_w};
                            }
                        }
                    }
                }
            }
        });
        merge_slots(slots, report.path_quads_checked, report.path_violations,
                    report.nondistinct_part_quads, report.first_violation);
    }
    return report;
}

std::optional<HkCopy> embed_hk_greedy(const Graph& g, int k) {
    if (k < 3) throw std::invalid_argument("embed_hk_greedy: k must be >= 3");
    const std::uint32_t n = g.n();
    const auto r = static_cast<std::size_t>(k - 2);
    std::vector<std::uint32_t> outer, inner;
    for (std::uint32_t x1 = 0; x1 < n; ++x1) {
        for (std::uint32_t x2 = x1 + 1; x2 < n; ++x2) {
            if (g.codegree(x1, x2) <= static_cast<std::uint64_t>(k) + 2) continue;
            outer.clear();
            BitMatrix::and_collect_range(g.row(x1), g.row(x2), 0, n, outer);
            for (std::size_t yi = 0; yi < outer.size(); ++yi) {
                for (std::size_t yj = yi + 1; yj < outer.size(); ++yj) {
                    const std::uint32_t y1 = outer[yi], y2 = outer[yj];
                    if (g.codegree(y1, y2) <= 2 * static_cast<std::uint64_t>(k)) continue;
                    HkCopy copy;
                    copy.vertices = {x1, x2, y1, y2};
                    for (std::uint32_t cand : outer) {
                        if (copy.vertices.size() >= 2 + 2 + r) break;
                        if (cand == y1 || cand == y2) continue;
                        copy.vertices.push_back(cand);
                    }
                    if (copy.vertices.size() != 2 + 2 + r) continue;
                    inner.clear();
                    BitMatrix::and_collect_range(g.row(y1), g.row(y2), 0, n, inner);
                    for (std::uint32_t cand : inner) {
                        if (copy.vertices.size() >= 2ull * static_cast<std::size_t>(k)) break;
                        if (std::find(copy.vertices.begin(), copy.vertices.end(), cand) !=
                            copy.vertices.end()) {
                            continue;
                        }
                        copy.vertices.push_back(cand);
                    }
                    if (copy.vertices.size() != 2ull * static_cast<std::size_t>(k)) continue;
                    for (std::size_t s1 = 0; s1 < static_cast<std::size_t>(k); ++s1) {
                        if (!g.adjacent(copy.vertices[0], copy.vertices[2 + s1]) ||
                            !g.adjacent(copy.vertices[1], copy.vertices[2 + s1])) {
                            throw std::logic_error("embed_hk_greedy: invalid star edge");
                        }
                    }
                    for (std::size_t s2 = 0; s2 < r; ++s2) {
                        if (!g.adjacent(copy.vertices[2], copy.vertices[2 + k + s2]) ||
                            !g.adjacent(copy.vertices[3], copy.vertices[2 + k + s2])) {
                            throw std::logic_error("embed_hk_greedy: invalid star edge");
                        }
                    }
                    return copy;
                }
            }
        }
    }
    return std::nullopt;
}

Hypergraph::Hypergraph(int uniformity, std::uint32_t n,
                       std::vector<std::vector<std::uint32_t>> hyperedges)
    : r(uniformity), num_vertices(n), edges(std::move(hyperedges)) {
    if (r < 2) throw std::invalid_argument("Hypergraph: r must be >= 2");
    for (auto& e : edges) {
        if (e.size() != static_cast<std::size_t>(r)) {
            throw std::invalid_argument("Hypergraph: hyperedge of wrong size");
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw std::invalid_argument("Hypergraph: repeated vertex in hyperedge");
        }
        if (e.back() >= num_vertices) {
            throw std::invalid_argument("Hypergraph: vertex id out of range");
        }
    }
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("Hypergraph: duplicate hyperedge");
    }
}

std::optional<BergeWitness> girth5_check(const Hypergraph& h) {
    // stage 1: two hyperedges sharing two vertices (Berge cycle of length 2)
    std::unordered_map<std::uint64_t, std::uint32_t> pair_edge;
    auto key = [](std::uint32_t u, std::uint32_t v) {
        return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    };
    for (std::uint32_t eid = 0; eid < h.edges.size(); ++eid) {
        const auto& e = h.edges[eid];
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                auto [it, inserted] = pair_edge.emplace(key(e[i], e[j]), eid);
                if (!inserted) {
                    return BergeWitness{2, {it->second, eid}, {e[i], e[j]}};
                }
            }
        }
    }
    // shadow graph: each vertex pair now lies in at most one hyperedge
    std::vector<std::vector<std::uint32_t>> shadow(h.num_vertices);
    for (const auto& e : h.edges) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                shadow[e[i]].push_back(e[j]);
                shadow[e[j]].push_back(e[i]);
            }
        }
    }
    for (auto& nbrs : shadow) std::sort(nbrs.begin(), nbrs.end());
    auto label = [&](std::uint32_t u, std::uint32_t v) { return pair_edge.at(key(u, v)); };
    auto shadow_adjacent = [&](std::uint32_t u, std::uint32_t v) {
        return std::binary_search(shadow[u].begin(), shadow[u].end(), v);
    };

    // stage 2: triangles with three distinct hyperedges (Berge 3-cycles)
    for (std::uint32_t u = 0; u < h.num_vertices; ++u) {
        for (std::uint32_t v : shadow[u]) {
            if (v <= u) continue;
            for (std::uint32_t w : shadow[u]) {
                if (w <= v) continue;
                if (!shadow_adjacent(v, w)) continue;
                std::uint32_t e1 = label(u, v), e2 = label(v, w), e3 = label(w, u);
                if (e1 != e2 && e2 != e3 && e1 != e3) {
                    return BergeWitness{3, {e1, e2, e3}, {u, v, w}};
                }
            }
        }
    }
    // stage 3: 4-cycles with four distinct hyperedges (Berge 4-cycles)
    for (std::uint32_t u = 0; u < h.num_vertices; ++u) {
        const auto& nbrs = shadow[u];
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            if (nbrs[a] <= u) continue;
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                if (nbrs[b] <= u) continue;
                const std::uint32_t v1 = nbrs[a], v3 = nbrs[b];
                for (std::uint32_t w : shadow[v1]) {
                    if (w == u || w <= u) continue;
                    if (!shadow_adjacent(v3, w)) continue;
                    std::uint32_t e1 = label(u, v1), e2 = label(v1, w), e3 = label(w, v3),
                                  e4 = label(v3, u);
                    if (e1 != e2 && e1 != e3 && e1 != e4 && e2 != e3 && e2 != e4 && e3 != e4) {
                        return BergeWitness{4, {e1, e2, e3, e4}, {u, v1, w, v3}};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

double pipeline_density_closed_form(int k, std::int64_t p) {
    const double kk = static_cast<double>(k);
    const double pp = static_cast<double>(p);
    return (4.0 * kk - 4.0) * (pp - 1.0) / (std::pow(2.0 * kk, 1.5) * pp);
}

DensityReport density_report(const BlowupGraph& g) {
    DensityReport report;
    report.n = g.graph.n();
    report.m = g.graph.m();
    report.ratio = report.n == 0
                       ? 0.0
                       : static_cast<double>(report.m) /
                             std::pow(static_cast<double>(report.n), 1.5);
    if (g.base.kind == BaseGraph::Kind::hk && g.group.kind == GroupKind::field_pair &&
        g.sidon.is_parabola()) {
        report.closed_form = pipeline_density_closed_form(g.base.hk_param, g.group.modulus);
    }
    return report;
}

}  // namespace onecopy
