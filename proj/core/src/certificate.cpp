#include "onecopy/certificate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "onecopy/io.hpp"

namespace onecopy {

using ordered_json = nlohmann::ordered_json;

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "unknown";
}

const std::vector<std::string>& known_check_names() {
    static const std::vector<std::string> names = {
        "counts", "decomposition", "c4free", "k23free",
        "copies", "c4count",       "absorption", "density"};
    return names;
}

namespace {

struct CheckOutcome {
    CheckStatus status = CheckStatus::skipped;
    ordered_json details = ordered_json::object();
    ordered_json witnesses = ordered_json::array();
};

bool is_hk_pipeline(const BlowupGraph& g) { return g.base.kind == BaseGraph::Kind::hk; }

bool is_parabola_pipeline(const BlowupGraph& g) {
    return g.group.kind == GroupKind::field_pair && g.sidon.is_parabola();
}

CheckOutcome skipped(const std::string& reason) {
    CheckOutcome out;
    out.status = CheckStatus::skipped;
    out.details["reason"] = reason;
    return out;
}

CheckOutcome check_counts(const BlowupGraph& g) {
    CheckOutcome out;
    const std::uint64_t expected_n =
        g.group.order() * static_cast<std::uint64_t>(g.base.num_vertices);
    const std::uint64_t expected_m = g.base.edges.size() * g.group.order() * g.sidon.size();
    out.details["n"] = g.graph.n();
    out.details["m"] = g.graph.m();
    out.details["expected_n"] = expected_n;
    out.details["expected_m"] = expected_m;
    out.status = (g.graph.n() == expected_n && g.graph.m() == expected_m) ? CheckStatus::pass
                                                                          : CheckStatus::fail;
    return out;
}

CheckOutcome check_decomposition(const BlowupGraph& g) {
    CheckOutcome out;
    DecompositionReport report = enumerate_decomposition(g);
    out.details["copies"] = report.copies;
    ordered_json hist = ordered_json::object();
    for (auto [cover, count] : report.cover_histogram) hist[std::to_string(cover)] = count;
    out.details["cover_histogram"] = hist;
    out.details["violations"] = report.total_violations;
    for (const auto& v : report.violations) {
        const char* kind = v.kind == DecompositionReport::Violation::Kind::uncovered_edge
                               ? "uncovered_edge"
                               : v.kind == DecompositionReport::Violation::Kind::overcovered_edge
                                     ? "overcovered_edge"
                                     : "missing_copy_edge";
        out.witnesses.push_back(
            ordered_json{{"kind", kind}, {"u", v.u}, {"v", v.v}, {"cover", v.cover}});
    }
    out.status = report.pass() ? CheckStatus::pass : CheckStatus::fail;
    return out;
}

CheckOutcome check_c4free(const BlowupGraph& g, unsigned threads) {
    CheckOutcome out;
    std::uint64_t scanned = 0;
    out.status = CheckStatus::pass;
    for (auto [i, j] : g.base.edges) {
        ++scanned;
        if (auto witness = c4_free_pairgraph(g, i, j, threads)) {
            out.status = CheckStatus::fail;
            out.witnesses.push_back(ordered_json{{"parts", {i, j}},
                                                 {"vertices", witness->vertices}});
            break;
        }
    }
    out.details["pair_graphs_scanned"] = scanned;
    return out;
}

CheckOutcome check_k23free(const BlowupGraph& g, unsigned threads) {
    CheckOutcome out;
    std::uint64_t scanned = 0;
    out.status = CheckStatus::pass;
    for (const auto& path : g.base.paths()) {
        ++scanned;
        if (auto witness = k23_free_pathgraph(g, path[0], path[1], path[2], threads)) {
            out.status = CheckStatus::fail;
            out.witnesses.push_back(ordered_json{{"parts", {path[0], path[1], path[2]}},
                                                 {"centers", witness->centers},
                                                 {"leaves", witness->leaves}});
            break;
        }
    }
    out.details["path_graphs_scanned"] = scanned;
    return out;
}

CheckOutcome check_copies(const BlowupGraph& g, unsigned threads) {
    if (!is_hk_pipeline(g)) return skipped("copy counting applies to H_k bases");
    CheckOutcome out;
    const std::uint64_t expected = g.group.order() * g.sidon.size();
    CopyCountReport report = count_hk_copies(g.graph, g.base.hk_param, expected, threads);
    out.details["anchored_tuples"] = report.anchored_tuples;
    out.details["copies"] = report.copies;
    out.details["expected"] = expected;
    out.details["rich_pairs"] = report.rich_pairs;
    out.details["max_codegree"] = report.max_codegree;
    if (report.codegree_bound_exceeded) {
        out.details["codegree_bound_exceeded"] = true;
    }
    out.status = report.counts_match() ? CheckStatus::pass : CheckStatus::fail;
    return out;
}

CheckOutcome check_c4count(const BlowupGraph& g, unsigned threads) {
    CheckOutcome out;
    C4CountHistogram hist = per_edge_c4_count(g.graph, threads);
    ordered_json h = ordered_json::object();
    for (auto [count, edges] : hist.histogram) h[std::to_string(count)] = edges;
    out.details["histogram"] = h;
    out.status = hist.all_equal(1) ? CheckStatus::pass : CheckStatus::fail;
    if (out.status == CheckStatus::fail) {
        for (auto& [count, example] : hist.examples) {
            if (count == 1) continue;
            out.witnesses.push_back(ordered_json{
                {"count", count}, {"u", example.first}, {"v", example.second}});
            if (out.witnesses.size() >= 8) break;
        }
    }
    return out;
}

CheckOutcome check_absorption(const BlowupGraph& g, const CertifyOptions& options) {
    if (!is_parabola_pipeline(g)) {
        return skipped("absorption scans apply to field-pair groups with the parabola set");
    }
    CheckOutcome out;
    ScanMode mode = options.full_absorption ? ScanMode::full_scan()
                                            : ScanMode::sampled(options.sample_attempts);
    AbsorptionReport report = absorption_scan(g, mode, options.seed, options.threads);
    out.details["mode"] = report.full ? "full" : "sampled";
    if (!report.full) out.details["attempts"] = options.sample_attempts;
    out.details["seed"] = report.seed;
    out.details["chi_quads_checked"] = report.chi_quads_checked;
    out.details["chi_violations"] = report.chi_violations;
    out.details["path_quads_checked"] = report.path_quads_checked;
    out.details["path_violations"] = report.path_violations;
    out.details["nondistinct_part_quads"] = report.nondistinct_part_quads;
    if (report.first_violation) {
        out.witnesses.push_back(ordered_json{{"vertices", *report.first_violation}});
    }
    out.status = report.pass() ? CheckStatus::pass : CheckStatus::fail;
    return out;
}

CheckOutcome check_density(const BlowupGraph& g) {
    CheckOutcome out;
    DensityReport report = density_report(g);
    out.details["n"] = report.n;
    out.details["m"] = report.m;
    out.details["ratio"] = report.ratio;
    out.status = CheckStatus::pass;
    if (report.closed_form) {
        out.details["closed_form"] = *report.closed_form;
        if (std::abs(report.ratio - *report.closed_form) > 1e-9) {
            out.status = CheckStatus::fail;
        }
    }
    return out;
}

}  // namespace

Certificate run_certify(const BlowupGraph& g, const CertifyOptions& options) {
    std::vector<std::string> selected = options.checks;
    if (selected.empty()) {
        selected = {"counts", "decomposition", "c4free"};
        if (is_hk_pipeline(g)) {
            selected.push_back("k23free");
            selected.push_back("copies");
        } else if (g.base.kind == BaseGraph::Kind::c4) {
            selected.push_back("c4count");
        }
        if (is_parabola_pipeline(g)) selected.push_back("absorption");
        selected.push_back("density");
    }
    for (const auto& name : selected) {
        if (std::find(known_check_names().begin(), known_check_names().end(), name) ==
            known_check_names().end()) {
            throw std::invalid_argument("unknown check '" + name + "'");
        }
    }

    Certificate cert;
    cert.n = g.graph.n();
    cert.m = g.graph.m();

    ordered_json params;
    params["group"] = group_to_string(g.group);
    if (g.base.kind == BaseGraph::Kind::hk) {
        params["base"] = "hk";
        params["k"] = g.base.hk_param;
    } else {
        params["base"] = g.base.kind == BaseGraph::Kind::c4 ? "c4" : "custom";
        params["parts"] = g.base.num_vertices;
    }
    params["lambda"] = g.lambda.values;
    params["sidon_size"] = g.sidon.size();
    params["sidon"] = g.sidon.is_parabola()
                          ? "parabola(p=" + std::to_string(g.group.modulus) + ")"
                          : "explicit";
    params["seed"] = options.seed;
    cert.params_json = params.dump();

    for (const auto& name : selected) {
        auto start = std::chrono::steady_clock::now();
        CheckOutcome outcome;
        if (name == "counts") {
            outcome = check_counts(g);
        } else if (name == "decomposition") {
            outcome = check_decomposition(g);
        } else if (name == "c4free") {
            outcome = check_c4free(g, options.threads);
        } else if (name == "k23free") {
            if (!is_hk_pipeline(g) && g.base.kind != BaseGraph::Kind::c4 &&
                g.base.kind != BaseGraph::Kind::custom) {
                outcome = skipped("no base paths");
            } else if (g.base.paths().empty()) {
                outcome = skipped("base has no 3-vertex paths");
            } else {
                outcome = check_k23free(g, options.threads);
            }
        } else if (name == "copies") {
            outcome = check_copies(g, options.threads);
        } else if (name == "c4count") {
            outcome = check_c4count(g, options.threads);
        } else if (name == "absorption") {
            outcome = check_absorption(g, options);
        } else if (name == "density") {
            outcome = check_density(g);
        }
        auto stop = std::chrono::steady_clock::now();
        CheckEntry entry;
        entry.name = name;
        entry.status = outcome.status;
        entry.details_json = outcome.details.dump();
        entry.witnesses_json = outcome.witnesses.dump();
        entry.millis =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        cert.checks.push_back(std::move(entry));
    }
    return cert;
}

std::string Certificate::to_json(int indent) const {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["params"] = ordered_json::parse(params_json);
    j["graph"] = ordered_json{{"n", n}, {"m", m}};
    auto& checks_json = j["checks"] = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["status"] = to_string(c.status);
        entry["details"] = ordered_json::parse(c.details_json);
        entry["witnesses"] = ordered_json::parse(c.witnesses_json);
        checks_json.push_back(std::move(entry));
    }
    auto& timings = j["timings_ms"] = ordered_json::object();
    for (const auto& c : checks) timings[c.name] = c.millis;
    j["verdict"] = verdict() ? "pass" : "fail";
    return j.dump(indent);
}

}  // namespace onecopy
