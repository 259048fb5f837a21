// Command-line surface: construct, certify, search-lambda, sidon, export,
// girth5. Exit codes: 0 all checks pass, 1 a check or verification failed,
// 2 usage, parameter or I/O errors.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "onecopy/certificate.hpp"
#include "onecopy/io.hpp"
#include "onecopy/suitable.hpp"

using namespace onecopy;
using ordered_json = nlohmann::ordered_json;

namespace {

bool use_color() {
    return ::isatty(STDERR_FILENO) != 0 && std::getenv("NO_COLOR") == nullptr;
}

void print_check_line(const CheckEntry& entry) {
    const char* status = to_string(entry.status);
    std::string tag = status;
    if (use_color()) {
        const char* color = entry.status == CheckStatus::pass
                                ? "\033[32m"
                                : entry.status == CheckStatus::fail ? "\033[31m" : "\033[33m";
        tag = std::string(color) + status + "\033[0m";
    }
    std::cerr << "[" << tag << "] " << entry.name << " (" << entry.millis << " ms)\n";
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct PipelineArgs {
    std::int64_t p = 0;
    int k = 0;
    std::string base = "hk";
    std::int64_t cyclic_n = 0;
    std::string sidon_file;
    std::string lambda_csv;
};

LambdaSet parse_lambda_csv(const std::string& csv) {
    std::vector<std::int64_t> values;
    for (const auto& item : split_csv(csv)) values.push_back(std::stoll(item));
    return LambdaSet{std::move(values)};
}

BlowupGraph build_pipeline(const PipelineArgs& args) {
    if (args.base == "hk") {
        if (args.p == 0 || args.k == 0) {
            throw std::invalid_argument("the hk pipeline needs --p and --k");
        }
        LambdaSet lambda = args.lambda_csv.empty() ? find_suitable(args.p, args.k)
                                                   : parse_lambda_csv(args.lambda_csv);
        return blowup(GroupSpec::field_pair(args.p), lambda, SidonSet::parabola(args.p),
                      make_hk(args.k));
    }
    if (args.base == "c4") {
        if (args.cyclic_n == 0 || args.sidon_file.empty()) {
            throw std::invalid_argument("the c4 pipeline needs --N and --sidon-file");
        }
        if (std::gcd(args.cyclic_n, std::int64_t{6}) != 1) {
            throw std::invalid_argument("the c4 pipeline needs gcd(N, 6) = 1, got N = " +
                                        std::to_string(args.cyclic_n));
        }
        SidonSet sidon = load_sidon_file(args.sidon_file);
        GroupSpec group = GroupSpec::cyclic(args.cyclic_n);
        if (!(sidon.group == group)) {
            throw std::invalid_argument("sidon file group " + group_to_string(sidon.group) +
                                        " does not match --N " + std::to_string(args.cyclic_n));
        }
        LambdaSet lambda = args.lambda_csv.empty() ? LambdaSet{{0, 3, 1, 2}}
                                                   : parse_lambda_csv(args.lambda_csv);
        return blowup(group, lambda, sidon, make_c4());
    }
    throw std::invalid_argument("unknown base '" + args.base + "' (use hk or c4)");
}

std::string default_prefix(const PipelineArgs& args) {
    if (args.base == "hk") {
        return "blowup_hk" + std::to_string(args.k) + "_p" + std::to_string(args.p);
    }
    return "blowup_c4_z" + std::to_string(args.cyclic_n);
}

int run_construct(const PipelineArgs& args, std::string out_prefix, bool require_out) {
    if (out_prefix.empty()) {
        if (require_out) throw std::invalid_argument("--out is required");
        out_prefix = default_prefix(args);
    }
    BlowupGraph g = build_pipeline(args);
    write_blowup_files(g, out_prefix);
    std::cout << "n=" << g.graph.n() << " m=" << g.graph.m() << "\n";
    std::cerr << "wrote " << out_prefix << ".edges and " << out_prefix << ".meta.json\n";
    return 0;
}

int run_certify(const PipelineArgs& args, const std::string& graph_path,
                std::string meta_path, const std::string& checks_csv,
                const CertifyOptions& base_options, const std::string& out_path) {
    CertifyOptions options = base_options;
    options.checks = split_csv(checks_csv);

    std::optional<BlowupGraph> g;
    if (!graph_path.empty()) {
        if (meta_path.empty()) meta_path = default_meta_path(graph_path);
        g = load_blowup_files(graph_path, meta_path);
    } else {
        g = build_pipeline(args);
    }

    Certificate cert = run_certify(*g, options);
    for (const auto& entry : cert.checks) print_check_line(entry);
    const std::string json = cert.to_json();
    if (out_path.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
        out << json << "\n";
        std::cerr << "certificate written to " << out_path << "\n";
    }
    return cert.verdict() ? 0 : 1;
}

int run_search_lambda(std::int64_t p, int k) {
    LambdaSet lambda = find_suitable(p, k);
    SuitabilityReport report = is_suitable(lambda, p, k);
    ordered_json j;
    j["p"] = p;
    j["k"] = k;
    j["lambda"] = lambda.values;
    j["suitable"] = report.pass();
    j["conditions"] = ordered_json{{"cond1", report.cond1},
                                   {"cond2", report.cond2},
                                   {"cond3", report.cond3},
                                   {"distinct", report.distinct}};
    std::cout << j.dump(2) << "\n";
    return report.pass() ? 0 : 1;
}

ordered_json witness_json(const ViolationWitness& witness) {
    ordered_json j;
    if (witness.equation) {
        j["equation"] = {witness.equation->alpha, witness.equation->beta,
                         witness.equation->gamma, witness.equation->delta};
    } else {
        j["equation"] = "plain-sidon";
    }
    j["quadruple"] = {witness.quadruple[0].index, witness.quadruple[1].index,
                      witness.quadruple[2].index, witness.quadruple[3].index};
    return j;
}

int run_sidon_search(const std::string& group_text, int fold, std::size_t size,
                     std::uint64_t budget, const std::string& out_path) {
    GroupSpec group = parse_group_string(group_text);
    SidonSearchResult result = search_kfold_sidon(group, fold, size, budget);
    ordered_json j;
    j["group"] = group_to_string(group);
    j["fold"] = fold;
    j["target_size"] = size;
    j["nodes"] = result.nodes;
    switch (result.status) {
        case SearchStatus::found: {
            j["status"] = "found";
            auto& elems = j["elements"] = ordered_json::array();
            for (GroupElement e : result.set->elements) elems.push_back(e.index);
            break;
        }
        case SearchStatus::exhausted:
            j["status"] = "exhausted";
            break;
        case SearchStatus::budget_exceeded:
            j["status"] = "budget_exceeded";
            break;
    }
    std::cout << j.dump(2) << "\n";
    if (result.status != SearchStatus::found) return 1;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
        write_sidon_set(out, *result.set);
        std::cerr << "sidon set written to " << out_path << "\n";
    }
    return 0;
}

int run_sidon_verify(const std::string& path, int fold) {
    SidonSet set = load_sidon_file(path);
    SidonCheck check = fold == 1 ? is_sidon(set) : is_kfold_sidon(set, fold);
    ordered_json j;
    j["group"] = group_to_string(set.group);
    j["size"] = set.size();
    j["fold"] = fold;
    j["status"] = check.pass() ? "pass" : "fail";
    if (!check.skipped.empty()) {
        auto& sk = j["skipped_equations"] = ordered_json::array();
        for (const auto& eq : check.skipped) {
            sk.push_back({eq.alpha, eq.beta, eq.gamma, eq.delta});
        }
    }
    if (check.violation) j["witness"] = witness_json(*check.violation);
    std::cout << j.dump(2) << "\n";
    return check.pass() ? 0 : 1;
}

int run_girth5(const std::string& path) {
    Hypergraph h = load_hypergraph_file(path);
    auto witness = girth5_check(h);
    ordered_json j;
    j["r"] = h.r;
    j["vertices"] = h.num_vertices;
    j["hyperedges"] = h.edges.size();
    j["status"] = witness ? "fail" : "pass";
    if (witness) {
        j["witness"] = ordered_json{{"berge_cycle_length", witness->length},
                                    {"hyperedges", witness->edge_ids},
                                    {"vertices", witness->vertices}};
    }
    std::cout << j.dump(2) << "\n";
    return witness ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blow-up graph construction and exhaustive certification"};
    app.require_subcommand(1);

    PipelineArgs pipeline;
    auto add_pipeline_flags = [&pipeline](CLI::App* cmd) {
        cmd->add_option("--p", pipeline.p, "field prime (hk pipeline)");
        cmd->add_option("--k", pipeline.k, "pattern parameter k (hk pipeline)");
        cmd->add_option("--base", pipeline.base, "base pattern: hk or c4")
            ->default_str("hk");
        cmd->add_option("--N", pipeline.cyclic_n, "cyclic group order (c4 pipeline)");
        cmd->add_option("--sidon-file", pipeline.sidon_file,
                        "sidon set JSON (c4 pipeline)");
        cmd->add_option("--lambda", pipeline.lambda_csv,
                        "comma-separated lambda override");
    };

    std::string out_prefix;
    auto* construct = app.add_subcommand("construct", "build a blow-up graph and write files");
    add_pipeline_flags(construct);
    construct->add_option("--out", out_prefix, "output prefix (<prefix>.edges, <prefix>.meta.json)");

    auto* exporter = app.add_subcommand("export", "build and export a blow-up graph");
    add_pipeline_flags(exporter);
    exporter->add_option("--out", out_prefix, "output prefix")->required();

    std::string graph_path, meta_path, checks_csv, cert_out;
    CertifyOptions cert_options;
    auto* certify = app.add_subcommand("certify", "run the verification suite");
    add_pipeline_flags(certify);
    certify->add_option("--graph", graph_path, "edge-list file to certify");
    certify->add_option("--meta", meta_path, "metadata sidecar (default <graph>.meta.json)");
    certify->add_option("--checks", checks_csv, "comma-separated check names");
    certify->add_option("--sample", cert_options.sample_attempts,
                        "sampling attempts per absorption scan");
    certify->add_flag("--full-absorption", cert_options.full_absorption,
                      "exhaustive absorption scans");
    certify->add_option("--seed", cert_options.seed, "sampling seed (recorded in certificate)");
    certify->add_option("--threads", cert_options.threads,
                        "worker threads (0 = hardware parallelism)");
    certify->add_option("--out", cert_out, "write certificate JSON here instead of stdout");

    std::int64_t lambda_p = 0;
    int lambda_k = 0;
    auto* search_lambda = app.add_subcommand("search-lambda", "deterministic suitable lambda set");
    search_lambda->add_option("--p", lambda_p, "field prime")->required();
    search_lambda->add_option("--k", lambda_k, "pattern parameter k")->required();

    bool sidon_search = false, sidon_verify = false;
    std::string sidon_group, sidon_path, sidon_out;
    int sidon_fold = 1;
    std::size_t sidon_size = 1;
    std::uint64_t sidon_budget = 10'000'000;
    auto* sidon = app.add_subcommand("sidon", "search or verify k-fold sidon sets");
    sidon->add_flag("--search", sidon_search, "search mode");
    sidon->add_flag("--verify", sidon_verify, "verify mode");
    sidon->add_option("--group", sidon_group, "group, z:<N> or fp2:<p>");
    sidon->add_option("--fold", sidon_fold, "fold parameter k");
    sidon->add_option("--size", sidon_size, "target set size (search)");
    sidon->add_option("--budget", sidon_budget, "backtracking node budget (search)");
    sidon->add_option("--file", sidon_path, "sidon set JSON (verify)");
    sidon->add_option("--out", sidon_out, "write the found set here (search)");

    std::string girth_path;
    auto* girth5 = app.add_subcommand("girth5", "berge-girth-five hypergraph check");
    girth5->add_option("--file", girth_path, "hypergraph text file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed()) return run_construct(pipeline, out_prefix, false);
        if (exporter->parsed()) return run_construct(pipeline, out_prefix, true);
        if (certify->parsed()) {
            return run_certify(pipeline, graph_path, meta_path, checks_csv, cert_options,
                               cert_out);
        }
        if (search_lambda->parsed()) return run_search_lambda(lambda_p, lambda_k);
        if (sidon->parsed()) {
            if (sidon_search == sidon_verify) {
                throw std::invalid_argument("sidon: pass exactly one of --search / --verify");
            }
            if (sidon_search) {
                if (sidon_group.empty()) throw std::invalid_argument("sidon --search needs --group");
                return run_sidon_search(sidon_group, sidon_fold, sidon_size, sidon_budget,
                                        sidon_out);
            }
            if (sidon_path.empty()) throw std::invalid_argument("sidon --verify needs --file");
            return run_sidon_verify(sidon_path, sidon_fold);
        }
        if (girth5->parsed()) return run_girth5(girth_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
