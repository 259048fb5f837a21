#include "onecopy/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace onecopy {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* kind_name(GroupKind kind) {
    return kind == GroupKind::cyclic ? "cyclic" : "field_pair";
}

ordered_json group_json(const GroupSpec& group) {
    ordered_json j;
    j["kind"] = kind_name(group.kind);
    if (group.kind == GroupKind::cyclic) {
        j["n"] = group.modulus;
    } else {
        j["p"] = group.modulus;
    }
    return j;
}

GroupSpec group_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return GroupSpec::cyclic(j.at("n").get<std::int64_t>());
    if (kind == "field_pair") return GroupSpec::field_pair(j.at("p").get<std::int64_t>());
    throw std::runtime_error("unknown group kind '" + kind + "'");
}

ordered_json sidon_json(const SidonSet& set) {
    ordered_json j;
    if (set.is_parabola()) {
        j["description"] = "parabola(p=" + std::to_string(set.group.modulus) + ")";
    } else {
        j["description"] = "explicit";
    }
    auto& elems = j["elements"] = ordered_json::array();
    for (GroupElement e : set.elements) elems.push_back(e.index);
    return j;
}

std::vector<GroupElement> elements_from_json(const ordered_json& j) {
    std::vector<GroupElement> elems;
    for (const auto& v : j) elems.push_back(GroupElement{v.get<std::uint64_t>()});
    return elems;
}

ordered_json base_json(const BaseGraph& base) {
    ordered_json j;
    switch (base.kind) {
        case BaseGraph::Kind::hk:
            j["kind"] = "hk";
            j["k"] = base.hk_param;
            break;
        case BaseGraph::Kind::c4:
            j["kind"] = "c4";
            break;
        case BaseGraph::Kind::custom:
            j["kind"] = "custom";
            break;
    }
    j["vertices"] = base.num_vertices;
    auto& edges = j["edges"] = ordered_json::array();
    for (auto [a, b] : base.edges) edges.push_back(ordered_json::array({a, b}));
    return j;
}

BaseGraph base_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "hk") return make_hk(j.at("k").get<int>());
    if (kind == "c4") return make_c4();
    if (kind == "custom") {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        return make_custom(j.at("vertices").get<int>(), std::move(edges));
    }
    throw std::runtime_error("unknown base kind '" + kind + "'");
}

}  // namespace

void write_edge_list(std::ostream& out, const BlowupGraph& g) {
    out << "# blowup kind=" << kind_name(g.group.kind) << " p=" << g.group.modulus
        << " k=" << g.base.num_vertices << "\n";
    out << g.graph.n() << ' ' << g.graph.m() << "\n";
    for (auto [u, v] : g.graph.edges()) out << u << ' ' << v << "\n";
}

void write_metadata(std::ostream& out, const BlowupGraph& g) {
    ordered_json j;
    j["schema_version"] = 1;
    j["group"] = group_json(g.group);
    j["base"] = base_json(g.base);
    j["lambda"] = g.lambda.values;
    j["sidon"] = sidon_json(g.sidon);
    j["n"] = g.graph.n();
    j["m"] = g.graph.m();
    out << j.dump(2) << "\n";
}

void write_blowup_files(const BlowupGraph& g, const std::string& prefix) {
    {
        std::ofstream edges(prefix + ".edges");
        if (!edges) throw std::runtime_error("cannot open " + prefix + ".edges for writing");
        write_edge_list(edges, g);
    }
    std::ofstream meta(prefix + ".meta.json");
    if (!meta) throw std::runtime_error("cannot open " + prefix + ".meta.json for writing");
    write_metadata(meta, g);
}

BlowupGraph load_blowup(std::istream& edges_in, std::istream& meta_in) {
    ordered_json meta;
    try {
        meta = ordered_json::parse(meta_in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("metadata is not valid JSON: ") + e.what());
    }
    GroupSpec group = group_from_json(meta.at("group"));
    BaseGraph base = base_from_json(meta.at("base"));
    LambdaSet lambda{meta.at("lambda").get<std::vector<std::int64_t>>()};
    SidonSet sidon(group, elements_from_json(meta.at("sidon").at("elements")));

    std::string line;
    while (std::getline(edges_in, line)) {
        if (!line.empty() && line[0] != '#') break;
    }
    std::istringstream header(line);
    std::uint64_t n = 0, m = 0;
    if (!(header >> n >> m)) throw std::runtime_error("edge list: missing 'n m' header line");
    if (n != meta.at("n").get<std::uint64_t>()) {
        throw std::runtime_error("edge list vertex count disagrees with metadata");
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint32_t u = 0, v = 0;
        if (!(edges_in >> u >> v)) {
            throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                     " edges, got " + std::to_string(i));
        }
        edges.emplace_back(u, v);
    }
    return assemble_blowup(group, base, lambda, sidon, std::move(edges));
}

BlowupGraph load_blowup_files(const std::string& edges_path, const std::string& meta_path) {
    std::ifstream edges(edges_path);
    if (!edges) throw std::runtime_error("cannot open " + edges_path);
    std::ifstream meta(meta_path);
    if (!meta) throw std::runtime_error("cannot open " + meta_path);
    return load_blowup(edges, meta);
}

std::string default_meta_path(const std::string& edges_path) {
    const std::string suffix = ".edges";
    if (edges_path.size() > suffix.size() &&
        edges_path.compare(edges_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return edges_path.substr(0, edges_path.size() - suffix.size()) + ".meta.json";
    }
    return edges_path + ".meta.json";
}

void write_sidon_set(std::ostream& out, const SidonSet& set) {
    ordered_json j;
    j["group"] = group_json(set.group);
    auto& elems = j["elements"] = ordered_json::array();
    for (GroupElement e : set.elements) elems.push_back(e.index);
    out << j.dump(2) << "\n";
}

SidonSet read_sidon_set(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("sidon file is not valid JSON: ") + e.what());
    }
    GroupSpec group = group_from_json(j.at("group"));
    return SidonSet(group, elements_from_json(j.at("elements")));
}

SidonSet load_sidon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_sidon_set(in);
}

Hypergraph read_hypergraph(std::istream& in) {
    int r = 0;
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    if (!(in >> r >> n >> m)) {
        throw std::runtime_error("hypergraph: expected header 'r n m'");
    }
    if (r < 2) throw std::runtime_error("hypergraph: r must be >= 2");
    std::vector<std::vector<std::uint32_t>> edges;
    edges.reserve(m);
    for (std::uint64_t e = 0; e < m; ++e) {
        std::vector<std::uint32_t> edge(static_cast<std::size_t>(r));
        for (auto& v : edge) {
            if (!(in >> v)) {
                throw std::runtime_error("hypergraph: truncated hyperedge " + std::to_string(e));
            }
        }
        edges.push_back(std::move(edge));
    }
    return Hypergraph(r, n, std::move(edges));
}

Hypergraph load_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_hypergraph(in);
}

GroupSpec parse_group_string(const std::string& text) {
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        const std::string value = text.substr(colon + 1);
        try {
            if (kind == "z" || kind == "Z" || kind == "cyclic") {
                return GroupSpec::cyclic(std::stoll(value));
            }
            if (kind == "fp2" || kind == "FP2" || kind == "field_pair") {
                return GroupSpec::field_pair(std::stoll(value));
            }
        } catch (const std::logic_error&) {
            throw std::runtime_error("bad group modulus in '" + text + "'");
        }
    }
    throw std::runtime_error("cannot parse group '" + text + "' (use z:<N> or fp2:<p>)");
}

std::string group_to_string(const GroupSpec& group) {
    return (group.kind == GroupKind::cyclic ? "z:" : "fp2:") + std::to_string(group.modulus);
}

}  // namespace onecopy
