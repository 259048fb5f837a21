#pragma once

#include <iosfwd>
#include <string>

#include "onecopy/blowup.hpp"
#include "onecopy/sidon.hpp"
#include "onecopy/verify.hpp"

namespace onecopy {

/// Edge-list format: `# blowup kind=<kind> p=<modulus> k=<parts>`, then
/// `n m`, then one `u v` pair per line, zero-based, u < v, sorted.
void write_edge_list(std::ostream& out, const BlowupGraph& g);

/// JSON sidecar describing the group, base pattern, lambda values and
/// sidon set, plus the expected n and m.
void write_metadata(std::ostream& out, const BlowupGraph& g);

/// Writes <prefix>.edges and <prefix>.meta.json.
void write_blowup_files(const BlowupGraph& g, const std::string& prefix);

/// Rebuilds a blow-up context from exported files. The edge list is taken
/// as-is (it may disagree with the construction rule; the checks will say).
BlowupGraph load_blowup(std::istream& edges, std::istream& meta);
BlowupGraph load_blowup_files(const std::string& edges_path, const std::string& meta_path);

/// <prefix>.edges -> <prefix>.meta.json
std::string default_meta_path(const std::string& edges_path);

void write_sidon_set(std::ostream& out, const SidonSet& set);
SidonSet read_sidon_set(std::istream& in);
SidonSet load_sidon_file(const std::string& path);

/// Text format: first line `r n m`, then one hyperedge (r vertex ids) per line.
Hypergraph read_hypergraph(std::istream& in);
Hypergraph load_hypergraph_file(const std::string& path);

/// "z:<N>" for Z_N, "fp2:<p>" for F_p x F_p.
GroupSpec parse_group_string(const std::string& text);
std::string group_to_string(const GroupSpec& group);

}  // namespace onecopy
