#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onecopy/blowup.hpp"
#include "onecopy/verify.hpp"

namespace onecopy {

enum class CheckStatus { pass, fail, skipped };

const char* to_string(CheckStatus status);

struct CheckEntry {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    /// Rendered JSON object text for details and array text for witnesses;
    /// kept as strings so the public header stays dependency-free.
    std::string details_json = "{}";
    std::string witnesses_json = "[]";
    std::int64_t millis = 0;
};

struct Certificate {
    int schema_version = 1;
    std::string params_json = "{}";
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::vector<CheckEntry> checks;

    bool verdict() const noexcept {
        for (const auto& c : checks) {
            if (c.status == CheckStatus::fail) return false;
        }
        return true;
    }

    /// Canonical serialization: fixed key order, integers in exact fields.
    std::string to_json(int indent = 2) const;
};

struct CertifyOptions {
    /// Empty selects the defaults for the pipeline kind. Known names:
    /// counts, decomposition, c4free, k23free, copies, c4count,
    /// absorption, density.
    std::vector<std::string> checks;
    std::uint64_t sample_attempts = 5'000'000;
    bool full_absorption = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

const std::vector<std::string>& known_check_names();

/// Runs the selected checks against the graph and assembles the
/// certificate. Inapplicable selected checks come back as skipped.
Certificate run_certify(const BlowupGraph& g, const CertifyOptions& options);

}  // namespace onecopy
