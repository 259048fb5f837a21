#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "onecopy/algebra.hpp"

namespace onecopy {

/// Duplicate-free element set of a group, strictly sorted by canonical index.
struct SidonSet {
    GroupSpec group;
    std::vector<GroupElement> elements;

    SidonSet(GroupSpec g, std::vector<GroupElement> elems);

    /// S = {(a, a^2) : a in F_p^*} over F_p x F_p.
    static SidonSet parabola(std::int64_t p);

    std::size_t size() const noexcept { return elements.size(); }
    bool contains(GroupElement e) const;
    bool is_parabola() const;
};

/// One equation alpha*a + beta*b = gamma*c + delta*d of a fold system.
struct EquationCoeffs {
    int alpha = 1, beta = 1, gamma = 1, delta = 1;
    auto operator<=>(const EquationCoeffs&) const = default;
};

/// All coefficient quadruples with alpha + beta = gamma + delta,
/// 1 <= alpha, beta <= k and 1 <= |gamma|, |delta| <= k.
struct EquationSystem {
    int fold = 1;
    std::vector<EquationCoeffs> equations;

    static EquationSystem build(int fold);
};

struct ViolationWitness {
    /// Equation the quadruple satisfies; nullopt means the plain Sidon
    /// equation a + b = c + d.
    std::optional<EquationCoeffs> equation;
    std::array<GroupElement, 4> quadruple;  // (a, b, c, d)
};

struct SidonCheck {
    std::optional<ViolationWitness> violation;
    /// Equations skipped because a coefficient (or alpha + beta) collapsed
    /// to zero in the scalar ring.
    std::vector<EquationCoeffs> skipped;

    bool pass() const noexcept { return !violation.has_value(); }
};

/// Plain Sidon check through the pairwise-sum multiset (a + a allowed).
SidonCheck is_sidon(const SidonSet& set);

/// k-fold Sidon check over the full equation system of the fold.
/// A quadruple with {a,b} = {c,d} as multisets is never a violation.
SidonCheck is_kfold_sidon(const SidonSet& set, int fold);

/// No a - b = m(c - d) with a != b or c != d, for each multiplier m.
/// Requires a cyclic group with order coprime to every multiplier.
SidonCheck is_dilate_difference_free(const SidonSet& set,
                                     const std::vector<std::int64_t>& multipliers = {2, 3});

enum class SearchStatus { found, exhausted, budget_exceeded };

struct SidonSearchResult {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<SidonSet> set;
    std::uint64_t nodes = 0;
};

/// Deterministic lexicographic backtracking over canonical indices; returns
/// the first set of target_size whose every prefix passes is_kfold_sidon.
SidonSearchResult search_kfold_sidon(const GroupSpec& group, int fold,
                                     std::size_t target_size, std::uint64_t node_budget);

struct ScanMode {
    bool full = true;
    std::uint64_t samples = 0;

    static ScanMode full_scan() { return {true, 0}; }
    static ScanMode sampled(std::uint64_t n) { return {false, n}; }
};

struct RuzsaReport {
    std::uint64_t tuples_tested = 0;
    std::uint64_t tuples_satisfying = 0;
    std::uint64_t violations = 0;
    /// (alpha, beta, gamma, delta, a, b, c, d) of the first violation seen.
    std::optional<std::array<std::int64_t, 8>> first_violation;
};

/// Enumerates coefficient triples (alpha, beta, gamma) in F_p^* with
/// delta = alpha + beta - gamma (skipping delta = 0 and alpha + beta = 0)
/// and points (a, b, c) in F_p, solves the linear coordinate for d, and
/// asserts alpha*beta*(a-b)^2 = gamma*delta*(c-d)^2 whenever the quadratic
/// coordinate also matches.
RuzsaReport ruzsa_identity_check(std::int64_t p, ScanMode mode, std::uint64_t seed = 0);

}  // namespace onecopy
