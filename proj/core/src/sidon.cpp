#include "onecopy/sidon.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace onecopy {

SidonSet::SidonSet(GroupSpec g, std::vector<GroupElement> elems)
    : group(g), elements(std::move(elems)) {
    std::sort(elements.begin(), elements.end());
    auto dup = std::adjacent_find(elements.begin(), elements.end());
    if (dup != elements.end()) {
        throw std::invalid_argument("SidonSet: duplicate element index " +
                                    std::to_string(dup->index));
    }
    for (GroupElement e : elements) {
        if (e.index >= group.order()) {
            throw std::invalid_argument("SidonSet: element " + std::to_string(e.index) +
                                        " outside group of order " +
                                        std::to_string(group.order()));
        }
    }
}

SidonSet SidonSet::parabola(std::int64_t p) {
    GroupSpec g = GroupSpec::field_pair(p);
    std::vector<GroupElement> elems;
    elems.reserve(static_cast<std::size_t>(p - 1));
    for (std::int64_t a = 1; a < p; ++a) {
        elems.push_back(make_pair_element(a, a * a % p, g));
    }
    return SidonSet(g, std::move(elems));
}

bool SidonSet::contains(GroupElement e) const {
    return std::binary_search(elements.begin(), elements.end(), e);
}

bool SidonSet::is_parabola() const {
    if (group.kind != GroupKind::field_pair) return false;
    const std::int64_t p = group.modulus;
    if (elements.size() != static_cast<std::size_t>(p - 1)) return false;
    for (GroupElement e : elements) {
        auto [x, y] = decode_pair(e, group);
        if (x == 0 || (x * x) % p != y) return false;
    }
    return true;
}

EquationSystem EquationSystem::build(int fold) {
    if (fold < 1) throw std::invalid_argument("EquationSystem: fold must be >= 1");
    EquationSystem sys;
    sys.fold = fold;
    for (int alpha = 1; alpha <= fold; ++alpha) {
        for (int beta = 1; beta <= fold; ++beta) {
            for (int gamma = -fold; gamma <= fold; ++gamma) {
                if (gamma == 0) continue;
                int delta = alpha + beta - gamma;
                if (delta == 0 || delta < -fold || delta > fold) continue;
                sys.equations.push_back({alpha, beta, gamma, delta});
            }
        }
    }
    return sys;
}

namespace {

bool same_multiset(GroupElement a, GroupElement b, GroupElement c, GroupElement d) {
    return (a == c && b == d) || (a == d && b == c);
}

std::uint64_t scaled(std::int64_t coeff, GroupElement e, const GroupSpec& g) {
    return scalar_act(coeff, e, g).index;
}

}  // namespace

SidonCheck is_sidon(const SidonSet& set) {
    SidonCheck result;
    const auto& a = set.elements;
    // sum index -> first unordered pair (i <= j) reaching it
    std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> seen;
    seen.reserve(a.size() * (a.size() + 1) / 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i; j < a.size(); ++j) {
            std::uint64_t s = group_add(a[i], a[j], set.group).index;
            auto [it, inserted] = seen.emplace(s, std::make_pair(i, j));
            if (!inserted) {
                auto [pi, pj] = it->second;
                result.violation =
                    ViolationWitness{std::nullopt, {a[pi], a[pj], a[i], a[j]}};
                return result;
            }
        }
    }
    return result;
}

SidonCheck is_kfold_sidon(const SidonSet& set, int fold) {
    SidonCheck result;
    const auto& a = set.elements;
    const GroupSpec& g = set.group;
    const std::int64_t exponent = g.exponent();
    EquationSystem sys = EquationSystem::build(fold);

    std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>> lhs;
    for (const EquationCoeffs& eq : sys.equations) {
        // Equations whose coefficients collapse in the scalar ring are
        // skipped and reported; the identity they express degenerates.
        auto collapses = [&](std::int64_t c) { return c % exponent == 0; };
        if (collapses(eq.alpha) || collapses(eq.beta) || collapses(eq.gamma) ||
            collapses(eq.delta) || collapses(eq.alpha + eq.beta)) {
            result.skipped.push_back(eq);
            continue;
        }
        lhs.clear();
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t va = scaled(eq.alpha, a[i], g);
            for (std::size_t j = 0; j < a.size(); ++j) {
                std::uint64_t s =
                    group_add(GroupElement{va}, GroupElement{scaled(eq.beta, a[j], g)}, g).index;
                lhs[s].emplace_back(i, j);
            }
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t vc = scaled(eq.gamma, a[i], g);
            for (std::size_t j = 0; j < a.size(); ++j) {
                std::uint64_t s =
                    group_add(GroupElement{vc}, GroupElement{scaled(eq.delta, a[j], g)}, g).index;
                auto it = lhs.find(s);
                if (it == lhs.end()) continue;
                for (auto [pi, pj] : it->second) {
                    if (!same_multiset(a[pi], a[pj], a[i], a[j])) {
                        result.violation = ViolationWitness{eq, {a[pi], a[pj], a[i], a[j]}};
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

SidonCheck is_dilate_difference_free(const SidonSet& set,
                                     const std::vector<std::int64_t>& multipliers) {
    if (set.group.kind != GroupKind::cyclic) {
        throw std::invalid_argument("is_dilate_difference_free: cyclic groups only");
    }
    const std::int64_t n = set.group.modulus;
    for (std::int64_t m : multipliers) {
        if (std::gcd(((m % n) + n) % n, n) != 1) {
            throw std::invalid_argument("is_dilate_difference_free: order " + std::to_string(n) +
                                        " not coprime to multiplier " + std::to_string(m));
        }
    }
    SidonCheck result;
    const auto& a = set.elements;
    // positive-orientation differences: (larger index first) covers every
    // violation up to flipping both sides
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (i == j) continue;
            diffs[group_sub(a[i], a[j], set.group).index].emplace_back(i, j);
        }
    }
    for (std::int64_t m : multipliers) {
        for (std::size_t c = 0; c < a.size(); ++c) {
            for (std::size_t d = 0; d < c; ++d) {
                std::uint64_t target =
                    scalar_act(m, group_sub(a[c], a[d], set.group), set.group).index;
                auto it = diffs.find(target);
                if (it == diffs.end()) continue;
                auto [i, j] = it->second.front();
                result.violation = ViolationWitness{
                    EquationCoeffs{1, -1, static_cast<int>(m), -static_cast<int>(m)},
                    {a[i], a[j], a[c], a[d]}};
                return result;
            }
        }
    }
    return result;
}

SidonSearchResult search_kfold_sidon(const GroupSpec& group, int fold,
                                     std::size_t target_size, std::uint64_t node_budget) {
    if (target_size < 1) {
        throw std::invalid_argument("search_kfold_sidon: target_size must be >= 1");
    }
    SidonSearchResult result;
    const std::uint64_t order = group.order();
    std::vector<GroupElement> current;
    current.reserve(target_size);

    // returns found / exhausted-at-this-level / budget hit
    enum class Step { found, exhausted, budget };
    auto rec = [&](auto&& self, std::uint64_t start) -> Step {
        if (current.size() == target_size) return Step::found;
        for (std::uint64_t x = start; x < order; ++x) {
            current.push_back(GroupElement{x});
            ++result.nodes;
            if (result.nodes > node_budget) {
                current.pop_back();
                return Step::budget;
            }
            if (is_kfold_sidon(SidonSet(group, current), fold).pass()) {
                Step s = self(self, x + 1);
                if (s != Step::exhausted) return s;
            }
            current.pop_back();
        }
        return Step::exhausted;
    };

    switch (rec(rec, 0)) {
        case Step::found:
            result.status = SearchStatus::found;
            result.set = SidonSet(group, current);
            break;
        case Step::exhausted:
            result.status = SearchStatus::exhausted;
            break;
        case Step::budget:
            result.status = SearchStatus::budget_exceeded;
            break;
    }
    return result;
}

namespace {

// SplitMix64; used wherever reproducible sampling is needed.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RuzsaReport ruzsa_identity_check(std::int64_t p, ScanMode mode, std::uint64_t seed) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("ruzsa_identity_check: p must be an odd prime");
    }
    PrimeField field(p);
    RuzsaReport report;

    auto test_tuple = [&](std::int64_t alpha, std::int64_t beta, std::int64_t gamma,
                          std::int64_t delta, std::int64_t inv_delta, std::int64_t a,
                          std::int64_t b, std::int64_t c) {
        std::int64_t lin = (alpha * a + beta * b) % p;
        std::int64_t quad = (alpha * a % p * a + beta * b % p * b) % p;
        std::int64_t d = field.reduce((lin - gamma * c % p) % p * inv_delta);
        ++report.tuples_tested;
        if ((gamma * c % p * c + delta * d % p * d) % p != quad) return;
        ++report.tuples_satisfying;
        std::int64_t ab = field.reduce(a - b);
        std::int64_t cd = field.reduce(c - d);
        std::int64_t lhs = alpha * beta % p * ab % p * ab % p;
        std::int64_t rhs = gamma * delta % p * cd % p * cd % p;
        if (lhs != rhs) {
            ++report.violations;
            if (!report.first_violation) {
                report.first_violation = {alpha, beta, gamma, delta, a, b, c, d};
            }
        }
    };

    if (mode.full) {
        for (std::int64_t alpha = 1; alpha < p; ++alpha) {
            for (std::int64_t beta = 1; beta < p; ++beta) {
                if ((alpha + beta) % p == 0) continue;
                for (std::int64_t gamma = 1; gamma < p; ++gamma) {
                    std::int64_t delta = (alpha + beta - gamma) % p;
                    if (delta < 0) delta += p;
                    if (delta == 0) continue;
                    std::int64_t inv_delta = field.inverse(delta);
                    for (std::int64_t a = 0; a < p; ++a) {
                        for (std::int64_t b = 0; b < p; ++b) {
                            for (std::int64_t c = 0; c < p; ++c) {
                                test_tuple(alpha, beta, gamma, delta, inv_delta, a, b, c);
                            }
                        }
                    }
                }
            }
        }
    } else {
        for (std::uint64_t s = 0; s < mode.samples; ++s) {
            std::uint64_t r = mix64(seed ^ mix64(s));
            auto draw = [&](std::int64_t lo, std::int64_t hi) {  // [lo, hi)
                r = mix64(r);
                return lo + static_cast<std::int64_t>(r % static_cast<std::uint64_t>(hi - lo));
            };
            std::int64_t alpha = draw(1, p), beta = draw(1, p);
            if ((alpha + beta) % p == 0) continue;
            std::int64_t gamma = draw(1, p);
            std::int64_t delta = (alpha + beta - gamma) % p;
            if (delta < 0) delta += p;
            if (delta == 0) continue;
            test_tuple(alpha, beta, gamma, delta, field.inverse(delta), draw(0, p), draw(0, p),
                       draw(0, p));
        }
    }
    return report;
}

}  // namespace onecopy
