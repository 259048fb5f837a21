#include "onecopy/suitable.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace onecopy {

namespace {

PrimeField field_for_suitability(std::int64_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("suitable: " + std::to_string(p) + " is not prime");
    }
    if (p % 4 != 1) {
        // chi(lambda_ij) = chi(lambda_ji) requires chi(-1) = 1.
        throw std::invalid_argument("suitable: p = " + std::to_string(p) +
                                    " is not 1 mod 4");
    }
    return PrimeField(p);
}

}  // namespace

SuitabilityReport is_suitable(const LambdaSet& lambda, std::int64_t p, int k) {
    if (k < 3) throw std::invalid_argument("is_suitable: k must be >= 3");
    if (lambda.size() != static_cast<std::size_t>(2 * k)) {
        throw std::invalid_argument("is_suitable: expected 2k = " + std::to_string(2 * k) +
                                    " values, got " + std::to_string(lambda.size()));
    }
    PrimeField field = field_for_suitability(p);

    SuitabilityReport report;
    report.cond1 = report.cond2 = report.cond3 = report.distinct = true;
    auto lam = [&](int label) { return field.reduce(lambda.at(label)); };
    auto lij = [&](int i, int j) { return lam(j) - lam(i); };

    if (lam(1) != 0) {
        report.cond1 = false;
        report.violations.push_back({1, 1, 0, static_cast<int>(lam(1))});
    }
    if (lam(2) != 1) {
        report.cond1 = false;
        report.violations.push_back({1, 2, 0, static_cast<int>(lam(2))});
    }
    for (int i : {3, 4}) {
        int chi = field.chi(lij(1, i) * lij(i, 2));
        if (chi != -1) {
            report.cond2 = false;
            report.violations.push_back({2, 1, i, chi});
        }
    }
    for (int j : {1, 2}) {
        int chi = field.chi(lij(3, j) * lij(j, 4));
        if (chi != -1) {
            report.cond2 = false;
            report.violations.push_back({2, 3, j, chi});
        }
    }
    for (int i = 5; i <= k + 2; ++i) {
        int chi = field.chi(lij(1, i) * lij(i, 2));
        if (chi != 1) {
            report.cond3 = false;
            report.violations.push_back({3, 1, i, chi});
        }
    }
    for (int j = k + 3; j <= 2 * k; ++j) {
        int chi = field.chi(lij(3, j) * lij(j, 4));
        if (chi != 1) {
            report.cond3 = false;
            report.violations.push_back({3, 3, j, chi});
        }
    }
    std::unordered_set<std::int64_t> seen;
    for (int i = 1; i <= 2 * k; ++i) {
        if (!seen.insert(lam(i)).second) {
            report.distinct = false;
            report.violations.push_back({0, i, 0, 0});
        }
    }
    return report;
}

LambdaSet find_suitable(std::int64_t p, int k) {
    if (k < 5) throw std::invalid_argument("find_suitable: k must be >= 5");
    if (p < 4 * k + 3) {
        throw std::invalid_argument("find_suitable: p = " + std::to_string(p) +
                                    " is below 4k + 3 = " + std::to_string(4 * k + 3));
    }
    PrimeField field = field_for_suitability(p);

    std::vector<std::int64_t> lam = {0, 1};
    auto taken = [&](std::int64_t c) {
        return std::find(lam.begin(), lam.end(), c) != lam.end();
    };
    auto pick_least = [&](auto&& pred, const char* stage) {
        for (std::int64_t c = 0; c < p; ++c) {
            if (!taken(c) && pred(c)) {
                lam.push_back(c);
                return;
            }
        }
        // unreachable for p >= 4k + 3 by the |X| and (p-3)/2 counting bounds
        throw std::runtime_error(std::string("find_suitable: candidate pool exhausted at ") +
                                 stage);
    };

    pick_least([&](std::int64_t c) { return field.chi(c * c - c) == -1; }, "lambda_3");
    const std::int64_t l3 = lam.back();
    pick_least(
        [&](std::int64_t c) {
            return field.chi(c * c - c) == -1 && field.chi(l3 * c) == -1;
        },
        "lambda_4");
    const std::int64_t l4 = lam.back();
    while (lam.size() < static_cast<std::size_t>(k + 2)) {
        pick_least([&](std::int64_t c) { return field.chi((0 - c) * (c - 1)) == 1; },
                   "inner range");
    }
    while (lam.size() < static_cast<std::size_t>(2 * k)) {
        pick_least([&](std::int64_t c) { return field.chi((l3 - c) * (c - l4)) == 1; },
                   "outer range");
    }
    return LambdaSet{std::move(lam)};
}

ChiDifferenceTable::ChiDifferenceTable(const LambdaSet& lambda, const PrimeField& field)
    : size_(static_cast<int>(lambda.size())),
      chi_(static_cast<std::size_t>(size_) * size_, 0) {
    for (int i = 1; i <= size_; ++i) {
        for (int j = 1; j <= size_; ++j) {
            if (i == j) continue;
            chi_[static_cast<std::size_t>(i - 1) * size_ + (j - 1)] =
                static_cast<std::int8_t>(field.chi(lambda.at(j) - lambda.at(i)));
        }
    }
}

ChiDifferenceTable chi_difference_table(const LambdaSet& lambda, std::int64_t p) {
    PrimeField field(p);
    std::unordered_set<std::int64_t> seen;
    for (std::int64_t v : lambda.values) {
        if (!seen.insert(field.reduce(v)).second) {
            throw std::invalid_argument("chi_difference_table: lambda values not distinct mod p");
        }
    }
    return ChiDifferenceTable(lambda, field);
}

}  // namespace onecopy
