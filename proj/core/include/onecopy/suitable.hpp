#pragma once

#include <cstdint>
#include <vector>

#include "onecopy/algebra.hpp"
#include "onecopy/blowup.hpp"

namespace onecopy {

struct SuitabilityViolation {
    int condition = 0;  // 1, 2, 3, or 0 for distinctness
    int i = 0, j = 0;   // offending vertex labels (j == 0 when unused)
    int chi_value = 0;
};

/// Outcome of the three sign conditions a suitable lambda set must satisfy,
/// with every violated constraint listed.
struct SuitabilityReport {
    bool cond1 = false;     // lambda_1 = 0, lambda_2 = 1
    bool cond2 = false;     // the four chi = -1 constraints on {1,2,3,4}
    bool cond3 = false;     // chi = +1 for 5 <= i <= k+2 < j <= 2k
    bool distinct = false;  // all 2k values distinct mod p
    std::vector<SuitabilityViolation> violations;

    bool pass() const noexcept { return cond1 && cond2 && cond3 && distinct; }
};

/// Evaluates every constraint with chi over F_p, using lambda_ij =
/// lambda_j - lambda_i. Requires |lambda| = 2k and p prime, p = 1 mod 4.
SuitabilityReport is_suitable(const LambdaSet& lambda, std::int64_t p, int k);

/// Deterministic smallest-candidate construction of a suitable set:
/// lambda_1 = 0, lambda_2 = 1, lambda_3 the least c with chi(c^2 - c) = -1,
/// lambda_4 the least fresh c with chi(c^2 - c) = chi(lambda_3 c) = -1, then
/// the least fresh values with chi((lambda_1 - c)(c - lambda_2)) = 1 and
/// chi((lambda_3 - c)(c - lambda_4)) = 1 for the two outer ranges.
/// Requires k >= 5, p >= 4k + 3, p prime, p = 1 mod 4.
LambdaSet find_suitable(std::int64_t p, int k);

/// chi(lambda_j - lambda_i) for all ordered pairs; 4-cycle sign products
/// come from four lookups.
class ChiDifferenceTable {
public:
    ChiDifferenceTable(const LambdaSet& lambda, const PrimeField& field);

    int size() const noexcept { return size_; }
    int at(int i, int j) const noexcept {  // 1-based labels
        return chi_[static_cast<std::size_t>(i - 1) * size_ + (j - 1)];
    }
    int cycle_product(int i, int j, int k, int l) const noexcept {
        return at(i, j) * at(j, k) * at(k, l) * at(l, i);
    }

private:
    int size_;
    std::vector<std::int8_t> chi_;
};

ChiDifferenceTable chi_difference_table(const LambdaSet& lambda, std::int64_t p);

}  // namespace onecopy
