#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace onecopy {

bool is_prime(std::int64_t n);

/// The quadratic character chi of F_p, backed by a precomputed residue
/// table: chi(0) = 0, chi(x) = +1 for nonzero squares, -1 otherwise.
/// The table is filled once by squaring enumeration so that lookups are
/// a single indexed read; verification scans perform millions of them.
class PrimeField {
public:
    /// Requires p prime and p < 2^31 (so products fit 64-bit intermediates).
    explicit PrimeField(std::int64_t p);

    std::int64_t p() const noexcept { return p_; }

    /// Canonical representative of x in [0, p).
    std::int64_t reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % p_;
        return r < 0 ? r + p_ : r;
    }

    /// chi(x mod p) in {-1, 0, +1}.
    int chi(std::int64_t x) const noexcept { return table_[reduce(x)]; }

    std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept {
        return (reduce(a) * reduce(b)) % p_;
    }

    /// Inverse of a nonzero residue (Fermat).
    std::int64_t inverse(std::int64_t a) const;

    const std::vector<std::int8_t>& residue_table() const noexcept { return table_; }

private:
    std::int64_t p_;
    std::vector<std::int8_t> table_;
};

/// Legendre symbol of x over the field.
int legendre(std::int64_t x, const PrimeField& field);

/// Sum of chi(a2*c^2 + a1*c + a0) over all c in F_p, by full enumeration.
/// Rejects a2 == 0 mod p.
std::int64_t char_sum_quadratic(std::int64_t a2, std::int64_t a1, std::int64_t a0,
                                const PrimeField& field);

enum class GroupKind { cyclic, field_pair };

/// A finite abelian group: Z_N, or F_p x F_p for a prime p.
struct GroupSpec {
    GroupKind kind = GroupKind::cyclic;
    std::int64_t modulus = 0;  // N for cyclic, p for field_pair

    static GroupSpec cyclic(std::int64_t n);
    static GroupSpec field_pair(std::int64_t p);

    std::uint64_t order() const noexcept {
        return kind == GroupKind::cyclic
                   ? static_cast<std::uint64_t>(modulus)
                   : static_cast<std::uint64_t>(modulus) * static_cast<std::uint64_t>(modulus);
    }
    /// Exponent of the group: N for Z_N, p for F_p x F_p.
    std::int64_t exponent() const noexcept { return modulus; }

    bool operator==(const GroupSpec&) const = default;
};

/// Group element stored as its canonical index in [0, order).
/// For field_pair(p), (x, y) has index x*p + y.
struct GroupElement {
    std::uint64_t index = 0;
    auto operator<=>(const GroupElement&) const = default;
};

GroupElement make_element(std::uint64_t index, const GroupSpec& group);
GroupElement make_pair_element(std::int64_t x, std::int64_t y, const GroupSpec& group);
std::pair<std::int64_t, std::int64_t> decode_pair(GroupElement e, const GroupSpec& group);

GroupElement group_add(GroupElement a, GroupElement b, const GroupSpec& group);
GroupElement group_sub(GroupElement a, GroupElement b, const GroupSpec& group);
GroupElement group_neg(GroupElement a, const GroupSpec& group);

/// lambda * g under the integer scalar action; lambda may be negative.
GroupElement scalar_act(std::int64_t lambda, GroupElement g, const GroupSpec& group);

/// True iff x -> lambda*x is a bijection on the group:
/// gcd(lambda, N) == 1 for Z_N, lambda != 0 mod p for F_p x F_p.
bool scalar_invertible(std::int64_t lambda, const GroupSpec& group);

}  // namespace onecopy
