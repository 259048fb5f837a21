#include "onecopy/algebra.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace onecopy {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
    if (p >= (std::int64_t{1} << 31)) {
        throw std::invalid_argument("PrimeField: p must be < 2^31, got " + std::to_string(p));
    }
    if (!is_prime(p)) {
        throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    }
    table_.assign(static_cast<std::size_t>(p), -1);
    table_[0] = 0;
    for (std::int64_t x = 1; x < p; ++x) {
        table_[static_cast<std::size_t>((x * x) % p)] = 1;
    }
}

std::int64_t PrimeField::inverse(std::int64_t a) const {
    a = reduce(a);
    if (a == 0) throw std::invalid_argument("PrimeField::inverse of zero");
    std::int64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % p_;
        base = (base * base) % p_;
        e >>= 1;
    }
    return result;
}

int legendre(std::int64_t x, const PrimeField& field) { return field.chi(x); }

std::int64_t char_sum_quadratic(std::int64_t a2, std::int64_t a1, std::int64_t a0,
                                const PrimeField& field) {
    const std::int64_t p = field.p();
    a2 = field.reduce(a2);
    a1 = field.reduce(a1);
    a0 = field.reduce(a0);
    if (a2 == 0) {
        throw std::invalid_argument("char_sum_quadratic: leading coefficient is 0 mod p");
    }
    std::int64_t sum = 0;
    for (std::int64_t c = 0; c < p; ++c) {
        std::int64_t v = (a2 * c % p * c + a1 * c + a0) % p;
        sum += field.chi(v);
    }
    return sum;
}

GroupSpec GroupSpec::cyclic(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("GroupSpec::cyclic: order must be >= 2");
    return GroupSpec{GroupKind::cyclic, n};
}

GroupSpec GroupSpec::field_pair(std::int64_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("GroupSpec::field_pair: " + std::to_string(p) +
                                    " is not prime");
    }
    return GroupSpec{GroupKind::field_pair, p};
}

namespace {

void check_member(GroupElement e, const GroupSpec& group, const char* where) {
    if (e.index >= group.order()) {
        throw std::invalid_argument(std::string(where) + ": element index " +
                                    std::to_string(e.index) + " outside group of order " +
                                    std::to_string(group.order()));
    }
}

}  // namespace

GroupElement make_element(std::uint64_t index, const GroupSpec& group) {
    GroupElement e{index};
    check_member(e, group, "make_element");
    return e;
}

GroupElement make_pair_element(std::int64_t x, std::int64_t y, const GroupSpec& group) {
    if (group.kind != GroupKind::field_pair) {
        throw std::invalid_argument("make_pair_element: group is not a field pair");
    }
    const std::int64_t p = group.modulus;
    auto red = [p](std::int64_t v) {
        std::int64_t r = v % p;
        return r < 0 ? r + p : r;
    };
    return GroupElement{static_cast<std::uint64_t>(red(x) * p + red(y))};
}

std::pair<std::int64_t, std::int64_t> decode_pair(GroupElement e, const GroupSpec& group) {
    if (group.kind != GroupKind::field_pair) {
        throw std::invalid_argument("decode_pair: group is not a field pair");
    }
    check_member(e, group, "decode_pair");
    const auto p = static_cast<std::uint64_t>(group.modulus);
    return {static_cast<std::int64_t>(e.index / p), static_cast<std::int64_t>(e.index % p)};
}

GroupElement group_add(GroupElement a, GroupElement b, const GroupSpec& group) {
    check_member(a, group, "group_add");
    check_member(b, group, "group_add");
    if (group.kind == GroupKind::cyclic) {
        const auto n = static_cast<std::uint64_t>(group.modulus);
        return GroupElement{(a.index + b.index) % n};
    }
    const auto p = static_cast<std::uint64_t>(group.modulus);
    std::uint64_t x = (a.index / p + b.index / p) % p;
    std::uint64_t y = (a.index % p + b.index % p) % p;
    return GroupElement{x * p + y};
}

GroupElement group_neg(GroupElement a, const GroupSpec& group) {
    check_member(a, group, "group_neg");
    if (group.kind == GroupKind::cyclic) {
        const auto n = static_cast<std::uint64_t>(group.modulus);
        return GroupElement{a.index == 0 ? 0 : n - a.index};
    }
    const auto p = static_cast<std::uint64_t>(group.modulus);
    std::uint64_t x = a.index / p, y = a.index % p;
    return GroupElement{(x == 0 ? 0 : p - x) * p + (y == 0 ? 0 : p - y)};
}

GroupElement group_sub(GroupElement a, GroupElement b, const GroupSpec& group) {
    return group_add(a, group_neg(b, group), group);
}

GroupElement scalar_act(std::int64_t lambda, GroupElement g, const GroupSpec& group) {
    check_member(g, group, "scalar_act");
    const std::int64_t e = group.exponent();
    std::int64_t l = lambda % e;
    if (l < 0) l += e;
    if (group.kind == GroupKind::cyclic) {
        const auto n = static_cast<std::uint64_t>(group.modulus);
        auto prod = static_cast<unsigned __int128>(l) * g.index;
        return GroupElement{static_cast<std::uint64_t>(prod % n)};
    }
    const auto p = static_cast<std::uint64_t>(group.modulus);
    const auto lu = static_cast<std::uint64_t>(l);
    std::uint64_t x = lu * (g.index / p) % p;
    std::uint64_t y = lu * (g.index % p) % p;
    return GroupElement{x * p + y};
}

bool scalar_invertible(std::int64_t lambda, const GroupSpec& group) {
    const std::int64_t e = group.exponent();
    std::int64_t l = lambda % e;
    if (l < 0) l += e;
    if (group.kind == GroupKind::cyclic) {
        return std::gcd(l, e) == 1;
    }
    return l != 0;
}

}  // namespace onecopy
