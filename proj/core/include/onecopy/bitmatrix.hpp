#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace onecopy {

/// Dense square bit matrix with 64-bit row words; rows are the adjacency
/// kernels the codegree scans intersect.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::uint32_t n)
        : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

    std::uint32_t size() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return words_; }

    void set(std::uint32_t r, std::uint32_t c) noexcept {
        bits_[static_cast<std::size_t>(r) * words_ + c / 64] |= (std::uint64_t{1} << (c % 64));
    }
    void clear(std::uint32_t r, std::uint32_t c) noexcept {
        bits_[static_cast<std::size_t>(r) * words_ + c / 64] &= ~(std::uint64_t{1} << (c % 64));
    }
    bool test(std::uint32_t r, std::uint32_t c) const noexcept {
        return (bits_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1;
    }
    const std::uint64_t* row(std::uint32_t r) const noexcept {
        return bits_.data() + static_cast<std::size_t>(r) * words_;
    }

    static std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                      std::size_t words) noexcept {
        std::uint64_t total = 0;
        for (std::size_t w = 0; w < words; ++w) total += std::popcount(a[w] & b[w]);
        return total;
    }

    /// popcount of (a & b) over bit positions [lo, hi)
    static std::uint64_t and_popcount_range(const std::uint64_t* a, const std::uint64_t* b,
                                            std::uint32_t lo, std::uint32_t hi) noexcept {
        if (lo >= hi) return 0;
        std::uint32_t wl = lo / 64, wh = (hi - 1) / 64;
        std::uint64_t first_mask = ~std::uint64_t{0} << (lo % 64);
        std::uint64_t last_mask = ~std::uint64_t{0} >> (63 - ((hi - 1) % 64));
        if (wl == wh) return std::popcount(a[wl] & b[wl] & first_mask & last_mask);
        std::uint64_t total = std::popcount(a[wl] & b[wl] & first_mask);
        for (std::uint32_t w = wl + 1; w < wh; ++w) total += std::popcount(a[w] & b[w]);
        total += std::popcount(a[wh] & b[wh] & last_mask);
        return total;
    }

    /// Append the positions of set bits of (a & b) within [lo, hi) to out.
    static void and_collect_range(const std::uint64_t* a, const std::uint64_t* b,
                                  std::uint32_t lo, std::uint32_t hi,
                                  std::vector<std::uint32_t>& out) {
        for (std::uint32_t w = lo / 64; w <= (hi == 0 ? 0 : (hi - 1) / 64) && lo < hi; ++w) {
            std::uint64_t word = a[w] & b[w];
            while (word) {
                std::uint32_t bit = w * 64 + static_cast<std::uint32_t>(std::countr_zero(word));
                word &= word - 1;
                if (bit < lo) continue;
                if (bit >= hi) return;
                out.push_back(bit);
            }
        }
    }

private:
    std::uint32_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace onecopy
