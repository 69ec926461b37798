#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wtp {

/// Contiguous coordinate block [lo, hi] with 1-based block index. The leader
/// coordinate lo carries the block's frozen weight in the product bounds.
struct CoordinateBlock {
    std::size_t index = 0;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    std::uint64_t size() const { return hi - lo + 1; }
    std::uint64_t leader() const { return lo; }
};

/// Doubling partition of coordinates 1..d for d >= 8:
/// block i covers [2^(i-1), 2^i - 1] for i < L, and block L covers
/// [2^(L-1), d], where L = floor(log2 d). Every block i satisfies
/// 2^(i-1) <= size < 2^(i+1).
class DyadicPartition {
public:
    explicit DyadicPartition(std::uint64_t d) {
        if (d < 8)
            throw std::invalid_argument(
                "dyadic partition requires d >= 8; for smaller d use exact counting");
        const unsigned L = std::bit_width(d) - 1;  // floor(log2 d)
        blocks_.reserve(L);
        for (unsigned i = 1; i <= L; ++i) {
            const std::uint64_t lo = std::uint64_t{1} << (i - 1);
            const std::uint64_t hi = (i < L) ? (std::uint64_t{1} << i) - 1 : d;
            blocks_.push_back(CoordinateBlock{i, lo, hi});
        }
    }

    const std::vector<CoordinateBlock>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    const CoordinateBlock& block(std::size_t index_1based) const {
        if (index_1based < 1 || index_1based > blocks_.size())
            throw std::invalid_argument("dyadic partition: block index out of range");
        return blocks_[index_1based - 1];
    }

private:
    std::vector<CoordinateBlock> blocks_;
};

} // namespace wtp
