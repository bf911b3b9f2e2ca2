#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bfpm {

/// Deterministic random source used by every seeded operation.
///
/// The engine is std::mt19937_64, whose output sequence for a given seed is
/// fixed by the C++ standard. Bounded draws and shuffles are implemented
/// here rather than with std::uniform_int_distribution / std::shuffle, whose
/// exact consumption of engine output is implementation-defined; with this
/// wrapper the same seed yields the same draws on any conforming toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). Rejection sampling on the top range
    /// keeps the result exactly uniform. bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1): rejects exact zeros so callers can rely on
    /// strictly positive draws.
    double unit_open() {
        double v = unit();
        while (v == 0.0) v = unit();
        return v;
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// 0..n-1 in shuffled order.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        shuffle(idx);
        return idx;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace bfpm
