#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace diskhull {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The key is
// the 64-bit master seed; the 128-bit counter is (block index, stream id), so
// every (seed, stream, block) triple maps to 128 output bits as a pure
// function. Streams with distinct ids never share counter blocks, which makes
// Monte Carlo results independent of worker count and scheduling.
namespace philox {

inline constexpr std::uint32_t kMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

using Block = std::array<std::uint32_t, 4>;

inline Block block(std::uint64_t seed, std::uint64_t stream, std::uint64_t block_index) {
    std::uint32_t c0 = static_cast<std::uint32_t>(block_index);
    std::uint32_t c1 = static_cast<std::uint32_t>(block_index >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        c0 = n0;
        c1 = lo1;
        c2 = n2;
        c3 = lo0;
        if (round < 9) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
    }
    return {c0, c1, c2, c3};
}

}  // namespace philox

// Sequential view of one Philox stream. Identical (master_seed, stream_id)
// always reproduces the identical draw sequence.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : seed_(master_seed), stream_(stream_id) {}

    std::uint64_t next_u64() {
        if (word_pos_ == 2) {
            const philox::Block b = philox::block(seed_, stream_, block_index_++);
            words_[0] = static_cast<std::uint64_t>(b[0]) | (static_cast<std::uint64_t>(b[1]) << 32);
            words_[1] = static_cast<std::uint64_t>(b[2]) | (static_cast<std::uint64_t>(b[3]) << 32);
            word_pos_ = 0;
        }
        return words_[word_pos_++];
    }

    // uniform on [0, 1), top 53 bits
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal pair, Marsaglia polar method
    std::pair<double, double> next_gaussian_pair() {
        for (;;) {
            const double u = 2.0 * next_unit() - 1.0;
            const double v = 2.0 * next_unit() - 1.0;
            const double s = u * u + v * v;
            if (s >= 1.0 || s == 0.0) continue;
            const double f = std::sqrt(-2.0 * std::log(s) / s);
            return {u * f, v * f};
        }
    }

    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const auto [g0, g1] = next_gaussian_pair();
        spare_ = g1;
        has_spare_ = true;
        return g0;
    }

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> words_{};
    int word_pos_ = 2;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RngStream(master_seed, stream_id);
}

}  // namespace diskhull
