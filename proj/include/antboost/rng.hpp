#ifndef ANTBOOST_RNG_HPP
#define ANTBOOST_RNG_HPP

#include <cmath>
#include <cstdint>

namespace antboost {

/// Counter-style 64-bit generator (splitmix64 core) with cheap stream
/// derivation. A stream is a pure function of (master_seed, stream_index):
/// the same pair always reproduces the same draw sequence, and distinct
/// stream indices give statistically independent sequences. This is what
/// lets replicates run in any order, on any thread count, with identical
/// results.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_seed_(master_seed), stream_index_(stream_index) {
        state_ = mix64(mix64(master_seed ^ 0x6a09e667f3bcc908ULL) +
                       stream_index * 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw, Marsaglia polar method (second value cached).
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    /// Unbiased uniform integer in [0, bound) via rejection.
    std::size_t next_below(std::size_t bound) {
        const std::uint64_t n = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    std::uint64_t master_seed_ = 0;
    std::uint64_t stream_index_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return RngStream(master_seed, stream_index);
}

} // namespace antboost

#endif
