#pragma once

#include <cstdint>
#include <string_view>

namespace qtdelta {

/// SplitMix64 stream with named sub-streams. Output depends only on the seed
/// and the chain of split names, never on the platform's <random>.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    Rng split(std::string_view name) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
        for (unsigned char c : name) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return Rng(mix(state_ ^ mix(h)));
    }
    Rng split(std::uint64_t index) const { return Rng(mix(state_ ^ mix(index + 0x9e3779b97f4a7c15ULL))); }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    /// Uniform nonzero integer in [-bound, bound].
    std::int64_t nonzero(std::int64_t bound) {
        std::int64_t v = uniform(1, bound);
        return coin() ? v : -v;
    }

    bool coin() { return (next() >> 63) != 0; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace qtdelta
