#pragma once

// Counter-based per-frog random streams: output i of a stream is a pure
// function of (master_seed, episode_index, frog_key, i), so results do not
// depend on scheduling or thread count. The generator is the splitmix64
// finalizer over a keyed Weyl sequence.

#include <cstdint>

namespace frogcert {

namespace rng_detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace rng_detail

inline std::uint64_t stream_key(std::uint64_t master_seed,
                                std::uint64_t episode_index,
                                std::uint64_t frog_key) {
    std::uint64_t k = rng_detail::mix64(master_seed + 0x9e3779b97f4a7c15ull);
    k = rng_detail::mix64(k ^ (episode_index + 0x9e3779b97f4a7c15ull));
    k = rng_detail::mix64(k ^ (frog_key + 0x9e3779b97f4a7c15ull));
    return k;
}

class StreamRng {
public:
    explicit StreamRng(std::uint64_t key) : state_(key) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return rng_detail::mix64(state_);
    }

    // Unbiased uniform draw from {0, ..., n-1} via mask rejection.
    std::uint32_t bounded(std::uint32_t n) {
        if (n <= 1) return 0;
        std::uint32_t mask = n - 1;
        mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
        mask |= mask >> 8; mask |= mask >> 16;
        for (;;) {
            const auto v = static_cast<std::uint32_t>(next()) & mask;
            if (v < n) return v;
        }
    }

    // Exact Bernoulli(num/den) for small integer odds.
    bool bernoulli(std::uint32_t num, std::uint32_t den) {
        return bounded(den) < num;
    }

private:
    std::uint64_t state_;
};

} // namespace frogcert
