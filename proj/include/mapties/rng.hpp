// Counter-based pseudo-random stream.
//
// Each stream is a pure function of (seed, stream id, counter), so trials and
// sample blocks can run in any order or in parallel and still reproduce the
// same draws. Not cryptographic; statistics follow the splitmix64 finalizer.

#pragma once

#include "mapties/rational.hpp"

#include <cstdint>

namespace mapties {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
  public:
    static CounterRng keyed(std::uint64_t seed, std::uint64_t stream) {
        CounterRng rng;
        rng.key_ = mix64(seed ^ mix64(stream + 0x5851f42d4c957f2dULL));
        return rng;
    }

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    /// Unbiased uniform draw from [0, bound) via rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x < limit) return x % bound;
        }
    }

    /// Uniform draw from [0, bound) for arbitrary-precision bounds.
    BigInt below_big(const BigInt& bound) {
        const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
        for (;;) {
            BigInt x = 0;
            for (unsigned got = 0; got < bits; got += 64) {
                x <<= 64;
                x |= BigInt(next_u64());
            }
            x >>= (64 - bits % 64) % 64;
            if (x < bound) return x;
        }
    }

    bool coin() { return next_u64() & 1; }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace mapties
