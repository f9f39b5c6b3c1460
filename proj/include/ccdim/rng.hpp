#pragma once

#include <cstdint>

namespace ccdim {

// Counter-based deterministic generator (splitmix64 finalizer applied to a
// keyed counter). Streams derived from (seed, stream) are independent, so
// trials can run concurrently and still reproduce bit-for-bit.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))), counter_(0) {}

    static CounterRng derive(uint64_t seed, uint64_t stream) { return CounterRng(seed, stream); }

    uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    // Unbiased uniform draw in [0, n).
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t threshold = -n % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in [lo, hi] inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next_u64() & 1; }

  private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t key_;
    uint64_t counter_;
};

}  // namespace ccdim
