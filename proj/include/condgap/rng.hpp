#pragma once

#include <cstdint>

namespace condgap {

// Counter-based splitmix64. stream(seed, i) is a pure function of (seed, i),
// so sample i is the same no matter how the index range is partitioned.
inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t stream_u64(uint64_t seed, uint64_t index) {
    return splitmix64(seed ^ (index * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL));
}

// uniform in [0,1)
inline double stream_unit(uint64_t seed, uint64_t index) {
    return (stream_u64(seed, index) >> 11) * 0x1.0p-53;
}

// Small sequential generator for validation sampling.
class SplitMix {
  public:
    explicit SplitMix(uint64_t seed) : state_(seed) {}
    uint64_t next_u64() { return splitmix64(state_++); }
    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }
    double next_in(double a, double b) { return a + (b - a) * next_unit(); }

  private:
    uint64_t state_;
};

} // namespace condgap
