#pragma once

#include <cstdint>

namespace setid::sim {

// murmur3 64-bit finalizer
inline std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return k;
}

// Counter-based stream: draw j of stream s is a pure function of
// (seed, s, j), so any partition of agents over threads replays the same
// numbers. One stream per agent.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(fmix64(seed ^ fmix64(stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() { return fmix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    // uniform on the open interval (0,1); safe to feed quantile functions
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace setid::sim
