#pragma once

#include <cstdint>

namespace kendall {

// Counter-style generator: a Weyl sequence pushed through the SplitMix64
// finalizer. Stream s of a given seed is an independent substream; draws are
// reproducible across platforms and worker counts.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t k = mix(seed + 0x9E3779B97F4A7C15ULL);
    state_ = mix(k ^ (0xBF58476D1CE4E5B9ULL * (stream + 1)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on the open interval (0,1): bin centers of a 2^53 grid.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace kendall
