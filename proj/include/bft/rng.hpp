#ifndef BFT_RNG_HPP
#define BFT_RNG_HPP

#include <cstdint>

namespace bft {

// SplitMix64 generator.  Experiments derive one stream per sample from
// (seed, sample index), so tallies are independent of how samples are
// partitioned across worker threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 for_sample(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 key(seed);
    // Decorrelate the per-sample streams with two mixing rounds.
    return SplitMix64(key.next() ^ SplitMix64(index).next());
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace bft

#endif  // BFT_RNG_HPP
