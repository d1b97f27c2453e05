#ifndef LOGCONCAVE_RNG_HPP
#define LOGCONCAVE_RNG_HPP

#include <cstdint>

namespace logconcave {

// Frozen algorithm identifier recorded in search output. Changing the
// generator breaks cross-run reproducibility of violation reports, so any
// change must bump this tag.
inline constexpr const char* kRngAlgorithm = "splitmix64-v1";

// SplitMix64: 64-bit counter-based generator (Steele, Lea, Flood 2014).
// State advances by a fixed odd gamma; output is a bijective finalizer of
// the state, so distinct seeds give decorrelated streams and the sequence
// for a given seed is identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform on {0, ..., n-1}. Modulo bias is < n/2^64, irrelevant for the
  // small ranges used here.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  // Derive the seed for an independent stream. One finalizer round over
  // (seed, stream) decorrelates per-trial generators while keeping the
  // trial -> stream mapping trivially parallelizable.
  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace logconcave

#endif  // LOGCONCAVE_RNG_HPP
