#ifndef CRSNOMA_RANDOM_HPP_
#define CRSNOMA_RANDOM_HPP_

#include <cstdint>
#include <limits>

namespace crsnoma {

/// SplitMix64 finalizer; used to seed streams and to derive substreams.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ stream with a cached spare normal deviate.
///
/// Streams are cheap to construct and are meant to be owned by exactly one
/// worker. Substreams for chunked simulation come from `substream`, which
/// hashes (master seed, chunk index) so that the chunk-to-stream mapping
/// does not depend on how chunks are scheduled.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) noexcept;

  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform deviate on the open interval (0, 1).
  double uniform() noexcept;

  /// Standard normal deviate (Marsaglia polar method).
  double normal() noexcept;

  /// Gamma(shape, scale) deviate for shape >= 1 (Marsaglia–Tsang).
  double gamma(double shape, double scale) noexcept;

 private:
  std::uint64_t s_[4];
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace crsnoma

#endif  // CRSNOMA_RANDOM_HPP_
