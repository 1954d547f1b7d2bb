#pragma once

#include <array>
#include <cstdint>

namespace d2d {

/// Philox4x32-10 block function: maps a 128-bit counter and 64-bit key to
/// 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Purpose tags used to derive independent streams from one experiment seed.
/// Each (tag, index) pair names a distinct stream, so a replicate draws the
/// same numbers no matter which thread runs it.
enum class StreamTag : std::uint32_t {
  Generic = 0,
  OriginMarks = 1,
  InterferenceField = 2,
  Fading = 3,
  SlotLaw = 4,
  Network = 5,
  ClusterMarks = 6,
  Transmitters = 7,
  Validation = 8,
};

/// Counter-based random stream. Satisfies UniformRandomBitGenerator.
///
/// The 64-bit seed is the Philox key; the stream identifier fills the upper
/// half of the counter and the lower half counts generated blocks.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);
  RandomStream(std::uint64_t seed, StreamTag tag, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform double on [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  static std::uint64_t stream_id(StreamTag tag, std::uint64_t index);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_word_ = 4;
};

}  // namespace d2d
