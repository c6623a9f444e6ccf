#pragma once

#include "pppt/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace pppt {

/// Counter-based pseudorandom bit stream.
///
/// The stream is fully determined by (master_seed, stream_index). Block c
/// (c = 0, 1, ...) is the 64-bit word
///
///   key      = mix64(master_seed ^ mix64(stream_index + 0x632BE59BD9B4E019))
///   block(c) = mix64(key + (c + 1) * 0x9E3779B97F4A7C15)
///
/// where mix64 is the SplitMix64 output finalizer. Bits are consumed from
/// each block most significant bit first. Only 64-bit unsigned arithmetic is
/// involved, so sequences are identical on every platform.
///
/// A stream is a single-consumer object; independent consumers should use
/// distinct stream indices (trial t of a sampling run uses index t).
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return index_; }
  /// Number of bits consumed so far.
  std::uint64_t position() const noexcept { return position_; }

  bool next_bit();

  /// Next `count` bits as a string of '0'/'1'. `count` must be positive.
  std::string draw_bits(std::size_t count);

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t key_;
  std::uint64_t block_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t position_ = 0;
  unsigned remaining_ = 0;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Draws an index i with probability weights[i], exactly. The weights must
/// be non-negative and sum to 1. Bits are read lazily: a uniform point in
/// [0, 1) is refined one bit at a time until its dyadic interval falls inside
/// a single cumulative bucket. Point masses therefore consume no bits and a
/// fair coin consumes exactly one.
std::size_t sample_categorical(std::span<const Rational> weights, RandomStream& stream);

/// True with probability exactly `p` (0 <= p <= 1).
bool sample_bernoulli(const Rational& p, RandomStream& stream);

}  // namespace pppt
