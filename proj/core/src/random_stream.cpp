#include "pppt/random_stream.hpp"

#include <stdexcept>
#include <vector>

namespace pppt {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kIndexSalt = 0x632BE59BD9B4E019ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : seed_(master_seed),
      index_(stream_index),
      key_(mix64(master_seed ^ mix64(stream_index + kIndexSalt))) {}

bool RandomStream::next_bit() {
  if (remaining_ == 0) {
    ++counter_;
    block_ = mix64(key_ + counter_ * kGamma);
    remaining_ = 64;
  }
  --remaining_;
  ++position_;
  return ((block_ >> remaining_) & 1U) != 0;
}

std::string RandomStream::draw_bits(std::size_t count) {
  if (count == 0) throw std::invalid_argument("draw_bits: count must be positive");
  std::string bits(count, '0');
  for (auto& c : bits) c = next_bit() ? '1' : '0';
  return bits;
}

std::size_t sample_categorical(std::span<const Rational> weights, RandomStream& stream) {
  if (weights.empty()) throw std::invalid_argument("sample_categorical: empty distribution");
  // Bucket i covers [cumulative[i], cumulative[i+1]).
  std::vector<Rational> cumulative;
  cumulative.reserve(weights.size() + 1);
  cumulative.emplace_back(0);
  for (const auto& w : weights) {
    if (w < Rational(0)) throw std::invalid_argument("sample_categorical: negative weight");
    cumulative.push_back(cumulative.back() + w);
  }
  if (cumulative.back() != Rational(1)) {
    throw std::invalid_argument("sample_categorical: weights do not sum to 1");
  }

  // The uniform point lies in [low / 2^depth, (low + 1) / 2^depth).
  BigInt low = 0;
  BigInt scale = 1;
  for (;;) {
    Rational lo(low, scale);
    Rational hi(low + 1, scale);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i].is_zero()) continue;
      if (cumulative[i] <= lo && hi <= cumulative[i + 1]) return i;
      if (cumulative[i] > lo) break;
    }
    low <<= 1;
    scale <<= 1;
    if (stream.next_bit()) low += 1;
  }
}

bool sample_bernoulli(const Rational& p, RandomStream& stream) {
  if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("sample_bernoulli: p outside [0, 1]");
  const Rational weights[2] = {p, Rational(1) - p};
  return sample_categorical(weights, stream) == 0;
}

}  // namespace pppt
