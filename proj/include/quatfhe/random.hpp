#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include <gmpxx.h>

namespace quatfhe {

using BigInt = mpz_class;

/// ChaCha20 keystream generator. A seeded source is fully reproducible; the
/// default constructor keys the stream from the operating system's CSPRNG.
///
/// Not thread-safe. Each thread of execution owns its own source.
class RandomSource {
 public:
  RandomSource();
  explicit RandomSource(std::uint64_t seed);

  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;
  RandomSource(RandomSource&&) noexcept = default;
  RandomSource& operator=(RandomSource&&) noexcept = default;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t uniform_u64(std::uint64_t bound);

  /// Uniform in [0, 2^bits).
  BigInt random_bits(std::size_t bits);

  /// Uniform in [0, bound) by rejection. bound must be positive.
  BigInt uniform_below(const BigInt& bound);

 private:
  void refill();

  static constexpr std::size_t kBufferSize = 1024;

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t nonce_ = 0;
  std::array<std::uint8_t, kBufferSize> buffer_{};
  std::size_t pos_ = kBufferSize;
};

}  // namespace quatfhe
