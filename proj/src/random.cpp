#include "quatfhe/random.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace quatfhe {

namespace {

void ensure_sodium() {
  if (sodium_init() < 0) {
    throw std::runtime_error("libsodium initialisation failed");
  }
}

constexpr unsigned char kSeedTag[] = "quatfhe/random-source/v1";

}  // namespace

RandomSource::RandomSource() {
  ensure_sodium();
  randombytes_buf(key_.data(), key_.size());
}

RandomSource::RandomSource(std::uint64_t seed) {
  ensure_sodium();
  std::array<unsigned char, 8> seed_bytes{};
  for (std::size_t i = 0; i < seed_bytes.size(); ++i) {
    seed_bytes[i] = static_cast<unsigned char>(seed >> (8 * i));
  }
  crypto_generichash(key_.data(), key_.size(), seed_bytes.data(),
                     seed_bytes.size(), kSeedTag, sizeof(kSeedTag) - 1);
}

void RandomSource::refill() {
  std::array<unsigned char, crypto_stream_chacha20_NONCEBYTES> nonce{};
  for (std::size_t i = 0; i < nonce.size(); ++i) {
    nonce[i] = static_cast<unsigned char>(nonce_ >> (8 * i));
  }
  ++nonce_;
  crypto_stream_chacha20(buffer_.data(), buffer_.size(), nonce.data(),
                         key_.data());
  pos_ = 0;
}

void RandomSource::fill(std::span<std::uint8_t> out) {
  std::size_t written = 0;
  while (written < out.size()) {
    if (pos_ == buffer_.size()) refill();
    std::size_t take = std::min(out.size() - written, buffer_.size() - pos_);
    std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(pos_), take,
                out.begin() + static_cast<std::ptrdiff_t>(written));
    pos_ += take;
    written += take;
  }
}

std::uint64_t RandomSource::next_u64() {
  std::array<std::uint8_t, 8> bytes{};
  fill(bytes);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return v;
}

std::uint64_t RandomSource::uniform_u64(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_u64: bound is zero");
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

BigInt RandomSource::random_bits(std::size_t bits) {
  if (bits == 0) return 0;
  std::vector<std::uint8_t> bytes((bits + 7) / 8);
  fill(bytes);
  BigInt v;
  mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
  mpz_tdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
  return v;
}

BigInt RandomSource::uniform_below(const BigInt& bound) {
  if (sgn(bound) <= 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    BigInt v = random_bits(bits);
    if (v < bound) return v;
  }
}

}  // namespace quatfhe
