#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "quatfhe/random.hpp"

namespace quatfhe {

/// Number of Miller-Rabin rounds used for prime generation.
inline constexpr int kMillerRabinRounds = 40;

/// Known prime factors p, q of a modulus n = pq or n = (pq)^2.
struct Factorization {
  BigInt p;
  BigInt q;
};

/// A modulus n >= 2, optionally carrying its factorization.
///
/// Modulus is a cheap handle: copies share the same immutable value, so it
/// can travel with every quaternion without copying big integers around.
class Modulus {
 public:
  explicit Modulus(BigInt n);

  /// Validates that the factors are prime and that n = pq or n = (pq)^2.
  Modulus(BigInt n, Factorization factors);

  const BigInt& value() const noexcept { return rep_->n; }
  const std::optional<Factorization>& factors() const noexcept {
    return rep_->factors;
  }

  /// Bit length of n.
  std::size_t bits() const;

  friend bool operator==(const Modulus& lhs, const Modulus& rhs);

 private:
  struct Rep {
    BigInt n;
    std::optional<Factorization> factors;
  };
  std::shared_ptr<const Rep> rep_;
};

/// Canonical residue of value mod n, in [0, n).
BigInt reduce(const BigInt& value, const BigInt& n);

/// Miller-Rabin with `rounds` uniformly random bases drawn from rng.
bool is_probable_prime(const BigInt& n, RandomSource& rng,
                       int rounds = kMillerRabinRounds);

/// Same test with bases drawn from a fresh OS-seeded source.
bool is_probable_prime(const BigInt& n, int rounds = kMillerRabinRounds);

/// Random prime with exactly `bits` bits (top bit set). bits >= 3.
BigInt gen_prime(std::size_t bits, RandomSource& rng);

/// Two distinct random primes of `bits` bits each.
std::pair<BigInt, BigInt> gen_distinct_primes(std::size_t bits,
                                              RandomSource& rng);

struct Egcd {
  BigInt g;
  BigInt x;
  BigInt y;
};

/// g = gcd(a, b) >= 0 with a*x + b*y = g. a and b must not both be zero.
Egcd egcd(const BigInt& a, const BigInt& b);

/// b in (0, n) with a*b = 1 mod n. Requires 0 <= a < n.
/// Throws NotInvertible when gcd(a, n) != 1.
BigInt mod_inverse(const BigInt& a, const Modulus& n);

/// Lowercase hex without prefix.
std::string to_hex(const BigInt& value);

/// Lowercase hex left-padded with zeros to `width` digits.
std::string to_hex(const BigInt& value, std::size_t width);

/// Parses lowercase hex digits. Returns nullopt on any other character or
/// on empty input.
std::optional<BigInt> parse_hex(std::string_view text);

}  // namespace quatfhe
