#pragma once

#include <array>
#include <iosfwd>

#include "quatfhe/numtheory.hpp"
#include "quatfhe/random.hpp"

namespace quatfhe {

/// Lipschitz quaternion a + bi + cj + dk with coefficients in Z/nZ.
///
/// Coefficients are always stored fully reduced, so equality is plain
/// coefficient comparison. Every quaternion carries its modulus; mixing
/// quaternions over different moduli throws ModulusMismatch.
class Quaternion {
 public:
  /// Reduces each coefficient into [0, n). Negative inputs are allowed.
  Quaternion(Modulus modulus, const BigInt& a, const BigInt& b = 0,
             const BigInt& c = 0, const BigInt& d = 0);

  static Quaternion zero(const Modulus& modulus);
  static Quaternion one(const Modulus& modulus);
  static Quaternion scalar(const Modulus& modulus, const BigInt& value);
  static Quaternion random(RandomSource& rng, const Modulus& modulus);

  const Modulus& modulus() const noexcept { return modulus_; }
  const std::array<BigInt, 4>& coefficients() const noexcept {
    return coeffs_;
  }
  const BigInt& real() const noexcept { return coeffs_[0]; }
  const BigInt& i() const noexcept { return coeffs_[1]; }
  const BigInt& j() const noexcept { return coeffs_[2]; }
  const BigInt& k() const noexcept { return coeffs_[3]; }

  bool is_zero() const;
  /// True when all three imaginary coefficients are zero.
  bool is_scalar() const;

  Quaternion& operator+=(const Quaternion& rhs);
  Quaternion& operator-=(const Quaternion& rhs);

  friend Quaternion operator+(Quaternion lhs, const Quaternion& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend Quaternion operator-(Quaternion lhs, const Quaternion& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend Quaternion operator-(const Quaternion& q);

  /// Hamilton product. Not commutative.
  friend Quaternion operator*(const Quaternion& lhs, const Quaternion& rhs);

  /// Multiplication by an integer scalar, reduced mod n.
  friend Quaternion operator*(const BigInt& s, const Quaternion& q);

  friend bool operator==(const Quaternion& lhs, const Quaternion& rhs);

 private:
  Quaternion(Modulus modulus, std::array<BigInt, 4> reduced);

  Modulus modulus_;
  std::array<BigInt, 4> coeffs_;
};

/// a - bi - cj - dk.
Quaternion conj(const Quaternion& q);

/// |q|^2 = a^2 + b^2 + c^2 + d^2 mod n. The square root is never taken.
BigInt norm(const Quaternion& q);

/// Invertible in H(Z/nZ) iff gcd(|q|^2, n) = 1.
bool is_invertible(const Quaternion& q);

/// conj(q) / |q|^2. Throws NotInvertible.
Quaternion inverse(const Quaternion& q);

/// Componentwise reduction into a smaller ring Z/mZ where m divides n.
Quaternion reduce_to(const Quaternion& q, const Modulus& target);

/// Throws ModulusMismatch unless both moduli are equal.
void require_same_modulus(const Modulus& lhs, const Modulus& rhs);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace quatfhe
