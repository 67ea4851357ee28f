#include "quatfhe/quaternion.hpp"

#include <ostream>
#include <utility>

#include "quatfhe/errors.hpp"

namespace quatfhe {

void require_same_modulus(const Modulus& lhs, const Modulus& rhs) {
  if (!(lhs == rhs)) {
    throw ModulusMismatch("modulus mismatch: " + lhs.value().get_str() +
                          " vs " + rhs.value().get_str());
  }
}

Quaternion::Quaternion(Modulus modulus, const BigInt& a, const BigInt& b,
                       const BigInt& c, const BigInt& d)
    : modulus_(std::move(modulus)) {
  const BigInt& n = modulus_.value();
  coeffs_ = {reduce(a, n), reduce(b, n), reduce(c, n), reduce(d, n)};
}

Quaternion::Quaternion(Modulus modulus, std::array<BigInt, 4> reduced)
    : modulus_(std::move(modulus)), coeffs_(std::move(reduced)) {}

Quaternion Quaternion::zero(const Modulus& modulus) {
  return Quaternion(modulus, std::array<BigInt, 4>{0, 0, 0, 0});
}

Quaternion Quaternion::one(const Modulus& modulus) {
  return Quaternion(modulus, std::array<BigInt, 4>{1, 0, 0, 0});
}

Quaternion Quaternion::scalar(const Modulus& modulus, const BigInt& value) {
  return Quaternion(modulus, value);
}

Quaternion Quaternion::random(RandomSource& rng, const Modulus& modulus) {
  const BigInt& n = modulus.value();
  std::array<BigInt, 4> c;
  for (auto& x : c) x = rng.uniform_below(n);
  return Quaternion(modulus, std::move(c));
}

bool Quaternion::is_zero() const {
  return coeffs_[0] == 0 && is_scalar();
}

bool Quaternion::is_scalar() const {
  return coeffs_[1] == 0 && coeffs_[2] == 0 && coeffs_[3] == 0;
}

Quaternion& Quaternion::operator+=(const Quaternion& rhs) {
  require_same_modulus(modulus_, rhs.modulus_);
  const BigInt& n = modulus_.value();
  for (std::size_t t = 0; t < 4; ++t) {
    coeffs_[t] += rhs.coeffs_[t];
    if (coeffs_[t] >= n) coeffs_[t] -= n;
  }
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& rhs) {
  require_same_modulus(modulus_, rhs.modulus_);
  const BigInt& n = modulus_.value();
  for (std::size_t t = 0; t < 4; ++t) {
    coeffs_[t] -= rhs.coeffs_[t];
    if (coeffs_[t] < 0) coeffs_[t] += n;
  }
  return *this;
}

Quaternion operator-(const Quaternion& q) {
  return Quaternion::zero(q.modulus_) - q;
}

Quaternion operator*(const Quaternion& lhs, const Quaternion& rhs) {
  require_same_modulus(lhs.modulus_, rhs.modulus_);
  const auto& [a, b, c, d] = lhs.coeffs_;
  const auto& [a2, b2, c2, d2] = rhs.coeffs_;
  const BigInt& n = lhs.modulus_.value();

  BigInt r0 = a * a2 - (b * b2 + c * c2 + d * d2);
  BigInt r1 = a * b2 + a2 * b + c * d2 - c2 * d;
  BigInt r2 = a * c2 - b * d2 + c * a2 + d * b2;
  BigInt r3 = a * d2 + b * c2 - c * b2 + a2 * d;
  return Quaternion(lhs.modulus_,
                    std::array<BigInt, 4>{reduce(r0, n), reduce(r1, n),
                                          reduce(r2, n), reduce(r3, n)});
}

Quaternion operator*(const BigInt& s, const Quaternion& q) {
  const auto& [a, b, c, d] = q.coeffs_;
  return Quaternion(q.modulus_, s * a, s * b, s * c, s * d);
}

bool operator==(const Quaternion& lhs, const Quaternion& rhs) {
  return lhs.modulus_ == rhs.modulus_ && lhs.coeffs_ == rhs.coeffs_;
}

Quaternion conj(const Quaternion& q) {
  const auto& [a, b, c, d] = q.coefficients();
  return Quaternion(q.modulus(), a, -b, -c, -d);
}

BigInt norm(const Quaternion& q) {
  const auto& [a, b, c, d] = q.coefficients();
  return reduce(a * a + b * b + c * c + d * d, q.modulus().value());
}

bool is_invertible(const Quaternion& q) {
  BigInt g;
  const BigInt nq = norm(q);
  mpz_gcd(g.get_mpz_t(), nq.get_mpz_t(), q.modulus().value().get_mpz_t());
  return g == 1;
}

Quaternion inverse(const Quaternion& q) {
  const BigInt nq = norm(q);
  BigInt scale;
  try {
    scale = mod_inverse(nq, q.modulus());
  } catch (const NotInvertible&) {
    throw NotInvertible("quaternion norm " + nq.get_str() +
                        " shares a factor with the modulus");
  }
  return scale * conj(q);
}

Quaternion reduce_to(const Quaternion& q, const Modulus& target) {
  if (!mpz_divisible_p(q.modulus().value().get_mpz_t(),
                       target.value().get_mpz_t())) {
    throw ModulusMismatch("target modulus does not divide source modulus");
  }
  const auto& [a, b, c, d] = q.coefficients();
  return Quaternion(target, a, b, c, d);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  const auto& [a, b, c, d] = q.coefficients();
  return os << a << " + " << b << "i + " << c << "j + " << d << "k (mod "
            << q.modulus().value() << ")";
}

}  // namespace quatfhe
