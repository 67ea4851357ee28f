#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "quatfhe/numtheory.hpp"
#include "quatfhe/qmatrix.hpp"
#include "quatfhe/quaternion.hpp"
#include "quatfhe/random.hpp"

namespace quatfhe {

inline constexpr int kFormatVersion = 1;

/// Public parameters: N = pq and the ciphertext ring modulus N^2.
class SchemeParams {
 public:
  /// From N alone, as read back from a key or ciphertext header.
  explicit SchemeParams(BigInt n);
  /// From the generated primes; both moduli carry the factorization.
  SchemeParams(const BigInt& p, const BigInt& q, std::size_t prime_bits);

  std::size_t prime_bits() const noexcept { return prime_bits_; }
  const BigInt& n() const noexcept { return n_mod_.value(); }
  const Modulus& n_modulus() const noexcept { return n_mod_; }
  const Modulus& n_squared() const noexcept { return n2_mod_; }

  friend bool operator==(const SchemeParams& lhs, const SchemeParams& rhs) {
    return lhs.n() == rhs.n();
  }

 private:
  std::size_t prime_bits_;
  Modulus n_mod_;
  Modulus n2_mod_;
};

/// (k1, k1^-1, K, K^-1) over Z/N^2Z. Construction checks K K^-1 = K^-1 K = I,
/// k1 k1^-1 = I and that k1 is the leading 2x2 block of K; violations throw
/// KeyConsistencyError.
class SecretKey {
 public:
  SecretKey(SchemeParams params, QMatrix big_k, QMatrix big_k_inv, QMatrix k1,
            QMatrix k1_inv);

  const SchemeParams& params() const noexcept { return params_; }
  const QMatrix& big_k() const noexcept { return big_k_; }
  const QMatrix& big_k_inv() const noexcept { return big_k_inv_; }
  const QMatrix& k1() const noexcept { return k1_; }
  const QMatrix& k1_inv() const noexcept { return k1_inv_; }

  friend bool operator==(const SecretKey& lhs, const SecretKey& rhs);

 private:
  SchemeParams params_;
  QMatrix big_k_;
  QMatrix big_k_inv_;
  QMatrix k1_;
  QMatrix k1_inv_;
};

/// 4x4 quaternion matrix over Z/N^2Z plus a self-describing header.
class Ciphertext {
 public:
  Ciphertext(SchemeParams params, QMatrix body);

  const SchemeParams& params() const noexcept { return params_; }
  const QMatrix& body() const noexcept { return body_; }
  int format_version() const noexcept { return kFormatVersion; }

  friend bool operator==(const Ciphertext& lhs, const Ciphertext& rhs) {
    return lhs.params_ == rhs.params_ && lhs.body_ == rhs.body_;
  }

 private:
  SchemeParams params_;
  QMatrix body_;
};

enum class VerifyPolicy {
  /// Encodings must agree componentwise mod N and be scalars mod N.
  paper,
  /// Additionally the two real parts must agree mod N^2.
  strict,
};

std::string_view to_string(VerifyPolicy policy);

SecretKey keygen(std::size_t prime_bits, RandomSource& rng);

/// Probabilistic encryption of sigma in [0, N^2). Throws PlaintextOutOfRange.
Ciphertext encrypt(const SecretKey& sk, const BigInt& sigma, RandomSource& rng);

/// Recovers sigma or throws VerificationFailure. Throws ModulusMismatch when
/// the ciphertext was made under a different N.
BigInt decrypt_verify(const SecretKey& sk, const Ciphertext& ct,
                      VerifyPolicy policy = VerifyPolicy::strict);

/// Entrywise sum mod N^2; decrypts to sigma1 + sigma2. No key needed.
Ciphertext he_add(const Ciphertext& lhs, const Ciphertext& rhs);

/// Hamiltonian matrix product mod N^2; decrypts to sigma1 * sigma2.
Ciphertext he_mul(const Ciphertext& lhs, const Ciphertext& rhs);

std::string serialize_key(const SecretKey& sk);
SecretKey deserialize_key(std::string_view bytes);
std::string serialize_ct(const Ciphertext& ct);
Ciphertext deserialize_ct(std::string_view bytes);

/// Hex digits written per residue: two per byte of N^2.
std::size_t residue_hex_width(const SchemeParams& params);

/// Size the serialized documents should have: every residue contributes its
/// fixed-width hex digits plus three bytes of framing (two quotes and a
/// separator), on top of a fixed header allowance. 64 residues for a
/// ciphertext, 2 x (16 + 4) x 4 = 160 for a key.
std::size_t ciphertext_layout_bytes(const SchemeParams& params);
std::size_t key_layout_bytes(const SchemeParams& params);

namespace detail {

/// Everything an encryption draws fresh. Never serialized.
struct EncryptionRandomness {
  std::array<BigInt, 3> mask;        // alpha, beta, gamma in Z/NZ
  std::array<BigInt, 3> mask_prime;  // alpha', beta', gamma' in Z/NZ
  Quaternion r1;
  Quaternion r2;
  Quaternion r1_prime;
  QMatrix r;  // 2x2

  static EncryptionRandomness draw(const SchemeParams& params,
                                   RandomSource& rng);
};

/// sigma + mask[0] N i + mask[1] N j + mask[2] N k over Z/N^2Z.
Quaternion encode(const SchemeParams& params, const BigInt& sigma,
                  const std::array<BigInt, 3>& mask);

/// K (M' R; 0 M'') K^-1 with M' = k1 (m r1; 0 r2) k1^-1 and
/// M'' = (m' r1'; 0 0). Takes the two encodings directly so tests can build
/// ciphertexts whose tracks disagree.
Ciphertext seal(const SecretKey& sk, const Quaternion& m,
                const Quaternion& m_prime, const EncryptionRandomness& rnd);

/// Inner structure recovered by the key holder.
struct Opened {
  QMatrix inner;    // K^-1 C K
  QMatrix m_block;  // k1^-1 M' k1
  Quaternion m;     // (M)_{1,1}
  Quaternion m_prime;  // (M'')_{1,1}
};

Opened open(const SecretKey& sk, const Ciphertext& ct);

}  // namespace detail

}  // namespace quatfhe
