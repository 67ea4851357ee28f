#include "quatfhe/scheme.hpp"

#include <utility>

#include "quatfhe/errors.hpp"

namespace quatfhe {

namespace {

std::size_t half_bits_rounded_up(const BigInt& n) {
  return (mpz_sizeinbase(n.get_mpz_t(), 2) + 1) / 2;
}

void require_same_params(const SchemeParams& lhs, const SchemeParams& rhs) {
  if (!(lhs == rhs)) {
    throw ModulusMismatch("ciphertexts were produced under different N");
  }
}

}  // namespace

SchemeParams::SchemeParams(BigInt n)
    : prime_bits_(half_bits_rounded_up(n)),
      n_mod_(n),
      n2_mod_(BigInt(n * n)) {}

SchemeParams::SchemeParams(const BigInt& p, const BigInt& q,
                           std::size_t prime_bits)
    : prime_bits_(prime_bits),
      n_mod_(BigInt(p * q), Factorization{p, q}),
      n2_mod_(BigInt(p * q * p * q), Factorization{p, q}) {}

SecretKey::SecretKey(SchemeParams params, QMatrix big_k, QMatrix big_k_inv,
                     QMatrix k1, QMatrix k1_inv)
    : params_(std::move(params)),
      big_k_(std::move(big_k)),
      big_k_inv_(std::move(big_k_inv)),
      k1_(std::move(k1)),
      k1_inv_(std::move(k1_inv)) {
  const Modulus& n2 = params_.n_squared();
  for (const QMatrix* m : {&big_k_, &big_k_inv_, &k1_, &k1_inv_}) {
    if (!(m->modulus() == n2)) {
      throw KeyConsistencyError("key matrix is not over Z/N^2Z");
    }
  }
  if (big_k_.dim() != 4 || big_k_inv_.dim() != 4 || k1_.dim() != 2 ||
      k1_inv_.dim() != 2) {
    throw KeyConsistencyError("key matrices have the wrong dimensions");
  }
  const QMatrix id4 = QMatrix::identity(4, n2);
  if (!(big_k_ * big_k_inv_ == id4) || !(big_k_inv_ * big_k_ == id4)) {
    throw KeyConsistencyError("K * K^-1 is not the identity");
  }
  const QMatrix id2 = QMatrix::identity(2, n2);
  if (!(k1_ * k1_inv_ == id2) || !(k1_inv_ * k1_ == id2)) {
    throw KeyConsistencyError("k1 * k1^-1 is not the identity");
  }
  if (!(split_blocks(big_k_).a == k1_)) {
    throw KeyConsistencyError("k1 is not the leading block of K");
  }
}

bool operator==(const SecretKey& lhs, const SecretKey& rhs) {
  return lhs.params_ == rhs.params_ && lhs.big_k_ == rhs.big_k_ &&
         lhs.big_k_inv_ == rhs.big_k_inv_ && lhs.k1_ == rhs.k1_ &&
         lhs.k1_inv_ == rhs.k1_inv_;
}

Ciphertext::Ciphertext(SchemeParams params, QMatrix body)
    : params_(std::move(params)), body_(std::move(body)) {
  if (body_.dim() != 4) throw ShapeMismatch("ciphertext must be 4x4");
  require_same_modulus(body_.modulus(), params_.n_squared());
}

std::string_view to_string(VerifyPolicy policy) {
  return policy == VerifyPolicy::paper ? "paper" : "strict";
}

SecretKey keygen(std::size_t prime_bits, RandomSource& rng) {
  auto [p, q] = gen_distinct_primes(prime_bits, rng);
  SchemeParams params(p, q, prime_bits);
  auto [big_k, big_k_inv] = random_invertible(4, rng, params.n_squared());
  QMatrix k1 = split_blocks(big_k).a;
  QMatrix k1_inv = schur_invert(k1);
  return SecretKey(std::move(params), std::move(big_k), std::move(big_k_inv),
                   std::move(k1), std::move(k1_inv));
}

namespace detail {

EncryptionRandomness EncryptionRandomness::draw(const SchemeParams& params,
                                                RandomSource& rng) {
  const BigInt& n = params.n();
  const Modulus& n2 = params.n_squared();
  std::array<BigInt, 3> mask{rng.uniform_below(n), rng.uniform_below(n),
                             rng.uniform_below(n)};
  std::array<BigInt, 3> mask_prime{rng.uniform_below(n), rng.uniform_below(n),
                                   rng.uniform_below(n)};
  Quaternion r1 = Quaternion::random(rng, n2);
  Quaternion r2 = Quaternion::random(rng, n2);
  Quaternion r1_prime = Quaternion::random(rng, n2);
  QMatrix r = QMatrix::random(2, rng, n2);
  return EncryptionRandomness{std::move(mask), std::move(mask_prime),
                              std::move(r1),   std::move(r2),
                              std::move(r1_prime), std::move(r)};
}

Quaternion encode(const SchemeParams& params, const BigInt& sigma,
                  const std::array<BigInt, 3>& mask) {
  const BigInt& n = params.n();
  return Quaternion(params.n_squared(), sigma, mask[0] * n, mask[1] * n,
                    mask[2] * n);
}

Ciphertext seal(const SecretKey& sk, const Quaternion& m,
                const Quaternion& m_prime, const EncryptionRandomness& rnd) {
  const Modulus& n2 = sk.params().n_squared();
  const Quaternion zero = Quaternion::zero(n2);
  const QMatrix m_block = assemble(Blocks<Quaternion>{m, rnd.r1, zero, rnd.r2});
  const QMatrix m_conj = sk.k1() * m_block * sk.k1_inv();
  const QMatrix m_second =
      assemble(Blocks<Quaternion>{m_prime, rnd.r1_prime, zero, zero});
  const QMatrix inner =
      assemble(Blocks<QMatrix>{m_conj, rnd.r, QMatrix(2, n2), m_second});
  return Ciphertext(sk.params(), sk.big_k() * inner * sk.big_k_inv());
}

Opened open(const SecretKey& sk, const Ciphertext& ct) {
  require_same_params(sk.params(), ct.params());
  QMatrix inner = sk.big_k_inv() * ct.body() * sk.big_k();
  const Blocks<QMatrix> blocks = split_blocks(inner);
  QMatrix m_block = sk.k1_inv() * blocks.a * sk.k1();
  Quaternion m = m_block(0, 0);
  Quaternion m_prime = blocks.d(0, 0);
  return Opened{std::move(inner), std::move(m_block), std::move(m),
                std::move(m_prime)};
}

}  // namespace detail

Ciphertext encrypt(const SecretKey& sk, const BigInt& sigma,
                   RandomSource& rng) {
  const SchemeParams& params = sk.params();
  if (sigma < 0 || sigma >= params.n_squared().value()) {
    throw PlaintextOutOfRange("plaintext must lie in [0, N^2)");
  }
  const auto rnd = detail::EncryptionRandomness::draw(params, rng);
  return detail::seal(sk, detail::encode(params, sigma, rnd.mask),
                      detail::encode(params, sigma, rnd.mask_prime), rnd);
}

BigInt decrypt_verify(const SecretKey& sk, const Ciphertext& ct,
                      VerifyPolicy policy) {
  const detail::Opened opened = detail::open(sk, ct);
  const Modulus& n = sk.params().n_modulus();
  const Quaternion m_mod_n = reduce_to(opened.m, n);
  const Quaternion m_prime_mod_n = reduce_to(opened.m_prime, n);
  if (!(m_mod_n == m_prime_mod_n)) {
    throw VerificationFailure(
        "the ciphertext has been modified: encodings disagree mod N");
  }
  if (!m_mod_n.is_scalar()) {
    throw VerificationFailure(
        "the ciphertext has been modified: imaginary part not divisible by N");
  }
  if (policy == VerifyPolicy::strict &&
      opened.m.real() != opened.m_prime.real()) {
    throw VerificationFailure(
        "the ciphertext has been modified: real parts disagree mod N^2");
  }
  return opened.m.real();
}

Ciphertext he_add(const Ciphertext& lhs, const Ciphertext& rhs) {
  require_same_params(lhs.params(), rhs.params());
  return Ciphertext(lhs.params(), lhs.body() + rhs.body());
}

Ciphertext he_mul(const Ciphertext& lhs, const Ciphertext& rhs) {
  require_same_params(lhs.params(), rhs.params());
  return Ciphertext(lhs.params(), lhs.body() * rhs.body());
}

}  // namespace quatfhe
