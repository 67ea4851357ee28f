#include <gtest/gtest.h>

#include <set>
#include <string>

#include "quatfhe/errors.hpp"
#include "quatfhe/scheme.hpp"

namespace quatfhe {
namespace {

// 3-bit primes force N = 35, which keeps hand-checked values readable.
class ToyScheme : public ::testing::Test {
 protected:
  RandomSource rng{35};
  SecretKey sk = keygen(3, rng);
  const BigInt& n() const { return sk.params().n(); }
  Ciphertext enc(long sigma) { return encrypt(sk, sigma, rng); }
  BigInt dec(const Ciphertext& ct,
             VerifyPolicy policy = VerifyPolicy::strict) {
    return decrypt_verify(sk, ct, policy);
  }
};

class RealScheme : public ::testing::Test {
 protected:
  RandomSource rng{32};
  SecretKey sk = keygen(32, rng);
  const BigInt& n2() const { return sk.params().n_squared().value(); }
};

Ciphertext with_entry_bumped(const Ciphertext& ct, std::size_t row,
                             std::size_t col, std::size_t component,
                             const BigInt& delta) {
  QMatrix body = ct.body();
  std::array<BigInt, 4> c = body(row, col).coefficients();
  c[component] += delta;
  body.set(row, col, Quaternion(body.modulus(), c[0], c[1], c[2], c[3]));
  return Ciphertext(ct.params(), body);
}

TEST_F(ToyScheme, ThreeBitKeyHasModulusThirtyFive) {
  EXPECT_EQ(n(), 35);
  EXPECT_EQ(sk.params().n_squared().value(), 1225);
  EXPECT_EQ(sk.params().prime_bits(), 3u);
  const QMatrix id = QMatrix::identity(4, sk.params().n_squared());
  EXPECT_EQ(sk.big_k() * sk.big_k_inv(), id);
  EXPECT_EQ(sk.big_k_inv() * sk.big_k(), id);
  EXPECT_EQ(split_blocks(sk.big_k()).a, sk.k1());
}

TEST(Keygen, DistinctSeedsGiveDistinctKeys) {
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomSource rng(seed);
    seen.insert(serialize_key(keygen(8, rng)));
  }
  EXPECT_EQ(seen.size(), 100u);
}

TEST(Keygen, SeededIsDeterministic) {
  RandomSource a(77);
  RandomSource b(77);
  EXPECT_EQ(keygen(16, a), keygen(16, b));
}

TEST_F(ToyScheme, EncryptionIsProbabilistic) {
  const Ciphertext c1 = enc(2);
  const Ciphertext c2 = enc(2);
  EXPECT_FALSE(c1 == c2);
  EXPECT_EQ(dec(c1), 2);
  EXPECT_EQ(dec(c2), 2);
}

TEST_F(ToyScheme, FreshCiphertextsAreSingular) {
  for (int t = 0; t < 50; ++t) {
    EXPECT_FALSE(is_invertible(enc(t).body()));
  }
}

TEST_F(ToyScheme, RoundTripsEveryResidue) {
  for (long sigma = 0; sigma < 1225; sigma += 7) {
    const Ciphertext ct = enc(sigma);
    EXPECT_EQ(dec(ct, VerifyPolicy::strict), sigma);
    EXPECT_EQ(dec(ct, VerifyPolicy::paper), sigma);
  }
}

TEST_F(ToyScheme, RejectsOutOfRangePlaintext) {
  EXPECT_THROW(enc(1225), PlaintextOutOfRange);
  EXPECT_THROW(enc(-1), PlaintextOutOfRange);
  EXPECT_NO_THROW(enc(1224));
}

TEST_F(ToyScheme, AdditionWrapsModNSquared) {
  // 1000 + 500 = 1500 = 275 mod 1225.
  EXPECT_EQ(dec(he_add(enc(1000), enc(500))), 275);
  const Ciphertext x = enc(17);
  EXPECT_EQ(dec(he_add(x, enc(0))), 17);
  const Ciphertext y = enc(300);
  EXPECT_EQ(he_add(x, y), he_add(y, x));
}

TEST_F(ToyScheme, Multiplication) {
  EXPECT_EQ(dec(he_mul(enc(2), enc(3))), 6);
  EXPECT_EQ(dec(he_mul(enc(99), enc(1))), 99);
  Ciphertext acc = enc(2);
  for (int t = 1; t < 10; ++t) acc = he_mul(acc, enc(2));
  EXPECT_EQ(dec(acc), 1024);
}

TEST_F(ToyScheme, TamperedRealPartIsRejected) {
  const Ciphertext ct = enc(5);
  const Ciphertext bad = with_entry_bumped(ct, 0, 0, 0, 1);
  EXPECT_THROW(dec(bad, VerifyPolicy::strict), VerificationFailure);
  EXPECT_THROW(dec(bad, VerifyPolicy::paper), VerificationFailure);
}

TEST_F(ToyScheme, MismatchedTracksAreRejected) {
  const SchemeParams& params = sk.params();
  const auto rnd = detail::EncryptionRandomness::draw(params, rng);
  const Quaternion m2 = detail::encode(params, 2, rnd.mask);
  const Quaternion m3 = detail::encode(params, 3, rnd.mask_prime);
  const Ciphertext ct = detail::seal(sk, m2, m3, rnd);
  EXPECT_THROW(dec(ct, VerifyPolicy::paper), VerificationFailure);
  EXPECT_THROW(dec(ct, VerifyPolicy::strict), VerificationFailure);
}

TEST_F(ToyScheme, NonScalarEncodingIsRejected) {
  const SchemeParams& params = sk.params();
  const auto rnd = detail::EncryptionRandomness::draw(params, rng);
  const Quaternion bad = Quaternion(params.n_squared(), 4, 1);
  const Ciphertext ct = detail::seal(sk, bad, bad, rnd);
  EXPECT_THROW(dec(ct, VerifyPolicy::paper), VerificationFailure);
}

TEST_F(ToyScheme, PoliciesDifferOnRealPartsOffByN) {
  // 2 and 2 + 35 agree mod N but not mod N^2.
  const SchemeParams& params = sk.params();
  const auto rnd = detail::EncryptionRandomness::draw(params, rng);
  const Quaternion m = detail::encode(params, 2, rnd.mask);
  const Quaternion m_prime = detail::encode(params, 37, rnd.mask_prime);
  const Ciphertext ct = detail::seal(sk, m, m_prime, rnd);
  EXPECT_EQ(dec(ct, VerifyPolicy::paper), 2);
  EXPECT_THROW(dec(ct, VerifyPolicy::strict), VerificationFailure);
}

TEST_F(ToyScheme, OpenedStructure) {
  const Ciphertext ct = he_add(he_mul(enc(3), enc(4)), enc(5));
  const detail::Opened o = detail::open(sk, ct);
  const Blocks<QMatrix> b = split_blocks(o.inner);
  EXPECT_EQ(b.c, QMatrix(2, sk.params().n_squared()));
  EXPECT_TRUE(o.inner(3, 3).is_zero());
  EXPECT_TRUE(o.inner(3, 2).is_zero());
  EXPECT_TRUE(o.m_block(1, 0).is_zero());
  EXPECT_EQ(o.m.real(), 17);
  EXPECT_EQ(o.m_prime.real(), 17);
  for (const Quaternion* q : {&o.m, &o.m_prime}) {
    for (const BigInt& c : {q->i(), q->j(), q->k()}) {
      EXPECT_EQ(reduce(c, n()), 0);
    }
  }
}

TEST(Scheme, ModulusMismatchAcrossKeys) {
  RandomSource rng(1);
  const SecretKey a = keygen(16, rng);
  const SecretKey b = keygen(16, rng);
  const Ciphertext ca = encrypt(a, 1, rng);
  const Ciphertext cb = encrypt(b, 1, rng);
  EXPECT_THROW(he_add(ca, cb), ModulusMismatch);
  EXPECT_THROW(he_mul(ca, cb), ModulusMismatch);
  EXPECT_THROW(decrypt_verify(a, cb), ModulusMismatch);
}

TEST(Scheme, KeyConsistencyIsChecked) {
  RandomSource rng(2);
  const SecretKey sk = keygen(8, rng);
  QMatrix wrong = sk.big_k();
  wrong.set(3, 3, wrong(3, 3) + Quaternion::one(wrong.modulus()));
  EXPECT_THROW(SecretKey(sk.params(), wrong, sk.big_k_inv(), sk.k1(),
                         sk.k1_inv()),
               KeyConsistencyError);
  EXPECT_THROW(SecretKey(sk.params(), sk.big_k(), sk.big_k_inv(),
                         sk.k1_inv(), sk.k1()),
               KeyConsistencyError);
}

TEST_F(RealScheme, RandomRoundTrips) {
  for (int t = 0; t < 100; ++t) {
    const BigInt sigma = rng.uniform_below(n2());
    const Ciphertext ct = encrypt(sk, sigma, rng);
    ASSERT_EQ(decrypt_verify(sk, ct, VerifyPolicy::strict), sigma);
    ASSERT_EQ(decrypt_verify(sk, ct, VerifyPolicy::paper), sigma);
  }
}

TEST_F(RealScheme, HomomorphicOperationsAgreeWithPlaintext) {
  for (int t = 0; t < 50; ++t) {
    const BigInt a = rng.uniform_below(n2());
    const BigInt b = rng.uniform_below(n2());
    const Ciphertext ca = encrypt(sk, a, rng);
    const Ciphertext cb = encrypt(sk, b, rng);
    EXPECT_EQ(decrypt_verify(sk, he_add(ca, cb)), reduce(a + b, n2()));
    EXPECT_EQ(decrypt_verify(sk, he_mul(ca, cb)), reduce(a * b, n2()));
  }
}

TEST_F(RealScheme, DepthHundredChain) {
  const BigInt x = rng.uniform_below(n2());
  Ciphertext acc = encrypt(sk, x, rng);
  for (int t = 0; t < 100; ++t) acc = he_mul(acc, encrypt(sk, x, rng));
  BigInt expected;
  mpz_powm_ui(expected.get_mpz_t(), x.get_mpz_t(), 101, n2().get_mpz_t());
  EXPECT_EQ(decrypt_verify(sk, acc), expected);
}

TEST_F(RealScheme, RandomSingleCoefficientTamperIsDetected) {
  const Ciphertext ct = encrypt(sk, 123456, rng);
  int detected = 0;
  for (int t = 0; t < 200; ++t) {
    const BigInt delta = 1 + rng.uniform_below(n2() - 1);
    const Ciphertext bad =
        with_entry_bumped(ct, rng.uniform_u64(4), rng.uniform_u64(4),
                          rng.uniform_u64(4), delta);
    try {
      decrypt_verify(sk, bad);
    } catch (const VerificationFailure&) {
      ++detected;
    }
  }
  EXPECT_EQ(detected, 200);
}

TEST(VerifyPolicy, Names) {
  EXPECT_EQ(to_string(VerifyPolicy::paper), "paper");
  EXPECT_EQ(to_string(VerifyPolicy::strict), "strict");
}

}  // namespace
}  // namespace quatfhe
