#include <gtest/gtest.h>

#include <set>

#include "quatfhe/errors.hpp"
#include "quatfhe/numtheory.hpp"
#include "quatfhe/random.hpp"
#include "support/oracles.hpp"

namespace quatfhe {
namespace {

TEST(RandomSource, SameSeedSameStream) {
  RandomSource a(1234);
  RandomSource b(1234);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomSource, DifferentSeedsDiverge) {
  RandomSource a(1);
  RandomSource b(2);
  EXPECT_NE(a.next_u64(), b.next_u64());
}

TEST(RandomSource, UnseededSourcesDiffer) {
  RandomSource a;
  RandomSource b;
  EXPECT_NE(a.random_bits(128), b.random_bits(128));
}

TEST(RandomSource, UniformBelowStaysInRange) {
  RandomSource rng(5);
  const BigInt bound("1000000000000000000000007", 10);
  for (int i = 0; i < 500; ++i) {
    const BigInt v = rng.uniform_below(bound);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, bound);
  }
  for (int i = 0; i < 200; ++i) EXPECT_EQ(rng.uniform_below(1), 0);
}

TEST(RandomSource, RandomBitsRespectsWidth) {
  RandomSource rng(6);
  for (int i = 0; i < 200; ++i) {
    EXPECT_LE(mpz_sizeinbase(rng.random_bits(13).get_mpz_t(), 2), 13u);
  }
}

TEST(GenPrime, ThreeBitPrimesAreFiveOrSeven) {
  RandomSource rng(3);
  std::set<unsigned long> seen;
  for (int i = 0; i < 50; ++i) {
    const BigInt p = gen_prime(3, rng);
    ASSERT_TRUE(p == 5 || p == 7) << p;
    seen.insert(p.get_ui());
  }
  EXPECT_EQ(seen.size(), 2u);
}

TEST(GenPrime, EightBitSeededIsDeterministic) {
  RandomSource a(42);
  RandomSource b(42);
  const BigInt p = gen_prime(8, a);
  EXPECT_EQ(p, gen_prime(8, b));
  EXPECT_EQ(mpz_sizeinbase(p.get_mpz_t(), 2), 8u);
  EXPECT_TRUE(testing::survives_trial_division(p, 1'000'000));
}

TEST(GenPrime, ThirtyTwoBitPassesIndependentChecks) {
  RandomSource rng(32);
  for (int i = 0; i < 20; ++i) {
    const BigInt p = gen_prime(32, rng);
    EXPECT_EQ(mpz_sizeinbase(p.get_mpz_t(), 2), 32u);
    EXPECT_TRUE(testing::survives_trial_division(p, 1'000'000)) << p;
    EXPECT_GT(mpz_probab_prime_p(p.get_mpz_t(), 30), 0) << p;
    RandomSource recheck(1000 + i);
    EXPECT_TRUE(is_probable_prime(p, recheck));
  }
}

TEST(GenPrime, RejectsTooFewBits) {
  RandomSource rng(1);
  EXPECT_THROW(gen_prime(2, rng), std::invalid_argument);
}

TEST(GenPrime, DistinctPair) {
  RandomSource rng(9);
  for (int i = 0; i < 30; ++i) {
    auto [p, q] = gen_distinct_primes(3, rng);
    EXPECT_NE(p, q);
    EXPECT_EQ(p * q, 35);
  }
}

TEST(IsProbablePrime, AgreesWithTrialDivisionOnSmallRange) {
  RandomSource rng(11);
  for (unsigned long n = 0; n < 5000; ++n) {
    EXPECT_EQ(is_probable_prime(BigInt(n), rng, 10),
              testing::survives_trial_division(BigInt(n), 100))
        << n;
  }
}

TEST(IsProbablePrime, RejectsCarmichaelNumbers) {
  RandomSource rng(12);
  for (unsigned long n : {561ul, 1105ul, 1729ul, 2465ul, 2821ul, 6601ul,
                          8911ul, 41041ul, 825265ul}) {
    EXPECT_FALSE(is_probable_prime(BigInt(n), rng)) << n;
  }
}

TEST(Egcd, Examples) {
  Egcd r = egcd(0, 7);
  EXPECT_EQ(r.g, 7);
  EXPECT_EQ(r.x, 0);
  EXPECT_EQ(r.y, 1);

  r = egcd(12, 18);
  EXPECT_EQ(r.g, 6);
  EXPECT_EQ(12 * r.x + 18 * r.y, 6);

  // |1 + 2i|^2 = 5 against n = 35.
  r = egcd(5, 35);
  EXPECT_EQ(r.g, 5);
}

TEST(Egcd, BezoutHoldsOnRandomPairs) {
  RandomSource rng(13);
  for (int i = 0; i < 1000; ++i) {
    const BigInt a = rng.random_bits(100);
    const BigInt b = rng.random_bits(90);
    if (a == 0 && b == 0) continue;
    const Egcd r = egcd(a, b);
    EXPECT_GE(r.g, 0);
    EXPECT_EQ(a * r.x + b * r.y, r.g);
    if (r.g != 0) {
      EXPECT_TRUE(mpz_divisible_p(a.get_mpz_t(), r.g.get_mpz_t()));
      EXPECT_TRUE(mpz_divisible_p(b.get_mpz_t(), r.g.get_mpz_t()));
    }
  }
}

TEST(Egcd, BothZeroRejected) { EXPECT_THROW(egcd(0, 0), std::invalid_argument); }

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(2, Modulus(5)), 3);
  EXPECT_EQ(mod_inverse(1, Modulus(BigInt("123456789012345678901", 10))), 1);
  EXPECT_THROW(mod_inverse(5, Modulus(35)), NotInvertible);
  EXPECT_THROW(mod_inverse(35, Modulus(35)), std::invalid_argument);
}

TEST(ModInverse, ProductIsOne) {
  RandomSource rng(14);
  const Modulus n(BigInt("340282366920938463463374607431768211507", 10));
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const BigInt a = rng.uniform_below(n.value());
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.value().get_mpz_t());
    if (g != 1) continue;
    const BigInt b = mod_inverse(a, n);
    EXPECT_GT(b, 0);
    EXPECT_LT(b, n.value());
    EXPECT_EQ(reduce(a * b, n.value()), 1);
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(Modulus, ValidatesParameters) {
  EXPECT_THROW(Modulus(1), std::invalid_argument);
  EXPECT_NO_THROW(Modulus(35, Factorization{5, 7}));
  EXPECT_NO_THROW(Modulus(1225, Factorization{5, 7}));
  EXPECT_THROW(Modulus(36, Factorization{5, 7}), std::invalid_argument);
  EXPECT_THROW(Modulus(45, Factorization{5, 9}), std::invalid_argument);
  EXPECT_EQ(Modulus(35), Modulus(35));
  EXPECT_EQ(Modulus(1225).bits(), 11u);
}

TEST(Hex, PadsAndParses) {
  EXPECT_EQ(to_hex(255), "ff");
  EXPECT_EQ(to_hex(255, 6), "0000ff");
  EXPECT_EQ(*parse_hex("0000ff"), 255);
  EXPECT_FALSE(parse_hex("FF"));
  EXPECT_FALSE(parse_hex(""));
  EXPECT_FALSE(parse_hex("12g"));
  EXPECT_FALSE(parse_hex("-1"));
}

}  // namespace
}  // namespace quatfhe
