#include "quatfhe/numtheory.hpp"

#include <array>
#include <stdexcept>

#include "quatfhe/errors.hpp"

namespace quatfhe {

namespace {

constexpr std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

// One Miller-Rabin round for odd n > 3 with n - 1 = d * 2^s.
bool passes_witness(const BigInt& n, const BigInt& n_minus_1, const BigInt& d,
                    unsigned long s, const BigInt& base) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

Modulus::Modulus(BigInt n) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  rep_ = std::make_shared<const Rep>(Rep{std::move(n), std::nullopt});
}

Modulus::Modulus(BigInt n, Factorization factors) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  const BigInt pq = factors.p * factors.q;
  if (pq != n && pq * pq != n) {
    throw std::invalid_argument("factorization does not match modulus");
  }
  if (!is_probable_prime(factors.p) || !is_probable_prime(factors.q)) {
    throw std::invalid_argument("modulus factors are not prime");
  }
  rep_ = std::make_shared<const Rep>(Rep{std::move(n), std::move(factors)});
}

std::size_t Modulus::bits() const {
  return mpz_sizeinbase(rep_->n.get_mpz_t(), 2);
}

bool operator==(const Modulus& lhs, const Modulus& rhs) {
  return lhs.rep_ == rhs.rep_ || lhs.rep_->n == rhs.rep_->n;
}

BigInt reduce(const BigInt& value, const BigInt& n) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), value.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_probable_prime(const BigInt& n, RandomSource& rng, int rounds) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  const BigInt n_minus_1 = n - 1;
  const unsigned long s = mpz_scan1(n_minus_1.get_mpz_t(), 0);
  BigInt d;
  mpz_tdiv_q_2exp(d.get_mpz_t(), n_minus_1.get_mpz_t(), s);
  const BigInt base_range = n - 3;  // bases drawn from [2, n - 2]
  for (int i = 0; i < rounds; ++i) {
    BigInt base = rng.uniform_below(base_range) + 2;
    if (!passes_witness(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

bool is_probable_prime(const BigInt& n, int rounds) {
  RandomSource rng;
  return is_probable_prime(n, rng, rounds);
}

BigInt gen_prime(std::size_t bits, RandomSource& rng) {
  if (bits < 3) throw std::invalid_argument("gen_prime: bits must be >= 3");
  for (;;) {
    BigInt candidate = rng.random_bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (is_probable_prime(candidate, rng, kMillerRabinRounds)) {
      return candidate;
    }
  }
}

std::pair<BigInt, BigInt> gen_distinct_primes(std::size_t bits,
                                              RandomSource& rng) {
  BigInt p = gen_prime(bits, rng);
  BigInt q = gen_prime(bits, rng);
  while (q == p) q = gen_prime(bits, rng);
  return {std::move(p), std::move(q)};
}

Egcd egcd(const BigInt& a, const BigInt& b) {
  if (a == 0 && b == 0) {
    throw std::invalid_argument("egcd: both arguments are zero");
  }
  Egcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

BigInt mod_inverse(const BigInt& a, const Modulus& n) {
  const BigInt& m = n.value();
  if (a < 0 || a >= m) {
    throw std::invalid_argument("mod_inverse: argument not reduced");
  }
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NotInvertible("residue " + a.get_str() + " has no inverse mod " +
                        m.get_str());
  }
  return inv;
}

std::string to_hex(const BigInt& value) { return value.get_str(16); }

std::string to_hex(const BigInt& value, std::size_t width) {
  std::string digits = value.get_str(16);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return digits;
}

std::optional<BigInt> parse_hex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char ch : text) {
    const bool digit = ch >= '0' && ch <= '9';
    const bool letter = ch >= 'a' && ch <= 'f';
    if (!digit && !letter) return std::nullopt;
  }
  BigInt v;
  if (v.set_str(std::string(text), 16) != 0) return std::nullopt;
  return v;
}

}  // namespace quatfhe
