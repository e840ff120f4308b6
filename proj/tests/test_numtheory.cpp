#include <gtest/gtest.h>

#include "mfblocks/numtheory.hpp"

using namespace mfb;

namespace {

bool trial_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

uint64_t brute_order(uint64_t a, uint64_t n) {
  uint64_t x = a % n;
  for (uint64_t k = 1; k <= n; ++k) {
    if (x == 1) return k;
    x = x * a % n;
  }
  return 0;
}

}  // namespace

TEST(NumTheory, PrimalityMatchesTrialDivision) {
  for (uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(nt::is_prime(n), trial_prime(n)) << n;
  EXPECT_TRUE(nt::is_prime(2305843009213693951ULL));  // 2^61 - 1
  EXPECT_FALSE(nt::is_prime(3215031751ULL));          // strong pseudoprime to 2,3,5,7
}

TEST(NumTheory, FactorizeReconstructs) {
  for (uint64_t n : {1ULL, 2ULL, 63ULL, 80ULL, 1048575ULL, 600851475143ULL, 4611686014132420609ULL}) {
    uint64_t prod = 1;
    for (const auto& [q, e] : nt::factorize(n)) {
      EXPECT_TRUE(nt::is_prime(q));
      for (unsigned i = 0; i < e; ++i) prod *= q;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_THROW(nt::factorize(0), Error);
}

TEST(NumTheory, OrdersAgainstBruteForce) {
  for (uint64_t n = 2; n < 300; ++n)
    for (uint64_t a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) {
        EXPECT_THROW(nt::multiplicative_order(a, n), Error);
        continue;
      }
      EXPECT_EQ(nt::multiplicative_order(a, n), brute_order(a, n)) << a << " mod " << n;
    }
  EXPECT_EQ(nt::multiplicative_order(2, 7), 3u);
  EXPECT_EQ(nt::multiplicative_order(2, 3), 2u);
  EXPECT_EQ(nt::multiplicative_order(3, 5), 4u);
}

TEST(NumTheory, PrimitiveRootsAndInverses) {
  EXPECT_EQ(nt::least_primitive_root(7), 3u);
  EXPECT_EQ(nt::least_primitive_root(5), 2u);
  EXPECT_EQ(nt::least_primitive_root(11), 2u);
  for (uint64_t p = 3; p < 500; ++p) {
    if (!trial_prime(p)) continue;
    const uint64_t g = nt::least_primitive_root(p);
    EXPECT_EQ(brute_order(g, p), p - 1);
    for (uint64_t h = 2; h < g; ++h) EXPECT_LT(brute_order(h, p), p - 1);
    for (uint64_t a = 1; a < p; ++a) EXPECT_EQ(nt::inverse_mod(a, p) * a % p, 1u);
  }
  EXPECT_THROW(nt::inverse_mod(4, 8), Error);
  EXPECT_THROW(nt::checked_pow(2, 63), Error);
  EXPECT_EQ(nt::checked_pow(3, 4), 81u);
}
