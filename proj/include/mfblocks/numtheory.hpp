#pragma once

// Integer arithmetic helpers: modular powers, primality, factorisation and
// multiplicative orders. Everything is 64-bit with 128-bit intermediates.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mfb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace nt {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    uint64_t x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline uint64_t pollard_rho(uint64_t n) {
  if (n % 2 == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(uint64_t n, std::map<uint64_t, unsigned>& out) {
  if (n == 1) return;
  for (uint64_t sp = 2; sp < 1000 && sp * sp <= n; ++sp) {
    while (n % sp == 0) {
      ++out[sp];
      n /= sp;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorisation as prime -> exponent.
inline std::map<uint64_t, unsigned> factorize(uint64_t n) {
  std::map<uint64_t, unsigned> out;
  if (n == 0) throw Error("factorize: zero has no factorisation");
  detail::factor_into(n, out);
  return out;
}

inline std::vector<uint64_t> prime_divisors(uint64_t n) {
  std::vector<uint64_t> out;
  for (const auto& [q, e] : factorize(n)) out.push_back(q);
  return out;
}

inline uint64_t euler_phi(uint64_t n) {
  uint64_t phi = n;
  for (uint64_t q : prime_divisors(n)) phi = phi / q * (q - 1);
  return phi;
}

/// Order of a in (Z/n)^x. Requires gcd(a, n) = 1 and n > 1.
inline uint64_t multiplicative_order(uint64_t a, uint64_t n) {
  if (n < 2 || std::gcd(a % n, n) != 1) throw Error("multiplicative_order: gcd(a, n) != 1");
  uint64_t order = euler_phi(n);
  for (const auto& [q, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % q == 0 && powmod(a, order / q, n) == 1; ++i) order /= q;
  }
  return order;
}

/// Least primitive root modulo the prime p.
inline uint64_t least_primitive_root(uint64_t p) {
  if (!is_prime(p)) throw Error("least_primitive_root: modulus not prime");
  if (p == 2) return 1;
  const auto qs = prime_divisors(p - 1);
  for (uint64_t g = 2; g < p; ++g) {
    if (std::all_of(qs.begin(), qs.end(), [&](uint64_t q) { return powmod(g, (p - 1) / q, p) != 1; }))
      return g;
  }
  throw Error("least_primitive_root: none found");
}

inline uint64_t inverse_mod(uint64_t a, uint64_t m) {
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
  while (new_r != 0) {
    int64_t q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw Error("inverse_mod: not invertible");
  return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

/// ell^e, throwing if the result does not fit below 2^62.
inline uint64_t checked_pow(uint64_t ell, uint64_t e) {
  constexpr uint64_t limit = uint64_t{1} << 62;
  uint64_t out = 1;
  for (uint64_t i = 0; i < e; ++i) {
    if (out > limit / ell) throw Error("checked_pow: value exceeds 2^62");
    out *= ell;
  }
  return out;
}

}  // namespace nt
}  // namespace mfb
