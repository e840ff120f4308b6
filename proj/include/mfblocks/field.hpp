#pragma once

// Exact arithmetic in the finite field F_{ell^d}.
//
// Elements are stored packed: the residue class of c_0 + c_1 t + ... +
// c_{d-1} t^{d-1} is the integer sum c_i ell^i. Small fields (q <= 2^22)
// additionally carry discrete-log tables; larger ones use polynomial
// arithmetic modulo the context's modulus.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mfblocks/numtheory.hpp"

namespace mfb {

struct FieldElem {
  uint64_t packed = 0;
  auto operator<=>(const FieldElem&) const = default;
};

enum class TableMode { automatic, never };

namespace poly {

// Dense polynomials over F_ell, lowest coefficient first, no trailing zeros.
using Poly = std::vector<uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mod(Poly a, const Poly& f, uint64_t ell) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const uint64_t lead_inv = nt::inverse_mod(f.back(), ell);
  while (a.size() >= f.size()) {
    const uint64_t coef = nt::mulmod(a.back(), lead_inv, ell);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + ell - nt::mulmod(coef, f[i], ell)) % ell;
    }
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t ell) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + nt::mulmod(a[i], b[j], ell)) % ell;
  return mod(std::move(out), f, ell);
}

inline Poly powmod(Poly base, uint64_t e, const Poly& f, uint64_t ell) {
  Poly result{1};
  base = mod(std::move(base), f, ell);
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, f, ell);
    base = mulmod(base, base, f, ell);
    e >>= 1;
  }
  return result;
}

inline Poly gcd(Poly a, Poly b, uint64_t ell) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, ell);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or test: f of degree d is irreducible iff gcd(x^{ell^i} - x, f) = 1
/// for every 1 <= i <= d/2.
inline bool is_irreducible(const Poly& f, uint64_t ell) {
  const std::size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  Poly xp{0, 1};
  for (std::size_t i = 1; i <= d / 2; ++i) {
    xp = powmod(xp, ell, f, ell);
    Poly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + ell - 1) % ell;
    trim(diff);
    if (diff.empty()) return false;
    if (gcd(f, diff, ell).size() != 1) return false;
  }
  return true;
}

}  // namespace poly

class FieldContext {
 public:
  static constexpr unsigned max_degree = 24;
  static constexpr uint64_t table_limit = uint64_t{1} << 22;

  /// Deterministic splitting-field construction: the modulus is the least
  /// monic irreducible polynomial of degree d when the lower coefficients
  /// are read as a base-ell integer, the generator the least packed element
  /// of multiplicative order ell^d - 1.
  static std::shared_ptr<const FieldContext> make(uint64_t ell, unsigned d, TableMode mode = TableMode::automatic) {
    if (!nt::is_prime(ell)) throw Error("field_make: ell = " + std::to_string(ell) + " is not prime");
    if (ell >= (uint64_t{1} << 31)) throw Error("field_make: ell too large");
    if (d < 1 || d > max_degree) throw Error("field_make: degree " + std::to_string(d) + " outside [1, 24]");
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->ell_ = ell;
    ctx->d_ = d;
    ctx->q_ = nt::checked_pow(ell, d);
    ctx->pick_modulus();
    ctx->pick_generator();
    if (mode == TableMode::automatic && ctx->q_ <= table_limit) ctx->build_tables();
    return ctx;
  }

  uint64_t characteristic() const { return ell_; }
  unsigned degree() const { return d_; }
  uint64_t order() const { return q_; }
  bool has_tables() const { return !exp_.empty(); }
  const std::vector<uint64_t>& modulus() const { return modulus_; }
  FieldElem generator() const { return generator_; }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem element(uint64_t packed) const {
    if (packed >= q_) throw Error("field element index out of range");
    return {packed};
  }
  FieldElem from_int(int64_t v) const {
    const auto m = static_cast<int64_t>(ell_);
    return {static_cast<uint64_t>(((v % m) + m) % m)};
  }
  FieldElem from_coeffs(std::span<const uint64_t> coeffs) const {
    if (coeffs.size() != d_) throw Error("from_coeffs: expected exactly d coefficients");
    uint64_t packed = 0;
    for (std::size_t i = d_; i-- > 0;) {
      if (coeffs[i] >= ell_) throw Error("from_coeffs: coefficient not reduced");
      packed = packed * ell_ + coeffs[i];
    }
    return {packed};
  }
  std::vector<uint64_t> coeffs(FieldElem x) const {
    std::vector<uint64_t> out(d_);
    for (unsigned i = 0; i < d_; ++i) {
      out[i] = x.packed % ell_;
      x.packed /= ell_;
    }
    return out;
  }
  bool in_prime_field(FieldElem x) const { return x.packed < ell_; }

  FieldElem add(FieldElem a, FieldElem b) const {
    if (ell_ == 2) return {a.packed ^ b.packed};
    if (a.packed == 0) return b;
    if (b.packed == 0) return a;
    if (has_tables()) {
      const uint64_t la = log_[a.packed], lb = log_[b.packed];
      const uint64_t k = lb >= la ? lb - la : lb + (q_ - 1) - la;
      const int64_t z = zech_[k];
      if (z < 0) return {0};
      return {exp_[la + static_cast<uint64_t>(z)]};
    }
    return digitwise(a, b, false);
  }
  FieldElem neg(FieldElem a) const {
    if (ell_ == 2 || a.packed == 0) return a;
    return digitwise(FieldElem{0}, a, true);
  }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a.packed == 0 || b.packed == 0) return {0};
    if (has_tables()) return {exp_[log_[a.packed] + log_[b.packed]]};
    return poly_mul(a, b);
  }
  FieldElem pow(FieldElem a, uint64_t e) const {
    if (e == 0) return one();
    if (a.packed == 0) return zero();
    if (has_tables()) return {exp_[nt::mulmod(log_[a.packed], e % (q_ - 1), q_ - 1)]};
    FieldElem result = one();
    while (e > 0) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }
  FieldElem inv(FieldElem a) const {
    if (a.packed == 0) throw Error("field inverse of zero");
    if (has_tables()) return {exp_[(q_ - 1 - log_[a.packed]) % (q_ - 1)]};
    return pow(a, q_ - 2);
  }
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  /// x^(ell^m).
  FieldElem frobenius(FieldElem x, uint64_t m) const {
    for (uint64_t i = 0; i < m % d_; ++i) x = pow(x, ell_);
    return x;
  }

  /// generator^((q-1)/m); throws unless m | q - 1.
  FieldElem root_of_unity(uint64_t m) const {
    if (m == 0 || (q_ - 1) % m != 0)
      throw Error("root_of_unity: " + std::to_string(m) + " does not divide " + std::to_string(q_ - 1) +
                  "; field is not a splitting field for C_" + std::to_string(m));
    return pow(generator_, (q_ - 1) / m);
  }

  /// Multiplicative order of a nonzero element.
  uint64_t element_order(FieldElem x) const {
    if (x.packed == 0) throw Error("element_order: zero");
    uint64_t order = q_ - 1;
    for (const auto& [pr, e] : nt::factorize(q_ - 1)) {
      for (unsigned i = 0; i < e && pow(x, order / pr) == one(); ++i) order /= pr;
    }
    return order;
  }

  /// Polynomial-route product, available regardless of table mode.
  FieldElem poly_mul(FieldElem a, FieldElem b) const {
    std::array<uint64_t, 2 * max_degree> prod{};
    const auto ca = coeffs(a), cb = coeffs(b);
    for (unsigned i = 0; i < d_; ++i) {
      if (ca[i] == 0) continue;
      for (unsigned j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + nt::mulmod(ca[i], cb[j], ell_)) % ell_;
    }
    for (unsigned k = 2 * d_ - 1; k-- > d_;) {
      const uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < d_; ++i)
        prod[k - d_ + i] = (prod[k - d_ + i] + ell_ - nt::mulmod(c, modulus_[i], ell_)) % ell_;
    }
    uint64_t packed = 0;
    for (unsigned i = d_; i-- > 0;) packed = packed * ell_ + prod[i];
    return {packed};
  }

 private:
  FieldContext() = default;

  FieldElem digitwise(FieldElem a, FieldElem b, bool negate_b) const {
    uint64_t packed = 0, scale = 1;
    for (unsigned i = 0; i < d_; ++i) {
      uint64_t da = a.packed % ell_, db = b.packed % ell_;
      a.packed /= ell_;
      b.packed /= ell_;
      if (negate_b) db = (ell_ - db) % ell_;
      packed += ((da + db) % ell_) * scale;
      scale *= ell_;
    }
    return {packed};
  }

  void pick_modulus() {
    const uint64_t count = q_;
    for (uint64_t lower = 0; lower < count; ++lower) {
      poly::Poly f(d_ + 1, 0);
      uint64_t v = lower;
      for (unsigned i = 0; i < d_; ++i) {
        f[i] = v % ell_;
        v /= ell_;
      }
      f[d_] = 1;
      if (poly::is_irreducible(f, ell_)) {
        modulus_ = f;
        return;
      }
    }
    throw Error("field_make: no irreducible modulus found");
  }

  void pick_generator() {
    const auto qs = nt::prime_divisors(q_ - 1 == 0 ? 1 : q_ - 1);
    for (uint64_t packed = 1; packed < q_; ++packed) {
      const FieldElem g{packed};
      bool ok = true;
      for (uint64_t pr : qs) {
        if (pow(g, (q_ - 1) / pr) == one()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        generator_ = g;
        return;
      }
    }
    throw Error("field_make: no generator found");
  }

  void build_tables() {
    const uint64_t n = q_ - 1;
    std::vector<uint32_t> exp(2 * n + 1), log(q_, 0);
    FieldElem x = one();
    for (uint64_t i = 0; i < n; ++i) {
      exp[i] = static_cast<uint32_t>(x.packed);
      log[x.packed] = static_cast<uint32_t>(i);
      x = poly_mul(x, generator_);
    }
    for (uint64_t i = n; i <= 2 * n; ++i) exp[i] = exp[i - n];
    if (ell_ != 2) {
      zech_.assign(n, -1);
      for (uint64_t k = 0; k < n; ++k) {
        const FieldElem s = digitwise(one(), FieldElem{exp[k]}, false);
        if (s.packed != 0) zech_[k] = log[s.packed];
      }
    }
    exp_ = std::move(exp);
    log_ = std::move(log);
  }

  uint64_t ell_ = 0;
  unsigned d_ = 0;
  uint64_t q_ = 0;
  std::vector<uint64_t> modulus_;
  FieldElem generator_{};
  std::vector<uint32_t> exp_;
  std::vector<uint32_t> log_;
  std::vector<int64_t> zech_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

}  // namespace mfb
