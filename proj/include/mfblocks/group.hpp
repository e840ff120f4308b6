#pragma once

// The group G = ((D_1 x| P_1) x (D_2 x| P_2)) x| H and its normal forms.
//
// A GroupElem encodes d_1(v1) x1 d_2(v2) x2 g_1^a g_2^b g_z^c. The D_i
// coordinates are vectors over Z/ell indexed by F_p modulo the diagonal,
// normalised so that the entry at index 0 is zero and packed base ell over
// the indices 1..p-1.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mfblocks/field.hpp"
#include "mfblocks/numtheory.hpp"

namespace mfb {

struct Params {
  uint64_t ell = 0;
  uint64_t p = 0;
  uint64_t r = 0;
  unsigned d = 0;
  FieldPtr ctx;
  uint64_t g0 = 0;  // exact order r in F_p^x
  FieldElem zeta_p{};
  FieldElem zeta_r{};

  uint64_t d_size = 0;            // |D_i| = ell^(p-1)
  std::vector<uint64_t> g0_pow;   // g0^t mod p, t < r
  std::vector<uint64_t> inv_p;    // multiplicative inverses mod p (index 0 unused)
  std::vector<FieldElem> zeta_p_pow;
  std::vector<FieldElem> zeta_r_pow;
  FieldElem p_inv{};
  FieldElem r_inv{};

  const FieldContext& field() const { return *ctx; }
  uint64_t a_size() const { return p * d_size; }  // |D_i x| P_i|
};

/// Validates (ell, p, r) and builds the field F_{ell^d}, d = lcm(ord_p ell, ord_r ell).
inline Params params_make(uint64_t ell, uint64_t p, uint64_t r) {
  if (!nt::is_prime(ell)) throw Error("params: ell = " + std::to_string(ell) + " is not prime");
  if (!nt::is_prime(p)) throw Error("params: p = " + std::to_string(p) + " is not prime");
  if (p == ell) throw Error("params: p must differ from ell");
  if (r <= 1) throw Error("params: r must exceed 1");
  if ((p - 1) % r != 0) throw Error("params: r = " + std::to_string(r) + " does not divide p - 1");
  if (std::gcd(r, ell) != 1) throw Error("params: ell divides r (r must be an ell'-number)");
  if (p > 64) throw Error("params: p > 64 exceeds the packed normal form");

  Params P;
  P.ell = ell;
  P.p = p;
  P.r = r;
  const uint64_t op = nt::multiplicative_order(ell % p, p);
  const uint64_t orr = r == 2 ? 1 : nt::multiplicative_order(ell % r, r);
  const uint64_t d = std::lcm(op, orr);
  if (d > FieldContext::max_degree)
    throw Error("params: splitting field degree " + std::to_string(d) + " exceeds 24");
  P.d = static_cast<unsigned>(d);
  P.d_size = nt::checked_pow(ell, p - 1);
  P.ctx = FieldContext::make(ell, P.d);

  const uint64_t gamma = nt::least_primitive_root(p);
  P.g0 = nt::powmod(gamma, (p - 1) / r, p);
  P.zeta_p = P.ctx->root_of_unity(p);
  P.zeta_r = P.ctx->root_of_unity(r);

  for (uint64_t t = 0; t < r; ++t) P.g0_pow.push_back(nt::powmod(P.g0, t, p));
  P.inv_p.assign(p, 0);
  for (uint64_t x = 1; x < p; ++x) P.inv_p[x] = nt::inverse_mod(x, p);
  for (uint64_t k = 0; k < p; ++k) P.zeta_p_pow.push_back(P.ctx->pow(P.zeta_p, k));
  for (uint64_t k = 0; k < r; ++k) P.zeta_r_pow.push_back(P.ctx->pow(P.zeta_r, k));
  P.p_inv = P.ctx->inv(P.ctx->from_int(static_cast<int64_t>(p % ell)));
  P.r_inv = P.ctx->inv(P.ctx->from_int(static_cast<int64_t>(r % ell)));
  return P;
}

struct GroupElem {
  uint64_t d1 = 0;
  uint32_t x1 = 0;
  uint64_t d2 = 0;
  uint32_t x2 = 0;
  uint32_t a = 0;
  uint32_t b = 0;
  uint32_t c = 0;
  auto operator<=>(const GroupElem&) const = default;

  uint64_t d(int side) const { return side == 1 ? d1 : d2; }
  uint32_t x(int side) const { return side == 1 ? x1 : x2; }
  bool in_h() const { return d1 == 0 && d2 == 0 && x1 == 0 && x2 == 0; }
};

struct GroupElemHash {
  std::size_t operator()(const GroupElem& g) const noexcept {
    uint64_t h = g.d1 * 0x9E3779B97F4A7C15ULL;
    h ^= (g.d2 + 0x7F4A7C159E3779B9ULL) * 0xC2B2AE3D27D4EB4FULL;
    h ^= (uint64_t{g.x1} << 48) ^ (uint64_t{g.x2} << 32) ^ (uint64_t{g.a} << 20) ^ (uint64_t{g.b} << 10) ^ g.c;
    h ^= h >> 29;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
  }
};

namespace grp_detail {

using DVec = std::array<uint32_t, 64>;

inline DVec unpack(const Params& P, uint64_t packed) {
  DVec v{};
  for (uint64_t k = 1; k < P.p; ++k) {
    v[k] = static_cast<uint32_t>(packed % P.ell);
    packed /= P.ell;
  }
  return v;
}

/// Packs after subtracting v[0] from every entry (coset of the diagonal).
inline uint64_t pack(const Params& P, const DVec& v) {
  const uint64_t shift = v[0] % P.ell;
  uint64_t packed = 0;
  for (uint64_t k = P.p - 1; k >= 1; --k) packed = packed * P.ell + (v[k] + P.ell - shift) % P.ell;
  return packed;
}

struct NPart {
  uint64_t d;
  uint32_t x;
};

// (d, x)(d', x') = (d + (d')^{x^{-1}}, x + x'); conjugating by x^{-1}
// translates indices by -x.
inline NPart n_mul(const Params& P, NPart u, NPart w) {
  const DVec v = unpack(P, u.d), s = unpack(P, w.d);
  DVec out{};
  for (uint64_t h = 0; h < P.p; ++h) out[h] = static_cast<uint32_t>((v[h] + s[(h + u.x) % P.p]) % P.ell);
  return {pack(P, out), static_cast<uint32_t>((u.x + w.x) % P.p)};
}

// Automorphism of D_i x| P_i scaling indices by the unit s: d^x -> d^{sx}, y -> sy.
inline NPart n_scale(const Params& P, NPart u, uint64_t s) {
  if (s % P.p == 1) return u;
  const DVec v = unpack(P, u.d);
  DVec out{};
  for (uint64_t h = 0; h < P.p; ++h) out[nt::mulmod(s, h, P.p)] = v[h];
  return {pack(P, out), static_cast<uint32_t>(nt::mulmod(s, u.x, P.p))};
}

inline NPart n_inv(const Params& P, NPart u) {
  const DVec v = unpack(P, u.d);
  DVec out{};
  for (uint64_t k = 0; k < P.p; ++k) out[k] = static_cast<uint32_t>((P.ell - v[(k + P.p - u.x) % P.p]) % P.ell);
  return {pack(P, out), static_cast<uint32_t>((P.p - u.x) % P.p)};
}

}  // namespace grp_detail

inline GroupElem group_identity() { return {}; }

/// Product under n^h = h^{-1} n h: (n h)(n' h') = n (h n' h^{-1}) h h', with
/// g_1^a acting on D_1 x| P_1 by index multiplication with g0^a.
inline GroupElem group_mul(const Params& P, const GroupElem& g, const GroupElem& h) {
  using namespace grp_detail;
  const uint64_t r = P.r;
  const NPart h1 = n_scale(P, {h.d1, h.x1}, P.g0_pow[(r - g.a) % r]);
  const NPart h2 = n_scale(P, {h.d2, h.x2}, P.g0_pow[(r - g.b) % r]);
  const NPart n1 = n_mul(P, {g.d1, g.x1}, h1);
  const NPart n2 = n_mul(P, {g.d2, g.x2}, h2);
  GroupElem out;
  out.d1 = n1.d;
  out.x1 = n1.x;
  out.d2 = n2.d;
  out.x2 = n2.x;
  out.a = static_cast<uint32_t>((g.a + h.a) % r);
  out.b = static_cast<uint32_t>((g.b + h.b) % r);
  out.c = static_cast<uint32_t>((g.c + h.c + r * r - (uint64_t{h.a} * g.b) % r) % r);
  return out;
}

inline GroupElem group_inv(const Params& P, const GroupElem& g) {
  using namespace grp_detail;
  const uint64_t r = P.r;
  // (n h)^{-1} = (h^{-1} n^{-1} h) h^{-1}
  GroupElem hinv;
  hinv.a = static_cast<uint32_t>((r - g.a) % r);
  hinv.b = static_cast<uint32_t>((r - g.b) % r);
  hinv.c = static_cast<uint32_t>((2 * r * r - g.c - (uint64_t{g.a} * g.b) % r) % r);
  const NPart i1 = n_scale(P, n_inv(P, {g.d1, g.x1}), P.g0_pow[g.a]);
  const NPart i2 = n_scale(P, n_inv(P, {g.d2, g.x2}), P.g0_pow[g.b]);
  GroupElem out = hinv;
  out.d1 = i1.d;
  out.x1 = i1.x;
  out.d2 = i2.d;
  out.x2 = i2.x;
  return out;
}

/// x^h = h^{-1} x h.
inline GroupElem conjugate(const Params& P, const GroupElem& x, const GroupElem& h) {
  return group_mul(P, group_mul(P, group_inv(P, h), x), h);
}

/// [x, y] = x y x^{-1} y^{-1}.
inline GroupElem commutator(const Params& P, const GroupElem& x, const GroupElem& y) {
  return group_mul(P, group_mul(P, x, y), group_mul(P, group_inv(P, x), group_inv(P, y)));
}

inline GroupElem group_pow(const Params& P, GroupElem g, uint64_t e) {
  GroupElem out = group_identity();
  while (e > 0) {
    if (e & 1) out = group_mul(P, out, g);
    g = group_mul(P, g, g);
    e >>= 1;
  }
  return out;
}

// Named elements.
inline GroupElem h_elem(const Params& P, uint64_t a, uint64_t b, uint64_t c) {
  GroupElem g;
  g.a = static_cast<uint32_t>(a % P.r);
  g.b = static_cast<uint32_t>(b % P.r);
  g.c = static_cast<uint32_t>(c % P.r);
  return g;
}
inline GroupElem gen_g1(const Params& P) { return h_elem(P, 1, 0, 0); }
inline GroupElem gen_g2(const Params& P) { return h_elem(P, 0, 1, 0); }
inline GroupElem gen_gz(const Params& P) { return h_elem(P, 0, 0, 1); }

/// d_i^x: the generator of C_ell sitting in the factor labelled x.
inline GroupElem d_elem(const Params& P, int side, uint64_t x) {
  grp_detail::DVec v{};
  v[x % P.p] = 1;
  GroupElem g;
  (side == 1 ? g.d1 : g.d2) = grp_detail::pack(P, v);
  return g;
}

/// The element y of P_i = (F_p, +).
inline GroupElem p_elem(const Params& P, int side, uint64_t y) {
  GroupElem g;
  (side == 1 ? g.x1 : g.x2) = static_cast<uint32_t>(y % P.p);
  return g;
}

/// Element of D_i x| P_i with packed D-coordinate d and P-coordinate x.
inline GroupElem n_elem(int side, uint64_t d, uint64_t x) {
  GroupElem g;
  if (side == 1) {
    g.d1 = d;
    g.x1 = static_cast<uint32_t>(x);
  } else {
    g.d2 = d;
    g.x2 = static_cast<uint32_t>(x);
  }
  return g;
}

/// Full coordinate vector v_i (length p, v_i[0] = 0).
inline std::vector<uint32_t> d_vector(const Params& P, const GroupElem& g, int side) {
  const auto v = grp_detail::unpack(P, g.d(side));
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(P.p)};
}

inline GroupElem from_coordinates(const Params& P, const std::vector<uint32_t>& v1, uint64_t x1,
                                  const std::vector<uint32_t>& v2, uint64_t x2, uint64_t a, uint64_t b,
                                  uint64_t c) {
  if (v1.size() != P.p || v2.size() != P.p) throw Error("from_coordinates: D vectors must have length p");
  grp_detail::DVec w1{}, w2{};
  for (uint64_t k = 0; k < P.p; ++k) {
    w1[k] = v1[k] % P.ell;
    w2[k] = v2[k] % P.ell;
  }
  GroupElem g = h_elem(P, a, b, c);
  g.d1 = grp_detail::pack(P, w1);
  g.d2 = grp_detail::pack(P, w2);
  g.x1 = static_cast<uint32_t>(x1 % P.p);
  g.x2 = static_cast<uint32_t>(x2 % P.p);
  return g;
}

enum class SubgroupTag { Z, L1, L2, H, P1, P2, D1, D2, N1, N2, EGenerators, GGenerators, G };

inline SubgroupTag parse_subgroup_tag(const std::string& s) {
  static const std::pair<const char*, SubgroupTag> names[] = {
      {"Z", SubgroupTag::Z},   {"L1", SubgroupTag::L1}, {"L2", SubgroupTag::L2},
      {"H", SubgroupTag::H},   {"P1", SubgroupTag::P1}, {"P2", SubgroupTag::P2},
      {"D1", SubgroupTag::D1}, {"D2", SubgroupTag::D2}, {"N1", SubgroupTag::N1},
      {"N2", SubgroupTag::N2}, {"E-generators", SubgroupTag::EGenerators},
      {"G-generators", SubgroupTag::GGenerators}, {"G", SubgroupTag::G}};
  for (const auto& [name, tag] : names)
    if (s == name) return tag;
  throw Error("unknown subgroup tag '" + s + "'");
}

/// Enumerates a tagged subgroup (or returns a generating list for E and G).
inline std::vector<GroupElem> subgroup_elements(const Params& P, SubgroupTag tag) {
  constexpr uint64_t limit = 1000000;
  std::vector<GroupElem> out;
  switch (tag) {
    case SubgroupTag::Z:
      for (uint64_t c = 0; c < P.r; ++c) out.push_back(h_elem(P, 0, 0, c));
      break;
    case SubgroupTag::L1:
      for (uint64_t a = 0; a < P.r; ++a) out.push_back(h_elem(P, a, 0, 0));
      break;
    case SubgroupTag::L2:
      for (uint64_t b = 0; b < P.r; ++b) out.push_back(h_elem(P, 0, b, 0));
      break;
    case SubgroupTag::H:
      for (uint64_t a = 0; a < P.r; ++a)
        for (uint64_t b = 0; b < P.r; ++b)
          for (uint64_t c = 0; c < P.r; ++c) out.push_back(h_elem(P, a, b, c));
      break;
    case SubgroupTag::P1:
    case SubgroupTag::P2:
      for (uint64_t y = 0; y < P.p; ++y) out.push_back(p_elem(P, tag == SubgroupTag::P1 ? 1 : 2, y));
      break;
    case SubgroupTag::D1:
    case SubgroupTag::D2:
      if (P.d_size > limit) throw Error("subgroup_elements: D_i too large to enumerate");
      for (uint64_t d = 0; d < P.d_size; ++d) out.push_back(n_elem(tag == SubgroupTag::D1 ? 1 : 2, d, 0));
      break;
    case SubgroupTag::N1:
    case SubgroupTag::N2:
      if (P.a_size() > limit) throw Error("subgroup_elements: D_i x| P_i too large to enumerate");
      for (uint64_t x = 0; x < P.p; ++x)
        for (uint64_t d = 0; d < P.d_size; ++d) out.push_back(n_elem(tag == SubgroupTag::N1 ? 1 : 2, d, x));
      break;
    case SubgroupTag::EGenerators:
      out = {p_elem(P, 1, 1), p_elem(P, 2, 1), gen_g1(P), gen_g2(P), gen_gz(P)};
      break;
    case SubgroupTag::GGenerators:
      out = {d_elem(P, 1, 0), d_elem(P, 2, 0), p_elem(P, 1, 1), p_elem(P, 2, 1), gen_g1(P), gen_g2(P)};
      break;
    case SubgroupTag::G:
      throw Error("subgroup_elements: refusing to enumerate G (order |D|^2 p^2 r^3); use G-generators");
  }
  return out;
}

/// D_i x| P_i as an indexed finite group: index = x * |D_i| + d. All tables
/// are derived from group_mul and conjugate.
class LocalGroup {
 public:
  LocalGroup(const Params& P, int side) : P_(P), side_(side) {
    if (side != 1 && side != 2) throw Error("LocalGroup: side must be 1 or 2");
    if (P.a_size() > 2000000) throw Error("LocalGroup: D_i x| P_i too large");
    const uint64_t nd = P.d_size;
    trans_.resize(P.p * nd);
    for (uint64_t x = 0; x < P.p; ++x)
      for (uint64_t d = 0; d < nd; ++d) {
        const GroupElem prod = group_mul(P, n_elem(side, 0, x), n_elem(side, d, 0));
        trans_[x * nd + d] = static_cast<uint32_t>(prod.d(side));
      }
    if (nd <= 1024) {
      add_.resize(nd * nd);
      for (uint64_t d = 0; d < nd; ++d)
        for (uint64_t e = 0; e < nd; ++e)
          add_[d * nd + e] = static_cast<uint32_t>(group_mul(P, n_elem(side, d, 0), n_elem(side, e, 0)).d(side));
    }
    conj_.resize(P.r);
    const GroupElem g = side == 1 ? gen_g1(P) : gen_g2(P);
    for (uint64_t t = 0; t < P.r; ++t) {
      const GroupElem w = group_pow(P, g, t);
      conj_[t].resize(size());
      for (uint64_t i = 0; i < size(); ++i) conj_[t][i] = index_of(conjugate(P, element(i), w));
    }
  }

  const Params& params() const { return P_; }
  int side() const { return side_; }
  uint64_t size() const { return P_.a_size(); }
  uint64_t d_size() const { return P_.d_size; }
  uint64_t identity_index() const { return 0; }

  GroupElem element(uint64_t idx) const { return n_elem(side_, idx % P_.d_size, idx / P_.d_size); }
  uint64_t index_of(const GroupElem& g) const {
    if (!contains(g)) throw Error("LocalGroup::index_of: element outside D_i x| P_i");
    return uint64_t{g.x(side_)} * P_.d_size + g.d(side_);
  }
  bool contains(const GroupElem& g) const {
    if (g.a != 0 || g.b != 0 || g.c != 0) return false;
    return side_ == 1 ? (g.d2 == 0 && g.x2 == 0) : (g.d1 == 0 && g.x1 == 0);
  }

  uint64_t mul(uint64_t i, uint64_t j) const {
    const uint64_t nd = P_.d_size;
    const uint64_t xi = i / nd, di = i % nd, xj = j / nd, dj = j % nd;
    const uint64_t t = trans_[xi * nd + dj];
    const uint64_t dsum = add_.empty() ? group_mul(P_, n_elem(side_, di, 0), n_elem(side_, t, 0)).d(side_)
                                       : add_[di * nd + t];
    return ((xi + xj) % P_.p) * nd + dsum;
  }

  /// Index of w^{-1} n w for w = g_i^t.
  uint64_t conj(uint64_t idx, uint64_t t) const { return conj_[t % P_.r][idx]; }
  const std::vector<uint32_t>& conj_table(uint64_t t) const { return conj_[t % P_.r]; }

 private:
  Params P_;
  int side_;
  std::vector<uint32_t> trans_;
  std::vector<uint32_t> add_;
  std::vector<std::vector<uint32_t>> conj_;
};

}  // namespace mfb
