#pragma once

// Linear characters of the cyclic subgroups Z, L_1, L_2, P_1, P_2, stored
// as exponents against the fixed generators g_z, g_1, g_2, 1 in P_i and the
// fixed roots of unity zeta_r, zeta_p.

#include <cstdint>
#include <numeric>
#include <string>

#include "mfblocks/group.hpp"
#include "mfblocks/group_algebra.hpp"

namespace mfb {

enum class CharGroup { Z, L1, L2, P1, P2 };

inline const char* char_group_name(CharGroup g) {
  switch (g) {
    case CharGroup::Z: return "Z";
    case CharGroup::L1: return "L1";
    case CharGroup::L2: return "L2";
    case CharGroup::P1: return "P1";
    case CharGroup::P2: return "P2";
  }
  return "?";
}

inline CharGroup parse_char_group(const std::string& s) {
  for (CharGroup g : {CharGroup::Z, CharGroup::L1, CharGroup::L2, CharGroup::P1, CharGroup::P2})
    if (s == char_group_name(g)) return g;
  throw Error("unknown character group '" + s + "'");
}

struct Character {
  CharGroup group = CharGroup::Z;
  uint64_t e = 0;
  auto operator<=>(const Character&) const = default;
};

inline uint64_t char_group_order(const Params& P, CharGroup g) {
  return (g == CharGroup::P1 || g == CharGroup::P2) ? P.p : P.r;
}

inline Character make_char(const Params& P, CharGroup g, int64_t e) {
  const auto n = static_cast<int64_t>(char_group_order(P, g));
  return {g, static_cast<uint64_t>(((e % n) + n) % n)};
}

inline bool char_faithful(const Params& P, const Character& chi) {
  return std::gcd(chi.e, char_group_order(P, chi.group)) == 1;
}

inline Character char_mul(const Params& P, const Character& x, const Character& y) {
  if (x.group != y.group) throw Error("char_mul: characters on different groups");
  return {x.group, (x.e + y.e) % char_group_order(P, x.group)};
}

inline Character char_inverse(const Params& P, const Character& x) {
  const uint64_t n = char_group_order(P, x.group);
  return {x.group, (n - x.e) % n};
}

inline bool char_group_contains(CharGroup grp, const GroupElem& g) {
  switch (grp) {
    case CharGroup::Z: return g == GroupElem{0, 0, 0, 0, 0, 0, g.c};
    case CharGroup::L1: return g == GroupElem{0, 0, 0, 0, g.a, 0, 0};
    case CharGroup::L2: return g == GroupElem{0, 0, 0, 0, 0, g.b, 0};
    case CharGroup::P1: return g == GroupElem{0, g.x1, 0, 0, 0, 0, 0};
    case CharGroup::P2: return g == GroupElem{0, 0, 0, g.x2, 0, 0, 0};
  }
  return false;
}

/// Discrete logarithm of g against the fixed generator of the subgroup.
inline uint64_t char_group_log(CharGroup grp, const GroupElem& g) {
  switch (grp) {
    case CharGroup::Z: return g.c;
    case CharGroup::L1: return g.a;
    case CharGroup::L2: return g.b;
    case CharGroup::P1: return g.x1;
    case CharGroup::P2: return g.x2;
  }
  return 0;
}

inline GroupElem char_group_element(const Params& P, CharGroup grp, uint64_t k) {
  switch (grp) {
    case CharGroup::Z: return h_elem(P, 0, 0, k);
    case CharGroup::L1: return h_elem(P, k, 0, 0);
    case CharGroup::L2: return h_elem(P, 0, k, 0);
    case CharGroup::P1: return p_elem(P, 1, k);
    case CharGroup::P2: return p_elem(P, 2, k);
  }
  return group_identity();
}

/// zeta^(e k) for the group's root of unity.
inline FieldElem char_value_at_log(const Params& P, const Character& chi, uint64_t k) {
  const uint64_t n = char_group_order(P, chi.group);
  const uint64_t idx = nt::mulmod(chi.e % n, k % n, n);
  return (chi.group == CharGroup::P1 || chi.group == CharGroup::P2) ? P.zeta_p_pow[idx] : P.zeta_r_pow[idx];
}

inline FieldElem char_eval(const Params& P, const Character& chi, const GroupElem& g) {
  if (!char_group_contains(chi.group, g))
    throw Error(std::string("char_eval: element outside ") + char_group_name(chi.group));
  return char_value_at_log(P, chi, char_group_log(chi.group, g));
}

/// chi^w(h) = chi(h^{w^{-1}}) for w = g_i^t acting on P_i: exponent s g0^{-t}.
inline Character char_conjugate_by_l(const Params& P, const Character& chi, uint64_t t) {
  if (chi.group == CharGroup::P1 || chi.group == CharGroup::P2) {
    const uint64_t ginv_t = P.g0_pow[(P.r - t % P.r) % P.r];
    return {chi.group, nt::mulmod(chi.e, ginv_t, P.p)};
  }
  return chi;  // Z, L_1, L_2 are abelian and centralised by L_i
}

/// e_chi = |S|^{-1} sum_{g in S} chi(g^{-1}) g.
inline GAElem char_idempotent(const Params& P, const Character& chi) {
  const FieldContext& F = P.field();
  const uint64_t n = char_group_order(P, chi.group);
  const FieldElem inv_n = n == P.p ? P.p_inv : P.r_inv;
  GAElem out;
  for (uint64_t k = 0; k < n; ++k)
    out.accumulate(F, char_group_element(P, chi.group, k), F.mul(inv_n, char_value_at_log(P, chi, n - k)));
  return out;
}

/// The subgroup L_j paired with L_i.
inline CharGroup other_l(CharGroup li) {
  if (li == CharGroup::L1) return CharGroup::L2;
  if (li == CharGroup::L2) return CharGroup::L1;
  throw Error("other_l: not an L_i character");
}

/// h^theta_{chi,i}: the unique h in L_j with theta([h, g]) = chi(g) for g in L_i.
inline GroupElem h_element(const Params& P, const Character& theta, const Character& chi) {
  if (theta.group != CharGroup::Z) throw Error("h_element: theta must be a character of Z");
  const CharGroup lj = other_l(chi.group);
  const GroupElem gi = char_group_element(P, chi.group, 1);
  GroupElem found{};
  int hits = 0;
  for (uint64_t k = 0; k < P.r; ++k) {
    const GroupElem h = char_group_element(P, lj, k);
    bool ok = true;
    GroupElem g = group_identity();
    for (uint64_t t = 0; t < P.r && ok; ++t) {
      ok = char_eval(P, theta, commutator(P, h, g)) == char_value_at_log(P, chi, t);
      g = group_mul(P, g, gi);
    }
    if (ok) {
      found = h;
      ++hits;
    }
  }
  if (hits != 1)
    throw Error("h_element: " + std::to_string(hits) + " candidates (theta not faithful or inconsistent params)");
  return found;
}

/// Closed form of h_element: [g_2^b, g_1^a] = g_z^{-ab} and [g_1^a, g_2^b] = g_z^{ab}.
inline GroupElem h_element_closed_form(const Params& P, const Character& theta, const Character& chi) {
  if (!char_faithful(P, theta)) throw Error("h_element: theta not faithful");
  const uint64_t r = P.r;
  const uint64_t jinv = nt::inverse_mod(theta.e, r);
  if (chi.group == CharGroup::L1) return h_elem(P, 0, nt::mulmod((r - chi.e % r) % r, jinv, r), 0);
  if (chi.group == CharGroup::L2) return h_elem(P, nt::mulmod(chi.e, jinv, r), 0, 0);
  throw Error("h_element: chi must be a character of L_1 or L_2");
}

inline Character char_frob_power(const Character& theta, uint64_t m, uint64_t ell, uint64_t order) {
  return {theta.group, nt::mulmod(theta.e, nt::powmod(ell, m, order), order)};
}

inline Character char_frob_power(const Params& P, const Character& theta, uint64_t m) {
  return char_frob_power(theta, m, P.ell, char_group_order(P, theta.group));
}

}  // namespace mfb
