#pragma once

// Simple modules, head algebra, Ext quiver, commutation pairing, recovery of
// theta, Morita-Frobenius numbers and the two explicit isomorphisms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mfblocks/block.hpp"
#include "mfblocks/linalg.hpp"
#include "mfblocks/twisted.hpp"

namespace mfb {

// ----- simple census -----

struct SimpleInfo {
  SimpleLabel label;
  uint64_t degree = 0;
};

inline void check_faithful_theta(const Params& P, const Character& theta) {
  if (theta.group != CharGroup::Z || !char_faithful(P, theta)) throw Error("theta must be a faithful character of Z");
}

/// Labels in canonical order: (1,1), (phi,1), (1,psi), then ([phi],[psi]) by representatives.
inline std::vector<SimpleInfo> simples(const Params& P, const Character& theta) {
  check_faithful_theta(P, theta);
  if ((P.p - 1) % P.r != 0) throw Error("simples: r does not divide p - 1");
  const uint64_t r = P.r;
  std::vector<SimpleInfo> out{{{SimpleLabel::Kind::One, 0, 0}, r}};
  for (uint64_t s = 1; s < P.p; ++s) out.push_back({{SimpleLabel::Kind::Left, s, 0}, r});
  for (uint64_t s = 1; s < P.p; ++s) out.push_back({{SimpleLabel::Kind::Right, 0, s}, r});
  for (uint64_t a = 1; a < P.p; ++a) {
    if (orbit_rep(P, a) != a) continue;
    for (uint64_t b = 1; b < P.p; ++b)
      if (orbit_rep(P, b) == b) out.push_back({{SimpleLabel::Kind::Pair, a, b}, r * r});
  }
  return out;
}

/// Degrees of Irr(E | theta) by Clifford theory over the L_1 x L_2 orbits on
/// Irr(P_1) x Irr(P_2), computed from stabilisers and the commutator form.
inline std::multiset<uint64_t> simple_degrees_by_orbits(const Params& P, const Character& theta) {
  check_faithful_theta(P, theta);
  const uint64_t p = P.p, r = P.r;
  std::multiset<uint64_t> out;
  std::vector<bool> seen(p * p, false);
  for (uint64_t phi = 0; phi < p; ++phi)
    for (uint64_t psi = 0; psi < p; ++psi) {
      if (seen[phi * p + psi]) continue;
      std::vector<std::pair<uint64_t, uint64_t>> stab;
      for (uint64_t a = 0; a < r; ++a)
        for (uint64_t b = 0; b < r; ++b) {
          const uint64_t phi2 = phi * P.g0_pow[(r - a) % r] % p, psi2 = psi * P.g0_pow[(r - b) % r] % p;
          seen[phi2 * p + psi2] = true;
          if (phi2 == phi && psi2 == psi) stab.emplace_back(a, b);
        }
      // Radical of theta o [ , ] on the stabiliser S.
      uint64_t radical = 0;
      for (const auto& [a, b] : stab) {
        bool central = true;
        for (const auto& [a2, b2] : stab)
          central = central && char_eval(P, theta, commutator(P, h_elem(P, a, b, 0), h_elem(P, a2, b2, 0))).packed == 1;
        radical += central;
      }
      const uint64_t s = stab.size();
      uint64_t root = 1;
      while (root * root < s / radical) ++root;
      if (root * root != s / radical) throw Error("simple_degrees_by_orbits: commutator form not symplectic");
      const uint64_t degree = root * (r * r / s);
      for (uint64_t k = 0; k < radical; ++k) out.insert(degree);
    }
  return out;
}

// ----- head algebra -----

struct HeadAlgebra {
  uint64_t dim = 0;
  uint64_t centre_dim = 0;
  std::vector<uint64_t> block_dims;          // ascending
  std::vector<TTElem> central_idempotents;  // aligned with block_dims
};

namespace morita_detail {

inline TTElem head_elem(const TwistedB0& T, const std::vector<FieldElem>& v) {
  const uint64_t p = T.params().p;
  TTElem out = T.zero();
  for (uint64_t k = 0; k < v.size(); ++k)
    out.accumulate(T.field(), T.key(T.q(1).label_index(k / p, 0), T.q(2).label_index(k % p, 0)), v[k]);
  return out;
}

inline std::vector<FieldElem> head_vec(const TwistedB0& T, const TTElem& t) {
  const uint64_t p = T.params().p;
  std::vector<FieldElem> v(p * p, FieldElem{0});
  for (const auto& [k, c] : t.terms) {
    const uint64_t u = T.key_u(k), w = T.key_v(k);
    if (T.q(1).label_m(u) != 0 || T.q(2).label_m(w) != 0) continue;
    v[T.q(1).label_psi(u) * p + T.q(2).label_psi(w)] = c;
  }
  return v;
}

inline std::vector<FieldElem> poly_roots(const FieldContext& F, const std::vector<FieldElem>& coeffs) {
  if (F.order() > (uint64_t{1} << 22)) throw Error("head_algebra: field too large for root search");
  std::vector<FieldElem> roots;
  for (uint64_t i = 0; i < F.order(); ++i) {
    const FieldElem x = F.element(i);
    FieldElem acc{0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    if (acc.packed == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace morita_detail

/// Wedderburn decomposition of the degree-0 part span{e_psi (x) e_xi} of B_0.
inline HeadAlgebra head_algebra(const TwistedB0& T, uint64_t seed = 1) {
  using namespace morita_detail;
  const FieldContext& F = T.field();
  const uint64_t p = T.params().p, n = p * p;
  // Structure constants.
  std::vector<std::vector<FieldElem>> prod(n * n);
  for (uint64_t i = 0; i < n; ++i) {
    std::vector<FieldElem> ei(n, FieldElem{0});
    ei[i] = FieldElem{1};
    const TTElem bi = head_elem(T, ei);
    for (uint64_t j = 0; j < n; ++j) {
      std::vector<FieldElem> ej(n, FieldElem{0});
      ej[j] = FieldElem{1};
      prod[i * n + j] = head_vec(T, T.degree_part(T.mul(bi, head_elem(T, ej)), 0));
    }
  }
  auto mul = [&](const std::vector<FieldElem>& x, const std::vector<FieldElem>& y) {
    std::vector<FieldElem> out(n, FieldElem{0});
    for (uint64_t i = 0; i < n; ++i) {
      if (x[i].packed == 0) continue;
      for (uint64_t j = 0; j < n; ++j) {
        if (y[j].packed == 0) continue;
        const FieldElem c = F.mul(x[i], y[j]);
        const auto& pij = prod[i * n + j];
        for (uint64_t k = 0; k < n; ++k)
          if (pij[k].packed != 0) out[k] = F.add(out[k], F.mul(c, pij[k]));
      }
    }
    return out;
  };
  // Centre: sum_k x_k (b_k b_j - b_j b_k) = 0 for all j.
  Matrix C(n * n, n);
  for (uint64_t j = 0; j < n; ++j)
    for (uint64_t k = 0; k < n; ++k)
      for (uint64_t i = 0; i < n; ++i) C.at(j * n + i, k) = F.sub(prod[k * n + j][i], prod[j * n + k][i]);
  const auto centre = nullspace(F, C);
  HeadAlgebra out;
  out.dim = n;
  out.centre_dim = centre.size();
  const std::vector<FieldElem> one = head_vec(T, T.unit());

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<FieldElem> z(n, FieldElem{0});
    for (const auto& c : centre) {
      const FieldElem s = F.element(rng() % F.order());
      for (uint64_t k = 0; k < n; ++k) z[k] = F.add(z[k], F.mul(s, c[k]));
    }
    // Minimal polynomial of z from the Krylov sequence 1, z, z^2, ...
    std::vector<std::vector<FieldElem>> powers{one};
    std::vector<FieldElem> minpoly;
    for (uint64_t k = 1; k <= centre.size(); ++k) {
      std::vector<FieldElem> next = mul(powers.back(), z);
      Matrix A(n, powers.size());
      for (uint64_t i = 0; i < n; ++i)
        for (uint64_t j = 0; j < powers.size(); ++j) A.at(i, j) = powers[j][i];
      if (auto sol = solve(F, A, next)) {
        for (auto& c : *sol) c = F.neg(c);
        minpoly = std::move(*sol);
        minpoly.push_back(FieldElem{1});
        break;
      }
      powers.push_back(std::move(next));
    }
    if (minpoly.size() != centre.size() + 1) continue;
    const auto roots = poly_roots(F, minpoly);
    if (roots.size() != centre.size()) continue;
    // Lagrange idempotents prod_{j != i} (z - l_j) / (l_i - l_j).
    std::vector<std::pair<uint64_t, std::vector<FieldElem>>> blocks;
    for (uint64_t i = 0; i < roots.size(); ++i) {
      std::vector<FieldElem> e = one;
      for (uint64_t j = 0; j < roots.size(); ++j) {
        if (j == i) continue;
        const FieldElem inv = F.inv(F.sub(roots[i], roots[j]));
        std::vector<FieldElem> ze = mul(z, e);
        for (uint64_t k = 0; k < n; ++k) e[k] = F.mul(F.sub(ze[k], F.mul(roots[j], e[k])), inv);
      }
      Matrix span(n, n);
      for (uint64_t k = 0; k < n; ++k) {
        std::vector<FieldElem> bk(n, FieldElem{0});
        bk[k] = FieldElem{1};
        const auto row = mul(e, bk);
        for (uint64_t c = 0; c < n; ++c) span.at(k, c) = row[c];
      }
      blocks.emplace_back(rank(F, std::move(span)), std::move(e));
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [d, e] : blocks) {
      out.block_dims.push_back(d);
      out.central_idempotents.push_back(head_elem(T, e));
    }
    return out;
  }
  throw Error("head_algebra: centre does not split over the field");
}

// ----- Ext quiver -----

namespace morita_detail {

/// The degree-1 spanning set {s_{psi,phi} (x) e_xi, e_psi (x) s_{xi,zeta}}.
inline std::vector<TTElem> degree_one_spanning_set(const TwistedB0& T) {
  const uint64_t p = T.params().p;
  std::vector<TTElem> out;
  for (int side : {1, 2})
    for (uint64_t psi = 0; psi < p; ++psi)
      for (uint64_t s = 1; s < p; ++s)
        for (uint64_t xi = 0; xi < p; ++xi) {
          const QuivAElem arrow = T.q(side).arrow(psi, s);
          out.push_back(side == 1 ? T.tensor(arrow, T.q(2).vertex(xi)) : T.tensor(T.q(1).vertex(xi), arrow));
        }
  return out;
}

class DegreeOneCoords {
 public:
  explicit DegreeOneCoords(const TwistedB0& T) : T_(&T), dim_(2 * T.params().p * T.params().p * (T.params().p - 1)) {}
  std::size_t dim() const { return dim_; }
  std::vector<FieldElem> operator()(const TTElem& t) {
    std::vector<FieldElem> v(dim_, FieldElem{0});
    for (const auto& [k, c] : t.terms) {
      if (T_->term_degree(k) != 1) continue;
      auto [it, inserted] = index_.try_emplace(k, index_.size());
      if (it->second >= dim_) throw Error("ext_dim: degree-one coordinate overflow");
      v[it->second] = c;
    }
    return v;
  }

 private:
  const TwistedB0* T_;
  std::size_t dim_;
  std::unordered_map<uint64_t, std::size_t> index_;
};

}  // namespace morita_detail

/// dim eps_a (J/J^2) eps_b.
inline uint64_t ext_dim(const TwistedB0& T, const SimpleLabel& a, const SimpleLabel& b) {
  morita_detail::DegreeOneCoords coords(T);
  EchelonBasis basis(T.field(), coords.dim());
  const TTElem ea = T.eps(a), eb = T.eps(b);
  for (const TTElem& w : morita_detail::degree_one_spanning_set(T)) {
    const TTElem left = T.mul(ea, w);
    if (left.is_zero()) continue;
    basis.insert(coords(T.mul(left, eb)));
  }
  return basis.rank();
}

/// ext_dim over all pairs of simples, rows = source.
inline std::vector<std::vector<uint64_t>> ext_quiver(const TwistedB0& T, const std::vector<SimpleLabel>& labels) {
  const auto span = morita_detail::degree_one_spanning_set(T);
  std::vector<TTElem> eps;
  for (const auto& l : labels) eps.push_back(T.eps(l));
  morita_detail::DegreeOneCoords coords(T);
  std::vector<std::vector<uint64_t>> out(labels.size(), std::vector<uint64_t>(labels.size(), 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<TTElem> left;
    for (const TTElem& w : span) {
      TTElem x = T.mul(eps[i], w);
      if (!x.is_zero()) left.push_back(std::move(x));
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      EchelonBasis basis(T.field(), coords.dim());
      for (const TTElem& x : left) {
        const TTElem y = T.mul(x, eps[j]);
        if (!y.is_zero()) basis.insert(coords(y));
      }
      out[i][j] = basis.rank();
    }
  }
  return out;
}

// ----- commutation pairing and recovery -----

struct PairingTable {
  uint64_t r = 0;
  std::vector<FieldElem> values;  // index chi * r + eta

  FieldElem at(uint64_t chi, uint64_t eta) const { return values[(chi % r) * r + eta % r]; }
  bool operator==(const PairingTable&) const = default;
};

/// theta([h_{eta,2}, h_{chi,1}]) straight from the group.
inline PairingTable pairing_from_group(const Params& P, const Character& theta) {
  check_faithful_theta(P, theta);
  PairingTable out{P.r, std::vector<FieldElem>(P.r * P.r)};
  for (uint64_t chi = 0; chi < P.r; ++chi)
    for (uint64_t eta = 0; eta < P.r; ++eta) {
      const GroupElem h1 = h_element(P, theta, {CharGroup::L1, chi});
      const GroupElem h2 = h_element(P, theta, {CharGroup::L2, eta});
      out.values[chi * P.r + eta] = char_eval(P, theta, commutator(P, h2, h1));
    }
  return out;
}

/// Shortest loop at the trivial vertex whose step multiset has a free L-orbit.
/// For odd r this is {1, -1}; for even r, -1 lies in L and longer loops are needed.
inline std::vector<uint64_t> free_loop(const Params& P) {
  const uint64_t p = P.p, r = P.r, cap = P.ell - 1;
  const uint64_t max_len = (P.ell - 1) * (p - 1);
  for (uint64_t len = 2; len <= max_len; ++len) {
    std::vector<uint64_t> steps(len, 1);
    while (true) {
      uint64_t sum = 0;
      for (uint64_t s : steps) sum += s;
      bool ok = sum % p == 0;
      for (uint64_t i = 0; ok && i + cap < len; ++i) ok = steps[i] != steps[i + cap];
      for (uint64_t t = 1; ok && t < r; ++t) {
        std::vector<uint64_t> moved;
        for (uint64_t s : steps) moved.push_back(s * P.g0_pow[t] % p);
        std::sort(moved.begin(), moved.end());
        ok = moved != steps;
      }
      if (ok) return steps;
      // Next nondecreasing sequence.
      int64_t i = static_cast<int64_t>(len) - 1;
      while (i >= 0 && steps[i] == p - 1) --i;
      if (i < 0) break;
      const uint64_t v = steps[i] + 1;
      for (uint64_t k = i; k < len; ++k) steps[k] = v;
    }
  }
  throw Error("free_loop: no loop with free orbit");
}

/// For each (chi, eta) the unique c with S~^chi T~^eta - c T~^eta S~^chi in a
/// deeper radical layer, S~ and T~ built from the loop scaled by phi / zeta.
inline PairingTable commutation_pairing(const TwistedB0& T, uint64_t phi = 1, uint64_t zeta = 1) {
  const Params& P = T.params();
  const FieldContext& F = T.field();
  if (phi % P.p == 0 || zeta % P.p == 0) throw Error("commutation_pairing: phi and zeta must be nontrivial");
  const std::vector<uint64_t> base = free_loop(P);
  std::vector<uint64_t> loop1, loop2;
  for (uint64_t s : base) {
    loop1.push_back(s * phi % P.p);
    loop2.push_back(s * zeta % P.p);
  }
  const uint64_t top = loop1.size() + loop2.size();
  std::vector<TTElem> S, Tt;
  for (uint64_t w = 0; w < P.r; ++w) {
    S.push_back(T.tilde_loop(1, loop1, w));
    Tt.push_back(T.tilde_loop(2, loop2, w));
  }
  PairingTable out{P.r, std::vector<FieldElem>(P.r * P.r)};
  for (uint64_t chi = 0; chi < P.r; ++chi)
    for (uint64_t eta = 0; eta < P.r; ++eta) {
      const TTElem st = T.mul(S[chi], Tt[eta]), ts = T.mul(Tt[eta], S[chi]);
      const TTElem ts_top = T.degree_part(ts, top);
      if (ts_top.is_zero()) throw Error("commutation_pairing: no unique scalar (vanishing product)");
      const auto& [k0, c0] = *ts_top.terms.begin();
      const FieldElem c = F.div(st.coeff(k0), c0);
      const TTElem diff = T.sub(st, T.scale(ts, c));
      if (!diff.is_zero() && T.radical_degree(diff) <= top)
        throw Error("commutation_pairing: no unique scalar");
      out.values[chi * P.r + eta] = c;
    }
  return out;
}

/// The unordered pair {j, -j} with c(chi_1, eta_1) = zeta_r^{-1/j}.
inline std::set<uint64_t> recover_theta(const PairingTable& table, const Params& P) {
  const uint64_t r = P.r;
  if (table.r != r || table.values.size() != r * r) throw Error("recover_theta: table size mismatch");
  std::optional<uint64_t> k;
  for (uint64_t e = 0; e < r; ++e)
    if (P.zeta_r_pow[e] == table.at(1, 1)) k = e;
  if (!k || std::gcd(*k, r) != 1) throw Error("recover_theta: degenerate pairing");
  for (uint64_t chi = 0; chi < r; ++chi)
    for (uint64_t eta = 0; eta < r; ++eta)
      if (!(table.at(chi, eta) == P.zeta_r_pow[nt::mulmod(*k, chi * eta % r, r)]))
        throw Error("recover_theta: table is not a bicharacter");
  const uint64_t j = (r - nt::inverse_mod(*k, r)) % r;
  return {j, (r - j) % r};
}

inline bool morita_equivalent(const Params& P, const Character& theta, const Character& theta2) {
  check_faithful_theta(P, theta);
  check_faithful_theta(P, theta2);
  return theta2.e % P.r == theta.e % P.r || (theta2.e + theta.e) % P.r == 0;
}

// ----- Morita-Frobenius numbers -----

/// Least m >= 1 with ell^m = +-1 mod r.
inline uint64_t mf_number(uint64_t ell, uint64_t r) {
  if (r < 2) throw Error("mf_number: r must exceed 1");
  if (std::gcd(ell, r) != 1) throw Error("mf_number: gcd(ell, r) != 1");
  const uint64_t o = nt::multiplicative_order(ell % r, r);
  if (o % 2 == 0 && nt::powmod(ell, o / 2, r) == r - 1) return o / 2;
  return o;
}

inline uint64_t mf_number_bruteforce(uint64_t ell, uint64_t r) {
  if (r < 2 || std::gcd(ell, r) != 1) throw Error("mf_number: invalid arguments");
  uint64_t x = ell % r;
  for (uint64_t m = 1;; ++m) {
    if (x == 1 || x == r - 1) return m;
    x = nt::mulmod(x, ell, r);
  }
}

struct TargetParams {
  uint64_t r = 0;
  uint64_t p = 0;
};

/// r = ell^n + 1 and the least prime p = 1 mod ell and mod r.
inline TargetParams params_for_target(uint64_t ell, uint64_t n, uint64_t search_cap = 10000000) {
  if (n < 1) throw Error("params_for_target: n must be at least 1");
  if (!nt::is_prime(ell)) throw Error("params_for_target: ell must be prime");
  const uint64_t r = nt::checked_pow(ell, n) + 1;
  const uint64_t step = ell * r;
  for (uint64_t k = 1; k <= search_cap; ++k)
    if (nt::is_prime(1 + k * step)) return {r, 1 + k * step};
  throw Error("params_for_target: search cap exceeded");
}

// ----- explicit isomorphisms -----

/// Swaps the two D x| P factors, g_1 <-> g_2 and inverts g_z: B(theta) -> B(theta^{-1}).
inline GroupElem swap_group_elem(const Params& P, const GroupElem& g) {
  const uint64_t r = P.r;
  GroupElem out;
  out.d1 = g.d2;
  out.x1 = g.x2;
  out.d2 = g.d1;
  out.x2 = g.x1;
  out.a = g.b;
  out.b = g.a;
  out.c = static_cast<uint32_t>((2 * r * r - g.c - uint64_t{g.a} * g.b % r) % r);
  return out;
}

inline GAElem swap_isomorphism(const Params& P, const GAElem& x) {
  return ga_map(P.field(), x, [&](const GroupElem& g) { return swap_group_elem(P, g); });
}

/// Scales the indices of D_i x| P_i by u_i and fixes H.
inline GroupElem fp_group_elem(const Params& P, uint64_t u1, uint64_t u2, const GroupElem& g) {
  const grp_detail::NPart n1 = grp_detail::n_scale(P, {g.d1, g.x1}, u1);
  const grp_detail::NPart n2 = grp_detail::n_scale(P, {g.d2, g.x2}, u2);
  GroupElem out = g;
  out.d1 = n1.d;
  out.x1 = n1.x;
  out.d2 = n2.d;
  out.x2 = n2.x;
  return out;
}

inline GAElem fp_automorphism(const Params& P, uint64_t u1, uint64_t u2, const GAElem& x) {
  if (u1 % P.p == 0 || u2 % P.p == 0) throw Error("fp_automorphism: scalars must be nonzero mod p");
  return ga_map(P.field(), x, [&](const GroupElem& g) { return fp_group_elem(P, u1 % P.p, u2 % P.p, g); });
}

/// Image of a simple label under fp_automorphism(u1, u2): characters scale by u_i^{-1}.
inline SimpleLabel fp_relabel(const Params& P, uint64_t u1, uint64_t u2, const SimpleLabel& l) {
  const uint64_t v1 = nt::inverse_mod(u1 % P.p, P.p), v2 = nt::inverse_mod(u2 % P.p, P.p);
  SimpleLabel out = l;
  out.phi = l.phi * v1 % P.p;
  out.psi = l.psi * v2 % P.p;
  if (l.kind == SimpleLabel::Kind::Pair) {
    out.phi = orbit_rep(P, out.phi);
    out.psi = orbit_rep(P, out.psi);
  }
  return out;
}

/// Image of a simple label under swap_isomorphism.
inline SimpleLabel swap_relabel(const SimpleLabel& l) {
  switch (l.kind) {
    case SimpleLabel::Kind::One: return l;
    case SimpleLabel::Kind::Left: return {SimpleLabel::Kind::Right, 0, l.phi};
    case SimpleLabel::Kind::Right: return {SimpleLabel::Kind::Left, l.psi, 0};
    case SimpleLabel::Kind::Pair: return {SimpleLabel::Kind::Pair, l.psi, l.phi};
  }
  return l;
}

}  // namespace mfb
