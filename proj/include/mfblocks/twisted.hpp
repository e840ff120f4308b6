#pragma once

// B_0 = C_{B(theta)}(kH e_theta) through its image under pi in A_1 (x) A_2.
//
// iota_i(a) = sum_chi a^chi h_{chi,i}^{-1} e_theta and pi sends n h e_theta to
// n. The product on A_1 (x) A_2 is
//   (a1 (x) b1)(a2 (x) b2) = sum_{chi,eta} c(chi,eta)^{-1} (a1 a2^chi) (x) (b1^eta b2)
// with c(chi, eta) = theta([h_{eta,2}, h_{chi,1}]).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "mfblocks/block.hpp"
#include "mfblocks/character.hpp"
#include "mfblocks/quiver_algebra.hpp"

namespace mfb {

struct TTElem {
  uint64_t theta = 1;
  std::unordered_map<uint64_t, FieldElem> terms;  // key = u * dim(A_i) + v

  bool is_zero() const { return terms.empty(); }
  void accumulate(const FieldContext& F, uint64_t key, FieldElem c) {
    if (c.packed == 0) return;
    auto [it, inserted] = terms.try_emplace(key, c);
    if (!inserted) {
      it->second = F.add(it->second, c);
      if (it->second.packed == 0) terms.erase(it);
    }
  }
  FieldElem coeff(uint64_t key) const {
    auto it = terms.find(key);
    return it == terms.end() ? FieldElem{0} : it->second;
  }
  std::vector<std::pair<uint64_t, FieldElem>> sorted_terms() const {
    std::vector<std::pair<uint64_t, FieldElem>> out(terms.begin(), terms.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
  bool operator==(const TTElem& o) const { return theta == o.theta && terms == o.terms; }
};

/// Labels of the simple B-modules: (1,1), (phi,1), (1,psi), ([phi],[psi]).
struct SimpleLabel {
  enum class Kind { One, Left, Right, Pair };
  Kind kind = Kind::One;
  uint64_t phi = 0;
  uint64_t psi = 0;
  auto operator<=>(const SimpleLabel&) const = default;
};

/// Least element of the orbit of the exponent s under multiplication by L.
inline uint64_t orbit_rep(const Params& P, uint64_t s) {
  uint64_t best = s % P.p;
  for (uint64_t t = 0; t < P.r; ++t) best = std::min<uint64_t>(best, s * P.g0_pow[t] % P.p);
  return best;
}

inline std::string simple_label_string(const SimpleLabel& l) {
  switch (l.kind) {
    case SimpleLabel::Kind::One: return "(1,1)";
    case SimpleLabel::Kind::Left: return "(phi" + std::to_string(l.phi) + ",1)";
    case SimpleLabel::Kind::Right: return "(1,psi" + std::to_string(l.psi) + ")";
    case SimpleLabel::Kind::Pair: return "([phi" + std::to_string(l.phi) + "],[psi" + std::to_string(l.psi) + "])";
  }
  return "?";
}

class TwistedB0 {
 public:
  TwistedB0(const Params& P, const Character& theta)
      : P_(P),
        theta_(theta),
        q1_(std::make_shared<QuiverAlgebra>(P, 1)),
        q2_(std::make_shared<QuiverAlgebra>(P, 2)) {
    if (theta.group != CharGroup::Z || !char_faithful(P, theta))
      throw Error("B_0: theta must be a faithful character of Z");
    const uint64_t r = P.r;
    const FieldContext& F = P.field();
    h1_.resize(r);
    h2_.resize(r);
    for (uint64_t e = 0; e < r; ++e) {
      h1_[e] = h_element(P, theta, {CharGroup::L1, e});
      h2_[e] = h_element(P, theta, {CharGroup::L2, e});
    }
    pair_.resize(r * r);
    pair_inv_.resize(r * r);
    for (uint64_t chi = 0; chi < r; ++chi)
      for (uint64_t eta = 0; eta < r; ++eta) {
        const FieldElem c = char_eval(P, theta, commutator(P, h2_[eta], h1_[chi]));
        pair_[chi * r + eta] = c;
        pair_inv_[chi * r + eta] = F.inv(c);
      }
  }

  const Params& params() const { return P_; }
  const FieldContext& field() const { return P_.field(); }
  const Character& theta() const { return theta_; }
  const QuiverAlgebra& q(int side) const { return side == 1 ? *q1_ : *q2_; }
  uint64_t adim() const { return P_.a_size(); }
  uint64_t label_count() const { return adim() * adim(); }

  uint64_t key(uint64_t u, uint64_t v) const { return u * adim() + v; }
  uint64_t key_u(uint64_t k) const { return k / adim(); }
  uint64_t key_v(uint64_t k) const { return k % adim(); }

  /// h^theta_{chi,i} for chi with exponent e on L_i.
  const GroupElem& h(int side, uint64_t e) const { return side == 1 ? h1_[e % P_.r] : h2_[e % P_.r]; }
  /// theta([h_{eta,2}, h_{chi,1}]).
  FieldElem pairing(uint64_t chi, uint64_t eta) const { return pair_[(chi % P_.r) * P_.r + eta % P_.r]; }

  const BlockAlgebra& block() const {
    std::call_once(block_once_,
                   [&] { block_ = std::make_unique<BlockAlgebra>(P_, theta_, q1_->local_ptr(), q2_->local_ptr()); });
    return *block_;
  }

  // ----- elements -----

  TTElem zero() const { return TTElem{theta_.e, {}}; }

  TTElem tensor(const QuivAElem& u, const QuivAElem& v) const {
    q1_->check_side(u);
    q2_->check_side(v);
    const FieldContext& F = field();
    TTElem out = zero();
    for (const auto& [a, ca] : u.terms)
      for (const auto& [b, cb] : v.terms) out.accumulate(F, key(a, b), F.mul(ca, cb));
    return out;
  }

  TTElem basis(uint64_t u, uint64_t v, FieldElem c = FieldElem{1}) const {
    TTElem out = zero();
    out.accumulate(field(), key(u, v), c);
    return out;
  }

  TTElem unit() const { return tensor(q1_->unit(), q2_->unit()); }

  TTElem add(TTElem x, const TTElem& y) const {
    check(x);
    check(y);
    for (const auto& [k, c] : y.terms) x.accumulate(field(), k, c);
    return x;
  }

  TTElem sub(TTElem x, const TTElem& y) const {
    check(x);
    check(y);
    for (const auto& [k, c] : y.terms) x.accumulate(field(), k, field().neg(c));
    return x;
  }

  TTElem scale(const TTElem& x, FieldElem s) const {
    TTElem out = zero();
    if (s.packed == 0) return out;
    for (const auto& [k, c] : x.terms) out.terms.emplace(k, field().mul(c, s));
    return out;
  }

  void check(const TTElem& t) const {
    if (t.theta != theta_.e) throw Error("B_0: theta mismatch");
  }

  /// The twisted product.
  TTElem mul(const TTElem& x, const TTElem& y) const {
    check(x);
    check(y);
    const FieldContext& F = field();
    const uint64_t r = P_.r;
    TTElem out = zero();
    std::vector<std::vector<std::pair<uint64_t, FieldElem>>> right(r);
    std::vector<std::pair<uint64_t, FieldElem>> left;
    for (const auto& [k2, c2] : y.terms) {
      const uint64_t u2 = key_u(k2), v2 = key_v(k2);
      for (const auto& [k1, c1] : x.terms) {
        const uint64_t u1 = key_u(k1), v1 = key_v(k1);
        // b1^eta b2 for each eta.
        bool any_right = false;
        for (uint64_t eta = 0; eta < r; ++eta) {
          right[eta].clear();
          for (const auto& [b, cb] : q2_->label_isotypic(v1, eta).terms)
            if (auto prod = q2_->label_mul(b, v2)) right[eta].emplace_back(*prod, cb);
          any_right = any_right || !right[eta].empty();
        }
        if (!any_right) continue;
        const FieldElem c12 = F.mul(c1, c2);
        for (uint64_t chi = 0; chi < r; ++chi) {
          left.clear();
          for (const auto& [a, ca] : q1_->label_isotypic(u2, chi).terms)
            if (auto prod = q1_->label_mul(u1, a)) left.emplace_back(*prod, ca);
          if (left.empty()) continue;
          for (uint64_t eta = 0; eta < r; ++eta) {
            if (right[eta].empty()) continue;
            const FieldElem s = F.mul(c12, pair_inv_[chi * r + eta]);
            for (const auto& [a, ca] : left) {
              const FieldElem sa = F.mul(s, ca);
              for (const auto& [b, cb] : right[eta]) out.accumulate(F, key(a, b), F.mul(sa, cb));
            }
          }
        }
      }
    }
    return out;
  }

  /// Minimum of deg(u) + deg(v) over the support; throws on zero.
  uint64_t radical_degree(const TTElem& t) const {
    if (t.is_zero()) throw Error("tt_radical_degree: zero element");
    uint64_t best = UINT64_MAX;
    for (const auto& [k, c] : t.terms) best = std::min(best, term_degree(k));
    return best;
  }

  uint64_t term_degree(uint64_t k) const {
    return q1_->m_degree(q1_->label_m(key_u(k))) + q2_->m_degree(q2_->label_m(key_v(k)));
  }

  TTElem degree_part(const TTElem& t, uint64_t deg) const {
    TTElem out = zero();
    for (const auto& [k, c] : t.terms)
      if (term_degree(k) == deg) out.terms.emplace(k, c);
    return out;
  }

  // ----- iota, pi -----

  BlockElem iota_block(int side, const QuivAElem& a) const {
    const QuiverAlgebra& Q = q(side);
    Q.check_side(a);
    const BlockAlgebra& B = block();
    const uint64_t r = P_.r;
    BlockElem out = B.zero();
    for (uint64_t chi = 0; chi < r; ++chi) {
      const QuivAElem ac = Q.isotypic(a, chi);
      if (ac.is_zero()) continue;
      const GroupElem& hh = h(side, chi);  // in L_j
      const GroupElem hinv = group_inv(P_, hh);
      DenseVec e = Q.embed_dense(ac);
      out = B.add(std::move(out), side == 1 ? B.monomial(hinv.a, hinv.b, std::move(e), B.delta(2))
                                            : B.monomial(hinv.a, hinv.b, B.delta(1), std::move(e)));
    }
    return out;
  }

  /// sum_{g in L_i} (a e_{1_{L_j}} e_theta)^g.
  BlockElem iota_alt_block(int side, const QuivAElem& a) const {
    const QuiverAlgebra& Q = q(side);
    const BlockAlgebra& B = block();
    const uint64_t r = P_.r;
    const DenseVec e = Q.local().scale(Q.embed_dense(a), P_.r_inv);
    BlockElem y = B.zero();
    for (uint64_t k = 0; k < r; ++k)
      y = B.add(std::move(y), side == 1 ? B.monomial(0, k, e, B.delta(2)) : B.monomial(k, 0, B.delta(1), e));
    BlockElem out = B.zero();
    for (uint64_t t = 0; t < r; ++t) {
      const GroupElem g = side == 1 ? h_elem(P_, t, 0, 0) : h_elem(P_, 0, t, 0);
      out = B.add(std::move(out), B.conjugate(y, g));
    }
    return out;
  }

  GAElem iota(int side, const QuivAElem& a) const { return block().to_group_algebra(iota_block(side, a)); }

  TTElem pi(const BlockElem& x) const {
    const FieldContext& F = field();
    TTElem out = zero();
    for (const auto& comp : x.comp)
      for (const RankOne& t : comp) {
        const QuivAElem u = q1_->extract_dense(t.x1);
        if (u.is_zero()) continue;
        const QuivAElem v = q2_->extract_dense(t.x2);
        for (const auto& [a, ca] : u.terms)
          for (const auto& [b, cb] : v.terms) out.accumulate(F, key(a, b), F.mul(ca, cb));
      }
    return out;
  }

  /// pi of x e_theta; the g_z part of each support element becomes a theta-scalar.
  TTElem pi(const GAElem& x) const { return pi(block().from_group_algebra(x)); }

  /// pi after checking membership in B_0.
  TTElem pi_checked(const GAElem& x) const {
    const BlockElem bx = block().from_group_algebra(x);
    if (!(block().to_group_algebra(bx) == x)) throw Error("b0_pi: element not in the block (x e_theta != x)");
    if (!block().centralizes_H(bx)) throw Error("b0_pi: element does not centralise kH e_theta");
    return pi(bx);
  }

  BlockElem pi_inv_block(const TTElem& t) const {
    check(t);
    const BlockAlgebra& B = block();
    BlockElem out = B.zero();
    for (const auto& [k, c] : t.sorted_terms()) {
      const BlockElem prod =
          B.mul(iota_block(1, q1_->basis(key_u(k))), iota_block(2, q2_->basis(key_v(k))));
      out = B.add(std::move(out), B.scale(prod, c));
    }
    return out;
  }

  GAElem pi_inv(const TTElem& t) const { return block().to_group_algebra(pi_inv_block(t)); }

  // ----- distinguished elements -----

  void check_label(const SimpleLabel& l) const {
    const uint64_t p = P_.p;
    switch (l.kind) {
      case SimpleLabel::Kind::One:
        if (l.phi % p != 0 || l.psi % p != 0) throw Error("simple label (1,1) carries characters");
        return;
      case SimpleLabel::Kind::Left:
        if (l.phi % p == 0 || l.psi % p != 0) throw Error("simple label (phi,1) needs phi nontrivial, psi trivial");
        return;
      case SimpleLabel::Kind::Right:
        if (l.psi % p == 0 || l.phi % p != 0) throw Error("simple label (1,psi) needs psi nontrivial, phi trivial");
        return;
      case SimpleLabel::Kind::Pair:
        if (l.phi % p == 0 || l.psi % p == 0) throw Error("simple label ([phi],[psi]) needs both nontrivial");
        if (orbit_rep(P_, l.phi) != l.phi || orbit_rep(P_, l.psi) != l.psi)
          throw Error("simple label ([phi],[psi]) must use orbit representatives");
        return;
    }
  }

  QuivAElem orbit_sum(int side, uint64_t s) const {
    const QuiverAlgebra& Q = q(side);
    QuivAElem out = Q.zero();
    for (uint64_t t = 0; t < P_.r; ++t) out = Q.add(out, Q.act(Q.vertex(s), t));
    return out;
  }

  TTElem eps(const SimpleLabel& l) const {
    check_label(l);
    switch (l.kind) {
      case SimpleLabel::Kind::One: return tensor(q1_->vertex(0), q2_->vertex(0));
      case SimpleLabel::Kind::Left: return tensor(q1_->vertex(l.phi), q2_->vertex(0));
      case SimpleLabel::Kind::Right: return tensor(q1_->vertex(0), q2_->vertex(l.psi));
      case SimpleLabel::Kind::Pair: return tensor(orbit_sum(1, l.phi), orbit_sum(2, l.psi));
    }
    return zero();
  }

  /// S_{psi,phi} (side 1) or T_{psi,phi} (side 2).
  TTElem arrow(int side, uint64_t vertex, uint64_t step) const {
    if (step % P_.p == 0) throw Error("tt_arrow: step must be a nontrivial character");
    return side == 1 ? tensor(q1_->arrow(vertex, step), q2_->vertex(0))
                     : tensor(q1_->vertex(0), q2_->arrow(vertex, step));
  }

  /// Product of arrows along the path from the trivial vertex with the given steps.
  TTElem arrow_path(int side, const std::vector<uint64_t>& steps) const {
    TTElem out = unit();
    uint64_t vertex = 0;
    for (uint64_t s : steps) {
      out = mul(out, arrow(side, vertex, s));
      vertex = (vertex + s) % P_.p;
    }
    return out;
  }

  /// sum_{g in L_i} chi(g^{-1}) (product of arrows along the loop)^g, the loop
  /// starting at the trivial vertex and following the given steps.
  TTElem tilde_loop(int side, const std::vector<uint64_t>& steps, uint64_t weight) const {
    const uint64_t p = P_.p, r = P_.r;
    uint64_t total = 0;
    for (uint64_t s : steps) total += s;
    if (steps.empty() || total % p != 0) throw Error("tt_tilde: steps must form a nonempty loop");
    TTElem out = zero();
    for (uint64_t t = 0; t < r; ++t) {
      const uint64_t u = P_.g0_pow[(r - t) % r];
      std::vector<uint64_t> moved;
      for (uint64_t s : steps) moved.push_back(s * u % p);
      const TTElem path = arrow_path(side, moved);
      out = add(out, scale(path, P_.zeta_r_pow[(r - weight % r * t % r) % r]));
    }
    return out;
  }

  /// S~^chi_phi / T~^eta_zeta built from the loop phi, phi^{-1}.
  TTElem tilde(int side, uint64_t step, uint64_t weight) const {
    if (step % P_.p == 0) throw Error("tt_tilde: step must be a nontrivial character");
    return tilde_loop(side, {step % P_.p, P_.p - step % P_.p}, weight);
  }

 private:
  Params P_;
  Character theta_;
  std::shared_ptr<QuiverAlgebra> q1_, q2_;
  std::vector<GroupElem> h1_, h2_;
  std::vector<FieldElem> pair_, pair_inv_;
  mutable std::once_flag block_once_;
  mutable std::unique_ptr<BlockAlgebra> block_;
};

}  // namespace mfb
