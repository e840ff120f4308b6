#pragma once

// The block B(theta) = kG e_theta.
//
// Besides the sparse GAElem route, elements of B(theta) can be held as
//   x = sum_{h = g_1^a g_2^b} X_h h e_theta,   X_h in k[N_1] (x) k[N_2],
// with each X_h a list of rank-one tensors of dense local vectors. Products
// follow (X h)(Y h') = X (h Y h^{-1}) h h', the g_z part of h h' becoming the
// scalar theta(g_z^c). Every table involved comes from group_mul/conjugate.

#include <map>
#include <memory>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mfblocks/character.hpp"
#include "mfblocks/group_algebra.hpp"

namespace mfb {

inline GAElem block_idempotent(const Params& P, const Character& theta) {
  if (theta.group != CharGroup::Z) throw Error("block_idempotent: theta must be a character of Z");
  return char_idempotent(P, theta);
}

/// True iff x commutes with g e_theta for g in {g_1, g_2, g_z}; x must satisfy x e_theta = x.
inline bool centralizes_block_H(const Params& P, const Character& theta, const GAElem& x) {
  const FieldContext& F = P.field();
  const GAElem e = block_idempotent(P, theta);
  if (!(ga_mul(P, x, e) == x)) throw Error("centralizes_block_H: element not in the block");
  for (const GroupElem& g : {gen_g1(P), gen_g2(P), gen_gz(P)}) {
    const GAElem he = ga_mul(P, ga_basis(g), e);
    if (!ga_sub(F, ga_mul(P, x, he), ga_mul(P, he, x)).is_zero()) return false;
  }
  return true;
}

struct RankOne {
  DenseVec x1;
  DenseVec x2;
};

struct BlockElem {
  std::vector<std::vector<RankOne>> comp;  // index a * r + b

  bool empty_support() const {
    for (const auto& c : comp)
      if (!c.empty()) return false;
    return true;
  }
};

class BlockAlgebra {
 public:
  BlockAlgebra(const Params& P, const Character& theta, std::shared_ptr<const LocalAlgebra> a1,
               std::shared_ptr<const LocalAlgebra> a2)
      : P_(P), theta_(theta), a1_(std::move(a1)), a2_(std::move(a2)) {
    if (theta.group != CharGroup::Z || !char_faithful(P, theta))
      throw Error("BlockAlgebra: theta must be a faithful character of Z");
    const uint64_t r = P.r;
    prod_.resize(r * r * r * r);
    for (uint64_t i = 0; i < r * r; ++i)
      for (uint64_t j = 0; j < r * r; ++j) {
        const GroupElem g = group_mul(P, h_elem(P, i / r, i % r, 0), h_elem(P, j / r, j % r, 0));
        prod_[i * r * r + j] = {g.a * r + g.b, char_eval(P, theta, h_elem(P, 0, 0, g.c))};
      }
  }

  const Params& params() const { return P_; }
  const Character& theta() const { return theta_; }
  const LocalAlgebra& local(int side) const { return side == 1 ? *a1_ : *a2_; }
  uint64_t comp_count() const { return P_.r * P_.r; }

  BlockElem zero() const { return BlockElem{std::vector<std::vector<RankOne>>(comp_count())}; }

  DenseVec delta(int side, uint64_t idx = 0) const { return local(side).basis(idx); }

  /// x1 (x) x2 h e_theta with h = g_1^a g_2^b.
  BlockElem monomial(uint64_t a, uint64_t b, DenseVec x1, DenseVec x2) const {
    BlockElem out = zero();
    out.comp[(a % P_.r) * P_.r + b % P_.r].push_back({std::move(x1), std::move(x2)});
    return out;
  }

  BlockElem unit() const { return monomial(0, 0, delta(1), delta(2)); }

  BlockElem add(BlockElem x, const BlockElem& y) const {
    for (uint64_t k = 0; k < comp_count(); ++k) x.comp[k].insert(x.comp[k].end(), y.comp[k].begin(), y.comp[k].end());
    return x;
  }

  BlockElem scale(BlockElem x, FieldElem s) const {
    for (auto& c : x.comp)
      for (auto& t : c) t.x1 = local(1).scale(std::move(t.x1), s);
    return x;
  }

  BlockElem mul(const BlockElem& x, const BlockElem& y) const {
    const uint64_t r = P_.r;
    BlockElem out = zero();
    for (uint64_t i = 0; i < r * r; ++i) {
      if (x.comp[i].empty()) continue;
      const uint64_t a = i / r, b = i % r;
      for (uint64_t j = 0; j < r * r; ++j) {
        if (y.comp[j].empty()) continue;
        const auto& [target, scalar] = prod_[i * r * r + j];
        for (const RankOne& ty : y.comp[j]) {
          // h Y h^{-1} = Y^{h^{-1}}
          const DenseVec y1 = local(1).conjugate(ty.x1, (r - a) % r);
          const DenseVec y2 = local(2).conjugate(ty.x2, (r - b) % r);
          for (const RankOne& tx : x.comp[i]) {
            DenseVec p1 = local(1).mul(tx.x1, y1);
            if (local(1).is_zero(p1)) continue;
            DenseVec p2 = local(2).mul(tx.x2, y2);
            if (local(2).is_zero(p2)) continue;
            if (scalar.packed != 1) p1 = local(1).scale(std::move(p1), scalar);
            out.comp[target].push_back({std::move(p1), std::move(p2)});
          }
        }
      }
    }
    return out;
  }

  /// x^w = w^{-1} x w for w in H.
  BlockElem conjugate(const BlockElem& x, const GroupElem& w) const {
    if (!w.in_h()) throw Error("BlockAlgebra::conjugate: element outside H");
    const uint64_t r = P_.r;
    BlockElem out = zero();
    for (uint64_t i = 0; i < r * r; ++i) {
      if (x.comp[i].empty()) continue;
      const GroupElem hw = mfb::conjugate(P_, h_elem(P_, i / r, i % r, 0), w);
      const FieldElem s = char_eval(P_, theta_, h_elem(P_, 0, 0, hw.c));
      for (const RankOne& t : x.comp[i]) {
        DenseVec c1 = local(1).conjugate(t.x1, w.a);
        if (s.packed != 1) c1 = local(1).scale(std::move(c1), s);
        out.comp[hw.a * r + hw.b].push_back({std::move(c1), local(2).conjugate(t.x2, w.b)});
      }
    }
    return out;
  }

  /// Canonical sparse form: (component, index_1, index_2) -> coefficient.
  std::map<std::tuple<uint64_t, uint64_t, uint64_t>, FieldElem> canonical(const BlockElem& x) const {
    const FieldContext& F = P_.field();
    const uint64_t n1 = local(1).dim(), n2 = local(2).dim();
    // Dense accumulation per component keeps this linear in the rank; large
    // local algebras fall back to a hash map over the support.
    const bool dense = n1 * n2 <= (uint64_t{1} << 22);
    std::map<std::tuple<uint64_t, uint64_t, uint64_t>, FieldElem> out;
    std::vector<FieldElem> acc;
    std::unordered_map<uint64_t, FieldElem> sparse;
    for (uint64_t k = 0; k < comp_count(); ++k) {
      if (x.comp[k].empty()) continue;
      auto add_at = [&](uint64_t idx, FieldElem c) {
        if (dense) {
          acc[idx] = F.add(acc[idx], c);
        } else {
          auto [it, inserted] = sparse.try_emplace(idx, c);
          if (!inserted) it->second = F.add(it->second, c);
        }
      };
      if (dense) acc.assign(n1 * n2, FieldElem{0});
      sparse.clear();
      for (const RankOne& t : x.comp[k]) {
        std::vector<uint64_t> nz2;
        for (uint64_t j = 0; j < n2; ++j)
          if (t.x2[j].packed != 0) nz2.push_back(j);
        for (uint64_t i = 0; i < n1; ++i) {
          if (t.x1[i].packed == 0) continue;
          for (uint64_t j : nz2) add_at(i * n2 + j, F.mul(t.x1[i], t.x2[j]));
        }
      }
      if (dense) {
        for (uint64_t i = 0; i < n1 * n2; ++i)
          if (acc[i].packed != 0) out.emplace(std::make_tuple(k, i / n2, i % n2), acc[i]);
      } else {
        for (const auto& [i, c] : sparse)
          if (c.packed != 0) out.emplace(std::make_tuple(k, i / n2, i % n2), c);
      }
    }
    return out;
  }

  bool equal(const BlockElem& x, const BlockElem& y) const { return canonical(x) == canonical(y); }

  bool is_zero(const BlockElem& x) const { return canonical(x).empty(); }

  /// Expands sum X_h h e_theta into the sparse group algebra.
  GAElem to_group_algebra(const BlockElem& x) const {
    const FieldContext& F = P_.field();
    const uint64_t r = P_.r;
    GAElem out;
    for (const auto& [key, coef] : canonical(x)) {
      const auto [k, i1, i2] = key;
      const GroupElem n = group_mul(P_, local(1).group().element(i1), local(2).group().element(i2));
      for (uint64_t c = 0; c < r; ++c) {
        const FieldElem w = F.mul(P_.r_inv, char_eval(P_, theta_, h_elem(P_, 0, 0, (r - c) % r)));
        out.accumulate(F, group_mul(P_, n, h_elem(P_, k / r, k % r, c)), F.mul(coef, w));
      }
    }
    return out;
  }

  /// The BlockElem representing x e_theta.
  BlockElem from_group_algebra(const GAElem& x) const {
    const FieldContext& F = P_.field();
    const uint64_t r = P_.r;
    std::vector<std::map<uint64_t, DenseVec>> rows(comp_count());
    for (const auto& [g, c] : x.terms) {
      const uint64_t k = g.a * r + g.b;
      const uint64_t i1 = local(1).group().index_of(n_elem(1, g.d1, g.x1));
      const uint64_t i2 = local(2).group().index_of(n_elem(2, g.d2, g.x2));
      auto [it, inserted] = rows[k].try_emplace(i1, DenseVec{});
      if (inserted) it->second = local(2).zero();
      it->second[i2] = F.add(it->second[i2], F.mul(c, char_eval(P_, theta_, h_elem(P_, 0, 0, g.c))));
    }
    BlockElem out = zero();
    for (uint64_t k = 0; k < comp_count(); ++k)
      for (auto& [i1, row] : rows[k])
        if (!local(2).is_zero(row)) out.comp[k].push_back({delta(1, i1), std::move(row)});
    return out;
  }

  /// h e_theta for h in H.
  BlockElem h_unit(const GroupElem& h) const {
    if (!h.in_h()) throw Error("BlockAlgebra::h_unit: element outside H");
    BlockElem out = monomial(h.a, h.b, delta(1), delta(2));
    return scale(std::move(out), char_eval(P_, theta_, h_elem(P_, 0, 0, h.c)));
  }

  bool centralizes_H(const BlockElem& x) const {
    for (const GroupElem& g : {gen_g1(P_), gen_g2(P_), gen_gz(P_)}) {
      const BlockElem he = h_unit(g);
      if (!equal(mul(x, he), mul(he, x))) return false;
    }
    return true;
  }

 private:
  struct ProdEntry {
    uint64_t target;
    FieldElem scalar;
  };

  Params P_;
  Character theta_;
  std::shared_ptr<const LocalAlgebra> a1_, a2_;
  std::vector<ProdEntry> prod_;
};

}  // namespace mfb
