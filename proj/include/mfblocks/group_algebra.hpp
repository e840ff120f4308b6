#pragma once

// Sparse group-algebra elements of kG and dense elements of the local
// algebras k[D_i x| P_i].

#include <algorithm>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mfblocks/field.hpp"
#include "mfblocks/group.hpp"

namespace mfb {

/// Finitely supported map G -> F_{ell^d}; zero coefficients are never stored.
struct GAElem {
  std::unordered_map<GroupElem, FieldElem, GroupElemHash> terms;

  bool is_zero() const { return terms.empty(); }
  std::size_t support_size() const { return terms.size(); }
  FieldElem coeff(const GroupElem& g) const {
    auto it = terms.find(g);
    return it == terms.end() ? FieldElem{0} : it->second;
  }
  void accumulate(const FieldContext& F, const GroupElem& g, FieldElem c) {
    if (c.packed == 0) return;
    auto [it, inserted] = terms.try_emplace(g, c);
    if (!inserted) {
      it->second = F.add(it->second, c);
      if (it->second.packed == 0) terms.erase(it);
    }
  }
  /// Terms in canonical (lexicographic normal-form) order.
  std::vector<std::pair<GroupElem, FieldElem>> sorted_terms() const {
    std::vector<std::pair<GroupElem, FieldElem>> out(terms.begin(), terms.end());
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    return out;
  }
  bool operator==(const GAElem& o) const { return terms == o.terms; }
};

inline GAElem ga_zero() { return {}; }

inline GAElem ga_basis(const GroupElem& g, FieldElem c = FieldElem{1}) {
  GAElem x;
  if (c.packed != 0) x.terms.emplace(g, c);
  return x;
}

inline GAElem ga_one() { return ga_basis(group_identity()); }

inline GAElem ga_add(const FieldContext& F, GAElem x, const GAElem& y) {
  for (const auto& [g, c] : y.terms) x.accumulate(F, g, c);
  return x;
}

inline GAElem ga_sub(const FieldContext& F, GAElem x, const GAElem& y) {
  for (const auto& [g, c] : y.terms) x.accumulate(F, g, F.neg(c));
  return x;
}

inline GAElem ga_scale(const FieldContext& F, const GAElem& x, FieldElem s) {
  GAElem out;
  if (s.packed == 0) return out;
  for (const auto& [g, c] : x.terms) out.terms.emplace(g, F.mul(c, s));
  return out;
}

/// Bilinear extension of group_mul.
inline GAElem ga_mul(const Params& P, const GAElem& x, const GAElem& y) {
  const FieldContext& F = P.field();
  GAElem out;
  out.terms.reserve(x.terms.size() * y.terms.size());
  for (const auto& [g, c] : x.terms)
    for (const auto& [h, e] : y.terms) out.accumulate(F, group_mul(P, g, h), F.mul(c, e));
  return out;
}

/// sigma: coefficients raised to the ell-th power, group elements fixed.
inline GAElem ga_frobenius_twist(const Params& P, const GAElem& x, uint64_t times = 1) {
  const FieldContext& F = P.field();
  GAElem out;
  for (const auto& [g, c] : x.terms) out.terms.emplace(g, F.frobenius(c, times));
  return out;
}

/// x^h = h^{-1} x h, computed termwise.
inline GAElem ga_conjugate(const Params& P, const GAElem& x, const GroupElem& h) {
  GAElem out;
  const GroupElem hinv = group_inv(P, h);
  for (const auto& [g, c] : x.terms) out.terms.emplace(group_mul(P, group_mul(P, hinv, g), h), c);
  return out;
}

/// Linear extension of a map on group elements (assumed injective).
template <class Map>
GAElem ga_map(const FieldContext& F, const GAElem& x, Map&& f) {
  GAElem out;
  for (const auto& [g, c] : x.terms) out.accumulate(F, f(g), c);
  return out;
}

using DenseVec = std::vector<FieldElem>;

/// k[D_i x| P_i] with elements stored densely in the LocalGroup indexing.
class LocalAlgebra {
 public:
  LocalAlgebra(const Params& P, int side) : group_(P, side), ctx_(P.ctx) {
    const uint64_t n = group_.size();
    if (n <= 1024) {
      table_.resize(n * n);
      for (uint64_t i = 0; i < n; ++i)
        for (uint64_t j = 0; j < n; ++j) table_[i * n + j] = static_cast<uint32_t>(group_.mul(i, j));
    }
  }

  const LocalGroup& group() const { return group_; }
  const Params& params() const { return group_.params(); }
  const FieldContext& field() const { return *ctx_; }
  int side() const { return group_.side(); }
  uint64_t dim() const { return group_.size(); }

  DenseVec zero() const { return DenseVec(dim(), FieldElem{0}); }
  DenseVec unit() const { return basis(0); }
  DenseVec basis(uint64_t idx, FieldElem c = FieldElem{1}) const {
    DenseVec v = zero();
    v[idx] = c;
    return v;
  }

  uint64_t mul_index(uint64_t i, uint64_t j) const {
    return table_.empty() ? group_.mul(i, j) : table_[i * dim() + j];
  }

  DenseVec mul(const DenseVec& x, const DenseVec& y) const {
    const FieldContext& F = field();
    DenseVec out = zero();
    std::vector<std::pair<uint32_t, FieldElem>> ys;
    for (uint64_t j = 0; j < y.size(); ++j)
      if (y[j].packed != 0) ys.emplace_back(static_cast<uint32_t>(j), y[j]);
    const uint64_t n = dim();
    for (uint64_t i = 0; i < x.size(); ++i) {
      if (x[i].packed == 0) continue;
      const FieldElem xi = x[i];
      if (!table_.empty()) {
        const uint32_t* row = &table_[i * n];
        for (const auto& [j, yj] : ys) {
          FieldElem& slot = out[row[j]];
          slot = F.add(slot, F.mul(xi, yj));
        }
      } else {
        for (const auto& [j, yj] : ys) {
          FieldElem& slot = out[group_.mul(i, j)];
          slot = F.add(slot, F.mul(xi, yj));
        }
      }
    }
    return out;
  }

  DenseVec add(DenseVec x, const DenseVec& y) const {
    const FieldContext& F = field();
    for (uint64_t i = 0; i < x.size(); ++i) x[i] = F.add(x[i], y[i]);
    return x;
  }

  DenseVec scale(DenseVec x, FieldElem s) const {
    const FieldContext& F = field();
    for (auto& c : x) c = F.mul(c, s);
    return x;
  }

  /// Relabels coordinates: result[perm[i]] = x[i].
  static DenseVec permute(const DenseVec& x, const std::vector<uint32_t>& perm) {
    DenseVec out(x.size(), FieldElem{0});
    for (uint64_t i = 0; i < x.size(); ++i)
      if (x[i].packed != 0) out[perm[i]] = x[i];
    return out;
  }

  /// x^w for w = g_i^t.
  DenseVec conjugate(const DenseVec& x, uint64_t t) const { return permute(x, group_.conj_table(t)); }

  bool is_zero(const DenseVec& x) const {
    return std::all_of(x.begin(), x.end(), [](FieldElem c) { return c.packed == 0; });
  }

  GAElem to_group_algebra(const DenseVec& x) const {
    GAElem out;
    for (uint64_t i = 0; i < x.size(); ++i)
      if (x[i].packed != 0) out.terms.emplace(group_.element(i), x[i]);
    return out;
  }

  DenseVec from_group_algebra(const GAElem& x) const {
    DenseVec out = zero();
    for (const auto& [g, c] : x.terms) out[group_.index_of(g)] = c;
    return out;
  }

 private:
  LocalGroup group_;
  FieldPtr ctx_;
  std::vector<uint32_t> table_;
};

}  // namespace mfb
