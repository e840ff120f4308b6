#pragma once

// The algebra A_i = k[D_i x| P_i] in its monomial basis e_psi s^m.
//
// A label (psi, m) stands for e_psi s_{phi_1}^{m_1} ... s_{phi_{p-1}}^{m_{p-1}},
// where phi_s is the character of P_i with exponent s and 0 <= m_s <= ell-1.
// Labels are indexed by psi * ell^(p-1) + sum_s m_s ell^(s-1).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mfblocks/character.hpp"
#include "mfblocks/group_algebra.hpp"
#include "mfblocks/linalg.hpp"

namespace mfb {

struct QuivLabel {
  int side = 1;
  uint64_t psi = 0;
  std::vector<uint32_t> m;  // m[s-1] is the multiplicity of phi_s
  auto operator<=>(const QuivLabel&) const = default;
};

struct QuivAElem {
  int side = 1;
  std::unordered_map<uint64_t, FieldElem> terms;

  bool is_zero() const { return terms.empty(); }
  FieldElem coeff(uint64_t idx) const {
    auto it = terms.find(idx);
    return it == terms.end() ? FieldElem{0} : it->second;
  }
  void accumulate(const FieldContext& F, uint64_t idx, FieldElem c) {
    if (c.packed == 0) return;
    auto [it, inserted] = terms.try_emplace(idx, c);
    if (!inserted) {
      it->second = F.add(it->second, c);
      if (it->second.packed == 0) terms.erase(it);
    }
  }
  std::vector<std::pair<uint64_t, FieldElem>> sorted_terms() const {
    std::vector<std::pair<uint64_t, FieldElem>> out(terms.begin(), terms.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
  bool operator==(const QuivAElem& o) const { return side == o.side && terms == o.terms; }
};

/// Label tables and the embedding into k[D_i x| P_i] for one side.
class QuiverAlgebra {
 public:
  QuiverAlgebra(const Params& P, int side) : P_(P), side_(side) {
    if (side != 1 && side != 2) throw Error("QuiverAlgebra: side must be 1 or 2");
    const uint64_t nd = P.d_size;
    phi_.resize(nd);
    degree_.resize(nd);
    for (uint64_t m = 0; m < nd; ++m) {
      uint64_t v = m, phi = 0, deg = 0;
      for (uint64_t s = 1; s < P.p; ++s) {
        const uint64_t digit = v % P.ell;
        v /= P.ell;
        phi = (phi + s * digit) % P.p;
        deg += digit;
      }
      phi_[m] = static_cast<uint32_t>(phi);
      degree_[m] = static_cast<uint32_t>(deg);
    }
    // m^{g_i^t}: m'[s g0^{-t}] = m[s].
    mperm_.assign(P.r, std::vector<uint32_t>(nd));
    for (uint64_t t = 0; t < P.r; ++t) {
      const uint64_t u = P.g0_pow[(P.r - t) % P.r];
      for (uint64_t m = 0; m < nd; ++m) {
        std::vector<uint64_t> digits(P.p, 0);
        uint64_t v = m;
        for (uint64_t s = 1; s < P.p; ++s) {
          digits[s * u % P.p] = v % P.ell;
          v /= P.ell;
        }
        uint64_t out = 0;
        for (uint64_t s = P.p - 1; s >= 1; --s) out = out * P.ell + digits[s];
        mperm_[t][m] = static_cast<uint32_t>(out);
      }
    }
  }

  const Params& params() const { return P_; }
  const FieldContext& field() const { return P_.field(); }
  int side() const { return side_; }
  uint64_t dim() const { return P_.a_size(); }
  uint64_t m_count() const { return P_.d_size; }

  uint64_t label_index(uint64_t psi, uint64_t m) const { return (psi % P_.p) * P_.d_size + m; }
  uint64_t label_psi(uint64_t idx) const { return idx / P_.d_size; }
  uint64_t label_m(uint64_t idx) const { return idx % P_.d_size; }
  uint64_t phi(uint64_t m) const { return phi_[m]; }
  uint64_t m_degree(uint64_t m) const { return degree_[m]; }

  uint64_t m_from_multiplicities(const std::vector<uint32_t>& mult) const {
    if (mult.size() != P_.p - 1) throw Error("QuivLabel: multiplicity vector must have length p-1");
    uint64_t out = 0;
    for (std::size_t s = mult.size(); s-- > 0;) {
      if (mult[s] >= P_.ell) throw Error("QuivLabel: multiplicity exceeds ell-1");
      out = out * P_.ell + mult[s];
    }
    return out;
  }
  std::vector<uint32_t> multiplicities(uint64_t m) const {
    std::vector<uint32_t> out(P_.p - 1);
    for (auto& d : out) {
      d = static_cast<uint32_t>(m % P_.ell);
      m /= P_.ell;
    }
    return out;
  }
  /// Multiplicity vector with a single step phi_s.
  uint64_t m_single(uint64_t s) const {
    if (s % P_.p == 0) throw Error("QuivLabel: step must be a nontrivial character");
    return nt::checked_pow(P_.ell, s % P_.p - 1);
  }

  QuivLabel label(uint64_t idx) const { return {side_, label_psi(idx), multiplicities(label_m(idx))}; }
  uint64_t index(const QuivLabel& l) const {
    if (l.side != side_) throw Error("QuivLabel: side mismatch");
    return label_index(l.psi, m_from_multiplicities(l.m));
  }

  /// m + m' if no multiplicity exceeds ell-1.
  std::optional<uint64_t> m_add(uint64_t m1, uint64_t m2) const {
    if (P_.ell == 2) {
      if (m1 & m2) return std::nullopt;
      return m1 | m2;
    }
    uint64_t out = 0, scale = 1;
    for (uint64_t s = 1; s < P_.p; ++s) {
      const uint64_t d = m1 % P_.ell + m2 % P_.ell;
      if (d >= P_.ell) return std::nullopt;
      out += d * scale;
      scale *= P_.ell;
      m1 /= P_.ell;
      m2 /= P_.ell;
    }
    return out;
  }

  /// Product of two basis labels.
  std::optional<uint64_t> label_mul(uint64_t u, uint64_t v) const {
    const uint64_t psi = label_psi(u), m = label_m(u);
    if (label_psi(v) != (psi + phi_[m]) % P_.p) return std::nullopt;
    const auto mm = m_add(m, label_m(v));
    if (!mm) return std::nullopt;
    return label_index(psi, *mm);
  }

  /// (psi, m)^{g_i^t}.
  uint64_t label_act(uint64_t idx, uint64_t t) const {
    t %= P_.r;
    if (t == 0) return idx;
    const uint64_t u = P_.g0_pow[(P_.r - t) % P_.r];
    return label_index(label_psi(idx) * u % P_.p, mperm_[t][label_m(idx)]);
  }

  QuivAElem zero() const { return QuivAElem{side_, {}}; }
  QuivAElem basis(uint64_t idx, FieldElem c = FieldElem{1}) const {
    QuivAElem out = zero();
    out.accumulate(field(), idx, c);
    return out;
  }
  QuivAElem unit() const {
    QuivAElem out = zero();
    for (uint64_t psi = 0; psi < P_.p; ++psi) out.terms.emplace(label_index(psi, 0), FieldElem{1});
    return out;
  }
  QuivAElem vertex(uint64_t psi) const { return basis(label_index(psi, 0)); }
  /// s_{psi, phi} for phi with exponent s.
  QuivAElem arrow(uint64_t psi, uint64_t s) const { return basis(label_index(psi, m_single(s))); }

  void check_side(const QuivAElem& u) const {
    if (u.side != side_) throw Error("quiver algebra: side mismatch");
  }

  QuivAElem mul(const QuivAElem& u, const QuivAElem& v) const {
    check_side(u);
    check_side(v);
    const FieldContext& F = field();
    QuivAElem out = zero();
    for (const auto& [a, ca] : u.terms)
      for (const auto& [b, cb] : v.terms)
        if (auto prod = label_mul(a, b)) out.accumulate(F, *prod, F.mul(ca, cb));
    return out;
  }

  QuivAElem add(QuivAElem u, const QuivAElem& v) const {
    check_side(u);
    check_side(v);
    for (const auto& [k, c] : v.terms) u.accumulate(field(), k, c);
    return u;
  }

  QuivAElem scale(const QuivAElem& u, FieldElem s) const {
    QuivAElem out = zero();
    if (s.packed == 0) return out;
    for (const auto& [k, c] : u.terms) out.terms.emplace(k, field().mul(c, s));
    return out;
  }

  /// u^w for w = g_i^t.
  QuivAElem act(const QuivAElem& u, uint64_t t) const {
    check_side(u);
    QuivAElem out = zero();
    for (const auto& [k, c] : u.terms) out.terms.emplace(label_act(k, t), c);
    return out;
  }

  QuivAElem act(const QuivAElem& u, const GroupElem& w) const {
    const GroupElem expect = h_elem(P_, side_ == 1 ? w.a : 0, side_ == 2 ? w.b : 0, 0);
    if (!(w == expect)) throw Error("qa_L_action: element outside L_i");
    return act(u, side_ == 1 ? w.a : w.b);
  }

  /// Projection onto the chi-isotypic component, chi given by its exponent mod r.
  QuivAElem isotypic(const QuivAElem& u, uint64_t chi) const {
    check_side(u);
    const FieldContext& F = field();
    QuivAElem out = zero();
    for (uint64_t t = 0; t < P_.r; ++t) {
      const FieldElem w = F.mul(P_.r_inv, P_.zeta_r_pow[(P_.r - chi * t % P_.r) % P_.r]);
      for (const auto& [k, c] : u.terms) out.accumulate(F, label_act(k, t), F.mul(w, c));
    }
    return out;
  }

  /// Isotypic projection of a single label, cached.
  const QuivAElem& label_isotypic(uint64_t idx, uint64_t chi) const {
    std::call_once(iso_once_, [&] { iso_cache_.resize(dim() * P_.r); iso_done_.assign(dim() * P_.r, 0); });
    const uint64_t key = idx * P_.r + chi % P_.r;
    std::lock_guard<std::mutex> lock(iso_mu_);
    if (!iso_done_[key]) {
      iso_cache_[key] = isotypic(basis(idx), chi % P_.r);
      iso_done_[key] = 1;
    }
    return iso_cache_[key];
  }

  /// Minimum total multiplicity over the support; throws on zero.
  uint64_t degree(const QuivAElem& u) const {
    if (u.is_zero()) throw Error("qa_degree: zero element");
    uint64_t best = UINT64_MAX;
    for (const auto& [k, c] : u.terms) best = std::min<uint64_t>(best, degree_[label_m(k)]);
    return best;
  }

  /// Terms of total multiplicity exactly k.
  QuivAElem degree_part(const QuivAElem& u, uint64_t k) const {
    QuivAElem out = zero();
    for (const auto& [idx, c] : u.terms)
      if (degree_[label_m(idx)] == k) out.terms.emplace(idx, c);
    return out;
  }

  // ----- embedding into the group algebra -----

  const LocalAlgebra& local() const {
    std::call_once(local_once_, [&] { local_ = std::make_shared<const LocalAlgebra>(P_, side_); });
    return *local_;
  }
  std::shared_ptr<const LocalAlgebra> local_ptr() const {
    local();
    return local_;
  }

  /// s_phi = sum_g phi(-g) d_i^g as a dense element of k[D_i x| P_i].
  DenseVec s_phi_dense(uint64_t s) const {
    const LocalAlgebra& A = local();
    DenseVec out = A.zero();
    for (uint64_t g = 0; g < P_.p; ++g) {
      const uint64_t idx = A.group().index_of(d_elem(P_, side_, g));
      out[idx] = field().add(out[idx], P_.zeta_p_pow[(P_.p - s * g % P_.p) % P_.p]);
    }
    return out;
  }

  /// e_psi = p^{-1} sum_y psi(-y) y.
  DenseVec e_psi_dense(uint64_t psi) const {
    const LocalAlgebra& A = local();
    DenseVec out = A.zero();
    for (uint64_t y = 0; y < P_.p; ++y)
      out[A.group().index_of(p_elem(P_, side_, y))] =
          field().mul(P_.p_inv, P_.zeta_p_pow[(P_.p - psi * y % P_.p) % P_.p]);
    return out;
  }

  /// e_psi s_{phi_1} ... s_{phi_k} multiplied out in k[D_i x| P_i].
  DenseVec embed_label_dense(uint64_t idx) const {
    const LocalAlgebra& A = local();
    DenseVec v = e_psi_dense(label_psi(idx));
    const auto mult = multiplicities(label_m(idx));
    for (uint64_t s = 1; s < P_.p; ++s)
      for (uint32_t k = 0; k < mult[s - 1]; ++k) v = A.mul(v, s_phi(s));
    return v;
  }

  DenseVec embed_dense(const QuivAElem& u) const {
    check_side(u);
    const LocalAlgebra& A = local();
    const FieldContext& F = field();
    DenseVec out = A.zero();
    const bool cached = dim() <= 4096;
    for (const auto& [idx, c] : u.terms) {
      const DenseVec& e = cached ? embedded_label(idx) : embed_label_dense(idx);
      for (uint64_t j = 0; j < e.size(); ++j)
        if (e[j].packed != 0) out[j] = F.add(out[j], F.mul(c, e[j]));
    }
    return out;
  }

  GAElem embed(const QuivAElem& u) const { return local().to_group_algebra(embed_dense(u)); }

  // ----- extraction -----

  /// Preimage of a dense element of k[D_i x| P_i] under the embedding.
  QuivAElem extract_dense(const DenseVec& x) const {
    const Extractor& X = extractor();
    const FieldContext& F = field();
    const uint64_t nd = P_.d_size, p = P_.p;
    QuivAElem out = zero();
    // c_{m,y} = (M^{-1} x_y)_m, then coef(psi, m) = sum_y c_{m,y} (psi + Phi(m))(y).
    std::vector<FieldElem> cmy(nd * p, FieldElem{0});
    for (uint64_t y = 0; y < p; ++y) {
      const uint64_t base = X.slot_base[y];
      bool any = false;
      for (uint64_t d = 0; d < nd && !any; ++d) any = x[X.slot[base + d]].packed != 0;
      if (!any) continue;
      for (uint64_t m = 0; m < nd; ++m) {
        const FieldElem* row = X.minv.row(m);
        FieldElem acc{0};
        for (uint64_t d = 0; d < nd; ++d) {
          const FieldElem xv = x[X.slot[base + d]];
          if (xv.packed != 0 && row[d].packed != 0) acc = F.add(acc, F.mul(row[d], xv));
        }
        cmy[m * p + y] = acc;
      }
    }
    for (uint64_t m = 0; m < nd; ++m) {
      bool any = false;
      for (uint64_t y = 0; y < p && !any; ++y) any = cmy[m * p + y].packed != 0;
      if (!any) continue;
      for (uint64_t psi = 0; psi < p; ++psi) {
        const uint64_t chi = (psi + phi_[m]) % p;
        FieldElem acc{0};
        for (uint64_t y = 0; y < p; ++y) {
          const FieldElem c = cmy[m * p + y];
          if (c.packed != 0) acc = F.add(acc, F.mul(c, P_.zeta_p_pow[chi * y % p]));
        }
        out.accumulate(F, label_index(psi, m), acc);
      }
    }
    return out;
  }

  QuivAElem extract(const GAElem& x) const {
    for (const auto& [g, c] : x.terms)
      if (!local().group().contains(g)) throw Error("qa_extract: support outside D_i x| P_i");
    return extract_dense(local().from_group_algebra(x));
  }

 private:
  struct Extractor {
    Matrix minv;                     // inverse of the matrix with columns s^m
    std::vector<uint64_t> slot;      // slot[y*|D| + d] = dense index of d * y
    std::vector<uint64_t> slot_base;
  };

  const DenseVec& s_phi(uint64_t s) const {
    std::call_once(sphi_once_, [&] {
      sphi_.resize(P_.p);
      for (uint64_t k = 1; k < P_.p; ++k) sphi_[k] = s_phi_dense(k);
    });
    return sphi_[s];
  }

  const DenseVec& embedded_label(uint64_t idx) const {
    std::call_once(emb_once_, [&] {
      emb_.resize(dim());
      for (uint64_t i = 0; i < dim(); ++i) emb_[i] = embed_label_dense(i);
    });
    return emb_[idx];
  }

  const Extractor& extractor() const {
    std::call_once(ext_once_, [&] {
      const LocalGroup& N = local().group();
      const FieldContext& F = field();
      const uint64_t nd = P_.d_size;
      auto X = std::make_unique<Extractor>();
      // s^m in k[D_i], coordinates indexed by packed D vectors.
      std::vector<std::vector<FieldElem>> sm(nd);
      sm[0].assign(nd, FieldElem{0});
      sm[0][0] = FieldElem{1};
      std::vector<std::vector<FieldElem>> sd(P_.p);
      for (uint64_t s = 1; s < P_.p; ++s) {
        sd[s].assign(nd, FieldElem{0});
        for (uint64_t g = 0; g < P_.p; ++g) {
          const uint64_t d = d_elem(P_, side_, g).d(side_);
          sd[s][d] = F.add(sd[s][d], P_.zeta_p_pow[(P_.p - s * g % P_.p) % P_.p]);
        }
      }
      for (uint64_t m = 1; m < nd; ++m) {
        // Strip the highest nonzero digit once: s^m = s^{m'} s_{phi_k}.
        uint64_t v = m, k = 0, scale = 1, top = 0, top_scale = 1;
        while (v > 0) {
          ++k;
          if (v % P_.ell != 0) {
            top = k;
            top_scale = scale;
          }
          v /= P_.ell;
          scale *= P_.ell;
        }
        const auto& a = sm[m - top_scale];
        const auto& b = sd[top];
        std::vector<FieldElem> out(nd, FieldElem{0});
        for (uint64_t i = 0; i < nd; ++i) {
          if (a[i].packed == 0) continue;
          for (uint64_t j = 0; j < nd; ++j) {
            if (b[j].packed == 0) continue;
            const uint64_t prod = N.mul(i, j);
            out[prod] = F.add(out[prod], F.mul(a[i], b[j]));
          }
        }
        sm[m] = std::move(out);
      }
      Matrix M(nd, nd);
      for (uint64_t m = 0; m < nd; ++m)
        for (uint64_t d = 0; d < nd; ++d) M.at(d, m) = sm[m][d];
      X->minv = inverse(F, M);
      X->slot.resize(nd * P_.p);
      X->slot_base.resize(P_.p);
      for (uint64_t y = 0; y < P_.p; ++y) {
        X->slot_base[y] = y * nd;
        for (uint64_t d = 0; d < nd; ++d) X->slot[y * nd + d] = N.index_of(n_elem(side_, d, y));
      }
      extractor_ = std::move(X);
    });
    return *extractor_;
  }

  Params P_;
  int side_;
  std::vector<uint32_t> phi_;
  std::vector<uint32_t> degree_;
  std::vector<std::vector<uint32_t>> mperm_;

  mutable std::once_flag local_once_, sphi_once_, emb_once_, ext_once_, iso_once_;
  mutable std::shared_ptr<const LocalAlgebra> local_;
  mutable std::vector<DenseVec> sphi_;
  mutable std::vector<DenseVec> emb_;
  mutable std::unique_ptr<Extractor> extractor_;
  mutable std::mutex iso_mu_;
  mutable std::vector<QuivAElem> iso_cache_;
  mutable std::vector<char> iso_done_;
};

using QuiverPtr = std::shared_ptr<const QuiverAlgebra>;

}  // namespace mfb
