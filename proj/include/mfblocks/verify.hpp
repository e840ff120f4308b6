#pragma once

// Named property checks grouped into quick and full suites. Each check
// returns nothing on success and a JSON witness on failure.

#include <array>
#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mfblocks/morita.hpp"
#include "mfblocks/serialize.hpp"

namespace mfb {

struct VerifyConfig {
  uint64_t ell = 2;
  uint64_t p = 7;
  uint64_t r = 3;
  uint64_t theta = 1;
  std::string suite = "quick";
  uint64_t seed = 1;
};

struct CheckResult {
  std::string check;
  std::string statement;
  bool pass = false;
  double ms = 0;
  json witness;
};

inline json to_json(const Params& P, const CheckResult& res) {
  json out = {{"params", to_json(P)},
              {"check", res.check},
              {"statement", res.statement},
              {"status", res.pass ? "pass" : "fail"},
              {"ms", res.ms}};
  if (!res.pass) out["witness"] = res.witness;
  return out;
}

class Verifier {
 public:
  using Witness = std::optional<json>;

  explicit Verifier(VerifyConfig cfg) : cfg_(std::move(cfg)), P_(params_make(cfg_.ell, cfg_.p, cfg_.r)) {
    if (cfg_.suite != "quick" && cfg_.suite != "full") throw Error("verify: suite must be quick or full");
    theta_ = {CharGroup::Z, cfg_.theta % P_.r};
    check_faithful_theta(P_, theta_);
    register_checks();
  }
  Verifier(const Verifier&) = delete;
  Verifier& operator=(const Verifier&) = delete;

  const Params& params() const { return P_; }
  const VerifyConfig& config() const { return cfg_; }
  bool full() const { return cfg_.suite == "full"; }
  /// Local algebras above this size are sampled rather than walked in full.
  bool large() const { return P_.a_size() > 1024; }

  const TwistedB0& b0() const {
    if (!b0_) b0_ = std::make_unique<TwistedB0>(P_, theta_);
    return *b0_;
  }

  std::vector<std::string> check_names() const {
    std::vector<std::string> out;
    for (const auto& c : checks_) out.push_back(c.name);
    return out;
  }

  CheckResult run(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return run_one(c);
    throw Error("verify: unknown check '" + name + "'");
  }

  /// Runs every check in order, streaming results to sink.
  bool run_all(const std::function<void(const CheckResult&)>& sink) const {
    bool ok = true;
    for (const auto& c : checks_) {
      const CheckResult res = run_one(c);
      ok = ok && res.pass;
      sink(res);
    }
    return ok;
  }

 private:
  struct Check {
    std::string name;
    std::string statement;
    std::function<Witness()> fn;
  };

  CheckResult run_one(const Check& c) const {
    CheckResult res{c.name, c.statement, false, 0, nullptr};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Witness w = c.fn();
      res.pass = !w.has_value();
      if (w) res.witness = *w;
    } catch (const std::exception& e) {
      res.witness = {{"exception", e.what()}};
    }
    res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }

  void add(std::string name, std::string statement, std::function<Witness()> fn) {
    checks_.push_back({std::move(name), std::move(statement), std::move(fn)});
  }

  std::mt19937_64 rng(uint64_t salt) const { return std::mt19937_64(cfg_.seed * 0x9E3779B97F4A7C15ULL + salt); }

  FieldElem random_nonzero(std::mt19937_64& g) const {
    const FieldContext& F = P_.field();
    return F.element(1 + g() % (F.order() - 1));
  }

  /// A random label index. Large local algebras draw only low radical
  /// degree labels, whose embeddings stay sparse.
  uint64_t random_label(const QuiverAlgebra& Q, std::mt19937_64& g) const {
    if (!large()) return g() % Q.dim();
    return Q.label_index(g() % P_.p, g() % (P_.ell * P_.ell));
  }

  QuivAElem random_qa(const QuiverAlgebra& Q, std::mt19937_64& g, int terms) const {
    QuivAElem u = Q.zero();
    for (int i = 0; i < terms; ++i) u.accumulate(Q.field(), random_label(Q, g), random_nonzero(g));
    return u;
  }

  /// A nonzero element of A_i^chi.
  QuivAElem random_homogeneous(const QuiverAlgebra& Q, std::mt19937_64& g, uint64_t chi) const {
    for (;;) {
      const QuivAElem u = Q.isotypic(random_qa(Q, g, 2), chi);
      if (!u.is_zero()) return u;
    }
  }

  TTElem random_tt(std::mt19937_64& g, int terms) const {
    const TwistedB0& T = b0();
    TTElem t = T.zero();
    for (int i = 0; i < terms; ++i)
      t.accumulate(T.field(), T.key(random_label(T.q(1), g), random_label(T.q(2), g)), random_nonzero(g));
    return t;
  }

  GAElem random_ga(std::mt19937_64& g, int terms) const {
    GAElem x;
    for (int i = 0; i < terms; ++i) {
      GroupElem h;
      h.d1 = g() % P_.d_size;
      h.d2 = g() % P_.d_size;
      h.x1 = static_cast<uint32_t>(g() % P_.p);
      h.x2 = static_cast<uint32_t>(g() % P_.p);
      h.a = static_cast<uint32_t>(g() % P_.r);
      h.b = static_cast<uint32_t>(g() % P_.r);
      h.c = static_cast<uint32_t>(g() % P_.r);
      x.accumulate(P_.field(), h, random_nonzero(g));
    }
    return x;
  }

  /// Every label index, or n random ones when the local algebra is large.
  std::vector<uint64_t> label_sample(const QuiverAlgebra& Q, std::mt19937_64& g, uint64_t n) const {
    std::vector<uint64_t> out;
    if (!large()) {
      for (uint64_t u = 0; u < Q.dim(); ++u) out.push_back(u);
    } else {
      for (uint64_t i = 0; i < n; ++i) out.push_back(g() % Q.dim());
    }
    return out;
  }

  std::vector<SimpleLabel> simple_labels() const {
    std::vector<SimpleLabel> out;
    for (const auto& s : simples(P_, theta_)) out.push_back(s.label);
    return out;
  }

  void register_checks();

  VerifyConfig cfg_;
  Params P_;
  Character theta_;
  mutable std::unique_ptr<TwistedB0> b0_;
  std::vector<Check> checks_;
};

inline void Verifier::register_checks() {
  add("dimensions", "dim A_i = ell^(p-1) p, ell^(p-1) - 1 monomial classes, dim B_0 = |D_1|^2 |P_1|^2", [this]() -> Witness {
    const Params& P = P_;
    const TwistedB0& T = b0();
    const uint64_t dl = nt::checked_pow(P.ell, P.p - 1);
    if (T.q(1).dim() != dl * P.p || T.q(1).m_count() - 1 != dl - 1 || T.label_count() != dl * dl * P.p * P.p ||
        LocalGroup(P, 1).size() != T.q(1).dim())
      return json{{"dim_A", T.q(1).dim()}, {"classes", T.q(1).m_count() - 1}, {"labels", T.label_count()}};
    return std::nullopt;
  });

  add("h_presentation", "H = <g_1, g_2, g_z> with g_i^r = g_z^r = 1, g_z central, [g_1, g_2] generating Z", [this]() -> Witness {
    const Params& P = P_;
    const uint64_t r = P.r;
    const GroupElem g1 = gen_g1(P), g2 = gen_g2(P), z = gen_gz(P), e = group_identity();
    std::set<GroupElem> seen;
    for (uint64_t a = 0; a < r; ++a)
      for (uint64_t b = 0; b < r; ++b)
        for (uint64_t c = 0; c < r; ++c)
          seen.insert(group_mul(P, group_mul(P, group_pow(P, g1, a), group_pow(P, g2, b)), group_pow(P, z, c)));
    if (seen.size() != r * r * r) return json{{"order", seen.size()}};
    for (const GroupElem& g : {g1, g2, z})
      if (!(group_pow(P, g, r) == e)) return json{{"bad_order", to_json(P, g)}};
    for (const GroupElem& g : {g1, g2})
      if (!(group_mul(P, g, z) == group_mul(P, z, g))) return json{{"not_central_against", to_json(P, g)}};
    const GroupElem k = commutator(P, g1, g2);
    if (!char_group_contains(CharGroup::Z, k) || std::gcd(uint64_t{k.c}, r) != 1)
      return json{{"commutator", to_json(P, k)}};
    return std::nullopt;
  });

  add("action_kernel", "the kernel of the action of H on N_1 x N_2 is Z", [this]() -> Witness {
    const Params& P = P_;
    std::vector<GroupElem> gens;
    for (int side : {1, 2}) {
      gens.push_back(d_elem(P, side, 0));
      gens.push_back(p_elem(P, side, 1));
    }
    for (uint64_t a = 0; a < P.r; ++a)
      for (uint64_t b = 0; b < P.r; ++b)
        for (uint64_t c = 0; c < P.r; ++c) {
          const GroupElem h = h_elem(P, a, b, c);
          bool trivial = true;
          for (const auto& n : gens) trivial = trivial && conjugate(P, n, h) == n;
          if (trivial != (a == 0 && b == 0)) return json{{"element", to_json(P, h)}, {"acts_trivially", trivial}};
        }
    return std::nullopt;
  });

  add("embed_multiplicative", "the embedding A_i -> k[D_i x| P_i] is multiplicative", [this]() -> Witness {
    auto g = rng(3);
    for (int side : {1, 2}) {
      const QuiverAlgebra& Q = b0().q(side);
      const LocalAlgebra& A = Q.local();
      auto check = [&](uint64_t u, uint64_t v, const DenseVec& eu, const DenseVec& ev) -> Witness {
        const auto l = Q.label_mul(u, v);
        const DenseVec want = l ? Q.embed_dense(Q.basis(*l)) : A.zero();
        if (A.mul(eu, ev) != want) return json{{"side", side}, {"u", to_json(Q.label(u))}, {"v", to_json(Q.label(v))}};
        return std::nullopt;
      };
      if (full() && side == 1 && !large()) {
        std::vector<DenseVec> emb;
        for (uint64_t u = 0; u < Q.dim(); ++u) emb.push_back(Q.embed_dense(Q.basis(u)));
        for (uint64_t u = 0; u < Q.dim(); ++u)
          for (uint64_t v = 0; v < Q.dim(); ++v)
            if (auto w = check(u, v, emb[u], emb[v])) return w;
      } else {
        const int count = large() ? 4 : (side == 1 ? 200 : 50);
        for (int i = 0; i < count; ++i) {
          const uint64_t u = g() % Q.dim(), v = g() % Q.dim();
          if (auto w = check(u, v, Q.embed_label_dense(u), Q.embed_label_dense(v))) return w;
        }
      }
    }
    return std::nullopt;
  });

  add("extract_roundtrip", "extraction inverts the embedding on every label", [this]() -> Witness {
    auto g = rng(10);
    for (int side : {1, 2}) {
      const QuiverAlgebra& Q = b0().q(side);
      for (uint64_t u : label_sample(Q, g, 6))
        if (!(Q.extract_dense(Q.embed_dense(Q.basis(u))) == Q.basis(u)))
          return json{{"side", side}, {"label", to_json(Q.label(u))}};
    }
    return std::nullopt;
  });

  add("iota_homomorphism", "iota_i: A_i -> B_0 is a unital algebra homomorphism", [this]() -> Witness {
    auto g = rng(4);
    const TwistedB0& T = b0();
    const BlockAlgebra& B = T.block();
    for (int side : {1, 2}) {
      const QuiverAlgebra& Q = T.q(side);
      if (!B.equal(T.iota_block(side, Q.unit()), B.unit())) return json{{"side", side}, {"unit", false}};
      for (int i = 0; i < (large() ? 2 : full() ? 60 : 15); ++i) {
        const QuivAElem a = random_qa(Q, g, 3), b = random_qa(Q, g, 3);
        if (!B.equal(B.mul(T.iota_block(side, a), T.iota_block(side, b)), T.iota_block(side, Q.mul(a, b))))
          return json{{"side", side}, {"a", to_json(Q, a)}, {"b", to_json(Q, b)}};
      }
    }
    return std::nullopt;
  });

  add("iota_formulas_agree", "sum_chi a^chi h_{chi,i}^{-1} e_theta = sum_{g in L_i} (a e_{1_{L_j}} e_theta)^g", [this]() -> Witness {
    auto g = rng(11);
    const TwistedB0& T = b0();
    for (int side : {1, 2}) {
      const QuiverAlgebra& Q = T.q(side);
      for (uint64_t u : label_sample(Q, g, 4)) {
        const QuivAElem a = Q.basis(u);
        if (!T.block().equal(T.iota_block(side, a), T.iota_alt_block(side, a)))
          return json{{"side", side}, {"label", to_json(Q.label(u))}};
      }
    }
    return std::nullopt;
  });

  add("pi_iota_product", "pi(iota_1(a) iota_2(b)) = a (x) b", [this]() -> Witness {
    auto g = rng(5);
    const TwistedB0& T = b0();
    for (int i = 0; i < (large() ? 4 : 100); ++i) {
      QuivAElem a = random_qa(T.q(1), g, 2), b = random_qa(T.q(2), g, 2);
      if (i % 2 == 0) {
        a = T.q(1).isotypic(a, g() % P_.r);
        b = T.q(2).isotypic(b, g() % P_.r);
      }
      const BlockElem x = T.block().mul(T.iota_block(1, a), T.iota_block(2, b));
      if (!(T.pi(x) == T.tensor(a, b))) return json{{"a", to_json(T.q(1), a)}, {"b", to_json(T.q(2), b)}};
    }
    return std::nullopt;
  });

  add("iota_centralizes", "iota_i(A_i) centralises kH e_theta", [this]() -> Witness {
    auto g = rng(6);
    const TwistedB0& T = b0();
    for (int side : {1, 2}) {
      const QuiverAlgebra& Q = T.q(side);
      const bool all = full() && !large();
      const uint64_t count = all ? Q.dim() : large() ? 3 : 30;
      for (uint64_t i = 0; i < count; ++i) {
        const uint64_t u = all ? i : g() % Q.dim();
        if (!T.block().centralizes_H(T.iota_block(side, Q.basis(u))))
          return json{{"side", side}, {"label", to_json(Q.label(u))}};
      }
    }
    return std::nullopt;
  });

  add("homogeneous_commutation", "iota_1(a) iota_2(b) = theta([h_{eta,2}, h_{chi,1}]) iota_2(b) iota_1(a)", [this]() -> Witness {
    auto g = rng(7);
    const TwistedB0& T = b0();
    const BlockAlgebra& B = T.block();
    for (uint64_t chi = 0; chi < P_.r; ++chi)
      for (uint64_t eta = 0; eta < P_.r; ++eta) {
        const QuivAElem a = random_homogeneous(T.q(1), g, chi), b = random_homogeneous(T.q(2), g, eta);
        const FieldElem c = T.pairing(chi, eta);
        const TTElem ta = T.tensor(a, T.q(2).unit()), tb = T.tensor(T.q(1).unit(), b);
        if (!(T.mul(ta, tb) == T.scale(T.mul(tb, ta), c))) return json{{"chi", chi}, {"eta", eta}, {"route", "tt"}};
        const BlockElem ia = T.iota_block(1, a), ib = T.iota_block(2, b);
        if (!B.equal(B.mul(ia, ib), B.scale(B.mul(ib, ia), c))) return json{{"chi", chi}, {"eta", eta}, {"route", "block"}};
      }
    return std::nullopt;
  });

  add("tt_product_gate", "the twisted product on A_1 (x) A_2 agrees with multiplication in B(theta)", [this]() -> Witness {
    auto g = rng(8);
    const TwistedB0& T = b0();
    const BlockAlgebra& B = T.block();
    for (int i = 0; i < (large() ? 4 : 100); ++i) {
      const TTElem x = random_tt(g, 1 + i % 2), y = random_tt(g, 1 + (i / 2) % 2);
      const TTElem want = T.pi(B.mul(T.pi_inv_block(x), T.pi_inv_block(y)));
      if (!(T.mul(x, y) == want)) return json{{"x", to_json(T, x)}, {"y", to_json(T, y)}};
    }
    const TTElem x = random_tt(g, 3);
    if (!(T.mul(T.unit(), x) == x) || !(T.mul(x, T.unit()) == x)) return json{{"unit_law", to_json(T, x)}};
    return std::nullopt;
  });

  add("tt_radical_law", "pi(J^i(B_0)) = J^i(A_1 (x) A_2): radical degree is superadditive", [this]() -> Witness {
    auto g = rng(9);
    const TwistedB0& T = b0();
    for (int i = 0; i < (full() ? 400 : 100); ++i) {
      const TTElem x = random_tt(g, 2), y = random_tt(g, 2);
      const TTElem xy = T.mul(x, y);
      if (!xy.is_zero() && T.radical_degree(xy) < T.radical_degree(x) + T.radical_degree(y))
        return json{{"x", to_json(T, x)}, {"y", to_json(T, y)}};
    }
    return std::nullopt;
  });

  add("idempotents", "the epsilon idempotents are pairwise orthogonal and sum to 1", [this]() -> Witness {
    const TwistedB0& T = b0();
    const auto labels = simple_labels();
    if (labels.size() != 2 * P_.p - 1 + ((P_.p - 1) / P_.r) * ((P_.p - 1) / P_.r)) return json{{"count", labels.size()}};
    std::vector<TTElem> eps;
    TTElem total = T.zero();
    for (const auto& l : labels) {
      eps.push_back(T.eps(l));
      total = T.add(total, eps.back());
    }
    if (!(total == T.unit())) return json{{"sum", "not the unit"}};
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j < labels.size(); ++j) {
        const TTElem prod = T.mul(eps[i], eps[j]);
        if (i == j ? !(prod == eps[i]) : !prod.is_zero())
          return json{{"a", simple_label_string(labels[i])}, {"b", simple_label_string(labels[j])}};
      }
    return std::nullopt;
  });

  add("arrow_sandwich", "S_{psi,phi} = eps_(psi,1) S_{psi,phi} eps_(psi phi,1), arrows have radical degree 1", [this]() -> Witness {
    const TwistedB0& T = b0();
    const uint64_t p = P_.p;
    auto vertex_eps = [&](int side, uint64_t s) {
      using K = SimpleLabel::Kind;
      if (s % p == 0) return T.eps({K::One, 0, 0});
      return side == 1 ? T.eps({K::Left, s % p, 0}) : T.eps({K::Right, 0, s % p});
    };
    for (int side : {1, 2})
      for (uint64_t psi = 0; psi < p; ++psi)
        for (uint64_t phi = 1; phi < p; ++phi) {
          const TTElem s = T.arrow(side, psi, phi);
          if (!(T.mul(T.mul(vertex_eps(side, psi), s), vertex_eps(side, psi + phi)) == s) || T.radical_degree(s) != 1)
            return json{{"side", side}, {"psi", psi}, {"phi", phi}};
          const uint64_t phi2 = 1 + (phi + psi) % (p - 1);
          const QuiverAlgebra& Q = T.q(side);
          const QuivAElem path = Q.mul(Q.arrow(psi, phi), Q.arrow((psi + phi) % p, phi2));
          const TTElem want = side == 1 ? T.tensor(path, T.q(2).vertex(0)) : T.tensor(T.q(1).vertex(0), path);
          if (!(T.mul(s, T.arrow(side, psi + phi, phi2)) == want))
            return json{{"side", side}, {"psi", psi}, {"phi", phi}, {"phi2", phi2}};
        }
    return std::nullopt;
  });

  add("arrow_power_radical", "ell arrows with step product 1 lie in J^(ell+1) iff all steps are equal", [this]() -> Witness {
    const TwistedB0& T = b0();
    const uint64_t p = P_.p, ell = P_.ell;
    std::vector<uint64_t> steps(ell, 1);
    for (;;) {
      uint64_t sum = 0;
      for (uint64_t s : steps) sum += s;
      if (sum % p == 0) {
        const bool equal = std::all_of(steps.begin(), steps.end(), [&](uint64_t s) { return s == steps[0]; });
        for (int side : {1, 2}) {
          const TTElem t = T.arrow_path(side, steps);
          const bool deep = t.is_zero() || T.radical_degree(t) >= ell + 1;
          if (deep != equal) return json{{"side", side}, {"steps", steps}, {"in_J^(ell+1)", deep}};
        }
      }
      std::size_t i = 0;
      while (i < ell && steps[i] == p - 1) steps[i++] = 1;
      if (i == ell) break;
      ++steps[i];
    }
    return std::nullopt;
  });

  add("tilde_independence", "the S~^chi (and T~^eta) are isotypic and linearly independent modulo J^(len+1)", [this]() -> Witness {
    const TwistedB0& T = b0();
    const auto loop = free_loop(P_);
    const uint64_t len = loop.size();
    for (int side : {1, 2}) {
      const QuiverAlgebra& Q = T.q(side);
      std::unordered_map<uint64_t, std::size_t> index;
      std::vector<std::vector<std::pair<std::size_t, FieldElem>>> rows;
      for (uint64_t w = 0; w < P_.r; ++w) {
        const TTElem t = T.tilde_loop(side, loop, w);
        if (t.is_zero() || T.radical_degree(t) != len) return json{{"side", side}, {"weight", w}, {"degree", "wrong"}};
        QuivAElem part = Q.zero();
        std::vector<std::pair<std::size_t, FieldElem>> row;
        for (const auto& [k, c] : T.degree_part(t, len).terms) {
          part.accumulate(Q.field(), side == 1 ? T.key_u(k) : T.key_v(k), c);
          row.emplace_back(index.try_emplace(k, index.size()).first->second, c);
        }
        if (!(Q.isotypic(part, w) == part)) return json{{"side", side}, {"weight", w}, {"isotypic", false}};
        rows.push_back(std::move(row));
      }
      EchelonBasis basis(P_.field(), index.size());
      for (const auto& row : rows) {
        std::vector<FieldElem> v(index.size(), FieldElem{0});
        for (const auto& [i, c] : row) v[i] = c;
        if (!basis.insert(std::move(v))) return json{{"side", side}, {"independent", false}};
      }
    }
    return std::nullopt;
  });

  add("corner_identity", "pi(x B_0 y) lies in (a_1 A_1 a_2) (x) (b_1 A_2 b_2) for x = iota_1(a_1) iota_2(b_1), y = iota_1(a_2) iota_2(b_2)", [this]() -> Witness {
    auto g = rng(10);
    const TwistedB0& T = b0();
    const QuiverAlgebra &Q1 = T.q(1), &Q2 = T.q(2);
    const QuivAElem a1 = random_homogeneous(Q1, g, g() % P_.r), a2 = random_homogeneous(Q1, g, g() % P_.r);
    const QuivAElem b1 = random_homogeneous(Q2, g, g() % P_.r), b2 = random_homogeneous(Q2, g, g() % P_.r);
    const TTElem x = T.tensor(a1, b1), y = T.tensor(a2, b2);
    auto corner = [&](const QuiverAlgebra& Q, const QuivAElem& l, const QuivAElem& r) {
      EchelonBasis basis(P_.field(), Q.dim());
      for (uint64_t u = 0; u < Q.dim(); ++u) {
        const QuivAElem c = Q.mul(Q.mul(l, Q.basis(u)), r);
        std::vector<FieldElem> v(Q.dim(), FieldElem{0});
        for (const auto& [k, co] : c.terms) v[k] = co;
        basis.insert(std::move(v));
      }
      return basis;
    };
    const EchelonBasis V1 = corner(Q1, a1, a2), V2 = corner(Q2, b1, b2);
    std::vector<uint64_t> low1, low2;
    for (uint64_t u = 0; u < Q1.dim(); ++u) {
      if (Q1.m_degree(Q1.label_m(u)) <= 2) low1.push_back(u);
      if (Q2.m_degree(Q2.label_m(u)) <= 2) low2.push_back(u);
    }
    std::vector<std::pair<uint64_t, uint64_t>> spanning;
    for (uint64_t u : low1)
      for (uint64_t v : low2)
        if (Q1.m_degree(Q1.label_m(u)) + Q2.m_degree(Q2.label_m(v)) <= 2) spanning.emplace_back(u, v);
    if (!full()) {
      std::shuffle(spanning.begin(), spanning.end(), g);
      spanning.resize(std::min<std::size_t>(spanning.size(), 60));
    }
    for (const auto& [u, v] : spanning) {
      const TTElem z = T.mul(T.mul(x, T.basis(u, v)), y);
      // Columns must lie in V1, rows in V2.
      std::unordered_map<uint64_t, std::vector<FieldElem>> cols, rows;
      for (const auto& [k, c] : z.terms) {
        auto& col = cols.try_emplace(T.key_v(k), std::vector<FieldElem>(Q1.dim(), FieldElem{0})).first->second;
        col[T.key_u(k)] = c;
        auto& row = rows.try_emplace(T.key_u(k), std::vector<FieldElem>(Q2.dim(), FieldElem{0})).first->second;
        row[T.key_v(k)] = c;
      }
      for (const auto& [k, col] : cols)
        if (!V1.contains(col)) return json{{"W", {u, v}}, {"side", 1}};
      for (const auto& [k, row] : rows)
        if (!V2.contains(row)) return json{{"W", {u, v}}, {"side", 2}};
    }
    return std::nullopt;
  });

  add("simple_census", "Irr(E|theta): 1 + 2(p-1) simples of degree r and ((p-1)/r)^2 of degree r^2", [this]() -> Witness {
    const auto s = simples(P_, theta_);
    std::multiset<uint64_t> degrees;
    uint64_t sumsq = 0;
    for (const auto& i : s) {
      degrees.insert(i.degree);
      sumsq += i.degree * i.degree;
    }
    const uint64_t k = (P_.p - 1) / P_.r;
    if (s.size() != 2 * P_.p - 1 + k * k || sumsq != P_.p * P_.p * P_.r * P_.r ||
        degrees != simple_degrees_by_orbits(P_, theta_))
      return json{{"count", s.size()}, {"sum_sq", sumsq}};
    return std::nullopt;
  });

  add("head_algebra", "B_0/J(B_0) has 2p-1 blocks of dimension 1 and ((p-1)/r)^2 of dimension r^2, cut out by the epsilons", [this]() -> Witness {
    const TwistedB0& T = b0();
    const HeadAlgebra H = head_algebra(T, cfg_.seed);
    const uint64_t k = (P_.p - 1) / P_.r;
    std::vector<uint64_t> expected(2 * P_.p - 1, 1);
    expected.insert(expected.end(), k * k, P_.r * P_.r);
    if (H.block_dims != expected) return json{{"block_dims", H.block_dims}};
    for (const auto& l : simple_labels()) {
      const TTElem e = T.eps(l);
      if (std::none_of(H.central_idempotents.begin(), H.central_idempotents.end(), [&](const TTElem& c) { return c == e; }))
        return json{{"label", simple_label_string(l)}, {"central_idempotent", false}};
    }
    return std::nullopt;
  });

  add("ext_quiver", "Ext^1 between simples: single arrows within the (.,1) and (1,.) families, none across, self-extensions at pairs", [this]() -> Witness {
    const TwistedB0& T = b0();
    const auto labels = simple_labels();
    const auto table = ext_quiver(T, labels);
    using K = SimpleLabel::Kind;
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j < labels.size(); ++j) {
        const auto &a = labels[i], &b = labels[j];
        if (a.kind == K::Pair || b.kind == K::Pair) {
          if (i == j && table[i][j] == 0) return json{{"a", simple_label_string(a)}, {"self_extension", 0}};
          continue;
        }
        const bool same = a.kind == K::One || b.kind == K::One || a.kind == b.kind;
        if (table[i][j] != (same && i != j ? 1u : 0u))
          return json{{"a", simple_label_string(a)}, {"b", simple_label_string(b)}, {"ext", table[i][j]}};
      }
    // Invariance under the F_p^x relabelling.
    const uint64_t u1 = 2 % P_.p, u2 = 3 % P_.p;
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j < labels.size(); ++j) {
        const auto ia = std::find(labels.begin(), labels.end(), fp_relabel(P_, u1, u2, labels[i])) - labels.begin();
        const auto ib = std::find(labels.begin(), labels.end(), fp_relabel(P_, u1, u2, labels[j])) - labels.begin();
        if (table[i][j] != table[ia][ib]) return json{{"relabel", {i, j}}};
      }
    return std::nullopt;
  });

  add("pairing_table", "S~^chi T~^eta = theta([h_{eta,2}, h_{chi,1}]) T~^eta S~^chi", [this]() -> Witness {
    const TwistedB0& T = b0();
    const PairingTable table = commutation_pairing(T);
    if (!(table == pairing_from_group(P_, theta_))) return json{{"extracted", to_json(P_, table)}};
    const uint64_t r = P_.r, jinv = nt::inverse_mod(theta_.e, r);
    for (uint64_t chi = 0; chi < r; ++chi)
      for (uint64_t eta = 0; eta < r; ++eta)
        if (!(table.at(chi, eta) == P_.zeta_r_pow[(r - chi * eta % r * jinv % r) % r]))
          return json{{"closed_form", {chi, eta}}};
    if (P_.p > 3 && !(commutation_pairing(T, 2, 3) == table)) return json{{"generator_choice", "differs"}};
    return std::nullopt;
  });

  add("recover_theta", "the pairing determines theta up to inversion", [this]() -> Witness {
    const auto got = recover_theta(commutation_pairing(b0()), P_);
    const std::set<uint64_t> want{theta_.e, (P_.r - theta_.e) % P_.r};
    if (got != want) return json{{"recovered", got}};
    return std::nullopt;
  });

  add("theta_separation", "B(theta) ~ B(theta') iff theta' = theta^(+-1), witnessed by the recovered pairs", [this]() -> Witness {
    const auto mine = recover_theta(commutation_pairing(b0()), P_);
    for (uint64_t j = 1; j < P_.r; ++j) {
      if (std::gcd(j, P_.r) != 1) continue;
      const Character other{CharGroup::Z, j};
      const auto theirs = j == theta_.e ? mine : recover_theta(commutation_pairing(TwistedB0(P_, other)), P_);
      if ((theirs == mine) != morita_equivalent(P_, theta_, other))
        return json{{"theta", theta_.e}, {"other", j}, {"recovered", theirs}};
    }
    return std::nullopt;
  });

  add("frobenius_compat", "the Frobenius twist sends e_theta to e_(theta^ell)", [this]() -> Witness {
    for (uint64_t j = 1; j < P_.r; ++j) {
      if (std::gcd(j, P_.r) != 1) continue;
      const Character theta{CharGroup::Z, j};
      if (!(ga_frobenius_twist(P_, block_idempotent(P_, theta)) == block_idempotent(P_, char_frob_power(P_, theta, 1))))
        return json{{"theta", j}};
    }
    return std::nullopt;
  });

  add("mf_numbers", "mf = least m >= 1 with r | ell^m +- 1, and mf = n for r = ell^n + 1", [this]() -> Witness {
    for (uint64_t ell : {2, 3, 5})
      for (uint64_t r = 2; r <= 10000; ++r)
        if (std::gcd(ell, r) == 1 && mf_number(ell, r) != mf_number_bruteforce(ell, r)) return json{{"ell", ell}, {"r", r}};
    for (uint64_t n = 1; n <= 20; ++n)
      if (mf_number(2, (uint64_t{1} << n) + 1) != n) return json{{"n", n}};
    const std::vector<std::array<uint64_t, 3>> recipe{{1, 3, 7}, {2, 5, 11}, {3, 9, 19}, {4, 17, 103}};
    for (const auto& [n, r, p] : recipe) {
      const TargetParams t = params_for_target(2, n);
      if (t.r != r || t.p != p) return json{{"n", n}, {"r", t.r}, {"p", t.p}};
    }
    if (mf_number(P_.ell, P_.r) != mf_number_bruteforce(P_.ell, P_.r)) return json{{"config", "mismatch"}};
    return std::nullopt;
  });

  add("swap_isomorphism", "(x_1, x_2) -> (x_2, x_1), g_1 <-> g_2, z -> z^-1 induces B(theta) -> B(theta^-1) with (phi,psi) -> (psi,phi)", [this]() -> Witness {
    auto g = rng(11);
    for (int i = 0; i < 100; ++i) {
      const GAElem x = random_ga(g, 3), y = random_ga(g, 3);
      if (!(swap_isomorphism(P_, ga_mul(P_, x, y)) == ga_mul(P_, swap_isomorphism(P_, x), swap_isomorphism(P_, y))))
        return json{{"x", to_json(P_, x)}, {"y", to_json(P_, y)}};
    }
    const Character inv = char_inverse(P_, theta_);
    if (!(swap_isomorphism(P_, block_idempotent(P_, theta_)) == block_idempotent(P_, inv))) return json{{"e_theta", false}};
    const TwistedB0& T = b0();
    const TwistedB0 Tinv(P_, inv);
    for (const auto& l : simple_labels())
      if (!(Tinv.pi_checked(swap_isomorphism(P_, T.pi_inv(T.eps(l)))) == Tinv.eps(swap_relabel(l))))
        return json{{"label", simple_label_string(l)}};
    return std::nullopt;
  });

  add("fp_automorphism", "scaling D_i x| P_i by u_i fixes e_theta and sends (phi,psi) to (phi^(g_1), psi^(g_2))", [this]() -> Witness {
    auto g = rng(12);
    const uint64_t u1 = 2 % P_.p, u2 = 3 % P_.p;
    for (int i = 0; i < 100; ++i) {
      const GAElem x = random_ga(g, 3), y = random_ga(g, 3);
      if (!(fp_automorphism(P_, u1, u2, ga_mul(P_, x, y)) ==
            ga_mul(P_, fp_automorphism(P_, u1, u2, x), fp_automorphism(P_, u1, u2, y))))
        return json{{"x", to_json(P_, x)}, {"y", to_json(P_, y)}};
    }
    if (!(fp_automorphism(P_, u1, u2, block_idempotent(P_, theta_)) == block_idempotent(P_, theta_)))
      return json{{"e_theta", false}};
    const TwistedB0& T = b0();
    for (const auto& l : simple_labels())
      if (!(T.pi_checked(fp_automorphism(P_, u1, u2, T.pi_inv(T.eps(l)))) == T.eps(fp_relabel(P_, u1, u2, l))))
        return json{{"label", simple_label_string(l)}};
    return std::nullopt;
  });
}

}  // namespace mfb
