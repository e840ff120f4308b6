#include <gtest/gtest.h>

#include <random>

#include "mfblocks/morita.hpp"

using namespace mfb;

namespace {

GroupElem random_group_elem(const Params& P, std::mt19937_64& rng) {
  GroupElem g;
  g.d1 = rng() % P.d_size;
  g.d2 = rng() % P.d_size;
  g.x1 = static_cast<uint32_t>(rng() % P.p);
  g.x2 = static_cast<uint32_t>(rng() % P.p);
  g.a = static_cast<uint32_t>(rng() % P.r);
  g.b = static_cast<uint32_t>(rng() % P.r);
  g.c = static_cast<uint32_t>(rng() % P.r);
  return g;
}

GAElem random_ga(const Params& P, std::mt19937_64& rng, int terms) {
  const FieldContext& F = P.field();
  GAElem x;
  for (int i = 0; i < terms; ++i) x.accumulate(F, random_group_elem(P, rng), F.element(1 + rng() % (F.order() - 1)));
  return x;
}

std::vector<SimpleLabel> labels_of(const std::vector<SimpleInfo>& s) {
  std::vector<SimpleLabel> out;
  for (const auto& i : s) out.push_back(i.label);
  return out;
}

}  // namespace

TEST(Morita, SimpleCensus) {
  for (auto [ell, p, r, count] : {std::tuple{2, 7, 3, 17}, std::tuple{3, 5, 2, 13}, std::tuple{2, 11, 5, 25}}) {
    const Params P = params_make(ell, p, r);
    const Character theta{CharGroup::Z, 1};
    const auto s = simples(P, theta);
    ASSERT_EQ(s.size(), static_cast<std::size_t>(count));
    std::multiset<uint64_t> degrees;
    uint64_t sumsq = 0;
    for (const auto& i : s) {
      degrees.insert(i.degree);
      sumsq += i.degree * i.degree;
    }
    EXPECT_EQ(sumsq, P.p * P.p * P.r * P.r);
    EXPECT_EQ(degrees, simple_degrees_by_orbits(P, theta));
  }
  const Params P = params_make(2, 7, 3);
  const auto s = simples(P, {CharGroup::Z, 2});
  EXPECT_EQ(std::count_if(s.begin(), s.end(), [](const auto& i) { return i.degree == 3; }), 13);
  EXPECT_EQ(std::count_if(s.begin(), s.end(), [](const auto& i) { return i.degree == 9; }), 4);
  EXPECT_THROW(simples(P, {CharGroup::Z, 0}), Error);
}

TEST(Morita, HeadAlgebraBlocks) {
  const Params P = params_make(2, 7, 3);
  TwistedB0 T(P, {CharGroup::Z, 1});
  const HeadAlgebra H = head_algebra(T);
  EXPECT_EQ(H.dim, 49u);
  EXPECT_EQ(H.centre_dim, 17u);
  std::vector<uint64_t> expected(13, 1);
  expected.insert(expected.end(), 4, 9);
  EXPECT_EQ(H.block_dims, expected);
  // Every epsilon is the identity of exactly one block, of the matching size.
  TTElem total = T.zero();
  for (const auto& info : simples(P, T.theta())) {
    const TTElem e = T.eps(info.label);
    total = T.add(total, e);
    int hits = 0;
    for (std::size_t i = 0; i < H.block_dims.size(); ++i)
      if (H.central_idempotents[i] == e) {
        ++hits;
        EXPECT_EQ(H.block_dims[i], info.degree == P.r ? 1u : P.r * P.r);
      }
    EXPECT_EQ(hits, 1) << simple_label_string(info.label);
  }
  EXPECT_EQ(total, T.unit());
}

TEST(Morita, HeadAlgebraEvenOrder) {
  const Params P = params_make(3, 5, 2);
  TwistedB0 T(P, {CharGroup::Z, 1});
  const HeadAlgebra H = head_algebra(T);
  std::vector<uint64_t> expected(9, 1);
  expected.insert(expected.end(), 4, 4);
  EXPECT_EQ(H.block_dims, expected);
}

TEST(Morita, ExtQuiverTable) {
  const Params P = params_make(2, 7, 3);
  TwistedB0 T(P, {CharGroup::Z, 1});
  const auto labels = labels_of(simples(P, T.theta()));
  const auto table = ext_quiver(T, labels);
  using K = SimpleLabel::Kind;
  auto family = [](const SimpleLabel& l) { return l.kind == K::Pair ? 2 : (l.kind == K::Right ? 1 : 0); };
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto &a = labels[i], &b = labels[j];
      SCOPED_TRACE(simple_label_string(a) + " -> " + simple_label_string(b));
      if (a.kind == K::Pair || b.kind == K::Pair) {
        if (i == j) {
          EXPECT_GE(table[i][j], 1u);
        }
        continue;
      }
      // (1,1) belongs to both the (phi,1) and (1,psi) families.
      const bool same = a.kind == K::One || b.kind == K::One || family(a) == family(b);
      EXPECT_EQ(table[i][j], same && i != j ? 1u : 0u);
    }
  // Invariance under the F_p^x relabelling.
  const uint64_t u1 = 3, u2 = 5;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto a = fp_relabel(P, u1, u2, labels[i]), b = fp_relabel(P, u1, u2, labels[j]);
      const auto ia = std::find(labels.begin(), labels.end(), a) - labels.begin();
      const auto ib = std::find(labels.begin(), labels.end(), b) - labels.begin();
      EXPECT_EQ(table[i][j], table[ia][ib]);
    }
  EXPECT_EQ(ext_dim(T, {K::Left, 2, 0}, {K::Left, 5, 0}), 1u);
  EXPECT_EQ(ext_dim(T, {K::Left, 2, 0}, {K::Left, 2, 0}), 0u);
  EXPECT_EQ(ext_dim(T, {K::Left, 2, 0}, {K::Right, 0, 3}), 0u);
}

TEST(Morita, FreeLoops) {
  EXPECT_EQ(free_loop(params_make(2, 7, 3)), (std::vector<uint64_t>{1, 6}));
  EXPECT_EQ(free_loop(params_make(3, 5, 2)), (std::vector<uint64_t>{1, 1, 3}));
}

TEST(Morita, PairingMatchesGroupRoute) {
  for (auto [ell, p, r] : {std::tuple{2, 7, 3}, std::tuple{3, 5, 2}}) {
    const Params P = params_make(ell, p, r);
    for (uint64_t j = 1; j < P.r; ++j) {
      if (std::gcd(j, P.r) != 1) continue;
      TwistedB0 T(P, {CharGroup::Z, j});
      const PairingTable table = commutation_pairing(T);
      EXPECT_EQ(table, pairing_from_group(P, T.theta()));
      EXPECT_EQ(table, commutation_pairing(T, 2, 3));
      for (uint64_t a = 0; a < P.r; ++a)
        for (uint64_t b = 0; b < P.r; ++b) {
          EXPECT_EQ(table.at(a, b), T.pairing(a, b));
          for (uint64_t a2 = 0; a2 < P.r; ++a2)
            EXPECT_EQ(table.at(a + a2, b), P.field().mul(table.at(a, b), table.at(a2, b)));
        }
      EXPECT_EQ(recover_theta(table, P), (std::set<uint64_t>{j, (P.r - j) % P.r}));
    }
  }
  const Params P = params_make(2, 7, 3);
  TwistedB0 T(P, {CharGroup::Z, 1});
  EXPECT_EQ(commutation_pairing(T).at(1, 1), P.zeta_r_pow[2]);
}

TEST(Morita, PairingSeparatesThetaAtOrderFive) {
  const Params P = params_make(2, 11, 5);
  TwistedB0 T1(P, {CharGroup::Z, 1}), T2(P, {CharGroup::Z, 2});
  const PairingTable c1 = commutation_pairing(T1), c2 = commutation_pairing(T2);
  EXPECT_EQ(c1, pairing_from_group(P, T1.theta()));
  EXPECT_EQ(c2, pairing_from_group(P, T2.theta()));
  EXPECT_EQ(recover_theta(c1, P), (std::set<uint64_t>{1, 4}));
  EXPECT_EQ(recover_theta(c2, P), (std::set<uint64_t>{2, 3}));
  EXPECT_FALSE(morita_equivalent(P, T1.theta(), T2.theta()));
}

TEST(Morita, RecoveryIsCompleteInvariant) {
  for (auto [ell, p, r] : {std::tuple{2, 7, 3}, std::tuple{2, 11, 5}, std::tuple{3, 5, 4}, std::tuple{3, 17, 8}, std::tuple{2, 19, 9}}) {
    const Params P = params_make(ell, p, r);
    for (uint64_t j = 1; j < P.r; ++j)
      for (uint64_t k = 1; k < P.r; ++k) {
        if (std::gcd(j, P.r) != 1 || std::gcd(k, P.r) != 1) continue;
        const auto sj = recover_theta(pairing_from_group(P, {CharGroup::Z, j}), P);
        const auto sk = recover_theta(pairing_from_group(P, {CharGroup::Z, k}), P);
        EXPECT_EQ(sj == sk, morita_equivalent(P, {CharGroup::Z, j}, {CharGroup::Z, k}));
      }
  }
  const Params P = params_make(3, 5, 2);
  EXPECT_EQ(recover_theta(pairing_from_group(P, {CharGroup::Z, 1}), P), (std::set<uint64_t>{1}));
  PairingTable bad{5, std::vector<FieldElem>(25, FieldElem{1})};
  EXPECT_THROW(recover_theta(bad, params_make(2, 11, 5)), Error);
  EXPECT_THROW(morita_equivalent(P, {CharGroup::Z, 0}, {CharGroup::Z, 1}), Error);
}

TEST(Morita, MfNumbers) {
  EXPECT_EQ(mf_number(2, 3), 1u);
  EXPECT_EQ(mf_number(2, 9), 3u);
  EXPECT_EQ(mf_number(2, 7), 3u);
  EXPECT_EQ(mf_number(3, 2), 1u);
  for (uint64_t n = 1; n <= 20; ++n) EXPECT_EQ(mf_number(2, (uint64_t{1} << n) + 1), n);
  for (uint64_t ell : {2, 3, 5})
    for (uint64_t r = 2; r <= 10000; ++r)
      if (std::gcd(ell, r) == 1) {
        ASSERT_EQ(mf_number(ell, r), mf_number_bruteforce(ell, r)) << ell << " " << r;
      }
  EXPECT_THROW(mf_number(2, 4), Error);
  EXPECT_THROW(mf_number(2, 1), Error);
}

TEST(Morita, ParamsForTarget) {
  auto check = [](uint64_t ell, uint64_t n, uint64_t r, uint64_t p) {
    const TargetParams t = params_for_target(ell, n);
    EXPECT_EQ(t.r, r);
    EXPECT_EQ(t.p, p);
    EXPECT_EQ(mf_number(ell, t.r), n);
    if (t.p <= 64) {
      EXPECT_NO_THROW(params_make(ell, t.p, t.r));
    }
  };
  check(2, 1, 3, 7);
  check(2, 2, 5, 11);
  check(2, 3, 9, 19);
  check(2, 4, 17, 103);
  for (uint64_t n = 1; n <= 6; ++n) EXPECT_EQ(mf_number(3, params_for_target(3, n).r), n);
  EXPECT_THROW(params_for_target(2, 0), Error);
}

TEST(Morita, FrobeniusTwistOfBlockIdempotents) {
  for (auto [ell, p, r] : {std::tuple{2, 7, 3}, std::tuple{3, 5, 2}, std::tuple{2, 11, 5}}) {
    const Params P = params_make(ell, p, r);
    for (uint64_t j = 1; j < P.r; ++j) {
      const Character theta{CharGroup::Z, j};
      EXPECT_EQ(ga_frobenius_twist(P, block_idempotent(P, theta)),
                block_idempotent(P, char_frob_power(P, theta, 1)));
    }
  }
}

TEST(Morita, SwapIsomorphism) {
  const Params P = params_make(2, 7, 3);
  std::mt19937_64 rng(21);
  EXPECT_EQ(swap_isomorphism(P, ga_one()), ga_one());
  for (int i = 0; i < 100; ++i) {
    const GAElem x = random_ga(P, rng, 3), y = random_ga(P, rng, 3);
    EXPECT_EQ(swap_isomorphism(P, ga_mul(P, x, y)), ga_mul(P, swap_isomorphism(P, x), swap_isomorphism(P, y)));
  }
  EXPECT_EQ(swap_isomorphism(P, block_idempotent(P, {CharGroup::Z, 1})), block_idempotent(P, {CharGroup::Z, 2}));
  TwistedB0 T(P, {CharGroup::Z, 1}), Tinv(P, {CharGroup::Z, 2});
  for (const auto& info : simples(P, T.theta())) {
    if (info.label.kind == SimpleLabel::Kind::Pair && info.label.phi != 1) continue;
    const GAElem image = swap_isomorphism(P, T.pi_inv(T.eps(info.label)));
    EXPECT_EQ(Tinv.pi_checked(image), Tinv.eps(swap_relabel(info.label))) << simple_label_string(info.label);
  }
}

TEST(Morita, FpAutomorphism) {
  const Params P = params_make(2, 7, 3);
  std::mt19937_64 rng(22);
  const GAElem x0 = random_ga(P, rng, 5);
  EXPECT_EQ(fp_automorphism(P, 1, 1, x0), x0);
  for (int i = 0; i < 100; ++i) {
    const GAElem x = random_ga(P, rng, 3), y = random_ga(P, rng, 3);
    EXPECT_EQ(fp_automorphism(P, 3, 5, ga_mul(P, x, y)),
              ga_mul(P, fp_automorphism(P, 3, 5, x), fp_automorphism(P, 3, 5, y)));
  }
  const Character theta{CharGroup::Z, 1};
  EXPECT_EQ(fp_automorphism(P, 3, 5, block_idempotent(P, theta)), block_idempotent(P, theta));
  TwistedB0 T(P, theta);
  for (const auto& info : simples(P, theta)) {
    if (info.label.kind == SimpleLabel::Kind::Pair && info.label.phi != 1) continue;
    const GAElem image = fp_automorphism(P, 3, 5, T.pi_inv(T.eps(info.label)));
    EXPECT_EQ(T.pi_checked(image), T.eps(fp_relabel(P, 3, 5, info.label))) << simple_label_string(info.label);
  }
  EXPECT_THROW(fp_automorphism(P, 0, 1, x0), Error);
}
