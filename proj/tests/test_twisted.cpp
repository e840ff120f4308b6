#include <gtest/gtest.h>

#include <random>

#include "mfblocks/twisted.hpp"

using namespace mfb;

namespace {

QuivAElem random_qa(const QuiverAlgebra& Q, std::mt19937_64& rng, int terms) {
  const auto& F = Q.field();
  QuivAElem u = Q.zero();
  for (int i = 0; i < terms; ++i) u.accumulate(F, rng() % Q.dim(), F.element(1 + rng() % (F.order() - 1)));
  return u;
}

TTElem random_tt(const TwistedB0& T, std::mt19937_64& rng, int terms) {
  const auto& F = T.field();
  TTElem t = T.zero();
  for (int i = 0; i < terms; ++i) t.accumulate(F, rng() % T.label_count(), F.element(1 + rng() % (F.order() - 1)));
  return t;
}

class TwistedTest : public ::testing::TestWithParam<std::tuple<uint64_t, uint64_t, uint64_t, uint64_t>> {
 protected:
  void SetUp() override {
    auto [ell, p, r, j] = GetParam();
    P = params_make(ell, p, r);
    T = std::make_unique<TwistedB0>(P, Character{CharGroup::Z, j});
  }
  Params P;
  std::unique_ptr<TwistedB0> T;
};

}  // namespace

TEST_P(TwistedTest, PairingMatchesClosedForm) {
  // [g_1^a, g_2^b] = g_z^{ab}, h_{chi,1} = g_2^{-chi/j} and h_{eta,2} = g_1^{eta/j}, so c = zeta^{-chi eta/j}.
  const uint64_t r = P.r, j = T->theta().e;
  const uint64_t jinv = nt::inverse_mod(j, r);
  for (uint64_t chi = 0; chi < r; ++chi)
    for (uint64_t eta = 0; eta < r; ++eta) {
      EXPECT_EQ(T->h(1, chi), h_element_closed_form(P, T->theta(), {CharGroup::L1, chi}));
      EXPECT_EQ(T->h(2, eta), h_element_closed_form(P, T->theta(), {CharGroup::L2, eta}));
      const uint64_t e = (r - chi * eta % r * jinv % r) % r;
      EXPECT_EQ(T->pairing(chi, eta), P.zeta_r_pow[e]);
    }
}

TEST_P(TwistedTest, IotaFormulasAgree) {
  std::mt19937_64 rng(11);
  for (int side : {1, 2}) {
    const QuiverAlgebra& Q = T->q(side);
    std::vector<QuivAElem> samples;
    for (uint64_t psi = 0; psi < P.p; ++psi) {
      samples.push_back(Q.vertex(psi));
      samples.push_back(Q.arrow(psi, 1 + psi % (P.p - 1)));
    }
    for (int i = 0; i < 6; ++i) samples.push_back(random_qa(Q, rng, 3));
    for (const auto& a : samples)
      EXPECT_TRUE(T->block().equal(T->iota_block(side, a), T->iota_alt_block(side, a)));
  }
}

TEST_P(TwistedTest, IotaIsHomomorphismIntoCentralizer) {
  std::mt19937_64 rng(12);
  const BlockAlgebra& B = T->block();
  for (int side : {1, 2}) {
    const QuiverAlgebra& Q = T->q(side);
    EXPECT_TRUE(B.equal(T->iota_block(side, Q.unit()), B.unit()));
    for (int i = 0; i < 6; ++i) {
      const QuivAElem a = random_qa(Q, rng, 3), b = random_qa(Q, rng, 3);
      const BlockElem ia = T->iota_block(side, a);
      EXPECT_TRUE(B.equal(B.mul(ia, T->iota_block(side, b)), T->iota_block(side, Q.mul(a, b))));
      EXPECT_TRUE(B.centralizes_H(ia));
    }
  }
}

TEST_P(TwistedTest, PiInvertsIotaProducts) {
  std::mt19937_64 rng(13);
  const BlockAlgebra& B = T->block();
  for (int i = 0; i < 8; ++i) {
    const QuivAElem a = random_qa(T->q(1), rng, 2), b = random_qa(T->q(2), rng, 2);
    const BlockElem x = B.mul(T->iota_block(1, a), T->iota_block(2, b));
    EXPECT_EQ(T->pi(x), T->tensor(a, b));
  }
  const TTElem t = random_tt(*T, rng, 3);
  EXPECT_EQ(T->pi(T->pi_inv_block(t)), t);
  EXPECT_EQ(T->pi(block_idempotent(P, T->theta())), T->unit());
}

TEST_P(TwistedTest, ProductMatchesBlockMultiplication) {
  std::mt19937_64 rng(14);
  const BlockAlgebra& B = T->block();
  for (int i = 0; i < 6; ++i) {
    const TTElem x = random_tt(*T, rng, 1 + i % 2), y = random_tt(*T, rng, 1 + (i / 2) % 2);
    const BlockElem prod = B.mul(T->pi_inv_block(x), T->pi_inv_block(y));
    EXPECT_EQ(T->pi(prod), T->mul(x, y));
    EXPECT_TRUE(B.equal(prod, T->pi_inv_block(T->mul(x, y))));
  }
}

TEST_P(TwistedTest, ProductIsAssociativeWithUnit) {
  std::mt19937_64 rng(15);
  const TTElem one = T->unit();
  for (int i = 0; i < 5; ++i) {
    const TTElem x = random_tt(*T, rng, 3), y = random_tt(*T, rng, 3), z = random_tt(*T, rng, 3);
    EXPECT_EQ(T->mul(T->mul(x, y), z), T->mul(x, T->mul(y, z)));
    EXPECT_EQ(T->mul(one, x), x);
    EXPECT_EQ(T->mul(x, one), x);
  }
}

TEST_P(TwistedTest, IdempotentsAreOrthogonalAndComplete) {
  std::vector<SimpleLabel> labels{{SimpleLabel::Kind::One, 0, 0}};
  for (uint64_t s = 1; s < P.p; ++s) {
    labels.push_back({SimpleLabel::Kind::Left, s, 0});
    labels.push_back({SimpleLabel::Kind::Right, 0, s});
  }
  for (uint64_t a = 1; a < P.p; ++a)
    for (uint64_t b = 1; b < P.p; ++b)
      if (orbit_rep(P, a) == a && orbit_rep(P, b) == b) labels.push_back({SimpleLabel::Kind::Pair, a, b});
  TTElem total = T->zero();
  for (const auto& l : labels) {
    const TTElem e = T->eps(l);
    total = T->add(total, e);
    for (const auto& m : labels) {
      const TTElem prod = T->mul(e, T->eps(m));
      if (l == m) {
        EXPECT_EQ(prod, e) << simple_label_string(l);
      } else {
        EXPECT_TRUE(prod.is_zero()) << simple_label_string(l) << " " << simple_label_string(m);
      }
    }
  }
  EXPECT_EQ(total, T->unit());
  EXPECT_THROW(T->eps({SimpleLabel::Kind::Left, 0, 0}), Error);
  if (P.r > 1) {
    uint64_t nonrep = 1;
    while (orbit_rep(P, nonrep) == nonrep) ++nonrep;
    EXPECT_THROW(T->eps({SimpleLabel::Kind::Pair, nonrep, 1}), Error);
  }
}

TEST_P(TwistedTest, ArrowsConnectVertices) {
  const SimpleLabel one{SimpleLabel::Kind::One, 0, 0};
  for (uint64_t s = 1; s < P.p; ++s) {
    const TTElem a1 = T->arrow(1, 0, s), a2 = T->arrow(2, 0, s);
    EXPECT_EQ(T->mul(T->mul(T->eps(one), a1), T->eps({SimpleLabel::Kind::Left, s, 0})), a1);
    EXPECT_EQ(T->mul(T->mul(T->eps(one), a2), T->eps({SimpleLabel::Kind::Right, 0, s})), a2);
    EXPECT_EQ(T->radical_degree(a1), 1u);
  }
  EXPECT_THROW(T->arrow(1, 0, 0), Error);
}

TEST_P(TwistedTest, RadicalDegreeIsSuperadditive) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 20; ++i) {
    const TTElem x = random_tt(*T, rng, 2), y = random_tt(*T, rng, 2);
    const TTElem xy = T->mul(x, y);
    if (!xy.is_zero()) {
      EXPECT_GE(T->radical_degree(xy), T->radical_degree(x) + T->radical_degree(y));
    }
  }
  EXPECT_THROW(T->radical_degree(T->zero()), Error);
}

TEST_P(TwistedTest, TildeElementsLieInRadicalSquare) {
  for (int side : {1, 2})
    for (uint64_t w = 0; w < P.r; ++w) {
      const TTElem t = T->tilde(side, 1, w);
      if (P.r % 2 == 1 || w == 0) {
        ASSERT_FALSE(t.is_zero());
        EXPECT_EQ(T->radical_degree(t), 2u);
      } else {
        // -1 lies in L_i, so the loop phi, phi^{-1} is L-stable and the
        // nontrivial isotypic parts cancel.
        EXPECT_TRUE(t.is_zero());
      }
    }
  EXPECT_THROW(T->tilde(1, 0, 0), Error);
  EXPECT_THROW(T->tilde_loop(1, {1, 1}, 0), Error);
}

TEST_P(TwistedTest, PiRejectsElementsOutsideB0) {
  EXPECT_THROW(T->pi_checked(ga_basis(gen_g1(P))), Error);
  const GAElem n = T->block().to_group_algebra(T->block().from_group_algebra(ga_basis(p_elem(P, 1, 1))));
  EXPECT_THROW(T->pi_checked(n), Error);
  const GAElem ok = T->iota(1, T->q(1).arrow(0, 1));
  EXPECT_EQ(T->pi_checked(ok), T->tensor(T->q(1).arrow(0, 1), T->q(2).unit()));
}

INSTANTIATE_TEST_SUITE_P(Configs, TwistedTest,
                         ::testing::Values(std::make_tuple(2, 7, 3, 1), std::make_tuple(2, 7, 3, 2),
                                           std::make_tuple(3, 5, 2, 1)));

TEST(Twisted, RejectsNonFaithfulTheta) {
  auto P = params_make(2, 7, 3);
  EXPECT_THROW(TwistedB0(P, Character{CharGroup::Z, 0}), Error);
  EXPECT_THROW(TwistedB0(P, Character{CharGroup::L1, 1}), Error);
}

TEST(Twisted, EvenOrderLoopFallback) {
  auto P = params_make(3, 5, 2);
  TwistedB0 T(P, Character{CharGroup::Z, 1});
  const TTElem t = T.tilde_loop(1, {1, 1, 3}, 1);
  ASSERT_FALSE(t.is_zero());
  EXPECT_EQ(T.radical_degree(t), 3u);
}
