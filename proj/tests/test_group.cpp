#include <gtest/gtest.h>

#include <map>
#include <random>

#include "mfblocks/group.hpp"

using namespace mfb;

namespace {

GroupElem random_elem(const Params& P, std::mt19937_64& rng) {
  std::vector<uint32_t> v1(P.p), v2(P.p);
  for (auto& e : v1) e = static_cast<uint32_t>(rng() % P.ell);
  for (auto& e : v2) e = static_cast<uint32_t>(rng() % P.ell);
  return from_coordinates(P, v1, rng() % P.p, v2, rng() % P.p, rng() % P.r, rng() % P.r, rng() % P.r);
}

// Independent model of G as permutations of a finite set. G acts on the
// cosets of nothing in particular; we use the faithful action of N x| H on
// N x H given by left multiplication, computed from the defining actions
// written directly in terms of coordinate vectors.
struct Model {
  const Params& P;
  // Element as full data: vectors over all p indices (not normalised), P and H parts.
  struct E {
    std::vector<int64_t> v1, v2;
    int64_t x1, x2, a, b, c;
  };
  E from(const GroupElem& g) const {
    E e;
    auto w1 = d_vector(P, g, 1), w2 = d_vector(P, g, 2);
    e.v1.assign(w1.begin(), w1.end());
    e.v2.assign(w2.begin(), w2.end());
    e.x1 = g.x1;
    e.x2 = g.x2;
    e.a = g.a;
    e.b = g.b;
    e.c = g.c;
    return e;
  }
  GroupElem to(const E& e) const {
    std::vector<uint32_t> w1(P.p), w2(P.p);
    const auto L = static_cast<int64_t>(P.ell);
    for (uint64_t k = 0; k < P.p; ++k) {
      w1[k] = static_cast<uint32_t>(((e.v1[k] % L) + L) % L);
      w2[k] = static_cast<uint32_t>(((e.v2[k] % L) + L) % L);
    }
    const auto p = static_cast<int64_t>(P.p), r = static_cast<int64_t>(P.r);
    auto md = [](int64_t x, int64_t m) { return static_cast<uint64_t>(((x % m) + m) % m); };
    return from_coordinates(P, w1, md(e.x1, p), w2, md(e.x2, p), md(e.a, r), md(e.b, r), md(e.c, r));
  }
  // Right action of y in P_i on a D_i vector: (d^k)^y = d^{k+y}.
  std::vector<int64_t> translate(const std::vector<int64_t>& v, int64_t y) const {
    std::vector<int64_t> out(P.p);
    for (uint64_t k = 0; k < P.p; ++k) out[(k + static_cast<uint64_t>(y)) % P.p] = v[k];
    return out;
  }
  // Right action of g0^t: (d^k)^{g} = d^{g0^t k}.
  std::vector<int64_t> dilate(const std::vector<int64_t>& v, uint64_t t) const {
    std::vector<int64_t> out(P.p);
    const uint64_t s = P.g0_pow[t % P.r];
    for (uint64_t k = 0; k < P.p; ++k) out[s * k % P.p] = v[k];
    return out;
  }
  // Product written with explicit moves: d x h d' x' h' = d (x h d' h^{-1} x^{-1}) x (h x' h^{-1}) h h'.
  E mul(const E& g, const E& h) const {
    const auto r = static_cast<int64_t>(P.r), p = static_cast<int64_t>(P.p);
    // h d' h^{-1} = (d')^{h^{-1}}: dilate by g0^{-a}.
    auto d1 = dilate(h.v1, static_cast<uint64_t>((r - g.a % r) % r));
    auto d2 = dilate(h.v2, static_cast<uint64_t>((r - g.b % r) % r));
    const int64_t x1 = h.x1 * static_cast<int64_t>(P.g0_pow[(r - g.a % r) % r]) % p;
    const int64_t x2 = h.x2 * static_cast<int64_t>(P.g0_pow[(r - g.b % r) % r]) % p;
    // x d x^{-1} = d^{x^{-1}}: translate by -x.
    d1 = translate(d1, (p - g.x1 % p) % p);
    d2 = translate(d2, (p - g.x2 % p) % p);
    E out;
    out.v1.resize(P.p);
    out.v2.resize(P.p);
    for (uint64_t k = 0; k < P.p; ++k) {
      out.v1[k] = g.v1[k] + d1[k];
      out.v2[k] = g.v2[k] + d2[k];
    }
    out.x1 = g.x1 + x1;
    out.x2 = g.x2 + x2;
    // g_2^b g_1^{a'} = g_1^{a'} g_2^b [g_2^{-b}, g_1^{-a'}] and [g_1, g_2] = g_z.
    out.a = g.a + h.a;
    out.b = g.b + h.b;
    out.c = g.c + h.c - h.a * g.b;
    return out;
  }
};

class GroupTest : public ::testing::TestWithParam<std::tuple<uint64_t, uint64_t, uint64_t>> {};

}  // namespace

TEST(Params, DerivedDegrees) {
  auto P = params_make(2, 7, 3);
  EXPECT_EQ(P.d, 6u);
  EXPECT_EQ(P.g0, 2u);
  EXPECT_EQ(P.d_size, 64u);
  EXPECT_EQ(P.a_size(), 448u);
  auto Q = params_make(3, 5, 2);
  EXPECT_EQ(Q.d, 4u);
  EXPECT_EQ(Q.g0, 4u);
  auto R = params_make(2, 11, 5);
  EXPECT_EQ(R.d, 20u);
  for (const Params* X : {&P, &Q, &R}) {
    EXPECT_EQ(nt::multiplicative_order(X->g0, X->p), X->r);
    const auto& F = X->field();
    EXPECT_NE(X->zeta_p, F.one());
    EXPECT_EQ(F.pow(X->zeta_p, X->p), F.one());
    EXPECT_NE(X->zeta_r, F.one());
    EXPECT_EQ(F.pow(X->zeta_r, X->r), F.one());
  }
}

TEST(Params, Errors) {
  EXPECT_THROW(params_make(2, 7, 2), Error);   // ell | r
  EXPECT_THROW(params_make(4, 7, 3), Error);   // ell not prime
  EXPECT_THROW(params_make(2, 9, 2), Error);   // p not prime
  EXPECT_THROW(params_make(7, 7, 3), Error);   // p = ell
  EXPECT_THROW(params_make(2, 7, 1), Error);   // r = 1
  EXPECT_THROW(params_make(2, 7, 5), Error);   // r does not divide p - 1
  try {
    params_make(2, 7, 2);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("ell divides r"), std::string::npos);
  }
}

TEST(Group, HPresentation) {
  for (uint64_t r : {2ULL, 3ULL, 5ULL, 9ULL}) {
    const uint64_t p = r == 9 ? 19 : (r == 5 ? 11 : 7);
    const uint64_t ell = r == 9 ? 5 : (r == 2 ? 3 : 2);
    if (r == 2) continue;
    auto P = params_make(ell, p, r);
    const auto H = subgroup_elements(P, SubgroupTag::H);
    EXPECT_EQ(H.size(), r * r * r);
    const GroupElem g1 = gen_g1(P), g2 = gen_g2(P), gz = gen_gz(P), e = group_identity();
    EXPECT_EQ(commutator(P, g1, gz), e);
    EXPECT_EQ(commutator(P, g2, gz), e);
    EXPECT_EQ(commutator(P, g1, g2), gz);
    for (const auto& h : H) EXPECT_EQ(group_pow(P, h, r), e);
    // Centre of H is Z and contains [H, H].
    for (const auto& h : H) {
      bool central = true;
      for (const auto& k : H) central = central && group_mul(P, h, k) == group_mul(P, k, h);
      EXPECT_EQ(central, h.a == 0 && h.b == 0);
      for (const auto& k : H) EXPECT_TRUE(commutator(P, h, k).a == 0 && commutator(P, h, k).b == 0);
    }
  }
  auto Q = params_make(3, 5, 2);
  EXPECT_EQ(subgroup_elements(Q, SubgroupTag::H).size(), 8u);
}

TEST(Group, GeneratorProductsAtR3) {
  auto P = params_make(2, 7, 3);
  const GroupElem g12 = group_mul(P, gen_g1(P), gen_g2(P));
  const GroupElem g21 = group_mul(P, gen_g2(P), gen_g1(P));
  EXPECT_EQ(std::tie(g12.a, g12.b, g12.c), std::make_tuple(1u, 1u, 0u));
  EXPECT_EQ(std::tie(g21.a, g21.b, g21.c), std::make_tuple(1u, 1u, 2u));
  EXPECT_EQ(group_inv(P, gen_gz(P)), h_elem(P, 0, 0, 2));
}

TEST(Group, ConjugationOfGenerators) {
  auto P = params_make(2, 7, 3);
  const GroupElem g1 = gen_g1(P);
  EXPECT_EQ(conjugate(P, d_elem(P, 1, 1), g1), d_elem(P, 1, P.g0));
  EXPECT_EQ(conjugate(P, d_elem(P, 1, 0), g1), d_elem(P, 1, 0));
  EXPECT_EQ(conjugate(P, p_elem(P, 1, 1), g1), p_elem(P, 1, P.g0));
  EXPECT_EQ(conjugate(P, d_elem(P, 1, 2), p_elem(P, 1, 3)), d_elem(P, 1, 5));
  EXPECT_EQ(conjugate(P, gen_gz(P), d_elem(P, 2, 4)), gen_gz(P));
}

TEST_P(GroupTest, LawsAndModel) {
  auto [ell, p, r] = GetParam();
  auto P = params_make(ell, p, r);
  Model M{P};
  std::mt19937_64 rng(ell * 1000 + p * 10 + r);
  const GroupElem e = group_identity();
  for (int i = 0; i < 3000; ++i) {
    const GroupElem x = random_elem(P, rng), y = random_elem(P, rng), z = random_elem(P, rng);
    ASSERT_EQ(group_mul(P, group_mul(P, x, y), z), group_mul(P, x, group_mul(P, y, z)));
    ASSERT_EQ(group_mul(P, x, e), x);
    ASSERT_EQ(group_mul(P, e, x), x);
    ASSERT_EQ(group_mul(P, x, group_inv(P, x)), e);
    ASSERT_EQ(group_mul(P, group_inv(P, x), x), e);
    ASSERT_EQ(conjugate(P, conjugate(P, x, y), group_inv(P, y)), x);
    ASSERT_EQ(group_mul(P, x, y), M.to(M.mul(M.from(x), M.from(y))));
  }
}

TEST_P(GroupTest, ActionKernelIsZ) {
  auto [ell, p, r] = GetParam();
  auto P = params_make(ell, p, r);
  const std::vector<GroupElem> ngens = {d_elem(P, 1, 0), d_elem(P, 1, 1), p_elem(P, 1, 1),
                                        d_elem(P, 2, 0), d_elem(P, 2, 1), p_elem(P, 2, 1)};
  for (const auto& h : subgroup_elements(P, SubgroupTag::H)) {
    bool trivial = true;
    for (const auto& n : ngens) trivial = trivial && conjugate(P, n, h) == n;
    EXPECT_EQ(trivial, h.a == 0 && h.b == 0) << h.a << h.b << h.c;
  }
  // L_i acts trivially on the other factor.
  for (const auto& n : {d_elem(P, 2, 1), p_elem(P, 2, 1)}) EXPECT_EQ(conjugate(P, n, gen_g1(P)), n);
  for (const auto& n : {d_elem(P, 1, 1), p_elem(P, 1, 1)}) EXPECT_EQ(conjugate(P, n, gen_g2(P)), n);
}

TEST_P(GroupTest, LocalGroupTables) {
  auto [ell, p, r] = GetParam();
  auto P = params_make(ell, p, r);
  for (int side : {1, 2}) {
    LocalGroup N(P, side);
    std::mt19937_64 rng(side);
    for (int i = 0; i < 2000; ++i) {
      const uint64_t a = rng() % N.size(), b = rng() % N.size();
      ASSERT_EQ(N.element(N.mul(a, b)), group_mul(P, N.element(a), N.element(b)));
      ASSERT_EQ(N.index_of(N.element(a)), a);
      const uint64_t t = rng() % r;
      ASSERT_EQ(N.element(N.conj(a, t)), conjugate(P, N.element(a), group_pow(P, side == 1 ? gen_g1(P) : gen_g2(P), t)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Configs, GroupTest,
                         ::testing::Values(std::make_tuple(2ULL, 7ULL, 3ULL), std::make_tuple(3ULL, 5ULL, 2ULL),
                                           std::make_tuple(2ULL, 11ULL, 5ULL)));

TEST(Group, SubgroupEnumeration) {
  auto P = params_make(2, 7, 3);
  EXPECT_EQ(subgroup_elements(P, SubgroupTag::Z).size(), 3u);
  EXPECT_EQ(subgroup_elements(P, SubgroupTag::D1).size(), 64u);
  EXPECT_EQ(subgroup_elements(P, SubgroupTag::N2).size(), 448u);
  EXPECT_THROW(subgroup_elements(P, SubgroupTag::G), Error);
  EXPECT_EQ(parse_subgroup_tag("L2"), SubgroupTag::L2);
  EXPECT_THROW(parse_subgroup_tag("Q"), Error);
}
