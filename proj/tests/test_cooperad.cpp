#include <gtest/gtest.h>

#include "ramop/cooperad.hpp"

using namespace ramop;
using namespace ramop::cooperad;
using graph::kA;
using graph::kB;

namespace {

const graph::GraphSignaturePtr& sig() { return graph::r_signature(); }

AlgebraElement ex(std::vector<Atom> vs, const std::string& text) {
  return AlgebraElement::parse(sig(), std::move(vs), Ambient::Forest, text);
}

GraphMonomial mono(std::vector<graph::Factor> w) {
  return graph::canonical_word(w, *sig(), Ambient::Full).monomial;
}

std::vector<Atom> with(std::vector<Atom> v, Atom a) {
  v.push_back(a);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Atom> join(std::vector<Atom> a, const std::vector<Atom>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// Factor exchange without the Koszul sign.
Tensor unsigned_swap(const Tensor& t, std::size_t k) {
  Tensor out{t.signature, t.mode, t.factors, {}};
  std::swap(out.factors[k], out.factors[k + 1]);
  for (const auto& [key, c] : t.terms) {
    auto nk = key;
    std::swap(nk[k], nk[k + 1]);
    out.add(nk, c);
  }
  return out;
}

}  // namespace

TEST(Theta, StraddlingEdge) {
  const auto t = theta({1}, {2, 3}, ex({1, 2, 3}, "a(1,2)*b(2,3)"));
  ASSERT_EQ(t.terms.size(), 1u);
  EXPECT_EQ(t.factors, (std::vector<std::vector<Atom>>{{1, kStar}, {2, 3}}));
  const auto& [key, c] = *t.terms.begin();
  EXPECT_EQ(key[0], mono({{1, kStar, kA}}));
  EXPECT_EQ(key[1], mono({{2, 3, kB}}));
  EXPECT_EQ(c, 1);
}

TEST(Theta, RepeatedStarEdgeVanishes) {
  EXPECT_TRUE(theta({1}, {2, 3}, ex({1, 2, 3}, "a(3,1)*b(1,2)")).is_zero());
}

TEST(Theta, Unit) {
  const auto t = theta({1, 2}, {3}, AlgebraElement::unit(sig(), {1, 2, 3}, Ambient::Forest));
  ASSERT_EQ(t.terms.size(), 1u);
  EXPECT_EQ(t.terms.begin()->first, (std::vector<GraphMonomial>{{}, {}}));
  EXPECT_THROW(theta({1}, {3}, ex({1, 2, 3}, "a(1,2)")), UsageError);
}

TEST(Theta, OrientationOfStraddlingEdge) {
  // b_{j,k} a_{k,i} with i in I: the a factor lands as a_{*,i} = -a_{i,*}.
  const auto t = theta({1}, {2, 3}, ex({1, 2, 3}, "b(2,3)*a(3,1)"));
  ASSERT_EQ(t.terms.size(), 1u);
  EXPECT_EQ(t.terms.begin()->second, -1);
}

TEST(Tensor, ProductSign) {
  Tensor x{sig(), Ambient::Full, {{1, 2}, {3, 4}}, {}}, y = x;
  x.add({{}, mono({{3, 4, kB}})}, 1);
  y.add({mono({{1, 2, kB}}), {}}, 1);
  const auto p = x * y;
  ASSERT_EQ(p.terms.size(), 1u);
  EXPECT_EQ(p.terms.begin()->second, -1);
  const auto q = y * x;
  EXPECT_EQ(q.terms.begin()->second, 1);
}

TEST(Theta, SwapIsKoszulSigned) {
  Tensor t{sig(), Ambient::Full, {{1, 2}, {3, 4}}, {}};
  t.add({mono({{1, 2, kB}}), mono({{3, 4, kB}})}, 1);
  EXPECT_EQ(swap_factors(t, 0).terms.begin()->second, -1);
}

TEST(Cooperad, GeneratorExample) {
  // I={1}, J={2}, K={3}, x = a_{1,3}: both sides are a_{1,*} (x) 1 (x) 1.
  GraphQuotient q(graph::r_presentation());
  TensorReducer red(q);
  const auto x = ex({1, 2, 3}, "a(1,3)");
  const std::vector<Atom> I{1}, J{2}, K{3};
  const auto lhs = theta_on_factor(theta(join(I, J), K, x, kHash), 0, I, with(J, kHash), kStar);
  const auto rhs = theta_on_factor(theta(I, join(J, K), x, kStar), 1, J, K, kHash);
  EXPECT_EQ(red.reduce(lhs), red.reduce(rhs));
  ASSERT_EQ(lhs.terms.size(), 1u);
  EXPECT_EQ(lhs.terms.begin()->first[0], mono({{1, kStar, kA}}));
  EXPECT_EQ(lhs.terms.begin()->first[1], GraphMonomial{});
}

TEST(Cooperad, WorkedRelationCases) {
  GraphQuotient q(graph::r_presentation());
  TensorReducer red(q);
  const auto v4 = standard_labels(4);
  EXPECT_TRUE(red.reduce(theta({1, 2}, {3, 4}, graph::relbab(v4, Ambient::Full, 1, 2, 3, 4))).empty());
  EXPECT_TRUE(red.reduce(theta({1, 2}, {3, 4}, graph::relbbb(v4, Ambient::Full, 1, 2, 3, 4))).empty());
  const auto v3 = standard_labels(3);
  for (Atom i : v3) {
    std::vector<Atom> J;
    for (Atom a : v3)
      if (a != i) J.push_back(a);
    EXPECT_TRUE(red.reduce(theta({i}, J, graph::relab(v3, Ambient::Full, 1, 2, 3))).empty());
  }
  EXPECT_TRUE(red.reduce(theta({}, v3, graph::relaa(v3, Ambient::Full, 1, 2, 3))).empty());
}

TEST(Cooperad, RelationsKilledThroughFour) {
  GraphQuotient q(graph::r_presentation());
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto c = theta_relation_check(q, n);
    EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
  }
}

TEST(Cooperad, AxiomsThroughFour) {
  GraphQuotient q(graph::r_presentation());
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& c : cooperad_axiom_check(q, n)) {
      EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
      EXPECT_GT(c.checked, 0u);
    }
}

TEST(Cooperad, UnsignedTauBreaksSecondAxiom) {
  GraphQuotient q(graph::r_presentation());
  TensorReducer red(q);
  const auto v4 = standard_labels(4);
  const std::vector<Atom> I{}, J{1, 2}, K{3, 4};
  const auto x = ex(v4, "b(1,2)*b(3,4)");
  const auto lhs = theta_on_factor(theta(join(I, J), K, x, kHash), 0, with(I, kHash), J, kStar);
  const auto inner = theta_on_factor(theta(join(I, K), J, x, kStar), 0, with(I, kStar), K, kHash);
  EXPECT_EQ(red.reduce(lhs), red.reduce(swap_factors(inner, 1)));
  EXPECT_NE(red.reduce(lhs), red.reduce(unsigned_swap(inner, 1)));
}

TEST(Cooperad, DifferentialsAndMorphism) {
  GraphQuotient q(graph::r_presentation());
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& c : theta_differential_check(q, n)) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
    const auto m = theta_morphism_check(q, n, n == 4 ? 3 : 1);
    EXPECT_TRUE(m.pass) << m.name << ": " << m.witness;
  }
}

TEST(Cooperad, BidegreePreserved) {
  GraphQuotient q(graph::r_presentation());
  const auto v3 = standard_labels(3);
  for (std::size_t k = 0; k < q.component(3)->dim(); ++k) {
    const auto x = q.basis_element(v3, k);
    const auto d = x.degrees().front();
    for (const auto& [I, J] : splits(v3, false))
      for (const auto& [key, c] : theta(I, J, x).terms) {
        const auto total = graph::degree(key[0], *sig()) + graph::degree(key[1], *sig());
        EXPECT_EQ(total, d);
      }
  }
}
