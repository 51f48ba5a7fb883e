#include <gtest/gtest.h>

#include "ramop/dual.hpp"
#include "ramop/ram.hpp"

using namespace ramop;
using namespace ramop::dual;

namespace {

struct DualFixture : ::testing::Test {
  static void SetUpTestSuite() { rho = std::make_unique<Rho>(make_rho()); }
  static void TearDownTestSuite() { rho.reset(); }
  static std::unique_ptr<Rho> rho;

  DualOperad& rs() { return rho->rstar(); }
  AlgebraElement ex(std::vector<Atom> vs, const std::string& text) {
    return AlgebraElement::parse(graph::r_signature(), std::move(vs), graph::Ambient::Forest, text);
  }
  operad::OperadElement el(const std::string& text) { return operad::OperadElement::parse(ram::signature(), text); }
  std::vector<LinearForm> dual_basis(const std::vector<Atom>& labels) {
    std::vector<LinearForm> out;
    for (linear::Index k = 0; k < rs().dim(labels); ++k) out.push_back({labels, {{k, 1}}});
    return out;
  }
  int h(const LinearForm& f) { return rs().basis_degree(f.labels, f.coords.front().col).h; }
};

std::unique_ptr<Rho> DualFixture::rho;

}  // namespace

TEST_F(DualFixture, DualGenerators) {
  const std::vector<Atom> v{1, 2};
  const auto one = rs().dual_basis_element(v, DualGenerator::one);
  const auto as = rs().dual_basis_element(v, DualGenerator::astar, 1, 2);
  const auto bs = rs().dual_basis_element(v, DualGenerator::bstar, 1, 2);
  EXPECT_EQ(rs().evaluate(one, AlgebraElement::unit(graph::r_signature(), v, graph::Ambient::Forest)), 1);
  EXPECT_EQ(rs().evaluate(as, ex(v, "a(1,2)")), 1);
  EXPECT_EQ(rs().evaluate(bs, ex(v, "b(1,2)")), 1);
  EXPECT_EQ(rs().evaluate(as, ex(v, "b(1,2)")), 0);
  EXPECT_EQ(rs().evaluate(as, ex(v, "a(2,1)")), -1);
  EXPECT_THROW(rs().dual_basis_element(v, DualGenerator::astar, 1, 3), UsageError);
}

TEST_F(DualFixture, ComposeExamples) {
  const auto f = rs().dual_basis_element({1, kStar}, DualGenerator::astar, 1, kStar);
  const auto g = rs().dual_basis_element({2, 3}, DualGenerator::bstar, 2, 3);
  const auto fg = rs().compose(f, g, kStar);
  EXPECT_EQ(fg.labels, (std::vector<Atom>{1, 2, 3}));
  EXPECT_EQ(rs().evaluate(fg, ex({1, 2, 3}, "a(1,2)*b(2,3)")), 1);
  EXPECT_EQ(rs().evaluate(fg, ex({1, 2, 3}, "b(2,3)*a(3,1)")), -1);
  const auto one = rs().compose(rs().dual_basis_element({1, kStar}, DualGenerator::one),
                                rs().dual_basis_element({2, 3}, DualGenerator::one), kStar);
  EXPECT_EQ(rs().evaluate(one, AlgebraElement::unit(graph::r_signature(), {1, 2, 3}, graph::Ambient::Forest)), 1);
  EXPECT_THROW(rs().compose(f, g, kHash), UsageError);
}

TEST_F(DualFixture, SequentialAssociativity) {
  for (const auto& f : dual_basis({1, kStar}))
    for (const auto& g : dual_basis({2, kHash}))
      for (const auto& k : dual_basis({3, 4}))
        EXPECT_EQ(rs().compose(rs().compose(f, g, kStar), k, kHash), rs().compose(f, rs().compose(g, k, kHash), kStar));
}

TEST_F(DualFixture, ParallelAxiom) {
  for (const auto& f : dual_basis({1, kStar, kHash}))
    for (const auto& g : dual_basis({2, 5}))
      for (const auto& k : dual_basis({3, 4})) {
        const auto lhs = rs().compose(rs().compose(f, g, kStar), k, kHash);
        auto rhs = rs().compose(rs().compose(f, k, kHash), g, kStar);
        if (koszul(h(g), h(k)) < 0)
          for (auto& e : rhs.coords) e.value = -e.value;
        EXPECT_EQ(lhs, rhs);
      }
}

TEST_F(DualFixture, RhoOnGenerators) {
  const std::vector<Atom> v{1, 2};
  EXPECT_EQ((*rho)(el("E(1,2)")), rs().dual_basis_element(v, DualGenerator::one));
  EXPECT_EQ((*rho)(el("L(1,2)")), rs().dual_basis_element(v, DualGenerator::astar, 1, 2));
  EXPECT_EQ((*rho)(el("W(1,2)")), rs().dual_basis_element(v, DualGenerator::bstar, 1, 2));
}

TEST_F(DualFixture, RhoKillsRelations) {
  const auto c = rho_relation_check(*rho);
  EXPECT_TRUE(c.pass) << c.witness;
  EXPECT_TRUE((*rho)(ram::relation("mixte")).coords.empty());
  EXPECT_TRUE((*rho)(ram::relation("jacobi")).coords.empty());
}

TEST_F(DualFixture, RhoPreservesBidegree) {
  auto& ram = rho->ram();
  const auto labels = standard_labels(3);
  const auto comp = ram.component(3);
  for (std::size_t k = 0; k < comp->dim(); ++k) {
    const auto f = (*rho)(operad::OperadElement::monomial(ram::signature(), comp->basis[k]));
    for (const auto& e : f.coords) EXPECT_EQ(rs().basis_degree(labels, e.col), comp->basis_degree[k]);
  }
}

TEST_F(DualFixture, ConjectureThroughFour) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto r = conjecture_verdict(*rho, n);
    EXPECT_TRUE(r.well_defined) << n << ": " << r.witness;
    EXPECT_TRUE(r.preserves_bidegree) << n;
    EXPECT_TRUE(r.dims_equal) << n;
    EXPECT_TRUE(r.isomorphism) << n;
  }
  const auto r2 = conjecture_verdict(*rho, 2);
  ASSERT_EQ(r2.blocks.size(), 3u);
  for (const auto& b : r2.blocks) EXPECT_EQ(b.rank, 1u);
  EXPECT_EQ(conjecture_verdict(*rho, 4).ideal_rows_checked, 258u);
}

TEST_F(DualFixture, Compatibility) {
  // Generator level: rho(D' L)(b) = <b*, b> = 1 and rho(L)(d' b) = <a*, a> = 1.
  const std::vector<Atom> v{1, 2};
  const auto dl = ram::differential(el("L(1,2)"), ram::Differential::Dprime);
  EXPECT_EQ(rs().evaluate((*rho)(dl), ex(v, "b(1,2)")), 1);
  EXPECT_EQ(rs().evaluate((*rho)(el("L(1,2)")), graph::differential(ex(v, "b(1,2)"), graph::GraphDifferential::dprime)), 1);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& c : compat_checks(*rho, n)) {
      EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
      if (n < 2) continue;
      if (c.name.find("intertwines_Dprime") != std::string::npos) {
        EXPECT_EQ(c.note, "global sign 1");
      } else if (c.name.find("intertwines_D_d") != std::string::npos) {
        EXPECT_EQ(c.note, "global sign -1");
      }
    }
}
