#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ramop/ram.hpp"
#include "ramop/ramanujan.hpp"

using namespace ramop;
using namespace ramop::operad;

namespace {

OperadElement el(const std::string& text) { return OperadElement::parse(ram::signature(), text); }
TreeMonomial tr(const std::string& text) { return parse_tree(text, *ram::signature()); }

// Axis of psi_n: coefficients of y^k at (0,k), or of x^i at (i,i).
DimTable axis(std::size_t n, bool x_axis) {
  DimTable out;
  const auto p = ramanujan::psi(n);
  for (const auto& [e, c] : p.coeffs) {
    if (x_axis && e.second == 0) out[{e.first, e.first}] = c.get_ui();
    if (!x_axis && e.first == 0) out[{0, e.second}] = c.get_ui();
  }
  return out;
}

std::vector<std::map<Atom, Atom>> permutations_of(const std::vector<Atom>& labels) {
  std::vector<std::map<Atom, Atom>> out;
  auto p = labels;
  do {
    std::map<Atom, Atom> phi;
    for (std::size_t k = 0; k < labels.size(); ++k) phi[labels[k]] = p[k];
    out.push_back(phi);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST(Presentation, Shapes) {
  const auto ram = ram::presentation("ram");
  EXPECT_EQ(ram.generators.size(), 3u);
  EXPECT_EQ(ram.relations.size(), 5u);
  const auto sg = ram::presentation("sgriess");
  EXPECT_EQ(sg.generators.size(), 1u);
  EXPECT_TRUE(sg.relations.empty());
  const auto poisson = ram::presentation("poisson");
  EXPECT_EQ(poisson.generators.size(), 2u);
  EXPECT_EQ(poisson.relations.size(), 3u);
  EXPECT_THROW(ram::presentation("nope"), UsageError);
  EXPECT_NE(ram.hash(), poisson.hash());
}

TEST(RamDims, SmallArities) {
  auto q = ram::make_quotient("ram");
  EXPECT_EQ(ram::ram_dims(*q, 1), (DimTable{{{0, 0}, 1}}));
  EXPECT_EQ(ram::ram_dims(*q, 2), (DimTable{{{0, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}));
  EXPECT_EQ(ram::ram_dims(*q, 3),
            (DimTable{{{0, 0}, 1}, {{0, 1}, 3}, {{0, 2}, 2}, {{1, 1}, 3}, {{1, 2}, 5}, {{2, 2}, 3}}));
}

TEST(RamDims, MatchRamanujanThroughFour) {
  auto q = ram::make_quotient("ram");
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(ram::ram_dims(*q, n), ramanujan::predicted_dims(n)) << n;
}

TEST(RamDims, ResourceBound) {
  auto q = ram::make_quotient("ram", Limits{3, 1'000'000});
  EXPECT_THROW(q->component(4), ResourceError);
  auto tight = ram::make_quotient("ram", Limits{5, 20});
  EXPECT_THROW(tight->component(4), ResourceError);
}

TEST(SubOperads, PoissonAndBessel) {
  auto poisson = ram::make_quotient("poisson");
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(poisson->component(n)->dims, axis(n, false)) << n;
  const std::vector<std::size_t> totals{1, 2, 6, 24, 120};
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(poisson->component(n)->dim(), totals[n - 1]);
  auto bessel = ram::make_quotient("bessel");
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(bessel->component(n)->dims, axis(n, true)) << n;
}

TEST(Distributive, Factorization) {
  auto q = ram::make_quotient("ram");
  auto lg = ram::make_quotient("liegriess");
  EXPECT_EQ(lg->component(3)->dim(), 10u);
  EXPECT_EQ(lg->component(3)->ambient.size(), 12u);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto r = ram::distributive_check(*q, *lg, n);
    EXPECT_TRUE(r.pass) << n;
    EXPECT_EQ(r.direct, r.factorized);
  }
  EXPECT_EQ(total(ram::distributive_check(*q, *lg, 3).factorized), 17u);
  EXPECT_EQ(ram::set_partition_block_sizes(3).size(), 5u);
}

// Every ideal element of arity 4 is a relation grafted into a generator or a
// generator grafted into a relation. Build that set directly and compare.
TEST(Ideal, DirectContextEnumerationAtArityFour) {
  auto q = ram::make_quotient("ram");
  const auto& sig = ram::signature();
  const auto labels = standard_labels(4);
  const auto comp = q->component(4);
  std::vector<OperadElement> direct;
  for (const auto& rel : q->presentation().relations) {
    for (Atom l : labels) {
      std::vector<Atom> rest;
      for (Atom a : labels)
        if (a != l) rest.push_back(a);
      for (const auto& phi : permutations_of({1, 2, 3})) {
        std::map<Atom, Atom> to;
        for (const auto& [a, b] : phi) to[a] = rest[b - 1];
        const auto r = relabel(rel, to);
        for (int g = 0; g < 3; ++g) {
          const auto ctx = OperadElement::monomial(sig, node(g, leaf(l), leaf(kStar)));
          direct.push_back(compose(ctx, r, kStar));
        }
      }
    }
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) {
        std::vector<Atom> others;
        for (Atom x : labels)
          if (x != labels[a] && x != labels[b]) others.push_back(x);
        others.push_back(kStar);
        for (const auto& phi : permutations_of({1, 2, 3})) {
          std::map<Atom, Atom> to;
          for (const auto& [x, y] : phi) to[x] = others[y - 1];
          const auto r = relabel(rel, to);
          for (int g = 0; g < 3; ++g)
            direct.push_back(
                compose(r, OperadElement::monomial(sig, node(g, leaf(labels[a]), leaf(labels[b]))), kStar));
        }
      }
  }
  linear::EchelonBuilder built(static_cast<linear::Index>(comp->ambient.size()));
  for (const auto& x : direct) {
    built.add(comp->ambient_vector(x));
    EXPECT_TRUE(q->normal_form(x).empty());
  }
  EXPECT_EQ(built.rank(), comp->ideal_rank());
}

TEST(Coproduct, Generators) {
  const auto e = ram::coproduct(el("E(1,2)"));
  ASSERT_EQ(e.terms.size(), 1u);
  EXPECT_EQ(e.terms.begin()->first, std::make_pair(tr("E(1,2)"), tr("E(1,2)")));
  const auto l = ram::coproduct(el("L(1,2)"));
  ram::TensorElement2 want{{1, 2}, {}};
  want.add(tr("E(1,2)"), tr("L(1,2)"), 1);
  want.add(tr("L(1,2)"), tr("E(1,2)"), 1);
  EXPECT_EQ(l.terms, want.terms);
}

TEST(Coproduct, NestedLie) {
  const auto d = ram::coproduct(el("L(1,L(2,3))"));
  ram::TensorElement2 want{{1, 2, 3}, {}};
  for (const char* f : {"E", "L"})
    for (const char* g : {"E", "L"}) {
      const std::string a = std::string(f) + "(1," + g + "(2,3))";
      const std::string b = std::string(f[0] == 'E' ? "L" : "E") + "(1," + (g[0] == 'E' ? "L" : "E") + "(2,3))";
      want.add(tr(a), tr(b), 1);
    }
  EXPECT_EQ(d.terms, want.terms);
}

TEST(Coproduct, RelabelingCompatible) {
  auto q = ram::make_quotient("ram");
  const auto labels = standard_labels(3);
  for (const auto& phi : permutations_of(labels))
    for (const auto& b : q->basis(labels)) {
      const auto x = OperadElement::monomial(ram::signature(), b);
      const auto lhs = ram::coproduct(relabel(x, phi));
      ram::TensorElement2 rhs{labels, {}};
      for (const auto& [key, c] : ram::coproduct(x).terms) {
        const auto u = relabel(OperadElement::monomial(ram::signature(), key.first), phi);
        const auto v = relabel(OperadElement::monomial(ram::signature(), key.second), phi);
        for (const auto& [tu, cu] : u.terms())
          for (const auto& [tv, cv] : v.terms()) rhs.add(tu, tv, c * cu * cv);
      }
      EXPECT_EQ(ram::normal_form(*q, lhs), ram::normal_form(*q, rhs));
    }
}

TEST(Differential, Examples) {
  using ram::Differential;
  EXPECT_EQ(ram::differential(el("W(1,2)"), Differential::D), el("L(1,2)"));
  EXPECT_EQ(ram::differential(el("L(1,2)"), Differential::Dprime), el("W(1,2)"));
  EXPECT_TRUE(ram::differential(el("E(1,2)"), Differential::D).is_zero());
  EXPECT_TRUE(ram::differential(el("W(1,2)"), Differential::Dprime).is_zero());
  EXPECT_EQ(ram::differential(el("W(1,W(2,3))"), Differential::D), el("L(1,W(2,3)) - W(1,L(2,3))"));
}

TEST(Checks, HopfThroughFour) {
  auto q = ram::make_quotient("ram");
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& c : ram::hopf_check(*q, n)) {
      EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
      if (n >= 3) {
        EXPECT_GT(c.checked, 0u) << c.name;
      }
    }
}

TEST(Checks, DifferentialsThroughFour) {
  auto q = ram::make_quotient("ram");
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& c : ram::differential_check(*q, n)) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
}
