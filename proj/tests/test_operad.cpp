#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "ramop/operad.hpp"
#include "ramop/ram.hpp"

using namespace ramop;
using namespace ramop::operad;

namespace {

const SignaturePtr& ram_sig() { return ram::signature(); }

// Two odd generators, one of them symmetric, plus an even one.
const SignaturePtr& odd_sig() {
  static const SignaturePtr s = std::make_shared<const Signature>(
      Signature{{{"P", {1, 0}, +1}, {"Q", {1, 1}, -1}, {"E", {0, 0}, +1}}});
  return s;
}

OperadElement el(const std::string& text) { return OperadElement::parse(ram_sig(), text); }

// Sign oracle: a tree is the word of its generators in preorder. Canonicalizing
// permutes that word; the sign is the parity of the induced permutation of odd
// generators times the symmetry of every vertex whose children get exchanged.
struct OracleNode {
  int gen = -1;
  Atom leaf = 0;
  int left = -1, right = -1;
  Atom min_leaf = 0;
};

int parse_oracle(const std::vector<std::int32_t>& code, std::size_t& pos, std::vector<OracleNode>& nodes) {
  const int id = static_cast<int>(nodes.size());
  nodes.emplace_back();
  const auto c = code[pos++];
  if (!is_generator(c)) {
    nodes[id].leaf = c;
    nodes[id].min_leaf = c;
    return id;
  }
  nodes[id].gen = generator_of(c);
  const int l = parse_oracle(code, pos, nodes);
  const int r = parse_oracle(code, pos, nodes);
  nodes[id].left = l;
  nodes[id].right = r;
  nodes[id].min_leaf = std::min(nodes[l].min_leaf, nodes[r].min_leaf);
  return id;
}

SignedTree oracle_canonicalize(const TreeMonomial& t, const Signature& sig) {
  std::vector<OracleNode> nodes;
  std::size_t pos = 0;
  parse_oracle(t.code, pos, nodes);

  std::vector<int> original, canonical;
  std::vector<std::int32_t> code;
  int sign = 1;
  std::function<void(int)> walk = [&](int v) {
    const auto& n = nodes[v];
    if (n.gen < 0) {
      code.push_back(n.leaf);
      return;
    }
    code.push_back(generator_code(n.gen));
    if (sig[n.gen].degree.h % 2) canonical.push_back(v);
    const bool swap = nodes[n.left].min_leaf > nodes[n.right].min_leaf;
    if (swap) sign *= sig[n.gen].symmetry;
    walk(swap ? n.right : n.left);
    walk(swap ? n.left : n.right);
  };
  for (int v = 0; v < static_cast<int>(nodes.size()); ++v)
    if (nodes[v].gen >= 0 && sig[nodes[v].gen].degree.h % 2) original.push_back(v);
  walk(0);

  // Parity of the permutation taking `original` to `canonical`.
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < canonical.size(); ++a)
    for (std::size_t b = a + 1; b < canonical.size(); ++b)
      if (canonical[a] > canonical[b]) ++inversions;
  if (inversions % 2) sign = -sign;
  return {sign, TreeMonomial{code}};
}

// Every binary tree on `labels`, both child orders at every vertex.
std::vector<TreeMonomial> all_trees(const std::vector<Atom>& labels, int ngen) {
  if (labels.size() == 1) return {leaf(labels[0])};
  std::vector<TreeMonomial> out;
  const std::size_t n = labels.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<Atom> a, b;
    for (std::size_t k = 0; k < n; ++k) (((mask >> k) & 1) ? a : b).push_back(labels[k]);
    const auto ta = all_trees(a, ngen);
    const auto tb = all_trees(b, ngen);
    for (int g = 0; g < ngen; ++g)
      for (const auto& x : ta)
        for (const auto& y : tb) out.push_back(node(g, x, y));
  }
  return out;
}

std::vector<TreeMonomial> monomials(const std::vector<Atom>& labels) {
  return enumerate_tree_monomials(ram::presentation("ram"), labels);
}

}  // namespace

TEST(Canonicalize, Examples) {
  const auto& sig = *ram_sig();
  auto l21 = canonicalize(parse_tree("L(2,1)", sig), sig);
  EXPECT_EQ(l21.sign, -1);
  EXPECT_EQ(to_string(l21.tree, sig), "L(1,2)");
  auto e21 = canonicalize(parse_tree("E(2,1)", sig), sig);
  EXPECT_EQ(e21.sign, 1);
  EXPECT_EQ(to_string(e21.tree, sig), "E(1,2)");
  auto w = canonicalize(parse_tree("W(W(2,3),1)", sig), sig);
  EXPECT_EQ(w.sign, -1);
  EXPECT_EQ(to_string(w.tree, sig), "W(1,W(2,3))");
  EXPECT_THROW(canonicalize(parse_tree("E(1,1)", sig), sig), UsageError);
}

TEST(Canonicalize, AgreesWithSignOracle) {
  for (const auto* sigp : {&ram_sig(), &odd_sig()}) {
    const auto& sig = **sigp;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::size_t count = 0;
      for (const auto& t : all_trees(standard_labels(n), static_cast<int>(sig.generators.size()))) {
        const auto got = canonicalize(t, sig);
        const auto want = oracle_canonicalize(t, sig);
        ASSERT_EQ(got.tree, want.tree) << to_string(t, sig);
        ASSERT_EQ(got.sign, want.sign) << to_string(t, sig);
        ++count;
      }
      EXPECT_GT(count, 0u);
    }
  }
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(el("E(1,*)"), el("E(2,3)"), kStar), el("E(1,E(2,3))"));
  EXPECT_EQ(compose(el("L(1,*)"), el("L(2,3)"), kStar), el("L(1,L(2,3))"));
  EXPECT_THROW(compose(el("L(1,2)"), el("L(3,4)"), kStar), UsageError);
  EXPECT_THROW(compose(el("L(1,*)"), el("L(1,3)"), kStar), UsageError);
}

TEST(Compose, JacobiVanishesInLie) {
  auto lie = ram::make_quotient("lie");
  OperadElement jac(ram_sig(), {1, 2, 3});
  jac.add(compose(el("L(1,*)"), el("L(2,3)"), kStar));
  jac.add(compose(el("L(2,*)"), el("L(3,1)"), kStar));
  jac.add(compose(el("L(3,*)"), el("L(1,2)"), kStar));
  EXPECT_FALSE(jac.is_zero());
  EXPECT_TRUE(lie->normal_form(jac).empty());
}

TEST(Compose, SequentialAssociativity) {
  const auto& sig = ram_sig();
  for (const auto& x : monomials({1, kStar}))
    for (const auto& y : monomials({2, kHash}))
      for (const auto& z : monomials({3, 4})) {
        const auto X = OperadElement::monomial(sig, x), Y = OperadElement::monomial(sig, y),
                   Z = OperadElement::monomial(sig, z);
        EXPECT_EQ(compose(compose(X, Y, kStar), Z, kHash), compose(X, compose(Y, Z, kHash), kStar));
      }
}

TEST(Compose, ParallelAxiom) {
  const auto& sig = ram_sig();
  auto ys = monomials({2});
  for (const auto& y : monomials({2, 5})) ys.push_back(y);
  for (const auto& x : monomials({1, kStar, kHash}))
    for (const auto& y : ys)
      for (const auto& z : monomials({3, 4})) {
        const auto X = OperadElement::monomial(sig, x), Y = OperadElement::monomial(sig, y),
                   Z = OperadElement::monomial(sig, z);
        const int s = koszul(degree(y, *sig).h, degree(z, *sig).h);
        const auto lhs = compose(compose(X, Y, kStar), Z, kHash);
        const auto rhs = compose(compose(X, Z, kHash), Y, kStar);
        OperadElement diff = lhs;
        diff.add(rhs, -s);
        EXPECT_TRUE(diff.is_zero()) << lhs.to_string() << " vs " << rhs.to_string();
      }
}

TEST(Relabel, Examples) {
  const auto x = el("E(1,E(2,3))");
  EXPECT_EQ(relabel(x, {{1, 1}, {2, 2}, {3, 3}}), x);
  EXPECT_EQ(relabel(el("L(1,2)"), {{1, 2}, {2, 1}}), el("-L(1,2)"));
  EXPECT_EQ(relabel(x, {{1, 1}, {2, 3}, {3, 2}}), x);
  EXPECT_THROW(relabel(x, {{1, 1}, {2, 1}, {3, 3}}), UsageError);
}

TEST(Relabel, Functorial) {
  std::vector<Atom> p{1, 2, 3, 4};
  std::mt19937 rng(5);
  const auto& sig = ram_sig();
  for (const auto& t : monomials({1, 2, 3, 4})) {
    if (rng() % 5) continue;
    std::shuffle(p.begin(), p.end(), rng);
    std::map<Atom, Atom> phi, psi, both;
    std::vector<Atom> q{1, 2, 3, 4};
    std::shuffle(q.begin(), q.end(), rng);
    for (Atom a = 1; a <= 4; ++a) {
      phi[a] = p[a - 1];
      psi[a] = q[a - 1];
    }
    for (Atom a = 1; a <= 4; ++a) both[a] = psi[phi[a]];
    const auto x = OperadElement::monomial(sig, t);
    EXPECT_EQ(relabel(relabel(x, phi), psi), relabel(x, both));
  }
}

TEST(Enumerate, Counts) {
  const auto p = ram::presentation("ram");
  EXPECT_EQ(enumerate_tree_monomials(p, {1, 2}).size(), 3u);
  EXPECT_EQ(enumerate_tree_monomials(p, {1, 2, 3}).size(), 27u);
  EXPECT_EQ(enumerate_tree_monomials(p, {1, 2, 3}, BiDegree{1, 2}).size(), 6u);
  const auto a = enumerate_tree_monomials(p, {1, 2, 3, 4});
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
}

TEST(Ideal, Ranks) {
  auto ram = ram::make_quotient("ram");
  EXPECT_TRUE(ram->ideal_span(2).empty());
  EXPECT_EQ(ram->component(3)->ideal_rank(), 10u);
  EXPECT_EQ(ram->component(3)->ambient.size(), 27u);
  auto com = ram::make_quotient("com");
  EXPECT_EQ(com->component(3)->ideal_rank(), 2u);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(com->component(n)->dim(), 1u) << n;
}

TEST(Component, Dims) {
  auto ram = ram::make_quotient("ram");
  EXPECT_EQ(ram->component(2)->dims, (DimTable{{{0, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}));
  EXPECT_EQ(ram->component(3)->dims,
            (DimTable{{{0, 0}, 1}, {{0, 1}, 3}, {{0, 2}, 2}, {{1, 1}, 3}, {{1, 2}, 5}, {{2, 2}, 3}}));
  EXPECT_EQ(ram->basis({5, 7, 9}).size(), 17u);
}

TEST(NormalForm, Examples) {
  auto ram = ram::make_quotient("ram");
  EXPECT_TRUE(ram->normal_form(el("L(1,L(2,3)) + L(2,L(3,1)) + L(3,L(1,2))")).empty());
  EXPECT_TRUE(ram->normal_form(el("E(1,E(2,3)) - E(2,E(3,1))")).empty());
  const auto comp = ram->component(3);
  for (std::size_t k = 0; k < comp->dim(); ++k) {
    const auto v = ram->normal_form(OperadElement::monomial(ram_sig(), comp->basis[k]));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].col, k);
    EXPECT_EQ(v[0].value, 1);
  }
}

TEST(NormalForm, Equivariance) {
  auto ram = ram::make_quotient("ram");
  const auto labels = standard_labels(4);
  std::vector<Atom> p = labels;
  std::mt19937 rng(9);
  const auto ideal = ram->ideal_basis(labels);
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(p.begin(), p.end(), rng);
    std::map<Atom, Atom> phi;
    for (std::size_t k = 0; k < 4; ++k) phi[labels[k]] = p[k];
    for (const auto& r : ideal) EXPECT_TRUE(ram->normal_form(relabel(r, phi)).empty());
    // Relabeling descends to the quotient: basis elements plus ideal elements
    // relabel to the same class.
    for (const auto& b : ram->basis(labels)) {
      const auto x = OperadElement::monomial(ram_sig(), b);
      OperadElement y = x;
      y.add(ideal[rng() % ideal.size()], 3);
      EXPECT_EQ(ram->normal_form(relabel(x, phi)), ram->normal_form(relabel(y, phi)));
    }
  }
}
