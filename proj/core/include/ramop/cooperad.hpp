#pragma once

// Cocomposition maps Theta^star_{I,J} : R(I u J) -> R(I u {star}) (x) R(J)
// and the cooperad axioms.

#include <map>
#include <vector>

#include "ramop/graph.hpp"

namespace ramop::cooperad {

using graph::Ambient;
using graph::AlgebraElement;
using graph::GraphMonomial;
using graph::GraphQuotient;
using linear::Rational;

/// Tensor product of several algebras; factor k lives on factors[k].
struct Tensor {
  graph::GraphSignaturePtr signature;
  Ambient mode = Ambient::Forest;
  std::vector<std::vector<Atom>> factors;
  std::map<std::vector<GraphMonomial>, Rational> terms;

  void add(const std::vector<GraphMonomial>& key, const Rational& c);
  void add(const Tensor& t, const Rational& c = 1);
  bool is_zero() const { return terms.empty(); }
  std::string to_string() const;
};

/// One-factor tensor.
Tensor as_tensor(const AlgebraElement& x);

/// Factorwise product with sign (-1)^(h(x_b) h(y_a)) for each a < b.
Tensor operator*(const Tensor& x, const Tensor& y);

/// Straddling edges keep their orientation with the J endpoint replaced by
/// `star`. Generator images are multiplied left to right in canonical order.
Tensor theta(const std::vector<Atom>& I, const std::vector<Atom>& J, const AlgebraElement& x,
             Atom star = kStar);

/// Applies theta to factor k, which must live on I u J.
Tensor theta_on_factor(const Tensor& t, std::size_t k, const std::vector<Atom>& I,
                       const std::vector<Atom>& J, Atom star);

/// Koszul-signed symmetry exchanging factors k and k+1.
Tensor swap_factors(const Tensor& t, std::size_t k);

/// d or d' on factor k, with the sign of passing the earlier factors.
Tensor differential_on_factor(const Tensor& t, std::size_t k, graph::GraphDifferential which);

using CoordTensor = std::map<std::vector<linear::Index>, Rational>;

/// Reduces tensors factorwise, memoizing monomial normal forms.
class TensorReducer {
 public:
  explicit TensorReducer(GraphQuotient& q) : q_(q) {}

  CoordTensor reduce(const Tensor& t);
  const linear::SparseVector& monomial(const std::vector<Atom>& vertices, Ambient mode,
                                       const GraphMonomial& m);

 private:
  GraphQuotient& q_;
  std::map<std::tuple<std::vector<Atom>, Ambient, GraphMonomial>, linear::SparseVector> memo_;
};

/// Ordered splits (I, J) of the labels with J nonempty and, if
/// `nonempty_i`, I nonempty.
std::vector<std::pair<std::vector<Atom>, std::vector<Atom>>> splits(const std::vector<Atom>& labels,
                                                                    bool nonempty_i);

/// Theta of every relation instance on {1..n} (full mode) reduces to zero,
/// for every split with I and J nonempty.
CheckResult theta_relation_check(GraphQuotient& q, std::size_t n);

/// Both cooperad equations on every basis element of R({1..n}), over all
/// (I, J, K) covering {1..n} with J and K nonempty.
std::vector<CheckResult> cooperad_axiom_check(GraphQuotient& q, std::size_t n);

/// Theta(dx) = (d (x) id + id (x) d) Theta(x), same for d', on the basis.
std::vector<CheckResult> theta_differential_check(GraphQuotient& q, std::size_t n);

/// Theta(xy) = Theta(x) Theta(y) on pairs of basis elements. `stride` > 1
/// visits every stride-th pair.
CheckResult theta_morphism_check(GraphQuotient& q, std::size_t n, std::size_t stride = 1);

}  // namespace ramop::cooperad
