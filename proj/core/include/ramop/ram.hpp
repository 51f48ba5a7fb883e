#pragma once

// The Ram family of presentations on generators E (commutative product),
// L (Lie bracket) and W (the odd suspended Griess product), the Hopf
// coproduct, the two differentials and their verification routines.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ramop/operad.hpp"

namespace ramop::ram {

using operad::OperadElement;
using operad::OperadQuotient;
using operad::Rational;
using operad::TreeMonomial;

/// E symmetric (0,0); L antisymmetric (0,1); W antisymmetric (1,1).
const operad::SignaturePtr& signature();
inline constexpr int kE = 0;
inline constexpr int kL = 1;
inline constexpr int kW = 2;

/// Quadratic relations on {1,2,3}, by family name: associatif, jacobi,
/// mixte, leibniz, bessel.
OperadElement relation(std::string_view family);

/// Selector: com, lie, sgriess, liegriess, poisson, bessel, ram.
operad::Presentation presentation(std::string_view which);
std::vector<std::string> presentation_names();

std::shared_ptr<OperadQuotient> make_quotient(std::string_view which, Limits limits = {},
                                              std::optional<std::filesystem::path> cache = {});

DimTable ram_dims(OperadQuotient& q, std::size_t n);

/// Sparse map (left tree, right tree) -> coefficient, both on one label set.
struct TensorElement2 {
  std::vector<Atom> labels;
  std::map<std::pair<TreeMonomial, TreeMonomial>, Rational> terms;

  void add(const TreeMonomial& a, const TreeMonomial& b, const Rational& c);
  bool is_zero() const { return terms.empty(); }
};

/// Coproduct, composed along the tree from the generator rules
/// E -> E(x)E, L -> E(x)L + L(x)E, W -> E(x)W + W(x)E, with the Koszul sign of
/// moving right-hand factors past later left-hand factors.
TensorElement2 coproduct(const OperadElement& x);

enum class Differential { D, Dprime };

/// Derivation through trees: D sends W to L, D' sends L to W. Applying it at
/// a vertex costs (-1)^(sum of h over the vertices preceding it in preorder).
OperadElement differential(const OperadElement& x, Differential which);

/// Exact tensor of coordinates: key = basis index per factor.
using CoordTensor = std::map<std::vector<linear::Index>, Rational>;

/// Normal form of each tensor factor in q's components.
CoordTensor normal_form(OperadQuotient& q, const TensorElement2& t);

/// (a) coproduct kills the ideal, (b) coassociativity on the basis,
/// (c) D and D' are coderivations.
std::vector<CheckResult> hopf_check(OperadQuotient& q, std::size_t n);

/// D^2 = D'^2 = 0, (DD'+D'D) = weight, and D, D' preserve the ideal.
std::vector<CheckResult> differential_check(OperadQuotient& q, std::size_t n);

struct DistributiveReport {
  std::size_t n = 0;
  DimTable direct;
  DimTable factorized;  // sum over set partitions of products of LieGriess dims
  DimTable liegriess;   // dims of LieGriess on n labels
  bool pass = false;
};

DistributiveReport distributive_check(OperadQuotient& ram, OperadQuotient& liegriess, std::size_t n);

/// Set partitions of {1..n} as lists of block sizes.
std::vector<std::vector<std::size_t>> set_partition_block_sizes(std::size_t n);

}  // namespace ramop::ram
