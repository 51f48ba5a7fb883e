#pragma once

// The dual operad R*, with composition transposed from theta, and the
// morphism rho : Ram -> R* sending E, L, W to 1*, a*, b*.

#include <map>
#include <memory>
#include <string_view>
#include <tuple>
#include <vector>

#include "ramop/cooperad.hpp"
#include "ramop/operad.hpp"

namespace ramop::dual {

using graph::AlgebraElement;
using graph::GraphQuotient;
using linear::Rational;

/// Linear form on R(labels), by coordinates against the forest-mode basis.
struct LinearForm {
  std::vector<Atom> labels;
  linear::SparseVector coords;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

enum class DualGenerator { one, astar, bstar };

class DualOperad {
 public:
  explicit DualOperad(std::shared_ptr<GraphQuotient> r);

  GraphQuotient& algebra() { return *r_; }

  /// 1*, a*_{i,j} or b*_{i,j} on R(labels); i, j ignored for 1*.
  LinearForm dual_basis_element(const std::vector<Atom>& labels, DualGenerator which, Atom i = 0, Atom j = 0);

  /// f o_slot g for f on I u {slot} and g on J:
  /// <f o g, x> = sum over theta(x) = sum u (x) v of (-1)^(h(u) h(v)) f(u) g(v).
  LinearForm compose(const LinearForm& f, const LinearForm& g, Atom slot);

  Rational evaluate(const LinearForm& f, const AlgebraElement& x);
  /// Bidegree of basis position k of R(labels).
  BiDegree basis_degree(const std::vector<Atom>& labels, std::size_t k);
  std::size_t dim(const std::vector<Atom>& labels);

 private:
  const std::vector<cooperad::CoordTensor>& theta_matrix(const std::vector<Atom>& I, const std::vector<Atom>& J,
                                                         Atom star);

  std::shared_ptr<GraphQuotient> r_;
  cooperad::TensorReducer reducer_;
  std::map<std::tuple<std::vector<Atom>, std::vector<Atom>, Atom>, std::vector<cooperad::CoordTensor>> theta_;
};

/// rho on trees: a vertex g(t1, t2) is (g(*, #) o_* t1) o_# t2.
class Rho {
 public:
  Rho(std::shared_ptr<operad::OperadQuotient> ram, std::shared_ptr<DualOperad> rstar);

  LinearForm of_tree(const operad::TreeMonomial& t);
  LinearForm operator()(const operad::OperadElement& x);

  operad::OperadQuotient& ram() { return *ram_; }
  DualOperad& rstar() { return *rstar_; }

 private:
  std::shared_ptr<operad::OperadQuotient> ram_;
  std::shared_ptr<DualOperad> rstar_;
  std::vector<DualGenerator> image_;  // per generator of the signature
  std::map<operad::TreeMonomial, LinearForm> memo_;
};

/// Ram and R with default presentations, wired together.
Rho make_rho(Limits limits = {}, std::optional<std::filesystem::path> cache = std::nullopt);

struct BlockVerdict {
  BiDegree degree;
  std::size_t ram_dim = 0;
  std::size_t r_dim = 0;
  std::size_t rank = 0;
};

struct ConjectureReport {
  std::size_t n = 0;
  bool well_defined = false;       // rho kills the ideal of Ram({1..n})
  std::size_t ideal_rows_checked = 0;
  bool preserves_bidegree = false;
  std::string witness;             // first failure, if any
  std::vector<BlockVerdict> blocks;
  bool dims_equal = false;
  bool isomorphism = false;
};

ConjectureReport conjecture_verdict(Rho& rho, std::size_t n);

/// rho vanishes on each defining relation of Ram.
CheckResult rho_relation_check(Rho& rho);

/// rho D' = s (d')* rho and rho D = s' d* rho with one global sign each
/// (reported in the note), where the transpose of an odd map is
/// <phi* f, m> = (-1)^(h(f)) <f, phi m>. Also (rho (x) rho) Delta equal to the
/// transpose of the product of R. All on bases of size n.
std::vector<CheckResult> compat_checks(Rho& rho, std::size_t n);

}  // namespace ramop::dual
