#pragma once

// Free operads on binary generators, Koszul-signed canonical tree
// monomials, and quotient components of quadratic presentations.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramop/common.hpp"
#include "ramop/linear.hpp"

namespace ramop::operad {

using linear::Rational;

struct GeneratorSpec {
  std::string name;
  BiDegree degree;
  int symmetry = 1;  // +1 symmetric, -1 antisymmetric under swapping inputs
};

struct Signature {
  std::vector<GeneratorSpec> generators;

  /// Index of the generator called `name`; throws UsageError if unknown.
  int find(std::string_view name) const;
  const GeneratorSpec& operator[](int g) const { return generators.at(static_cast<std::size_t>(g)); }
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// Binary tree in preorder. A negative entry -(g+1) is an internal vertex
/// labelled by generator g, followed by its left and right subtrees; a
/// non-negative entry is a leaf atom.
struct TreeMonomial {
  std::vector<std::int32_t> code;

  friend auto operator<=>(const TreeMonomial&, const TreeMonomial&) = default;
};

inline bool is_generator(std::int32_t c) { return c < 0; }
inline int generator_of(std::int32_t c) { return -c - 1; }
inline std::int32_t generator_code(int g) { return -(g + 1); }

TreeMonomial leaf(Atom a);
TreeMonomial node(int generator, const TreeMonomial& left, const TreeMonomial& right);

/// One past the last code position of the subtree starting at `pos`.
std::size_t subtree_end(const std::vector<std::int32_t>& code, std::size_t pos);
std::vector<Atom> leaves(const TreeMonomial& t);
BiDegree degree(const TreeMonomial& t, const Signature& sig);
std::string to_string(const TreeMonomial& t, const Signature& sig);
/// Parses "L(1,E(2,3))"; leaves are integers or the place-holders * and #.
TreeMonomial parse_tree(std::string_view text, const Signature& sig);

struct SignedTree {
  int sign = 1;
  TreeMonomial tree;
};

/// Reorders children so that min-leaf(left) < min-leaf(right) at every
/// vertex. Each swap at a vertex g with subtrees t1, t2 contributes
/// symmetry(g) * (-1)^(h(t1) h(t2)). Throws UsageError on repeated leaves.
SignedTree canonicalize(const TreeMonomial& t, const Signature& sig);

/// Grafts y into the leaf `slot` of x. The tree is identified with the word
/// of its generators in preorder, so moving y past the generators of x that
/// follow the slot costs (-1)^(h(y) * h(those)). Result is canonical.
SignedTree compose(const TreeMonomial& x, const TreeMonomial& y, Atom slot, const Signature& sig);

/// Sparse rational combination of canonical tree monomials on one label set.
class OperadElement {
 public:
  OperadElement() = default;
  OperadElement(SignaturePtr sig, std::vector<Atom> labels);

  static OperadElement monomial(SignaturePtr sig, const TreeMonomial& t, const Rational& c = 1);
  static OperadElement parse(SignaturePtr sig, std::string_view text);

  /// Adds c * t after canonicalizing t. Leaves of t must equal labels().
  void add(const TreeMonomial& t, const Rational& c);
  void add(const OperadElement& x, const Rational& c = 1);

  const std::vector<Atom>& labels() const { return labels_; }
  const std::map<TreeMonomial, Rational>& terms() const { return terms_; }
  const SignaturePtr& signature() const { return sig_; }
  bool is_zero() const { return terms_.empty(); }
  /// Bidegrees present among the terms.
  std::vector<BiDegree> degrees() const;
  std::string to_string() const;

  friend bool operator==(const OperadElement& a, const OperadElement& b) {
    return a.labels_ == b.labels_ && a.terms_ == b.terms_;
  }

 private:
  SignaturePtr sig_;
  std::vector<Atom> labels_;
  std::map<TreeMonomial, Rational> terms_;
};

/// Operadic composition x o_slot y. Throws UsageError if slot is not a label
/// of x or the remaining labels collide.
OperadElement compose(const OperadElement& x, const OperadElement& y, Atom slot);

/// Relabels leaves by phi and canonicalizes. phi must be injective on labels(x).
OperadElement relabel(const OperadElement& x, const std::map<Atom, Atom>& phi);

/// Order-preserving transport between label sets of equal size.
OperadElement transport(const OperadElement& x, const std::vector<Atom>& target);

struct Presentation {
  std::string name;
  SignaturePtr signature;
  std::vector<int> generators;             // indices into the signature
  std::vector<OperadElement> relations;    // quadratic, on labels {1,2,3}
  std::vector<std::string> relation_names; // parallel to relations

  /// Stable FNV-1a hash of canonical_text().
  std::uint64_t hash() const;
  std::string canonical_text() const;
};

/// All canonical monomials on `labels` built from p's generators, sorted by
/// code (root generator, then left, then right serialization).
std::vector<TreeMonomial> enumerate_tree_monomials(const Presentation& p,
                                                   const std::vector<Atom>& labels,
                                                   std::optional<BiDegree> filter = std::nullopt);

/// Quotient component on the standard labels {1..n}.
struct OperadComponent {
  std::size_t arity = 0;
  std::vector<TreeMonomial> ambient;
  std::map<TreeMonomial, std::size_t> ambient_index;
  std::vector<BiDegree> ambient_degree;
  linear::QuotientBasis quotient;  // over ambient columns
  std::vector<TreeMonomial> basis;
  std::vector<BiDegree> basis_degree;
  DimTable dims;
  std::size_t spanning_rows = 0;  // size of the generated ideal spanning set

  std::size_t ideal_rank() const { return quotient.reducer.rank(); }
  std::size_t dim() const { return basis.size(); }
  linear::SparseVector ambient_vector(const OperadElement& x) const;
  OperadElement element(const linear::SparseVector& ambient_coords, const SignaturePtr& sig) const;
};

/// Presentation together with its cached quotient components.
class OperadQuotient {
 public:
  explicit OperadQuotient(Presentation p, Limits limits = {},
                          std::optional<std::filesystem::path> cache_dir = std::nullopt);

  const Presentation& presentation() const { return p_; }
  const Limits& limits() const { return limits_; }

  /// Component on {1..n}; built recursively from lower arities on first use.
  std::shared_ptr<const OperadComponent> component(std::size_t n);

  /// Spanning set of the ideal on {1..n} (arity >= 3; empty below).
  std::vector<OperadElement> ideal_span(std::size_t n);

  /// Echelon rows of the ideal on `labels`, as elements on those labels.
  std::vector<OperadElement> ideal_basis(const std::vector<Atom>& labels);

  /// Coordinates of x on the basis of the component for labels(x).
  linear::SparseVector normal_form(const OperadElement& x);

  /// Basis monomials of the component for `labels` (transported).
  std::vector<TreeMonomial> basis(const std::vector<Atom>& labels);

 private:
  std::shared_ptr<const OperadComponent> build(std::size_t n);

  Presentation p_;
  Limits limits_;
  std::optional<std::filesystem::path> cache_dir_;
  std::recursive_mutex mutex_;
  std::map<std::size_t, std::shared_ptr<const OperadComponent>> components_;
};

}  // namespace ramop::operad
