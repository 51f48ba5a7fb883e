#pragma once

// Graded-commutative algebras generated by edge variables x_{i,j} of a few
// colors: the algebras R(I) (colors a, b) and the Arnold algebra (color w).
// A monomial is a simple graph with colored edges; its canonical word lists
// the edges by (min endpoint, max endpoint).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramop/common.hpp"
#include "ramop/linear.hpp"

namespace ramop::graph {

using linear::Rational;

struct Color {
  std::string name;
  BiDegree degree;
  int symmetry = -1;  // x_{j,i} = symmetry * x_{i,j}
};

struct GraphSignature {
  std::vector<Color> colors;

  int find(std::string_view name) const;
  const Color& operator[](int c) const { return colors.at(static_cast<std::size_t>(c)); }
};

using GraphSignaturePtr = std::shared_ptr<const GraphSignature>;

/// Edge stored with u < v.
struct Edge {
  Atom u = 0;
  Atom v = 0;
  int color = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge variable as written, in either orientation.
struct Factor {
  Atom i = 0;
  Atom j = 0;
  int color = 0;
};

/// Edges sorted by (u, v); at most one edge per pair.
struct GraphMonomial {
  std::vector<Edge> edges;

  friend auto operator<=>(const GraphMonomial&, const GraphMonomial&) = default;
};

/// Which monomials are kept: simple graphs, or only simple forests.
enum class Ambient { Forest, Full };

std::string_view to_string(Ambient a);
Ambient parse_ambient(std::string_view text);

struct SignedMonomial {
  int sign = 0;  // 0 means the product vanishes
  GraphMonomial monomial;
};

/// Canonical form of the product of `word` in order: zero on a repeated pair
/// (or a cycle in forest mode), otherwise the sorted monomial with the sign
/// of the orientation flips and the odd-factor transpositions.
SignedMonomial canonical_word(const std::vector<Factor>& word, const GraphSignature& sig, Ambient mode);
SignedMonomial multiply(const GraphMonomial& x, const GraphMonomial& y, const GraphSignature& sig,
                        Ambient mode);

BiDegree degree(const GraphMonomial& m, const GraphSignature& sig);
bool is_forest(const GraphMonomial& m);
std::string to_string(const GraphMonomial& m, const GraphSignature& sig);

/// All monomials on `vertices` in the given mode, sorted by edge list (the
/// empty monomial first).
std::vector<GraphMonomial> enumerate_graph_monomials(const GraphSignature& sig,
                                                     const std::vector<Atom>& vertices, Ambient mode,
                                                     std::optional<BiDegree> filter = std::nullopt);

/// Sparse rational combination of monomials on one vertex set.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode);

  static AlgebraElement unit(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode);
  static AlgebraElement word(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode,
                             const std::vector<Factor>& w, const Rational& c = 1);
  /// Parses "a(1,2)*b(2,3) - 2 b(1,3)*a(1,2)"; an empty product is "1".
  static AlgebraElement parse(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode,
                              std::string_view text);

  void add(const GraphMonomial& m, const Rational& c);
  void add(const AlgebraElement& x, const Rational& c = 1);
  void add_word(const std::vector<Factor>& w, const Rational& c);

  const GraphSignaturePtr& signature() const { return sig_; }
  const std::vector<Atom>& vertices() const { return vertices_; }
  Ambient mode() const { return mode_; }
  const std::map<GraphMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::vector<BiDegree> degrees() const;
  std::string to_string() const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.vertices_ == b.vertices_ && a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }

 private:
  GraphSignaturePtr sig_;
  std::vector<Atom> vertices_;
  Ambient mode_ = Ambient::Forest;
  std::map<GraphMonomial, Rational> terms_;
};

/// Product; throws UsageError on mismatched vertex sets or modes.
AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);

/// Order-preserving transport to another vertex set of the same size.
AlgebraElement transport(const AlgebraElement& x, const std::vector<Atom>& target);
/// Same terms viewed in another mode; cyclic terms drop when moving to forests.
AlgebraElement with_mode(const AlgebraElement& x, Ambient mode);

/// A relation family: all its instances on a vertex set, deduplicated up to
/// scalar.
struct RelationFamily {
  std::string name;
  std::function<std::vector<AlgebraElement>(const std::vector<Atom>&, Ambient)> instances;
};

struct GraphPresentation {
  std::string name;
  GraphSignaturePtr signature;
  std::vector<RelationFamily> families;

  std::uint64_t hash() const;
};

/// Colors a (0,1) and b (1,1), both antisymmetric.
const GraphSignaturePtr& r_signature();
inline constexpr int kA = 0;
inline constexpr int kB = 1;
/// Color w (1,1), symmetric.
const GraphSignaturePtr& arnold_signature();

/// R with relaa, relab, relabbn, relbbbn and, unless dropped, relbab and
/// relbbb. The length-two relations are built into the monomials.
GraphPresentation r_presentation(bool with_twelve_term = true);
GraphPresentation arnold_presentation();

/// Single relation instances on explicit indices.
AlgebraElement relaa(const std::vector<Atom>& vertices, Ambient mode, Atom i, Atom j, Atom k);
AlgebraElement relab(const std::vector<Atom>& vertices, Ambient mode, Atom i, Atom j, Atom k);
/// First edge colored `first`, remaining edges b, around the cycle idx.
AlgebraElement cycle(const std::vector<Atom>& vertices, Ambient mode, const std::vector<Atom>& idx, int first);
AlgebraElement relbab(const std::vector<Atom>& vertices, Ambient mode, Atom i, Atom j, Atom k, Atom l);
AlgebraElement relbbb(const std::vector<Atom>& vertices, Ambient mode, Atom i, Atom j, Atom k, Atom l);
AlgebraElement arnold(const std::vector<Atom>& vertices, Ambient mode, Atom i, Atom j, Atom k);

/// Sums over all permutations of four indices of x_{s(1)s(2)} y_{s(2)s(3)} z_{s(3)s(4)}.
AlgebraElement path_sum(const std::vector<Atom>& vertices, Ambient mode, const std::vector<Atom>& four,
                        int c1, int c2, int c3);
/// Sum over ordered pairs (p, q) of b_{p,q} a_{p,r} a_{p,s}, {r, s} the other two.
AlgebraElement t_sum(const std::vector<Atom>& vertices, Ambient mode, const std::vector<Atom>& four);

struct GraphComponent {
  std::size_t size = 0;
  Ambient mode = Ambient::Forest;
  std::vector<GraphMonomial> ambient;
  std::map<GraphMonomial, std::size_t> ambient_index;
  std::vector<BiDegree> ambient_degree;
  linear::QuotientBasis quotient;
  std::vector<GraphMonomial> basis;
  std::vector<BiDegree> basis_degree;
  DimTable dims;
  std::size_t spanning_rows = 0;

  std::size_t ideal_rank() const { return quotient.reducer.rank(); }
  std::size_t dim() const { return basis.size(); }
  /// Coordinates on the ambient; x must live on {1..size} in this mode.
  linear::SparseVector ambient_vector(const AlgebraElement& x) const;
};

/// Presentation with memoized quotient components per (size, mode).
class GraphQuotient {
 public:
  explicit GraphQuotient(GraphPresentation p, Limits limits = {},
                         std::optional<std::filesystem::path> cache_dir = std::nullopt);

  const GraphPresentation& presentation() const { return p_; }

  std::shared_ptr<const GraphComponent> component(std::size_t n, Ambient mode = Ambient::Forest);
  /// Relation instances times monomials, on {1..n}.
  std::vector<AlgebraElement> ideal_span(std::size_t n, Ambient mode);
  /// Coordinates of x on the basis of its vertex set, in x's mode.
  linear::SparseVector normal_form(const AlgebraElement& x);
  /// Basis monomials transported to `vertices`.
  std::vector<GraphMonomial> basis(const std::vector<Atom>& vertices, Ambient mode = Ambient::Forest);
  /// Basis element at position k, on `vertices`.
  AlgebraElement basis_element(const std::vector<Atom>& vertices, std::size_t k,
                               Ambient mode = Ambient::Forest);

 private:
  std::shared_ptr<const GraphComponent> build(std::size_t n, Ambient mode);

  GraphPresentation p_;
  Limits limits_;
  std::optional<std::filesystem::path> cache_dir_;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, Ambient>, std::shared_ptr<const GraphComponent>> components_;
};

enum class GraphDifferential { d, dprime };

/// Derivation on R: d sends a to b, d' sends b to a. Acting on the factor at
/// position p of the canonical word costs (-1)^(odd factors before p).
AlgebraElement differential(const AlgebraElement& x, GraphDifferential which);

/// d^2 = d'^2 = 0 and dd' + d'd = weight on the basis of R({1..n}), and d,
/// d' send every relation instance (full mode) into the ideal.
std::vector<CheckResult> differential_check(GraphQuotient& r, std::size_t n);

/// Sum(aab), Sum(abb) and the T sum vanish in R({1,2,3,4}).
std::vector<CheckResult> lemma_check(GraphQuotient& r);

/// Forest-mode dims equal full-mode dims, and the weight never exceeds n-1.
std::vector<CheckResult> forest_check(GraphQuotient& q, std::size_t n);

/// Coefficients of prod_{k<n} (1 + k t).
std::vector<std::size_t> arnold_poincare(std::size_t n);

/// Arnold quotient in both modes against the product formula.
CheckResult arnold_check(GraphQuotient& arnold, std::size_t n);

/// Ideal rank per bidegree with and without relbab/relbbb (informational).
struct TwelveTermReport {
  std::size_t n = 0;
  DimTable with;
  DimTable without;
};
TwelveTermReport twelve_term_report(std::size_t n, const Limits& limits = {});

}  // namespace ramop::graph
