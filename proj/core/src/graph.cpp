#include "ramop/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "ramop/cache.hpp"

namespace ramop::graph {

using linear::Index;
using linear::SparseVector;

int GraphSignature::find(std::string_view name) const {
  for (std::size_t c = 0; c < colors.size(); ++c)
    if (colors[c].name == name) return static_cast<int>(c);
  throw UsageError("unknown edge color: " + std::string(name));
}

std::string_view to_string(Ambient a) { return a == Ambient::Forest ? "forest" : "full"; }

Ambient parse_ambient(std::string_view text) {
  if (text == "forest") return Ambient::Forest;
  if (text == "full") return Ambient::Full;
  throw UsageError("ambient must be forest or full, got " + std::string(text));
}

namespace {

bool odd(const GraphSignature& sig, int color) { return (sig[color].degree.h & 1) != 0; }

// Union-find over the (few) atoms of one monomial.
struct Forest {
  std::map<Atom, Atom> parent;

  Atom root(Atom x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool join(Atom x, Atom y) {
    Atom rx = root(x), ry = root(y);
    if (rx == ry) return false;
    parent[rx] = ry;
    return true;
  }
};

}  // namespace

bool is_forest(const GraphMonomial& m) {
  Forest f;
  for (const auto& e : m.edges)
    if (!f.join(e.u, e.v)) return false;
  return true;
}

SignedMonomial canonical_word(const std::vector<Factor>& word, const GraphSignature& sig, Ambient mode) {
  SignedMonomial out;
  out.sign = 1;
  auto& edges = out.monomial.edges;
  edges.reserve(word.size());
  for (const auto& f : word) {
    if (f.i == f.j) throw UsageError("edge variable needs two distinct endpoints");
    if (f.i < f.j) {
      edges.push_back({f.i, f.j, f.color});
    } else {
      edges.push_back({f.j, f.i, f.color});
      out.sign *= sig[f.color].symmetry;
    }
  }
  // Insertion sort by endpoint pair; swapping two odd factors flips the sign.
  for (std::size_t k = 1; k < edges.size(); ++k) {
    for (std::size_t p = k; p > 0; --p) {
      auto& lo = edges[p - 1];
      auto& hi = edges[p];
      if (lo.u == hi.u && lo.v == hi.v) return {};
      if (std::tie(lo.u, lo.v) < std::tie(hi.u, hi.v)) break;
      if (odd(sig, lo.color) && odd(sig, hi.color)) out.sign = -out.sign;
      std::swap(lo, hi);
    }
  }
  if (mode == Ambient::Forest && !is_forest(out.monomial)) return {};
  return out;
}

SignedMonomial multiply(const GraphMonomial& x, const GraphMonomial& y, const GraphSignature& sig,
                        Ambient mode) {
  std::vector<Factor> w;
  w.reserve(x.edges.size() + y.edges.size());
  for (const auto& e : x.edges) w.push_back({e.u, e.v, e.color});
  for (const auto& e : y.edges) w.push_back({e.u, e.v, e.color});
  return canonical_word(w, sig, mode);
}

BiDegree degree(const GraphMonomial& m, const GraphSignature& sig) {
  BiDegree d;
  for (const auto& e : m.edges) d = d + sig[e.color].degree;
  return d;
}

std::string to_string(const GraphMonomial& m, const GraphSignature& sig) {
  if (m.edges.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < m.edges.size(); ++k) {
    if (k) s += '*';
    const auto& e = m.edges[k];
    s += sig[e.color].name + "(" + atom_name(e.u) + "," + atom_name(e.v) + ")";
  }
  return s;
}

std::vector<GraphMonomial> enumerate_graph_monomials(const GraphSignature& sig,
                                                     const std::vector<Atom>& vertices, Ambient mode,
                                                     std::optional<BiDegree> filter) {
  if (vertices.empty()) throw UsageError("vertex set must be nonempty");
  std::vector<Atom> vs = vertices;
  std::sort(vs.begin(), vs.end());
  std::vector<std::pair<Atom, Atom>> pairs;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) pairs.emplace_back(vs[i], vs[j]);

  std::vector<GraphMonomial> out;
  GraphMonomial cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pairs.size()) {
      if (!filter || degree(cur, sig) == *filter) out.push_back(cur);
      return;
    }
    rec(k + 1);
    for (int c = 0; c < static_cast<int>(sig.colors.size()); ++c) {
      cur.edges.push_back({pairs[k].first, pairs[k].second, c});
      if (mode == Ambient::Full || is_forest(cur)) rec(k + 1);
      cur.edges.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraElement::AlgebraElement(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode)
    : sig_(std::move(sig)), vertices_(std::move(vertices)), mode_(mode) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw UsageError("repeated vertex");
}

AlgebraElement AlgebraElement::unit(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode) {
  AlgebraElement x(std::move(sig), std::move(vertices), mode);
  x.add(GraphMonomial{}, 1);
  return x;
}

AlgebraElement AlgebraElement::word(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode,
                                    const std::vector<Factor>& w, const Rational& c) {
  AlgebraElement x(std::move(sig), std::move(vertices), mode);
  x.add_word(w, c);
  return x;
}

namespace {

Atom parse_atom(std::string_view s) {
  if (s == "*") return kStar;
  if (s == "#") return kHash;
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw UsageError("bad vertex: " + std::string(s));
  return static_cast<Atom>(std::stol(std::string(s)));
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

AlgebraElement AlgebraElement::parse(GraphSignaturePtr sig, std::vector<Atom> vertices, Ambient mode,
                                     std::string_view text) {
  AlgebraElement x(sig, std::move(vertices), mode);
  // Split on top-level + and -.
  std::vector<std::pair<int, std::string>> terms;
  int depth = 0;
  int sign = 1;
  std::string cur;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      if (!trim(cur).empty()) terms.emplace_back(sign, trim(cur));
      sign = ch == '-' ? -1 : 1;
      cur.clear();
      continue;
    }
    cur += ch;
  }
  if (depth != 0) throw UsageError("unbalanced parentheses");
  if (!trim(cur).empty()) terms.emplace_back(sign, trim(cur));
  if (terms.empty()) throw UsageError("empty expression");

  for (const auto& [sg, body] : terms) {
    Rational coeff = sg;
    std::size_t end = 0;
    while (end < body.size() && (std::isdigit(static_cast<unsigned char>(body[end])) || body[end] == '/')) ++end;
    std::string rest = trim(std::string_view(body).substr(end));
    if (end > 0) coeff *= Rational(body.substr(0, end));
    std::vector<Factor> w;
    std::size_t pos = 0;
    if (rest.empty() || rest == "1") {
      x.add(GraphMonomial{}, coeff);
      continue;
    }
    if (!rest.empty() && rest[0] == '*') rest = trim(std::string_view(rest).substr(1));
    while (pos < rest.size()) {
      while (pos < rest.size() && (std::isspace(static_cast<unsigned char>(rest[pos])) || rest[pos] == '*')) ++pos;
      if (pos >= rest.size()) break;
      std::size_t open = rest.find('(', pos);
      std::size_t close = rest.find(')', pos);
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw UsageError("bad factor in: " + body);
      const int color = sig->find(trim(std::string_view(rest).substr(pos, open - pos)));
      const std::string inside = rest.substr(open + 1, close - open - 1);
      const std::size_t comma = inside.find(',');
      if (comma == std::string::npos) throw UsageError("factor needs two vertices: " + body);
      w.push_back({parse_atom(trim(std::string_view(inside).substr(0, comma))),
                   parse_atom(trim(std::string_view(inside).substr(comma + 1))), color});
      pos = close + 1;
    }
    x.add_word(w, coeff);
  }
  return x;
}

void AlgebraElement::add(const GraphMonomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  for (const auto& e : m.edges)
    if (!std::binary_search(vertices_.begin(), vertices_.end(), e.u) ||
        !std::binary_search(vertices_.begin(), vertices_.end(), e.v))
      throw UsageError("edge endpoint outside the vertex set: " + graph::to_string(m, *sig_));
  if (mode_ == Ambient::Forest && !is_forest(m)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void AlgebraElement::add(const AlgebraElement& x, const Rational& c) {
  if (x.vertices_ != vertices_) throw UsageError("vertex sets differ");
  for (const auto& [m, v] : x.terms_) add(m, c * v);
}

void AlgebraElement::add_word(const std::vector<Factor>& w, const Rational& c) {
  const auto s = canonical_word(w, *sig_, mode_);
  if (s.sign != 0) add(s.monomial, c * s.sign);
}

std::vector<BiDegree> AlgebraElement::degrees() const {
  std::set<BiDegree> ds;
  for (const auto& [m, c] : terms_) ds.insert(degree(m, *sig_));
  return {ds.begin(), ds.end()};
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (sgn(c) < 0) s += first ? "-" : " - ";
    else if (!first) s += " + ";
    if (a != 1) s += a.get_str() + " ";
    s += graph::to_string(m, *sig_);
    first = false;
  }
  return s;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.vertices() != y.vertices()) throw UsageError("vertex sets differ");
  if (x.mode() != y.mode()) throw UsageError("ambient modes differ");
  AlgebraElement out(x.signature(), x.vertices(), x.mode());
  for (const auto& [m1, c1] : x.terms())
    for (const auto& [m2, c2] : y.terms()) {
      const auto s = multiply(m1, m2, *x.signature(), x.mode());
      if (s.sign != 0) out.add(s.monomial, c1 * c2 * s.sign);
    }
  return out;
}

AlgebraElement transport(const AlgebraElement& x, const std::vector<Atom>& target) {
  std::vector<Atom> t = target;
  std::sort(t.begin(), t.end());
  if (t.size() != x.vertices().size()) throw UsageError("transport between sets of different size");
  std::map<Atom, Atom> phi;
  for (std::size_t k = 0; k < t.size(); ++k) phi[x.vertices()[k]] = t[k];
  AlgebraElement out(x.signature(), t, x.mode());
  for (const auto& [m, c] : x.terms()) {
    GraphMonomial n = m;
    for (auto& e : n.edges) {
      e.u = phi.at(e.u);
      e.v = phi.at(e.v);
    }
    out.add(n, c);
  }
  return out;
}

AlgebraElement with_mode(const AlgebraElement& x, Ambient mode) {
  AlgebraElement out(x.signature(), x.vertices(), mode);
  for (const auto& [m, c] : x.terms()) out.add(m, c);
  return out;
}

std::uint64_t GraphPresentation::hash() const {
  std::ostringstream s;
  s << "graph-presentation 1\n" << name << "\n";
  for (const auto& c : signature->colors)
    s << c.name << " " << c.degree.h << " " << c.degree.w << " " << c.symmetry << "\n";
  for (const auto& f : families) s << f.name << "\n";
  return cache::fnv1a(s.str());
}

const GraphSignaturePtr& r_signature() {
  static const GraphSignaturePtr sig = std::make_shared<const GraphSignature>(
      GraphSignature{{{"a", {0, 1}, -1}, {"b", {1, 1}, -1}}});
  return sig;
}

const GraphSignaturePtr& arnold_signature() {
  static const GraphSignaturePtr sig =
      std::make_shared<const GraphSignature>(GraphSignature{{{"w", {1, 1}, 1}}});
  return sig;
}

namespace {

using Word = std::vector<Factor>;

AlgebraElement sum_of(const GraphSignaturePtr& sig, const std::vector<Atom>& vertices, Ambient mode,
                      const std::vector<Word>& words) {
  AlgebraElement x(sig, vertices, mode);
  for (const auto& w : words) x.add_word(w, 1);
  return x;
}

// All injective k-tuples from `vertices`, lexicographic.
std::vector<std::vector<Atom>> injections(const std::vector<Atom>& vertices, std::size_t k) {
  std::vector<std::vector<Atom>> out;
  std::vector<Atom> cur;
  std::vector<bool> used(vertices.size(), false);
  std::function<void()> rec = [&] {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(vertices[i]);
      rec();
      cur.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

// Instances over all injections, nonzero and distinct up to scalar.
std::vector<AlgebraElement> dedupe(std::vector<AlgebraElement> xs) {
  std::set<std::map<GraphMonomial, Rational>> seen;
  std::vector<AlgebraElement> out;
  for (auto& x : xs) {
    if (x.is_zero()) continue;
    const Rational lead = x.terms().begin()->second;
    std::map<GraphMonomial, Rational> key;
    for (const auto& [m, c] : x.terms()) key.emplace(m, c / lead);
    if (seen.insert(std::move(key)).second) out.push_back(std::move(x));
  }
  return out;
}

template <class Build>
RelationFamily fixed_family(std::string name, std::size_t k, Build build) {
  return {name, [k, build](const std::vector<Atom>& vs, Ambient mode) {
            std::vector<AlgebraElement> xs;
            if (vs.size() < k) return xs;
            for (const auto& idx : injections(vs, k)) xs.push_back(build(vs, mode, idx));
            return dedupe(std::move(xs));
          }};
}

RelationFamily cycle_family(std::string name, int first) {
  return {name, [first](const std::vector<Atom>& vs, Ambient mode) {
            std::vector<AlgebraElement> xs;
            for (std::size_t len = 3; len <= vs.size(); ++len)
              for (const auto& idx : injections(vs, len)) xs.push_back(cycle(vs, mode, idx, first));
            return dedupe(std::move(xs));
          }};
}

// Index orders of the twelve-term relations (permutations up to reversal).
constexpr int kTwelve[12][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 1, 3, 2}, {0, 3, 1, 2},
                                {0, 2, 3, 1}, {0, 3, 2, 1}, {1, 0, 2, 3}, {1, 2, 0, 3},
                                {1, 0, 3, 2}, {1, 3, 0, 2}, {2, 0, 1, 3}, {2, 1, 0, 3}};

AlgebraElement twelve(const std::vector<Atom>& vs, Ambient mode, const Atom (&x)[4], int middle) {
  std::vector<Word> words;
  for (const auto& p : kTwelve) {
    const Atom i = x[p[0]], j = x[p[1]], k = x[p[2]], l = x[p[3]];
    words.push_back({{i, j, kB}, {j, k, middle}, {k, l, kB}});
  }
  return sum_of(r_signature(), vs, mode, words);
}

}  // namespace

AlgebraElement relaa(const std::vector<Atom>& vs, Ambient mode, Atom i, Atom j, Atom k) {
  return sum_of(r_signature(), vs, mode,
                {{{i, j, kA}, {j, k, kA}}, {{j, k, kA}, {k, i, kA}}, {{k, i, kA}, {i, j, kA}}});
}

AlgebraElement relab(const std::vector<Atom>& vs, Ambient mode, Atom i, Atom j, Atom k) {
  return sum_of(r_signature(), vs, mode,
                {{{i, j, kB}, {j, k, kA}},
                 {{j, k, kB}, {k, i, kA}},
                 {{k, i, kB}, {i, j, kA}},
                 {{i, j, kA}, {j, k, kB}},
                 {{j, k, kA}, {k, i, kB}},
                 {{k, i, kA}, {i, j, kB}}});
}

AlgebraElement cycle(const std::vector<Atom>& vs, Ambient mode, const std::vector<Atom>& idx, int first) {
  if (idx.size() < 2) throw UsageError("a cycle needs at least two vertices");
  Word w;
  for (std::size_t t = 0; t < idx.size(); ++t)
    w.push_back({idx[t], idx[(t + 1) % idx.size()], t == 0 ? first : kB});
  return AlgebraElement::word(r_signature(), vs, mode, w);
}

AlgebraElement relbab(const std::vector<Atom>& vs, Ambient mode, Atom i, Atom j, Atom k, Atom l) {
  const Atom x[4] = {i, j, k, l};
  return twelve(vs, mode, x, kA);
}

AlgebraElement relbbb(const std::vector<Atom>& vs, Ambient mode, Atom i, Atom j, Atom k, Atom l) {
  const Atom x[4] = {i, j, k, l};
  return twelve(vs, mode, x, kB);
}

AlgebraElement arnold(const std::vector<Atom>& vs, Ambient mode, Atom i, Atom j, Atom k) {
  constexpr int w = 0;
  return sum_of(arnold_signature(), vs, mode,
                {{{i, j, w}, {j, k, w}}, {{j, k, w}, {k, i, w}}, {{k, i, w}, {i, j, w}}});
}

AlgebraElement path_sum(const std::vector<Atom>& vs, Ambient mode, const std::vector<Atom>& four, int c1,
                        int c2, int c3) {
  if (four.size() != 4) throw UsageError("path_sum needs four indices");
  std::vector<Atom> s = four;
  std::sort(s.begin(), s.end());
  std::vector<Word> words;
  do {
    words.push_back({{s[0], s[1], c1}, {s[1], s[2], c2}, {s[2], s[3], c3}});
  } while (std::next_permutation(s.begin(), s.end()));
  return sum_of(r_signature(), vs, mode, words);
}

AlgebraElement t_sum(const std::vector<Atom>& vs, Ambient mode, const std::vector<Atom>& four) {
  if (four.size() != 4) throw UsageError("t_sum needs four indices");
  std::vector<Word> words;
  for (Atom p : four)
    for (Atom q : four) {
      if (p == q) continue;
      std::vector<Atom> rest;
      for (Atom r : four)
        if (r != p && r != q) rest.push_back(r);
      words.push_back({{p, q, kB}, {p, rest[0], kA}, {p, rest[1], kA}});
    }
  return sum_of(r_signature(), vs, mode, words);
}

GraphPresentation r_presentation(bool with_twelve_term) {
  GraphPresentation p;
  p.name = with_twelve_term ? "R" : "R-no12";
  p.signature = r_signature();
  p.families.push_back(fixed_family("relaa", 3, [](const auto& vs, Ambient m, const auto& x) {
    return relaa(vs, m, x[0], x[1], x[2]);
  }));
  p.families.push_back(fixed_family("relab", 3, [](const auto& vs, Ambient m, const auto& x) {
    return relab(vs, m, x[0], x[1], x[2]);
  }));
  p.families.push_back(cycle_family("relabbn", kA));
  p.families.push_back(cycle_family("relbbbn", kB));
  if (with_twelve_term) {
    p.families.push_back(fixed_family("relbab", 4, [](const auto& vs, Ambient m, const auto& x) {
      return relbab(vs, m, x[0], x[1], x[2], x[3]);
    }));
    p.families.push_back(fixed_family("relbbb", 4, [](const auto& vs, Ambient m, const auto& x) {
      return relbbb(vs, m, x[0], x[1], x[2], x[3]);
    }));
  }
  return p;
}

GraphPresentation arnold_presentation() {
  GraphPresentation p;
  p.name = "Arnold";
  p.signature = arnold_signature();
  p.families.push_back(fixed_family("arnold", 3, [](const auto& vs, Ambient m, const auto& x) {
    return arnold(vs, m, x[0], x[1], x[2]);
  }));
  return p;
}

SparseVector GraphComponent::ambient_vector(const AlgebraElement& x) const {
  if (x.mode() != mode || x.vertices() != standard_labels(size))
    throw UsageError("element does not live on this component");
  std::vector<linear::Entry> es;
  es.reserve(x.terms().size());
  for (const auto& [m, c] : x.terms()) {
    auto it = ambient_index.find(m);
    if (it == ambient_index.end()) throw std::logic_error("monomial outside ambient");
    es.push_back({static_cast<Index>(it->second), c});
  }
  return linear::canonical(std::move(es));
}

GraphQuotient::GraphQuotient(GraphPresentation p, Limits limits,
                             std::optional<std::filesystem::path> cache_dir)
    : p_(std::move(p)), limits_(limits), cache_dir_(std::move(cache_dir)) {}

std::shared_ptr<const GraphComponent> GraphQuotient::component(std::size_t n, Ambient mode) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(n, mode);
  auto it = components_.find(key);
  if (it != components_.end()) return it->second;
  auto comp = build(n, mode);
  components_.emplace(key, comp);
  return comp;
}

std::vector<AlgebraElement> GraphQuotient::ideal_span(std::size_t n, Ambient mode) {
  const auto vs = standard_labels(n);
  const auto monomials = enumerate_graph_monomials(*p_.signature, vs, mode);
  std::vector<AlgebraElement> out;
  for (const auto& family : p_.families)
    for (const auto& r : family.instances(vs, mode))
      for (const auto& m : monomials) {
        AlgebraElement mx(p_.signature, vs, mode);
        mx.add(m, 1);
        auto y = r * mx;
        if (y.is_zero()) continue;
        out.push_back(std::move(y));
        if (out.size() > limits_.max_rows)
          throw ResourceError("ideal spanning set exceeds " + std::to_string(limits_.max_rows) + " rows");
      }
  return out;
}

std::shared_ptr<const GraphComponent> GraphQuotient::build(std::size_t n, Ambient mode) {
  if (n == 0) throw UsageError("vertex set must be nonempty");
  if (n > limits_.max_arity)
    throw ResourceError("size " + std::to_string(n) + " exceeds the configured bound " +
                        std::to_string(limits_.max_arity));
  const auto& sig = *p_.signature;
  auto comp = std::make_shared<GraphComponent>();
  comp->size = n;
  comp->mode = mode;
  comp->ambient = enumerate_graph_monomials(sig, standard_labels(n), mode);
  for (std::size_t i = 0; i < comp->ambient.size(); ++i) {
    comp->ambient_index.emplace(comp->ambient[i], i);
    comp->ambient_degree.push_back(degree(comp->ambient[i], sig));
  }
  const Index ncols = static_cast<Index>(comp->ambient.size());
  auto codes = [&] {
    std::vector<std::vector<std::int32_t>> out;
    for (const auto& m : comp->ambient) {
      std::vector<std::int32_t> code;
      for (const auto& e : m.edges) code.insert(code.end(), {e.u, e.v, e.color});
      out.push_back(std::move(code));
    }
    return out;
  };
  const std::string mode_name(to_string(mode));

  std::optional<linear::Echelon> reducer;
  if (cache_dir_) {
    if (auto rec = cache::read_record(*cache_dir_, "graph", p_.hash(), n, mode_name);
        rec && rec->monomials == codes()) {
      linear::EchelonBuilder b(ncols);
      for (const auto& row : rec->rows) b.add(row);
      reducer = std::move(b).finish();
    }
  }
  if (!reducer) {
    std::map<BiDegree, std::size_t> key;
    std::vector<std::size_t> block(ncols);
    for (Index i = 0; i < ncols; ++i) block[i] = key.emplace(comp->ambient_degree[i], key.size()).first->second;
    const auto span = ideal_span(n, mode);
    comp->spanning_rows = span.size();
    std::vector<SparseVector> rows;
    rows.reserve(span.size());
    for (const auto& x : span) rows.push_back(comp->ambient_vector(x));
    reducer = linear::rref_blockwise(ncols, block, rows);
    if (cache_dir_) {
      cache::Record rec;
      rec.kind = "graph";
      rec.presentation_hash = p_.hash();
      rec.arity = n;
      rec.mode = mode_name;
      rec.monomials = codes();
      rec.rows = reducer->rows;
      cache::write_record(*cache_dir_, rec);
    }
  }
  comp->quotient = linear::quotient_basis(std::move(*reducer));
  for (Index col : comp->quotient.basis) {
    comp->basis.push_back(comp->ambient[col]);
    comp->basis_degree.push_back(comp->ambient_degree[col]);
    comp->dims[comp->ambient_degree[col]] += 1;
  }
  return comp;
}

SparseVector GraphQuotient::normal_form(const AlgebraElement& x) {
  const std::size_t n = x.vertices().size();
  auto comp = component(n, x.mode());
  return comp->quotient.coordinates(comp->ambient_vector(transport(x, standard_labels(n))));
}

std::vector<GraphMonomial> GraphQuotient::basis(const std::vector<Atom>& vertices, Ambient mode) {
  auto comp = component(vertices.size(), mode);
  std::vector<GraphMonomial> out;
  for (std::size_t k = 0; k < comp->basis.size(); ++k)
    out.push_back(basis_element(vertices, k, mode).terms().begin()->first);
  return out;
}

AlgebraElement GraphQuotient::basis_element(const std::vector<Atom>& vertices, std::size_t k, Ambient mode) {
  auto comp = component(vertices.size(), mode);
  AlgebraElement x(p_.signature, standard_labels(vertices.size()), mode);
  x.add(comp->basis.at(k), 1);
  return transport(x, vertices);
}

AlgebraElement differential(const AlgebraElement& x, GraphDifferential which) {
  const auto& sig = *x.signature();
  const int from = which == GraphDifferential::d ? kA : kB;
  const int to = which == GraphDifferential::d ? kB : kA;
  if (sig.colors.size() != 2 || sig[kA].name != "a" || sig[kB].name != "b")
    throw UsageError("differentials are defined on the a/b algebra only");
  AlgebraElement out(x.signature(), x.vertices(), x.mode());
  for (const auto& [m, c] : x.terms()) {
    int odd_before = 0;
    for (std::size_t p = 0; p < m.edges.size(); ++p) {
      if (m.edges[p].color == from) {
        GraphMonomial n = m;
        n.edges[p].color = to;
        out.add(n, (odd_before & 1) ? Rational(-c) : c);
      }
      odd_before += sig[m.edges[p].color].degree.h;
    }
  }
  return out;
}

std::vector<CheckResult> differential_check(GraphQuotient& r, std::size_t n) {
  const auto vs = standard_labels(n);
  const std::string tag = "(n=" + std::to_string(n) + ")";
  CheckResult dd("R.d_squared_zero" + tag), pp("R.dprime_squared_zero" + tag),
      lap("R.laplacian_is_weight" + tag), dpres("R.d_preserves_ideal" + tag),
      ppres("R.dprime_preserves_ideal" + tag);
  auto fail = [](CheckResult& c, const std::string& w) {
    if (c.pass) c.witness = w;
    c.pass = false;
  };
  auto comp = r.component(n);
  for (std::size_t k = 0; k < comp->dim(); ++k) {
    const auto m = r.basis_element(vs, k);
    const auto w = comp->basis_degree[k].w;
    const auto dm = differential(m, GraphDifferential::d);
    const auto pm = differential(m, GraphDifferential::dprime);
    ++dd.checked;
    ++pp.checked;
    ++lap.checked;
    if (!linear::is_zero(r.normal_form(differential(dm, GraphDifferential::d)))) fail(dd, m.to_string());
    if (!linear::is_zero(r.normal_form(differential(pm, GraphDifferential::dprime)))) fail(pp, m.to_string());
    auto l = differential(pm, GraphDifferential::d);
    l.add(differential(dm, GraphDifferential::dprime));
    l.add(m, -w);
    if (!linear::is_zero(r.normal_form(l))) fail(lap, m.to_string());
  }
  for (const auto& family : r.presentation().families)
    for (const auto& inst : family.instances(vs, Ambient::Full)) {
      ++dpres.checked;
      ++ppres.checked;
      if (!linear::is_zero(r.normal_form(differential(inst, GraphDifferential::d))))
        fail(dpres, family.name + ": " + inst.to_string());
      if (!linear::is_zero(r.normal_form(differential(inst, GraphDifferential::dprime))))
        fail(ppres, family.name + ": " + inst.to_string());
    }
  return {dd, pp, lap, dpres, ppres};
}

std::vector<CheckResult> lemma_check(GraphQuotient& r) {
  const std::vector<Atom> vs{1, 2, 3, 4};
  std::vector<CheckResult> out;
  for (Ambient mode : {Ambient::Forest, Ambient::Full}) {
    const std::string tag = "(" + std::string(to_string(mode)) + ")";
    const std::vector<std::pair<std::string, AlgebraElement>> sums{
        {"R.lemma_sum_aab" + tag, path_sum(vs, mode, vs, kA, kA, kB)},
        {"R.lemma_sum_abb" + tag, path_sum(vs, mode, vs, kA, kB, kB)},
        {"R.lemma_sum_T" + tag, t_sum(vs, mode, vs)}};
    for (const auto& [name, x] : sums) {
      CheckResult c(name);
      c.checked = 1;
      c.note = std::to_string(x.terms().size()) + " distinct monomials";
      if (!linear::is_zero(r.normal_form(x))) {
        c.pass = false;
        c.witness = x.to_string();
      }
      out.push_back(c);
    }
  }
  return out;
}

std::vector<CheckResult> forest_check(GraphQuotient& q, std::size_t n) {
  const std::string tag = "(n=" + std::to_string(n) + ")";
  CheckResult same(q.presentation().name + ".forest_equals_full" + tag);
  CheckResult bound(q.presentation().name + ".weight_at_most_n_minus_1" + tag);
  auto forest = q.component(n, Ambient::Forest);
  auto full = q.component(n, Ambient::Full);
  same.checked = 1;
  same.pass = forest->dims == full->dims;
  same.note = to_string(forest->dims);
  if (!same.pass) same.witness = "forest " + to_string(forest->dims) + " full " + to_string(full->dims);
  for (std::size_t k = 0; k < full->dim(); ++k) {
    ++bound.checked;
    if (full->basis_degree[k].w > static_cast<int>(n) - 1 && bound.pass) {
      bound.pass = false;
      bound.witness = to_string(full->basis[k], *q.presentation().signature);
    }
  }
  return {same, bound};
}

std::vector<std::size_t> arnold_poincare(std::size_t n) {
  std::vector<std::size_t> c{1};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] += k * c[i];
    }
    c = std::move(next);
  }
  return c;
}

CheckResult arnold_check(GraphQuotient& arnold, std::size_t n) {
  CheckResult c("arnold.poincare(n=" + std::to_string(n) + ")");
  const auto expected = arnold_poincare(n);
  DimTable want;
  for (std::size_t k = 0; k < expected.size(); ++k) want[{static_cast<int>(k), static_cast<int>(k)}] = expected[k];
  for (Ambient mode : {Ambient::Forest, Ambient::Full}) {
    const auto& got = arnold.component(n, mode)->dims;
    ++c.checked;
    if (got != want && c.pass) {
      c.pass = false;
      c.witness = std::string(to_string(mode)) + " " + to_string(got) + " expected " + to_string(want);
    }
  }
  c.note = to_string(want);
  return c;
}

TwelveTermReport twelve_term_report(std::size_t n, const Limits& limits) {
  TwelveTermReport rep;
  rep.n = n;
  auto ranks = [&](bool with) {
    GraphQuotient q(r_presentation(with), limits);
    auto comp = q.component(n, Ambient::Full);
    DimTable t;
    for (auto p : comp->quotient.reducer.pivots) t[comp->ambient_degree[p]] += 1;
    return t;
  };
  rep.with = ranks(true);
  rep.without = ranks(false);
  return rep;
}

}  // namespace ramop::graph
