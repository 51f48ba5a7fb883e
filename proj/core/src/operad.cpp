#include "ramop/operad.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "ramop/cache.hpp"

namespace ramop::operad {

using linear::Index;
using linear::SparseVector;

int Signature::find(std::string_view name) const {
  for (std::size_t g = 0; g < generators.size(); ++g)
    if (generators[g].name == name) return static_cast<int>(g);
  throw UsageError("unknown generator '" + std::string(name) + "'");
}

TreeMonomial leaf(Atom a) { return TreeMonomial{{a}}; }

TreeMonomial node(int generator, const TreeMonomial& left, const TreeMonomial& right) {
  TreeMonomial t;
  t.code.reserve(1 + left.code.size() + right.code.size());
  t.code.push_back(generator_code(generator));
  t.code.insert(t.code.end(), left.code.begin(), left.code.end());
  t.code.insert(t.code.end(), right.code.begin(), right.code.end());
  return t;
}

std::size_t subtree_end(const std::vector<std::int32_t>& code, std::size_t pos) {
  std::size_t pending = 1;
  while (pending > 0) {
    pending += is_generator(code.at(pos)) ? 1 : -1;
    ++pos;
  }
  return pos;
}

std::vector<Atom> leaves(const TreeMonomial& t) {
  std::vector<Atom> out;
  for (auto c : t.code)
    if (!is_generator(c)) out.push_back(c);
  return out;
}

BiDegree degree(const TreeMonomial& t, const Signature& sig) {
  BiDegree d;
  for (auto c : t.code)
    if (is_generator(c)) d = d + sig[generator_of(c)].degree;
  return d;
}

namespace {

void print(const std::vector<std::int32_t>& code, std::size_t& pos, const Signature& sig,
           std::ostream& os) {
  const auto c = code[pos++];
  if (!is_generator(c)) {
    os << atom_name(c);
    return;
  }
  os << sig[generator_of(c)].name << "(";
  print(code, pos, sig, os);
  os << ",";
  print(code, pos, sig, os);
  os << ")";
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const Signature& sig;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("parse error at " + std::to_string(pos) + " in '" + std::string(text) +
                     "': " + what);
  }
  void expect(char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  void tree(std::vector<std::int32_t>& out) {
    skip();
    if (pos >= text.size()) fail("unexpected end");
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Atom a = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        a = a * 10 + (text[pos++] - '0');
      out.push_back(a);
      return;
    }
    if (c == '*') {
      ++pos;
      out.push_back(kStar);
      return;
    }
    if (c == '#') {
      ++pos;
      out.push_back(kHash);
      return;
    }
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string name(text.substr(start, pos - start));
    if (name == "\xCE\xA9") name = "W";  // Omega
    out.push_back(generator_code(sig.find(name)));
    expect('(');
    tree(out);
    expect(',');
    tree(out);
    expect(')');
  }
};

struct Canon {
  int sign = 1;
  std::vector<std::int32_t> code;
  Atom min_leaf = 0;
  int h = 0;
};

Canon canon(const std::vector<std::int32_t>& code, std::size_t& pos, const Signature& sig,
            std::set<Atom>& seen) {
  const auto c = code.at(pos++);
  if (!is_generator(c)) {
    if (!seen.insert(c).second) throw UsageError("repeated leaf label " + atom_name(c));
    return {1, {c}, c, 0};
  }
  const auto& g = sig[generator_of(c)];
  Canon left = canon(code, pos, sig, seen);
  Canon right = canon(code, pos, sig, seen);
  Canon out;
  out.sign = left.sign * right.sign;
  out.h = left.h + right.h + g.degree.h;
  if (right.min_leaf < left.min_leaf) {
    out.sign *= g.symmetry * koszul(left.h, right.h);
    std::swap(left, right);
  }
  out.min_leaf = left.min_leaf;
  out.code.reserve(1 + left.code.size() + right.code.size());
  out.code.push_back(c);
  out.code.insert(out.code.end(), left.code.begin(), left.code.end());
  out.code.insert(out.code.end(), right.code.begin(), right.code.end());
  return out;
}

}  // namespace

std::string to_string(const TreeMonomial& t, const Signature& sig) {
  std::ostringstream os;
  std::size_t pos = 0;
  print(t.code, pos, sig, os);
  return os.str();
}

TreeMonomial parse_tree(std::string_view text, const Signature& sig) {
  Parser p{text, 0, sig};
  TreeMonomial t;
  p.tree(t.code);
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  return t;
}

SignedTree canonicalize(const TreeMonomial& t, const Signature& sig) {
  std::size_t pos = 0;
  std::set<Atom> seen;
  Canon c = canon(t.code, pos, sig, seen);
  if (pos != t.code.size()) throw UsageError("malformed tree code");
  return {c.sign, TreeMonomial{std::move(c.code)}};
}

SignedTree compose(const TreeMonomial& x, const TreeMonomial& y, Atom slot, const Signature& sig) {
  auto it = std::find(x.code.begin(), x.code.end(), slot);
  if (it == x.code.end()) throw UsageError("composition slot " + atom_name(slot) + " not present");
  const std::size_t p = static_cast<std::size_t>(it - x.code.begin());
  int h_after = 0;
  for (std::size_t i = p + 1; i < x.code.size(); ++i)
    if (is_generator(x.code[i])) h_after += sig[generator_of(x.code[i])].degree.h;
  const int sign = koszul(degree(y, sig).h, h_after);
  TreeMonomial t;
  t.code.reserve(x.code.size() + y.code.size() - 1);
  t.code.insert(t.code.end(), x.code.begin(), it);
  t.code.insert(t.code.end(), y.code.begin(), y.code.end());
  t.code.insert(t.code.end(), it + 1, x.code.end());
  SignedTree c = canonicalize(t, sig);
  c.sign *= sign;
  return c;
}

OperadElement::OperadElement(SignaturePtr sig, std::vector<Atom> labels)
    : sig_(std::move(sig)), labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
    throw UsageError("repeated label in label set");
}

OperadElement OperadElement::monomial(SignaturePtr sig, const TreeMonomial& t, const Rational& c) {
  OperadElement x(sig, leaves(t));
  x.add(t, c);
  return x;
}

OperadElement OperadElement::parse(SignaturePtr sig, std::string_view text) {
  // Sum of optionally signed and scaled trees: "L(1,L(2,3)) - 2 L(2,L(3,1))".
  std::vector<std::pair<Rational, TreeMonomial>> parts;
  auto flush = [&](std::string piece, int sign) {
    const auto b = piece.find_first_not_of(' ');
    if (b == std::string::npos) {
      if (sign < 0) throw UsageError("dangling sign in '" + std::string(text) + "'");
      return;
    }
    piece = piece.substr(b, piece.find_last_not_of(' ') - b + 1);
    Rational coeff = sign;
    if (const auto sp = piece.find(' '); sp != std::string::npos && piece.find('(') > sp) {
      Rational c(piece.substr(0, sp));
      c.canonicalize();
      coeff *= c;
      piece = piece.substr(sp + 1);
    }
    parts.emplace_back(coeff, parse_tree(piece, *sig));
  };
  std::string piece;
  int sign = 1, depth = 0;
  for (char c : text) {
    if (depth == 0 && (c == '+' || c == '-')) {
      flush(piece, sign);
      piece.clear();
      sign = c == '-' ? -1 : 1;
      continue;
    }
    depth += c == '(' ? 1 : c == ')' ? -1 : 0;
    piece.push_back(c);
  }
  flush(piece, sign);
  if (parts.empty()) throw UsageError("empty element");
  OperadElement x(sig, leaves(parts.front().second));
  for (const auto& [c, t] : parts) x.add(t, c);
  return x;
}

void OperadElement::add(const TreeMonomial& t, const Rational& c) {
  if (sgn(c) == 0) return;
  SignedTree s = canonicalize(t, *sig_);
  auto lv = leaves(s.tree);
  std::sort(lv.begin(), lv.end());
  if (lv != labels_) throw UsageError("tree labels do not match the element's label set");
  auto [it, inserted] = terms_.try_emplace(std::move(s.tree), 0);
  if (s.sign > 0)
    it->second += c;
  else
    it->second -= c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

void OperadElement::add(const OperadElement& x, const Rational& c) {
  if (x.labels_ != labels_) throw UsageError("label sets differ");
  if (sgn(c) == 0) return;
  for (const auto& [t, v] : x.terms_) {
    auto [it, inserted] = terms_.try_emplace(t, 0);
    it->second += c * v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::vector<BiDegree> OperadElement::degrees() const {
  std::set<BiDegree> s;
  for (const auto& [t, v] : terms_) s.insert(degree(t, *sig_));
  return {s.begin(), s.end()};
}

std::string OperadElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, v] : terms_) {
    const bool neg = sgn(v) < 0;
    Rational a = neg ? Rational(-v) : v;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (a != 1) os << a.get_str() << " ";
    os << operad::to_string(t, *sig_);
  }
  return os.str();
}

OperadElement compose(const OperadElement& x, const OperadElement& y, Atom slot) {
  if (!std::binary_search(x.labels().begin(), x.labels().end(), slot))
    throw UsageError("composition slot " + atom_name(slot) + " not a label of the outer element");
  std::vector<Atom> labels;
  for (Atom a : x.labels())
    if (a != slot) labels.push_back(a);
  for (Atom a : y.labels()) {
    if (std::binary_search(x.labels().begin(), x.labels().end(), a) && a != slot)
      throw UsageError("label collision on " + atom_name(a));
    labels.push_back(a);
  }
  OperadElement out(x.signature(), labels);
  const auto& sig = *x.signature();
  for (const auto& [tx, cx] : x.terms()) {
    for (const auto& [ty, cy] : y.terms()) {
      SignedTree s = compose(tx, ty, slot, sig);
      out.add(s.tree, s.sign > 0 ? Rational(cx * cy) : Rational(-cx * cy));
    }
  }
  return out;
}

OperadElement relabel(const OperadElement& x, const std::map<Atom, Atom>& phi) {
  std::vector<Atom> image;
  for (Atom a : x.labels()) {
    auto it = phi.find(a);
    if (it == phi.end()) throw UsageError("relabelling undefined on " + atom_name(a));
    image.push_back(it->second);
  }
  std::vector<Atom> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("relabelling is not a bijection");
  OperadElement out(x.signature(), image);
  for (const auto& [t, c] : x.terms()) {
    TreeMonomial u = t;
    for (auto& v : u.code)
      if (!is_generator(v)) v = phi.at(v);
    out.add(u, c);
  }
  return out;
}

OperadElement transport(const OperadElement& x, const std::vector<Atom>& target) {
  std::vector<Atom> to = target;
  std::sort(to.begin(), to.end());
  if (to.size() != x.labels().size()) throw UsageError("transport between label sets of different size");
  if (to == x.labels()) return x;
  std::map<Atom, Atom> phi;
  for (std::size_t i = 0; i < to.size(); ++i) phi[x.labels()[i]] = to[i];
  return relabel(x, phi);
}

std::string Presentation::canonical_text() const {
  std::ostringstream os;
  os << "presentation " << name << "\n";
  for (int g : generators) {
    const auto& spec = (*signature)[g];
    os << "generator " << spec.name << " " << to_string(spec.degree) << " " << spec.symmetry << "\n";
  }
  for (std::size_t r = 0; r < relations.size(); ++r)
    os << "relation " << (r < relation_names.size() ? relation_names[r] : "?") << " "
       << relations[r].to_string() << "\n";
  return os.str();
}

std::uint64_t Presentation::hash() const { return cache::fnv1a(canonical_text()); }

namespace {

void trees_on(const Presentation& p, const std::vector<Atom>& labels,
              std::map<std::vector<Atom>, std::vector<TreeMonomial>>& memo) {
  if (memo.count(labels)) return;
  std::vector<TreeMonomial> out;
  if (labels.size() == 1) {
    out.push_back(leaf(labels.front()));
  } else {
    // The minimal label goes left; every other label is split freely.
    const std::size_t rest = labels.size() - 1;
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
      std::vector<Atom> left{labels.front()}, right;
      for (std::size_t i = 0; i < rest; ++i)
        ((mask >> i) & 1 ? left : right).push_back(labels[i + 1]);
      trees_on(p, left, memo);
      trees_on(p, right, memo);
      for (int g : p.generators)
        for (const auto& l : memo.at(left))
          for (const auto& r : memo.at(right)) out.push_back(node(g, l, r));
    }
  }
  memo.emplace(labels, std::move(out));
}

}  // namespace

std::vector<TreeMonomial> enumerate_tree_monomials(const Presentation& p,
                                                   const std::vector<Atom>& labels,
                                                   std::optional<BiDegree> filter) {
  if (labels.empty()) throw UsageError("empty label set");
  std::vector<Atom> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  std::map<std::vector<Atom>, std::vector<TreeMonomial>> memo;
  trees_on(p, sorted, memo);
  std::vector<TreeMonomial> out;
  for (auto& t : memo.at(sorted))
    if (!filter || degree(t, *p.signature) == *filter) out.push_back(std::move(t));
  std::sort(out.begin(), out.end());
  return out;
}

SparseVector OperadComponent::ambient_vector(const OperadElement& x) const {
  std::vector<linear::Entry> entries;
  entries.reserve(x.terms().size());
  for (const auto& [t, c] : x.terms()) {
    auto it = ambient_index.find(t);
    if (it == ambient_index.end()) throw UsageError("monomial outside the presentation's ambient");
    entries.push_back({static_cast<Index>(it->second), c});
  }
  return linear::canonical(std::move(entries));
}

OperadElement OperadComponent::element(const SparseVector& v, const SignaturePtr& sig) const {
  OperadElement x(sig, standard_labels(arity));
  for (const auto& e : v) x.add(ambient[e.col], e.value);
  return x;
}

OperadQuotient::OperadQuotient(Presentation p, Limits limits,
                               std::optional<std::filesystem::path> cache_dir)
    : p_(std::move(p)), limits_(limits), cache_dir_(std::move(cache_dir)) {}

std::shared_ptr<const OperadComponent> OperadQuotient::component(std::size_t n) {
  std::lock_guard lock(mutex_);
  if (auto it = components_.find(n); it != components_.end()) return it->second;
  auto c = build(n);
  components_.emplace(n, c);
  return c;
}

std::vector<OperadElement> OperadQuotient::ideal_basis(const std::vector<Atom>& labels) {
  auto comp = component(labels.size());
  std::vector<OperadElement> out;
  for (const auto& row : comp->quotient.reducer.rows)
    out.push_back(transport(comp->element(row, p_.signature), labels));
  return out;
}

std::vector<OperadElement> OperadQuotient::ideal_span(std::size_t n) {
  if (n < 3) return {};
  if (n > limits_.max_arity)
    throw ResourceError("arity " + std::to_string(n) + " exceeds the configured bound " +
                        std::to_string(limits_.max_arity));
  const auto& sig = p_.signature;
  const std::vector<Atom> labels = standard_labels(n);
  std::vector<OperadElement> out;
  auto push = [&](OperadElement x) {
    if (x.is_zero()) return;
    if (out.size() >= limits_.max_rows)
      throw ResourceError("ideal span on " + std::to_string(n) + " labels exceeds " +
                          std::to_string(limits_.max_rows) + " rows (generated " +
                          std::to_string(out.size()) + " so far)");
    out.push_back(std::move(x));
  };

  std::map<std::vector<Atom>, std::vector<TreeMonomial>> monomials;
  auto monomials_on = [&](const std::vector<Atom>& s) -> const std::vector<TreeMonomial>& {
    auto it = monomials.find(s);
    if (it == monomials.end()) it = monomials.emplace(s, enumerate_tree_monomials(p_, s)).first;
    return it->second;
  };

  // (i) a generator on top of a lower-arity ideal element and a monomial.
  for (const auto& s : subsets(labels)) {
    if (s.size() < 3 || s.size() >= n) continue;
    std::vector<Atom> rest;
    std::set_difference(labels.begin(), labels.end(), s.begin(), s.end(), std::back_inserter(rest));
    const auto lower = ideal_basis(s);
    for (int g : p_.generators) {
      const auto top = OperadElement::monomial(sig, node(g, leaf(kStar), leaf(kHash)));
      for (const auto& r : lower) {
        const auto partial = compose(top, r, kStar);
        for (const auto& m : monomials_on(rest))
          push(compose(partial, OperadElement::monomial(sig, m), kHash));
      }
    }
  }

  // (ii) a relation with monomials grafted into its three inputs.
  const Atom slots[3] = {kScratch, kScratch + 1, kScratch + 2};
  std::size_t assignments = 1;
  for (std::size_t i = 0; i < n; ++i) assignments *= 3;
  for (const auto& rel : p_.relations) {
    const auto r = relabel(rel, {{1, slots[0]}, {2, slots[1]}, {3, slots[2]}});
    for (std::size_t code = 0; code < assignments; ++code) {
      std::vector<Atom> blocks[3];
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) blocks[c % 3].push_back(labels[i]);
      if (blocks[0].empty() || blocks[1].empty() || blocks[2].empty()) continue;
      for (const auto& m0 : monomials_on(blocks[0])) {
        const auto x0 = compose(r, OperadElement::monomial(sig, m0), slots[0]);
        for (const auto& m1 : monomials_on(blocks[1])) {
          const auto x1 = compose(x0, OperadElement::monomial(sig, m1), slots[1]);
          for (const auto& m2 : monomials_on(blocks[2]))
            push(compose(x1, OperadElement::monomial(sig, m2), slots[2]));
        }
      }
    }
  }
  return out;
}

std::shared_ptr<const OperadComponent> OperadQuotient::build(std::size_t n) {
  if (n == 0) throw UsageError("arity must be at least 1");
  if (n > limits_.max_arity)
    throw ResourceError("arity " + std::to_string(n) + " exceeds the configured bound " +
                        std::to_string(limits_.max_arity));
  const auto& sig = *p_.signature;
  auto comp = std::make_shared<OperadComponent>();
  comp->arity = n;
  comp->ambient = enumerate_tree_monomials(p_, standard_labels(n));
  for (std::size_t i = 0; i < comp->ambient.size(); ++i) {
    comp->ambient_index.emplace(comp->ambient[i], i);
    comp->ambient_degree.push_back(degree(comp->ambient[i], sig));
  }
  const Index ncols = static_cast<Index>(comp->ambient.size());

  std::optional<linear::Echelon> loaded;
  if (cache_dir_) {
    if (auto rec = cache::read_record(*cache_dir_, "operad", p_.hash(), n, "-")) {
      bool same = rec->monomials.size() == comp->ambient.size();
      for (std::size_t i = 0; same && i < rec->monomials.size(); ++i)
        same = rec->monomials[i] == comp->ambient[i].code;
      if (same) {
        linear::EchelonBuilder b(ncols);
        for (const auto& row : rec->rows) b.add(row);
        loaded = std::move(b).finish();
      }
    }
  }

  linear::Echelon reducer;
  if (loaded) {
    reducer = std::move(*loaded);
  } else {
    std::map<BiDegree, std::size_t> key;
    std::vector<std::size_t> block(ncols);
    for (Index i = 0; i < ncols; ++i) block[i] = key.emplace(comp->ambient_degree[i], key.size()).first->second;
    const auto span = ideal_span(n);
    comp->spanning_rows = span.size();
    std::vector<SparseVector> rows;
    rows.reserve(span.size());
    for (const auto& x : span) rows.push_back(comp->ambient_vector(x));
    reducer = linear::rref_blockwise(ncols, block, rows);
    if (cache_dir_) {
      cache::Record rec;
      rec.kind = "operad";
      rec.presentation_hash = p_.hash();
      rec.arity = n;
      rec.mode = "-";
      for (const auto& t : comp->ambient) rec.monomials.push_back(t.code);
      rec.rows = reducer.rows;
      cache::write_record(*cache_dir_, rec);
    }
  }

  comp->quotient = linear::quotient_basis(std::move(reducer));
  for (Index col : comp->quotient.basis) {
    comp->basis.push_back(comp->ambient[col]);
    comp->basis_degree.push_back(comp->ambient_degree[col]);
    comp->dims[comp->ambient_degree[col]] += 1;
  }
  return comp;
}

SparseVector OperadQuotient::normal_form(const OperadElement& x) {
  auto comp = component(x.labels().size());
  const auto std_x = transport(x, standard_labels(x.labels().size()));
  return comp->quotient.coordinates(comp->ambient_vector(std_x));
}

std::vector<TreeMonomial> OperadQuotient::basis(const std::vector<Atom>& labels) {
  auto comp = component(labels.size());
  std::vector<TreeMonomial> out;
  for (const auto& t : comp->basis) {
    auto x = transport(OperadElement::monomial(p_.signature, t), labels);
    out.push_back(x.terms().begin()->first);
  }
  return out;
}

}  // namespace ramop::operad
