#include "ramop/cooperad.hpp"

#include <algorithm>
#include <set>

namespace ramop::cooperad {

using graph::Factor;
using graph::GraphDifferential;
using linear::Index;
using linear::SparseVector;

namespace {

int h_of(const GraphMonomial& m, const graph::GraphSignature& sig) { return graph::degree(m, sig).h; }

std::vector<Atom> sorted(std::vector<Atom> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Atom> with(std::vector<Atom> v, Atom a) {
  v.push_back(a);
  return sorted(std::move(v));
}

std::vector<Atom> join(const std::vector<Atom>& a, const std::vector<Atom>& b) {
  std::vector<Atom> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return sorted(std::move(out));
}

}  // namespace

void Tensor::add(const std::vector<GraphMonomial>& key, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

void Tensor::add(const Tensor& t, const Rational& c) {
  if (t.factors != factors) throw UsageError("tensor factors differ");
  for (const auto& [k, v] : t.terms) add(k, c * v);
}

std::string Tensor::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [key, c] : terms) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.get_str() + ") ";
    for (std::size_t k = 0; k < key.size(); ++k) {
      if (k) s += " (x) ";
      s += graph::to_string(key[k], *signature);
    }
  }
  return s;
}

Tensor as_tensor(const AlgebraElement& x) {
  Tensor t{x.signature(), x.mode(), {x.vertices()}, {}};
  for (const auto& [m, c] : x.terms()) t.add({m}, c);
  return t;
}

Tensor operator*(const Tensor& x, const Tensor& y) {
  if (x.factors != y.factors || x.mode != y.mode) throw UsageError("tensor shapes differ");
  const auto& sig = *x.signature;
  Tensor out{x.signature, x.mode, x.factors, {}};
  const std::size_t f = x.factors.size();
  for (const auto& [kx, cx] : x.terms)
    for (const auto& [ky, cy] : y.terms) {
      int sign = 1;
      std::vector<GraphMonomial> key(f);
      for (std::size_t a = 0; a < f && sign != 0; ++a) {
        const auto p = graph::multiply(kx[a], ky[a], sig, x.mode);
        sign *= p.sign;
        key[a] = p.monomial;
        for (std::size_t b = a + 1; b < f; ++b) sign *= koszul(h_of(kx[b], sig), h_of(ky[a], sig));
      }
      if (sign != 0) out.add(key, cx * cy * sign);
    }
  return out;
}

namespace {

// Theta of one monomial, as (sign, left, right).
struct Split {
  int sign = 0;
  GraphMonomial left;
  GraphMonomial right;
};

Split theta_monomial(const std::set<Atom>& in_i, const GraphMonomial& m, Atom star,
                     const graph::GraphSignature& sig, Ambient mode) {
  std::vector<Factor> left, right;
  int sign = 1;
  int h_right = 0;
  for (const auto& e : m.edges) {
    const int h = sig[e.color].degree.h;
    const bool ui = in_i.count(e.u) > 0;
    const bool vi = in_i.count(e.v) > 0;
    if (!ui && !vi) {
      right.push_back({e.u, e.v, e.color});
      h_right += h;
      continue;
    }
    if (ui && vi) left.push_back({e.u, e.v, e.color});
    else if (ui) left.push_back({e.u, star, e.color});
    else left.push_back({star, e.v, e.color});
    sign *= koszul(h_right, h);
  }
  const auto l = graph::canonical_word(left, sig, mode);
  const auto r = graph::canonical_word(right, sig, mode);
  return {sign * l.sign * r.sign, l.monomial, r.monomial};
}

void check_split(const std::vector<Atom>& I, const std::vector<Atom>& J, const std::vector<Atom>& vertices,
                 Atom star) {
  if (join(I, J) != vertices) throw UsageError("I and J must partition the vertex set");
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw UsageError("I and J must be disjoint");
  if (std::binary_search(vertices.begin(), vertices.end(), star))
    throw UsageError("place-holder already used as a vertex");
}

}  // namespace

Tensor theta(const std::vector<Atom>& I, const std::vector<Atom>& J, const AlgebraElement& x, Atom star) {
  check_split(I, J, x.vertices(), star);
  const std::set<Atom> in_i(I.begin(), I.end());
  Tensor out{x.signature(), x.mode(), {with(I, star), sorted(J)}, {}};
  for (const auto& [m, c] : x.terms()) {
    const auto s = theta_monomial(in_i, m, star, *x.signature(), x.mode());
    if (s.sign != 0) out.add({s.left, s.right}, c * s.sign);
  }
  return out;
}

Tensor theta_on_factor(const Tensor& t, std::size_t k, const std::vector<Atom>& I, const std::vector<Atom>& J,
                       Atom star) {
  check_split(I, J, t.factors.at(k), star);
  const std::set<Atom> in_i(I.begin(), I.end());
  Tensor out{t.signature, t.mode, {}, {}};
  for (std::size_t a = 0; a < t.factors.size(); ++a) {
    if (a == k) {
      out.factors.push_back(with(I, star));
      out.factors.push_back(sorted(J));
    } else {
      out.factors.push_back(t.factors[a]);
    }
  }
  for (const auto& [key, c] : t.terms) {
    const auto s = theta_monomial(in_i, key[k], star, *t.signature, t.mode);
    if (s.sign == 0) continue;
    std::vector<GraphMonomial> nk(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(k));
    nk.push_back(s.left);
    nk.push_back(s.right);
    nk.insert(nk.end(), key.begin() + static_cast<std::ptrdiff_t>(k) + 1, key.end());
    out.add(nk, c * s.sign);
  }
  return out;
}

Tensor swap_factors(const Tensor& t, std::size_t k) {
  Tensor out{t.signature, t.mode, t.factors, {}};
  std::swap(out.factors.at(k), out.factors.at(k + 1));
  for (const auto& [key, c] : t.terms) {
    auto nk = key;
    std::swap(nk[k], nk[k + 1]);
    out.add(nk, c * koszul(h_of(key[k], *t.signature), h_of(key[k + 1], *t.signature)));
  }
  return out;
}

Tensor differential_on_factor(const Tensor& t, std::size_t k, GraphDifferential which) {
  Tensor out{t.signature, t.mode, t.factors, {}};
  for (const auto& [key, c] : t.terms) {
    int h_before = 0;
    for (std::size_t a = 0; a < k; ++a) h_before += h_of(key[a], *t.signature);
    AlgebraElement x(t.signature, t.factors.at(k), t.mode);
    x.add(key[k], 1);
    const auto dx = graph::differential(x, which);
    for (const auto& [m, v] : dx.terms()) {
      auto nk = key;
      nk[k] = m;
      out.add(nk, c * v * koszul(h_before, 1));
    }
  }
  return out;
}

const SparseVector& TensorReducer::monomial(const std::vector<Atom>& vertices, Ambient mode,
                                            const GraphMonomial& m) {
  auto key = std::make_tuple(vertices, mode, m);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  AlgebraElement x(q_.presentation().signature, vertices, mode);
  x.add(m, 1);
  return memo_.emplace(std::move(key), q_.normal_form(x)).first->second;
}

CoordTensor TensorReducer::reduce(const Tensor& t) {
  CoordTensor out;
  for (const auto& [key, c] : t.terms) {
    // Expand the product of the factor coordinate vectors.
    std::vector<std::pair<std::vector<Index>, Rational>> partial{{{}, c}};
    for (std::size_t a = 0; a < key.size() && !partial.empty(); ++a) {
      const auto& v = monomial(t.factors[a], t.mode, key[a]);
      std::vector<std::pair<std::vector<Index>, Rational>> next;
      for (const auto& [idx, val] : partial)
        for (const auto& e : v) {
          auto ni = idx;
          ni.push_back(e.col);
          next.emplace_back(std::move(ni), val * e.value);
        }
      partial = std::move(next);
    }
    for (auto& [idx, val] : partial) {
      auto [it, inserted] = out.try_emplace(idx, val);
      if (!inserted) {
        it->second += val;
        if (sgn(it->second) == 0) out.erase(it);
      }
    }
  }
  return out;
}

std::vector<std::pair<std::vector<Atom>, std::vector<Atom>>> splits(const std::vector<Atom>& labels,
                                                                    bool nonempty_i) {
  std::vector<std::pair<std::vector<Atom>, std::vector<Atom>>> out;
  const std::size_t n = labels.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Atom> I, J;
    for (std::size_t b = 0; b < n; ++b) (((mask >> b) & 1) ? J : I).push_back(labels[b]);
    if (nonempty_i && I.empty()) continue;
    out.emplace_back(std::move(I), std::move(J));
  }
  return out;
}

namespace {

std::string set_name(const std::vector<Atom>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + atom_name(s[k]);
  return out + "}";
}

void fail(CheckResult& c, const std::string& w) {
  if (c.pass) c.witness = w;
  c.pass = false;
}

}  // namespace

CheckResult theta_relation_check(GraphQuotient& q, std::size_t n) {
  CheckResult c("theta.kills_relations(n=" + std::to_string(n) + ")");
  const auto vs = standard_labels(n);
  TensorReducer red(q);
  std::vector<std::pair<std::string, AlgebraElement>> instances;
  for (const auto& family : q.presentation().families)
    for (auto& r : family.instances(vs, Ambient::Full)) instances.emplace_back(family.name, std::move(r));
  for (const auto& [I, J] : splits(vs, true))
    for (const auto& [name, r] : instances) {
      ++c.checked;
      if (!red.reduce(theta(I, J, r)).empty())
        fail(c, "I=" + set_name(I) + " J=" + set_name(J) + " " + name + ": " + r.to_string());
    }
  return c;
}

std::vector<CheckResult> cooperad_axiom_check(GraphQuotient& q, std::size_t n) {
  const std::string tag = "(n=" + std::to_string(n) + ")";
  CheckResult first("cooperad.coassociativity" + tag), second("cooperad.tau_equation" + tag);
  const auto vs = standard_labels(n);
  TensorReducer red(q);
  std::vector<AlgebraElement> basis;
  for (std::size_t k = 0; k < q.component(n)->dim(); ++k) basis.push_back(q.basis_element(vs, k));

  std::size_t codes = 1;
  for (std::size_t k = 0; k < n; ++k) codes *= 3;
  for (std::size_t code = 0; code < codes; ++code) {
    std::vector<Atom> I, J, K;
    std::size_t c = code;
    for (Atom v : vs) {
      (c % 3 == 0 ? I : c % 3 == 1 ? J : K).push_back(v);
      c /= 3;
    }
    if (J.empty() || K.empty()) continue;
    const auto IJ = join(I, J), IK = join(I, K), JK = join(J, K);
    const std::string where = "I=" + set_name(I) + " J=" + set_name(J) + " K=" + set_name(K) + " x=";
    for (const auto& x : basis) {
      const auto by_hash = theta(IJ, K, x, kHash);
      const auto lhs1 = theta_on_factor(by_hash, 0, I, with(J, kHash), kStar);
      const auto rhs1 = theta_on_factor(theta(I, JK, x, kStar), 1, J, K, kHash);
      ++first.checked;
      if (red.reduce(lhs1) != red.reduce(rhs1)) fail(first, where + x.to_string());

      const auto lhs2 = theta_on_factor(by_hash, 0, with(I, kHash), J, kStar);
      const auto rhs2 = swap_factors(theta_on_factor(theta(IK, J, x, kStar), 0, with(I, kStar), K, kHash), 1);
      ++second.checked;
      if (red.reduce(lhs2) != red.reduce(rhs2)) fail(second, where + x.to_string());
    }
  }
  return {first, second};
}

std::vector<CheckResult> theta_differential_check(GraphQuotient& q, std::size_t n) {
  const std::string tag = "(n=" + std::to_string(n) + ")";
  CheckResult cd("theta.intertwines_d" + tag), cp("theta.intertwines_dprime" + tag);
  const auto vs = standard_labels(n);
  TensorReducer red(q);
  for (const auto& [I, J] : splits(vs, true))
    for (std::size_t k = 0; k < q.component(n)->dim(); ++k) {
      const auto x = q.basis_element(vs, k);
      const auto tx = theta(I, J, x);
      for (auto [which, check] : {std::pair{GraphDifferential::d, &cd}, std::pair{GraphDifferential::dprime, &cp}}) {
        auto rhs = differential_on_factor(tx, 0, which);
        rhs.add(differential_on_factor(tx, 1, which));
        ++check->checked;
        if (red.reduce(theta(I, J, graph::differential(x, which))) != red.reduce(rhs))
          fail(*check, "I=" + set_name(I) + " J=" + set_name(J) + " x=" + x.to_string());
      }
    }
  return {cd, cp};
}

CheckResult theta_morphism_check(GraphQuotient& q, std::size_t n, std::size_t stride) {
  CheckResult c("theta.algebra_morphism(n=" + std::to_string(n) + ")");
  if (stride == 0) stride = 1;
  const auto vs = standard_labels(n);
  TensorReducer red(q);
  std::vector<AlgebraElement> basis;
  for (std::size_t k = 0; k < q.component(n)->dim(); ++k) basis.push_back(q.basis_element(vs, k));
  std::size_t counter = 0;
  for (const auto& [I, J] : splits(vs, true))
    for (const auto& x : basis)
      for (const auto& y : basis) {
        if (counter++ % stride != 0) continue;
        ++c.checked;
        if (red.reduce(theta(I, J, x * y)) != red.reduce(theta(I, J, x) * theta(I, J, y)))
          fail(c, "I=" + set_name(I) + " J=" + set_name(J) + " x=" + x.to_string() + " y=" + y.to_string());
      }
  return c;
}

}  // namespace ramop::cooperad
