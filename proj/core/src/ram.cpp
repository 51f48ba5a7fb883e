#include "ramop/ram.hpp"

#include <functional>
#include <sstream>

namespace ramop::ram {

using linear::SparseVector;
using TreeTensor = std::map<std::vector<TreeMonomial>, Rational>;

const operad::SignaturePtr& signature() {
  static const operad::SignaturePtr sig = std::make_shared<const operad::Signature>(
      operad::Signature{{{"E", {0, 0}, +1}, {"L", {0, 1}, -1}, {"W", {1, 1}, -1}}});
  return sig;
}

namespace {

OperadElement gen(int g, Atom a, Atom b) {
  return OperadElement::monomial(signature(), operad::node(g, operad::leaf(a), operad::leaf(b)));
}

/// g1_{a,*} o_* g2_{b,c}
OperadElement circ(int g1, Atom a, int g2, Atom b, Atom c) {
  return operad::compose(gen(g1, a, kStar), gen(g2, b, c), kStar);
}

constexpr Atom kCycles[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};

}  // namespace

OperadElement relation(std::string_view family) {
  OperadElement r(signature(), {1, 2, 3});
  if (family == "associatif") {
    r.add(circ(kE, 1, kE, 2, 3));
    r.add(circ(kE, 2, kE, 3, 1), -1);
  } else if (family == "jacobi") {
    for (const auto& c : kCycles) r.add(circ(kL, c[0], kL, c[1], c[2]));
  } else if (family == "mixte") {
    for (const auto& c : kCycles) {
      r.add(circ(kW, c[0], kL, c[1], c[2]));
      r.add(circ(kL, c[0], kW, c[1], c[2]));
    }
  } else if (family == "leibniz" || family == "bessel") {
    const int g = family == "leibniz" ? kL : kW;
    r.add(circ(g, 1, kE, 2, 3));
    r.add(circ(kE, 2, g, 1, 3), -1);
    r.add(circ(kE, 3, g, 1, 2), -1);
  } else {
    throw UsageError("unknown relation family '" + std::string(family) + "'");
  }
  return r;
}

std::vector<std::string> presentation_names() {
  return {"com", "lie", "sgriess", "liegriess", "poisson", "bessel", "ram"};
}

operad::Presentation presentation(std::string_view which) {
  operad::Presentation p;
  p.name = std::string(which);
  p.signature = signature();
  std::vector<std::string> families;
  if (which == "com") {
    p.generators = {kE};
    families = {"associatif"};
  } else if (which == "lie") {
    p.generators = {kL};
    families = {"jacobi"};
  } else if (which == "sgriess") {
    p.generators = {kW};
  } else if (which == "liegriess") {
    p.generators = {kL, kW};
    families = {"jacobi", "mixte"};
  } else if (which == "poisson") {
    p.generators = {kE, kL};
    families = {"associatif", "jacobi", "leibniz"};
  } else if (which == "bessel") {
    p.generators = {kE, kW};
    families = {"associatif", "bessel"};
  } else if (which == "ram") {
    p.generators = {kE, kL, kW};
    families = {"associatif", "jacobi", "mixte", "leibniz", "bessel"};
  } else {
    throw UsageError("unknown presentation '" + std::string(which) + "'");
  }
  for (const auto& f : families) {
    p.relations.push_back(relation(f));
    p.relation_names.push_back(f);
  }
  return p;
}

std::shared_ptr<OperadQuotient> make_quotient(std::string_view which, Limits limits,
                                              std::optional<std::filesystem::path> cache) {
  return std::make_shared<OperadQuotient>(presentation(which), limits, std::move(cache));
}

DimTable ram_dims(OperadQuotient& q, std::size_t n) { return q.component(n)->dims; }

void TensorElement2::add(const TreeMonomial& a, const TreeMonomial& b, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace({a, b}, 0);
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

namespace {

const std::vector<std::pair<int, int>>& generator_coproduct(int g) {
  static const std::vector<std::pair<int, int>> rules[3] = {
      {{kE, kE}},
      {{kE, kL}, {kL, kE}},
      {{kE, kW}, {kW, kE}},
  };
  return rules[g];
}

void add_term(TreeTensor& t, std::vector<TreeMonomial> key, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = t.try_emplace(std::move(key), 0);
  it->second += c;
  if (sgn(it->second) == 0) t.erase(it);
}

/// Coproduct of a single canonical tree, as (sign, left, right) triples.
void coproduct_tree(const TreeMonomial& t, const std::function<void(int, TreeMonomial, TreeMonomial)>& emit) {
  const auto& sig = *signature();
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < t.code.size(); ++i)
    if (operad::is_generator(t.code[i])) nodes.push_back(i);
  TreeMonomial left = t, right = t;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t k, int h_right_before, int sign) {
    if (k == nodes.size()) {
      emit(sign, left, right);
      return;
    }
    const std::size_t pos = nodes[k];
    for (const auto& [a, b] : generator_coproduct(operad::generator_of(t.code[pos]))) {
      left.code[pos] = operad::generator_code(a);
      right.code[pos] = operad::generator_code(b);
      const int s = sign * koszul(h_right_before, sig[a].degree.h);
      rec(k + 1, h_right_before + sig[b].degree.h, s);
    }
  };
  rec(0, 0, 1);
}

TreeTensor coproduct_tensor(const OperadElement& x) {
  TreeTensor out;
  for (const auto& [t, c] : x.terms())
    coproduct_tree(t, [&](int s, TreeMonomial l, TreeMonomial r) {
      add_term(out, {std::move(l), std::move(r)}, s > 0 ? c : Rational(-c));
    });
  return out;
}

int tree_h(const TreeMonomial& t) { return operad::degree(t, *signature()).h; }

OperadElement as_element(const TreeMonomial& t) { return OperadElement::monomial(signature(), t); }

/// Applies f to factor `pos` of every term; f returns an element, and the
/// Koszul sign for passing an operator of parity `op_h` over the preceding
/// factors is included.
TreeTensor apply_on_factor(const TreeTensor& t, std::size_t pos, int op_h,
                           const std::function<OperadElement(const TreeMonomial&)>& f) {
  TreeTensor out;
  for (const auto& [key, c] : t) {
    int before = 0;
    for (std::size_t i = 0; i < pos; ++i) before += tree_h(key[i]);
    const Rational cs = koszul(op_h, before) > 0 ? c : Rational(-c);
    const OperadElement image = f(key[pos]);
    for (const auto& [u, cu] : image.terms()) {
      auto k2 = key;
      k2[pos] = u;
      add_term(out, std::move(k2), cs * cu);
    }
  }
  return out;
}

/// Splits factor `pos` by the coproduct, producing one more factor.
TreeTensor split_factor(const TreeTensor& t, std::size_t pos) {
  TreeTensor out;
  for (const auto& [key, c] : t) {
    coproduct_tree(key[pos], [&](int s, TreeMonomial l, TreeMonomial r) {
      std::vector<TreeMonomial> k2;
      for (std::size_t i = 0; i < key.size(); ++i) {
        if (i == pos) {
          k2.push_back(l);
          k2.push_back(r);
        } else {
          k2.push_back(key[i]);
        }
      }
      add_term(out, std::move(k2), s > 0 ? c : Rational(-c));
    });
  }
  return out;
}

CoordTensor tensor_normal_form(OperadQuotient& q, const TreeTensor& t) {
  std::map<TreeMonomial, SparseVector> memo;
  auto nf = [&](const TreeMonomial& u) -> const SparseVector& {
    auto it = memo.find(u);
    if (it == memo.end()) it = memo.emplace(u, q.normal_form(as_element(u))).first;
    return it->second;
  };
  CoordTensor out;
  for (const auto& [key, c] : t) {
    // Expand the tensor product of coordinate vectors.
    std::vector<std::pair<std::vector<linear::Index>, Rational>> acc{{{}, c}};
    for (const auto& u : key) {
      const auto& v = nf(u);
      std::vector<std::pair<std::vector<linear::Index>, Rational>> next;
      for (const auto& [idx, val] : acc)
        for (const auto& e : v) {
          auto i2 = idx;
          i2.push_back(e.col);
          next.emplace_back(std::move(i2), val * e.value);
        }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    for (auto& [idx, val] : acc) {
      auto [it, inserted] = out.try_emplace(std::move(idx), 0);
      it->second += val;
      if (sgn(it->second) == 0) out.erase(it);
    }
  }
  return out;
}

std::string describe(const CoordTensor& t) {
  std::ostringstream os;
  std::size_t shown = 0;
  for (const auto& [k, v] : t) {
    if (shown++ == 4) {
      os << " ...";
      break;
    }
    os << " " << v.get_str() << "*[";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << "]";
  }
  return os.str();
}

OperadElement scaled(const OperadElement& x, const Rational& c) {
  OperadElement out(x.signature(), x.labels());
  out.add(x, c);
  return out;
}

}  // namespace

TensorElement2 coproduct(const OperadElement& x) {
  TensorElement2 out;
  out.labels = x.labels();
  for (const auto& [key, c] : coproduct_tensor(x)) out.add(key[0], key[1], c);
  return out;
}

OperadElement differential(const OperadElement& x, Differential which) {
  const auto& sig = *signature();
  const int from = which == Differential::D ? kW : kL;
  const int to = which == Differential::D ? kL : kW;
  OperadElement out(x.signature(), x.labels());
  for (const auto& [t, c] : x.terms()) {
    int h_before = 0;
    for (std::size_t i = 0; i < t.code.size(); ++i) {
      if (!operad::is_generator(t.code[i])) continue;
      const int g = operad::generator_of(t.code[i]);
      if (g == from) {
        TreeMonomial u = t;
        u.code[i] = operad::generator_code(to);
        out.add(u, (h_before & 1) ? Rational(-c) : c);
      }
      h_before += sig[g].degree.h;
    }
  }
  return out;
}

CoordTensor normal_form(OperadQuotient& q, const TensorElement2& t) {
  TreeTensor tt;
  for (const auto& [key, c] : t.terms) add_term(tt, {key.first, key.second}, c);
  return tensor_normal_form(q, tt);
}

std::vector<CheckResult> hopf_check(OperadQuotient& q, std::size_t n) {
  const auto labels = standard_labels(n);
  const auto comp = q.component(n);
  const auto& sig = *signature();
  std::vector<CheckResult> out;

  CheckResult kill{"hopf.coproduct_kills_relations(n=" + std::to_string(n) + ")"};
  for (const auto& r : q.ideal_basis(labels)) {
    ++kill.checked;
    const auto nf = tensor_normal_form(q, coproduct_tensor(r));
    if (!nf.empty() && kill.pass) {
      kill.pass = false;
      kill.witness = "Delta(" + r.to_string() + ") ->" + describe(nf);
    }
  }
  out.push_back(kill);

  CheckResult coassoc{"hopf.coassociativity(n=" + std::to_string(n) + ")"};
  CheckResult coder_d{"hopf.D_coderivation(n=" + std::to_string(n) + ")"};
  CheckResult coder_dp{"hopf.Dprime_coderivation(n=" + std::to_string(n) + ")"};
  for (const auto& b : comp->basis) {
    const auto x = as_element(b);
    const TreeTensor delta = coproduct_tensor(x);

    ++coassoc.checked;
    auto lhs = tensor_normal_form(q, split_factor(delta, 0));
    auto rhs = tensor_normal_form(q, split_factor(delta, 1));
    if (lhs != rhs && coassoc.pass) {
      coassoc.pass = false;
      coassoc.witness = to_string(b, sig);
    }

    for (auto which : {Differential::D, Differential::Dprime}) {
      auto& res = which == Differential::D ? coder_d : coder_dp;
      ++res.checked;
      const auto d = [which](const TreeMonomial& u) { return differential(as_element(u), which); };
      auto left = tensor_normal_form(q, coproduct_tensor(differential(x, which)));
      TreeTensor sum = apply_on_factor(delta, 0, 1, d);
      for (const auto& [key, c] : apply_on_factor(delta, 1, 1, d)) add_term(sum, key, c);
      auto right = tensor_normal_form(q, sum);
      if (left != right && res.pass) {
        res.pass = false;
        res.witness = to_string(b, sig);
      }
    }
  }
  out.push_back(coassoc);
  out.push_back(coder_d);
  out.push_back(coder_dp);
  return out;
}

std::vector<CheckResult> differential_check(OperadQuotient& q, std::size_t n) {
  const auto labels = standard_labels(n);
  const auto comp = q.component(n);
  const std::string tag = "(n=" + std::to_string(n) + ")";
  CheckResult dd{"ram.D_squared_zero" + tag}, dpdp{"ram.Dprime_squared_zero" + tag};
  CheckResult lap{"ram.laplacian_is_weight" + tag};
  CheckResult ideal_d{"ram.D_preserves_ideal" + tag}, ideal_dp{"ram.Dprime_preserves_ideal" + tag};

  for (std::size_t i = 0; i < comp->basis.size(); ++i) {
    const auto x = as_element(comp->basis[i]);
    const auto dx = differential(x, Differential::D);
    const auto dpx = differential(x, Differential::Dprime);
    ++dd.checked;
    if (!q.normal_form(differential(dx, Differential::D)).empty() && dd.pass) {
      dd.pass = false;
      dd.witness = x.to_string();
    }
    ++dpdp.checked;
    if (!q.normal_form(differential(dpx, Differential::Dprime)).empty() && dpdp.pass) {
      dpdp.pass = false;
      dpdp.witness = x.to_string();
    }
    ++lap.checked;
    auto anti = differential(dpx, Differential::D);
    anti.add(differential(dx, Differential::Dprime));
    anti.add(scaled(x, -comp->basis_degree[i].w));
    if (!q.normal_form(anti).empty() && lap.pass) {
      lap.pass = false;
      lap.witness = x.to_string();
    }
  }
  for (const auto& r : q.ideal_basis(labels)) {
    ++ideal_d.checked;
    ++ideal_dp.checked;
    if (!q.normal_form(differential(r, Differential::D)).empty() && ideal_d.pass) {
      ideal_d.pass = false;
      ideal_d.witness = r.to_string();
    }
    if (!q.normal_form(differential(r, Differential::Dprime)).empty() && ideal_dp.pass) {
      ideal_dp.pass = false;
      ideal_dp.witness = r.to_string();
    }
  }
  return {dd, dpdp, lap, ideal_d, ideal_dp};
}

std::vector<std::vector<std::size_t>> set_partition_block_sizes(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  // Restricted growth strings a_1 = 0, a_i <= 1 + max(a_1..a_{i-1}).
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      std::vector<std::size_t> sizes(blocks, 0);
      for (auto b : a) ++sizes[b];
      out.push_back(std::move(sizes));
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      a[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(1, 1);
  return out;
}

DistributiveReport distributive_check(OperadQuotient& ram, OperadQuotient& liegriess, std::size_t n) {
  DistributiveReport r;
  r.n = n;
  r.direct = ram.component(n)->dims;
  r.liegriess = liegriess.component(n)->dims;
  for (const auto& sizes : set_partition_block_sizes(n)) {
    DimTable prod{{BiDegree{0, 0}, 1}};
    for (auto s : sizes) prod = convolve(prod, liegriess.component(s)->dims);
    for (const auto& [d, c] : prod) r.factorized[d] += c;
  }
  r.pass = r.direct == r.factorized;
  return r;
}

}  // namespace ramop::ram
