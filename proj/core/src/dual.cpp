#include "ramop/dual.hpp"

#include <algorithm>
#include <set>

#include "ramop/ram.hpp"

namespace ramop::dual {

using graph::Ambient;
using graph::GraphMonomial;
using linear::Index;
using linear::SparseVector;
using operad::TreeMonomial;

namespace {

std::vector<Atom> sorted(std::vector<Atom> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Rational> dense(const SparseVector& v, std::size_t n) {
  std::vector<Rational> out(n);
  for (const auto& e : v) out.at(e.col) = e.value;
  return out;
}

Rational dot(const SparseVector& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (const auto& e : a) s += e.value * b.at(e.col);
  return s;
}

}  // namespace

DualOperad::DualOperad(std::shared_ptr<GraphQuotient> r) : r_(std::move(r)), reducer_(*r_) {}

std::size_t DualOperad::dim(const std::vector<Atom>& labels) { return r_->component(labels.size())->dim(); }

BiDegree DualOperad::basis_degree(const std::vector<Atom>& labels, std::size_t k) {
  return r_->component(labels.size())->basis_degree.at(k);
}

LinearForm DualOperad::dual_basis_element(const std::vector<Atom>& labels, DualGenerator which, Atom i, Atom j) {
  LinearForm f{sorted(labels), {}};
  AlgebraElement x(r_->presentation().signature, f.labels, Ambient::Forest);
  if (which == DualGenerator::one) {
    x.add(GraphMonomial{}, 1);
  } else {
    if (i == j || !std::binary_search(f.labels.begin(), f.labels.end(), i) ||
        !std::binary_search(f.labels.begin(), f.labels.end(), j))
      throw UsageError("dual generator needs two distinct indices from the label set");
    x.add_word({{i, j, which == DualGenerator::astar ? graph::kA : graph::kB}}, 1);
  }
  // x is +-1 times a basis monomial; the dual element takes the value 1 on x.
  const auto v = r_->normal_form(x);
  if (v.size() != 1) throw std::logic_error("generator is not a basis monomial");
  f.coords = {{v.front().col, 1 / v.front().value}};
  return f;
}

const std::vector<cooperad::CoordTensor>& DualOperad::theta_matrix(const std::vector<Atom>& I,
                                                                   const std::vector<Atom>& J, Atom star) {
  auto key = std::make_tuple(I, J, star);
  auto it = theta_.find(key);
  if (it != theta_.end()) return it->second;
  std::vector<Atom> IJ = I;
  IJ.insert(IJ.end(), J.begin(), J.end());
  IJ = sorted(std::move(IJ));
  std::vector<cooperad::CoordTensor> rows;
  for (std::size_t k = 0; k < dim(IJ); ++k)
    rows.push_back(reducer_.reduce(cooperad::theta(I, J, r_->basis_element(IJ, k), star)));
  return theta_.emplace(std::move(key), std::move(rows)).first->second;
}

LinearForm DualOperad::compose(const LinearForm& f, const LinearForm& g, Atom slot) {
  if (!std::binary_search(f.labels.begin(), f.labels.end(), slot))
    throw UsageError("slot " + atom_name(slot) + " is not a label of the outer form");
  std::vector<Atom> I;
  for (Atom a : f.labels)
    if (a != slot) I.push_back(a);
  for (Atom a : g.labels)
    if (std::binary_search(I.begin(), I.end(), a) || a == slot) throw UsageError("label sets overlap");
  const auto& rows = theta_matrix(I, g.labels, slot);
  const auto fd = dense(f.coords, dim(f.labels));
  const auto gd = dense(g.coords, dim(g.labels));
  std::vector<linear::Entry> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    Rational s = 0;
    for (const auto& [idx, c] : rows[k]) {
      const Rational& fu = fd[idx[0]];
      const Rational& gv = gd[idx[1]];
      if (sgn(fu) == 0 || sgn(gv) == 0) continue;
      const int sign = koszul(basis_degree(f.labels, idx[0]).h, basis_degree(g.labels, idx[1]).h);
      s += c * fu * gv * sign;
    }
    if (sgn(s) != 0) out.push_back({static_cast<Index>(k), s});
  }
  std::vector<Atom> IJ = I;
  IJ.insert(IJ.end(), g.labels.begin(), g.labels.end());
  return {sorted(std::move(IJ)), std::move(out)};
}

Rational DualOperad::evaluate(const LinearForm& f, const AlgebraElement& x) {
  if (sorted(x.vertices()) != f.labels) throw UsageError("form and element live on different sets");
  return dot(r_->normal_form(with_mode(x, Ambient::Forest)), dense(f.coords, dim(f.labels)));
}

Rho::Rho(std::shared_ptr<operad::OperadQuotient> ram, std::shared_ptr<DualOperad> rstar)
    : ram_(std::move(ram)), rstar_(std::move(rstar)) {
  for (const auto& g : ram_->presentation().signature->generators) {
    if (g.name == "E") image_.push_back(DualGenerator::one);
    else if (g.name == "L") image_.push_back(DualGenerator::astar);
    else if (g.name == "W") image_.push_back(DualGenerator::bstar);
    else throw UsageError("rho has no image for generator " + g.name);
  }
}

LinearForm Rho::of_tree(const TreeMonomial& t) {
  auto it = memo_.find(t);
  if (it != memo_.end()) return it->second;
  LinearForm out;
  if (t.code.size() == 1) {
    out = rstar_->dual_basis_element({t.code[0]}, DualGenerator::one);
  } else {
    const std::size_t mid = operad::subtree_end(t.code, 1);
    const TreeMonomial t1{{t.code.begin() + 1, t.code.begin() + static_cast<std::ptrdiff_t>(mid)}};
    const TreeMonomial t2{{t.code.begin() + static_cast<std::ptrdiff_t>(mid), t.code.end()}};
    const auto top = rstar_->dual_basis_element({kStar, kHash}, image_.at(static_cast<std::size_t>(
                                                                    operad::generator_of(t.code[0]))),
                                                kStar, kHash);
    out = rstar_->compose(rstar_->compose(top, of_tree(t1), kStar), of_tree(t2), kHash);
  }
  return memo_.emplace(t, out).first->second;
}

LinearForm Rho::operator()(const operad::OperadElement& x) {
  LinearForm out{x.labels(), {}};
  std::vector<linear::Entry> acc;
  for (const auto& [t, c] : x.terms())
    for (const auto& e : of_tree(t).coords) acc.push_back({e.col, c * e.value});
  out.coords = linear::canonical(std::move(acc));
  return out;
}

Rho make_rho(Limits limits, std::optional<std::filesystem::path> cache) {
  auto ram = ram::make_quotient("ram", limits, cache);
  auto r = std::make_shared<GraphQuotient>(graph::r_presentation(), limits, cache);
  return Rho(ram, std::make_shared<DualOperad>(r));
}

ConjectureReport conjecture_verdict(Rho& rho, std::size_t n) {
  ConjectureReport rep;
  rep.n = n;
  auto& ram = rho.ram();
  auto& rstar = rho.rstar();
  const auto comp = ram.component(n);
  const auto rcomp = rstar.algebra().component(n);
  const auto& sig = *ram.presentation().signature;

  // rho of every free monomial.
  std::vector<SparseVector> image;
  rep.preserves_bidegree = true;
  for (const auto& t : comp->ambient) {
    auto f = rho.of_tree(t);
    const BiDegree d = operad::degree(t, sig);
    for (const auto& e : f.coords)
      if (rcomp->basis_degree[e.col] != d && rep.preserves_bidegree) {
        rep.preserves_bidegree = false;
        rep.witness = "rho(" + operad::to_string(t, sig) + ") leaves its bidegree";
      }
    image.push_back(std::move(f.coords));
  }

  rep.well_defined = true;
  for (const auto& row : comp->quotient.reducer.rows) {
    ++rep.ideal_rows_checked;
    SparseVector acc;
    for (const auto& e : row) acc = linear::axpy(acc, e.value, image[e.col]);
    if (!acc.empty() && rep.well_defined) {
      rep.well_defined = false;
      rep.witness = "rho does not vanish on ideal element " +
                    comp->element(row, ram.presentation().signature).to_string();
    }
  }

  std::set<BiDegree> degrees;
  for (const auto& [d, k] : comp->dims) degrees.insert(d);
  for (const auto& [d, k] : rcomp->dims) degrees.insert(d);
  rep.dims_equal = comp->dims == rcomp->dims;
  bool iso = rep.well_defined && rep.preserves_bidegree;
  for (const BiDegree& d : degrees) {
    BlockVerdict b;
    b.degree = d;
    std::vector<Index> cols;
    std::map<Index, Index> local;
    for (Index k = 0; k < rcomp->dim(); ++k)
      if (rcomp->basis_degree[k] == d) {
        local[k] = static_cast<Index>(cols.size());
        cols.push_back(k);
      }
    linear::SparseMatrix m;
    m.ncols = static_cast<Index>(cols.size());
    for (std::size_t k = 0; k < comp->dim(); ++k) {
      if (comp->basis_degree[k] != d) continue;
      SparseVector row;
      for (const auto& e : image[comp->quotient.basis[k]])
        if (auto it = local.find(e.col); it != local.end()) row.push_back({it->second, e.value});
      m.rows.push_back(linear::canonical(std::move(row)));
    }
    b.ram_dim = m.rows.size();
    b.r_dim = cols.size();
    b.rank = linear::rank(m);
    if (!(b.ram_dim == b.r_dim && b.rank == b.ram_dim)) iso = false;
    rep.blocks.push_back(b);
  }
  rep.isomorphism = iso;
  return rep;
}

CheckResult rho_relation_check(Rho& rho) {
  CheckResult c("rho.kills_relations");
  const auto& p = rho.ram().presentation();
  for (std::size_t k = 0; k < p.relations.size(); ++k) {
    ++c.checked;
    const auto f = rho(p.relations[k]);
    if (!f.coords.empty() && c.pass) {
      c.pass = false;
      c.witness = p.relation_names[k] + ": " + linear::to_string(f.coords);
    }
  }
  return c;
}

std::vector<CheckResult> compat_checks(Rho& rho, std::size_t n) {
  const std::string tag = "(n=" + std::to_string(n) + ")";
  auto& ram = rho.ram();
  auto& r = rho.rstar().algebra();
  const auto vs = standard_labels(n);
  const auto comp = ram.component(n);
  const auto rcomp = r.component(n);
  const auto& rsig = ram.presentation().signature;
  const std::size_t rdim = rcomp->dim();

  std::vector<std::vector<Rational>> rho_basis;
  std::vector<operad::OperadElement> xs;
  for (const auto& t : comp->basis) {
    xs.push_back(operad::OperadElement::monomial(rsig, t));
    rho_basis.push_back(dense(rho.of_tree(t).coords, rdim));
  }
  std::vector<AlgebraElement> ms;
  for (std::size_t k = 0; k < rdim; ++k) ms.push_back(r.basis_element(vs, k));

  std::vector<CheckResult> out;
  const std::pair<ram::Differential, graph::GraphDifferential> pairs[] = {
      {ram::Differential::Dprime, graph::GraphDifferential::dprime},
      {ram::Differential::D, graph::GraphDifferential::d}};
  for (const auto& [big, small] : pairs) {
    CheckResult c(std::string(big == ram::Differential::D ? "rho.intertwines_D_d" : "rho.intertwines_Dprime_dprime") +
                  tag);
    std::vector<SparseVector> dm;
    for (const auto& m : ms) dm.push_back(r.normal_form(graph::differential(m, small)));
    std::optional<Rational> sign;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto lhs_form = dense(rho(ram::differential(xs[i], big)).coords, rdim);
      for (std::size_t k = 0; k < rdim; ++k) {
        ++c.checked;
        const Rational lhs = lhs_form[k];
        // Transpose of an odd map: <phi* f, m> = (-1)^(h(f)) <f, phi m>.
        const Rational rhs = dot(dm[k], rho_basis[i]) * koszul(comp->basis_degree[i].h, 1);
        if (sgn(lhs) == 0 && sgn(rhs) == 0) continue;
        if (!sign && sgn(rhs) != 0) sign = lhs / rhs;
        const bool ok = sign && (*sign == 1 || *sign == -1) && lhs == *sign * rhs;
        if (!ok && c.pass) {
          c.pass = false;
          c.witness = "x=" + xs[i].to_string() + " m=" + ms[k].to_string() + " lhs=" + lhs.get_str() +
                      " rhs=" + rhs.get_str();
        }
      }
    }
    c.note = sign ? "global sign " + sign->get_str() : "both sides vanish";
    out.push_back(c);
  }

  CheckResult hopf("rho.coalgebra_morphism" + tag);
  std::vector<std::vector<SparseVector>> products(rdim, std::vector<SparseVector>(rdim));
  for (std::size_t a = 0; a < rdim; ++a)
    for (std::size_t b = 0; b < rdim; ++b) products[a][b] = r.normal_form(ms[a] * ms[b]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto delta = ram::coproduct(xs[i]);
    std::vector<std::tuple<Rational, std::vector<Rational>, std::vector<Rational>, int>> terms;
    for (const auto& [key, c] : delta.terms)
      terms.emplace_back(c, dense(rho.of_tree(key.first).coords, rdim), dense(rho.of_tree(key.second).coords, rdim),
                         operad::degree(key.second, *rsig).h);
    for (std::size_t a = 0; a < rdim; ++a)
      for (std::size_t b = 0; b < rdim; ++b) {
        ++hopf.checked;
        const Rational lhs = dot(products[a][b], rho_basis[i]);
        Rational rhs = 0;
        for (const auto& [c, f, g, h2] : terms)
          if (sgn(f[a]) != 0 && sgn(g[b]) != 0)
            rhs += c * f[a] * g[b] * koszul(h2, rcomp->basis_degree[a].h);
        if (lhs != rhs && hopf.pass) {
          hopf.pass = false;
          hopf.witness = "x=" + xs[i].to_string() + " m1=" + ms[a].to_string() + " m2=" + ms[b].to_string() +
                         " lhs=" + lhs.get_str() + " rhs=" + rhs.get_str();
        }
      }
  }
  out.push_back(hopf);
  return out;
}

}  // namespace ramop::dual
