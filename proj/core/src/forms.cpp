#include "ramop/forms.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

namespace ramop::forms {

std::string SamplePoint::to_string() const {
  std::string s = "(";
  bool first = true;
  for (const auto& [a, v] : x) {
    if (!first) s += ", ";
    first = false;
    s += "x" + atom_name(a) + "=" + v.get_str();
  }
  return s + ")";
}

void EvaluatedForm::add(std::uint64_t mask, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

std::string EvaluatedForm::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [mask, c] : terms) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.get_str() + ")";
    for (std::size_t k = 0; k < vertices.size(); ++k)
      if ((mask >> k) & 1) s += " dx" + atom_name(vertices[k]);
  }
  return s;
}

EvaluatedForm scalar(const std::vector<Atom>& vertices, const Rational& c) {
  EvaluatedForm f{vertices, {}};
  f.add(0, c);
  return f;
}

EvaluatedForm wedge(const EvaluatedForm& x, const EvaluatedForm& y) {
  if (x.vertices != y.vertices) throw UsageError("forms on different coordinates");
  EvaluatedForm out{x.vertices, {}};
  for (const auto& [ma, ca] : x.terms)
    for (const auto& [mb, cb] : y.terms) {
      if (ma & mb) continue;
      // Each dx of y passes the dx of x with a larger index.
      int swaps = 0;
      for (std::uint64_t rest = mb; rest; rest &= rest - 1) {
        const int bit = std::countr_zero(rest);
        swaps += std::popcount(ma >> (bit + 1));
      }
      out.add(ma | mb, (swaps & 1) ? Rational(-ca * cb) : Rational(ca * cb));
    }
  return out;
}

namespace {

std::vector<Atom> coordinate_list(const SamplePoint& p) {
  std::vector<Atom> v;
  for (const auto& [a, x] : p.x) v.push_back(a);
  return v;
}

std::uint64_t bit_of(const std::vector<Atom>& vs, Atom a) {
  auto it = std::lower_bound(vs.begin(), vs.end(), a);
  if (it == vs.end() || *it != a) throw UsageError("vertex " + atom_name(a) + " has no coordinate");
  return std::uint64_t{1} << (it - vs.begin());
}

}  // namespace

EvaluatedForm eval_generator(std::string_view color, Atom i, Atom j, const SamplePoint& p) {
  const auto vs = coordinate_list(p);
  if (i == j) throw UsageError("generator needs distinct indices");
  const Rational delta = p.x.at(i) - p.x.at(j);
  if (sgn(delta) == 0) throw UsageError("coincident coordinates at " + p.to_string());
  EvaluatedForm f{vs, {}};
  if (color == "a") {
    f.add(0, 1 / delta);
  } else if (color == "b") {
    // d(1/(x_i - x_j)) = -(dx_i - dx_j)/(x_i - x_j)^2
    const Rational c = 1 / (delta * delta);
    f.add(bit_of(vs, i), -c);
    f.add(bit_of(vs, j), c);
  } else if (color == "w") {
    f.add(bit_of(vs, i), 1 / delta);
    f.add(bit_of(vs, j), -1 / delta);
  } else {
    throw UsageError("no form for color " + std::string(color));
  }
  return f;
}

EvaluatedForm eval_element(const graph::AlgebraElement& x, const SamplePoint& p) {
  const auto vs = coordinate_list(p);
  const auto& sig = *x.signature();
  EvaluatedForm out{vs, {}};
  for (const auto& [m, c] : x.terms()) {
    EvaluatedForm f = scalar(vs, c);
    for (const auto& e : m.edges) f = wedge(f, eval_generator(sig[e.color].name, e.u, e.v, p));
    for (const auto& [mask, v] : f.terms) out.add(mask, v);
  }
  return out;
}

SamplePoint random_point(const std::vector<Atom>& vertices, std::uint64_t& state) {
  std::mt19937_64 rng(state);
  SamplePoint p;
  std::set<Rational> used;
  for (Atom a : vertices) {
    Rational v;
    do {
      // Plain modular reduction keeps the stream identical across standard libraries.
      const long num = static_cast<long>(rng() % 41) - 20;
      const long den = static_cast<long>(rng() % 9) + 1;
      v = Rational(num, den);
      v.canonicalize();
    } while (used.count(v));
    used.insert(v);
    p.x[a] = v;
  }
  state = rng();
  return p;
}

SurveyReport relation_survey(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 2 || n > 6) throw UsageError("relation_survey needs 2 <= n <= 6");
  if (trials == 0) throw UsageError("relation_survey needs at least one trial");
  SurveyReport rep{n, trials, seed, {}};
  const auto vs = standard_labels(n);

  struct Family {
    std::string name;
    bool listed;
    std::vector<graph::AlgebraElement> instances;
  };
  std::vector<Family> families;
  const std::set<std::string> listed{"relaa", "relab", "relbbbn"};
  for (const auto& f : graph::r_presentation().families)
    families.push_back({f.name, listed.count(f.name) > 0, f.instances(vs, graph::Ambient::Full)});
  for (const auto& f : graph::arnold_presentation().families)
    families.push_back({f.name, false, f.instances(vs, graph::Ambient::Full)});

  std::vector<SamplePoint> points;
  std::uint64_t state = seed;
  for (std::size_t t = 0; t < trials; ++t) points.push_back(random_point(vs, state));

  for (const auto& fam : families) {
    FamilyVerdict v;
    v.name = fam.name;
    v.listed = fam.listed;
    v.instances = fam.instances.size();
    for (const auto& p : points)
      for (const auto& inst : fam.instances) {
        ++v.evaluations;
        if (v.holds && !eval_element(inst, p).is_zero()) {
          v.holds = false;
          v.witness = inst.to_string() + " at " + p.to_string();
        }
      }
    rep.families.push_back(v);
  }
  return rep;
}

CheckResult morphism_check(std::size_t n, std::size_t trials, std::uint64_t seed) {
  CheckResult c("forms.algebra_morphism(n=" + std::to_string(n) + ")");
  const auto vs = standard_labels(n);
  const auto& sig = graph::r_signature();
  const auto monomials = graph::enumerate_graph_monomials(*sig, vs, graph::Ambient::Full);
  std::mt19937_64 rng(seed);
  std::uint64_t state = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto p = random_point(vs, state);
    for (int pair = 0; pair < 8; ++pair) {
      // Split the edges of a random monomial into two factors.
      graph::GraphMonomial mx, my;
      for (const auto& e : monomials[rng() % monomials.size()].edges) (rng() % 2 ? mx : my).edges.push_back(e);
      const auto prod = graph::multiply(mx, my, *sig, graph::Ambient::Full);
      graph::AlgebraElement x(sig, vs, graph::Ambient::Full), y = x, xy = x;
      x.add(mx, 1);
      y.add(my, 1);
      xy.add(prod.monomial, prod.sign);
      ++c.checked;
      if (eval_element(xy, p) != wedge(eval_element(x, p), eval_element(y, p)) && c.pass) {
        c.pass = false;
        c.witness = x.to_string() + " * " + y.to_string() + " at " + p.to_string();
      }
    }
  }
  return c;
}

CheckResult de_rham_check(std::size_t n, std::size_t trials, std::uint64_t seed) {
  CheckResult c("forms.de_rham(n=" + std::to_string(n) + ")");
  const auto vs = standard_labels(n);
  const auto& sig = graph::r_signature();
  std::uint64_t state = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto p = random_point(vs, state);
    for (Atom i : vs)
      for (Atom j : vs) {
        if (i == j) continue;
        auto a = graph::AlgebraElement::word(sig, vs, graph::Ambient::Full, {{i, j, graph::kA}});
        const auto lhs = eval_element(graph::differential(a, graph::GraphDifferential::d), p);
        const Rational delta = p.x.at(i) - p.x.at(j);
        EvaluatedForm rhs{vs, {}};
        rhs.add(std::uint64_t{1} << (i - 1), -1 / (delta * delta));
        rhs.add(std::uint64_t{1} << (j - 1), 1 / (delta * delta));
        ++c.checked;
        if (lhs != rhs && c.pass) {
          c.pass = false;
          c.witness = "d a(" + atom_name(i) + "," + atom_name(j) + ") at " + p.to_string();
        }
      }
  }
  return c;
}

}  // namespace ramop::forms
