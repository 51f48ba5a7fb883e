#pragma once

// Differential forms a_{i,j} = 1/(x_i - x_j), b_{i,j} = d a_{i,j} and
// w_{i,j} = d log(x_i - x_j), evaluated exactly at rational points as
// elements of the exterior algebra on the dx_i.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ramop/graph.hpp"

namespace ramop::forms {

using linear::Rational;

/// Coordinates x_i, pairwise distinct.
struct SamplePoint {
  std::map<Atom, Rational> x;

  std::string to_string() const;
};

/// Exterior-algebra element; bit k of a key is dx of the k-th vertex.
struct EvaluatedForm {
  std::vector<Atom> vertices;
  std::map<std::uint64_t, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  void add(std::uint64_t mask, const Rational& c);
  std::string to_string() const;
  friend bool operator==(const EvaluatedForm&, const EvaluatedForm&) = default;
};

EvaluatedForm scalar(const std::vector<Atom>& vertices, const Rational& c);
/// Wedge product with the shuffle sign; dx ^ dx = 0.
EvaluatedForm wedge(const EvaluatedForm& x, const EvaluatedForm& y);

/// Generator named by color ("a", "b" or "w") at p. Throws UsageError on
/// coincident coordinates or unknown colors.
EvaluatedForm eval_generator(std::string_view color, Atom i, Atom j, const SamplePoint& p);

/// Substitutes generators and multiplies in canonical word order.
EvaluatedForm eval_element(const graph::AlgebraElement& x, const SamplePoint& p);

/// Pairwise distinct coordinates num/den, |num| <= 20, 1 <= den <= 9, from a
/// seeded mt19937_64.
SamplePoint random_point(const std::vector<Atom>& vertices, std::uint64_t& state);

struct FamilyVerdict {
  std::string name;
  bool listed = false;  // among the relations stated for the forms model
  std::size_t instances = 0;
  std::size_t evaluations = 0;
  bool holds = true;
  std::string witness;
};

struct SurveyReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<FamilyVerdict> families;
};

/// Evaluates every instance of every relation family of R (and the Arnold
/// relation on w) on n points at `trials` random points.
SurveyReport relation_survey(std::size_t n, std::size_t trials, std::uint64_t seed);

}  // namespace ramop::forms

namespace ramop::forms {

/// eval(xy) = eval(x) ^ eval(y) on random pairs of edge-disjoint monomials
/// of the full ambient on n vertices (the edges of one random monomial, split
/// at random).
CheckResult morphism_check(std::size_t n, std::size_t trials, std::uint64_t seed);

/// eval(d a_{i,j}) equals the exterior derivative -(dx_i - dx_j)/(x_i - x_j)^2
/// of 1/(x_i - x_j), for every pair on n vertices.
CheckResult de_rham_check(std::size_t n, std::size_t trials, std::uint64_t seed);

}  // namespace ramop::forms
