#pragma once

// Ramanujan polynomials psi_n(x, y) and the bigraded dimensions they predict.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>

#include "ramop/common.hpp"

namespace ramop::ramanujan {

/// Sum of c_{i,k} x^i y^k with integer coefficients; no stored zeros.
struct Poly2 {
  std::map<std::pair<int, int>, mpz_class> coeffs;

  mpz_class at(int i, int k) const;
  mpz_class evaluate(const mpz_class& x, const mpz_class& y) const;
  friend bool operator==(const Poly2&, const Poly2&) = default;
};

/// psi_1 = 1, psi_{n+1} = psi_n + (x + y)(n psi_n + x d/dx psi_n).
Poly2 psi(std::size_t n);

/// (i, j) -> coefficient of x^i y^(j-i) in psi_n.
DimTable predicted_dims(std::size_t n);

/// "1 + 3x + 3y + 3x^2 + 5xy + 2y^2": by total degree, then falling x power.
std::string to_string(const Poly2& p);

}  // namespace ramop::ramanujan
