#include "ramop/ramanujan.hpp"

#include <algorithm>
#include <vector>

namespace ramop::ramanujan {

mpz_class Poly2::at(int i, int k) const {
  auto it = coeffs.find({i, k});
  return it == coeffs.end() ? mpz_class(0) : it->second;
}

mpz_class Poly2::evaluate(const mpz_class& x, const mpz_class& y) const {
  mpz_class total = 0;
  for (const auto& [e, c] : coeffs) {
    mpz_class px, py;
    mpz_pow_ui(px.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e.first));
    mpz_pow_ui(py.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(e.second));
    total += c * px * py;
  }
  return total;
}

Poly2 psi(std::size_t n) {
  if (n == 0) throw UsageError("psi is defined for n >= 1");
  Poly2 p;
  p.coeffs[{0, 0}] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    Poly2 next = p;
    for (const auto& [e, c] : p.coeffs) {
      const mpz_class f = c * static_cast<unsigned long>(m + static_cast<std::size_t>(e.first));
      next.coeffs[{e.first + 1, e.second}] += f;
      next.coeffs[{e.first, e.second + 1}] += f;
    }
    std::erase_if(next.coeffs, [](const auto& kv) { return kv.second == 0; });
    p = std::move(next);
  }
  return p;
}

DimTable predicted_dims(std::size_t n) {
  DimTable t;
  for (const auto& [e, c] : psi(n).coeffs) {
    if (!c.fits_ulong_p()) throw ResourceError("coefficient does not fit a machine word");
    t[{e.first, e.first + e.second}] = c.get_ui();
  }
  return t;
}

std::string to_string(const Poly2& p) {
  std::vector<std::pair<std::pair<int, int>, mpz_class>> terms(p.coeffs.begin(), p.coeffs.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da < db;
    return a.first.first > b.first.first;
  });
  if (terms.empty()) return "0";
  auto power = [](const char* v, int e) -> std::string {
    if (e == 0) return "";
    return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e);
  };
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [e, c] = terms[k];
    mpz_class a = abs(c);
    if (k) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    const std::string mono = power("x", e.first) + power("y", e.second);
    if (mono.empty() || a != 1) s += a.get_str();
    s += mono;
  }
  return s;
}

}  // namespace ramop::ramanujan
