#include "ramop/common.hpp"

#include <sstream>

namespace ramop {

std::string atom_name(Atom a) {
  if (a == kStar) return "*";
  if (a == kHash) return "#";
  if (a >= kScratch) return "p" + std::to_string(a - kScratch);
  return std::to_string(a);
}

std::string to_string(const BiDegree& d) {
  return "(" + std::to_string(d.h) + "," + std::to_string(d.w) + ")";
}

std::size_t total(const DimTable& t) {
  std::size_t s = 0;
  for (const auto& [deg, n] : t) s += n;
  return s;
}

std::string to_string(const DimTable& t) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [deg, n] : t) {
    if (n == 0) continue;
    if (!first) os << ",";
    first = false;
    os << to_string(deg) << ":" << n;
  }
  os << "}";
  return os.str();
}

DimTable convolve(const DimTable& a, const DimTable& b) {
  DimTable out;
  for (const auto& [da, na] : a)
    for (const auto& [db, nb] : b)
      if (na * nb != 0) out[da + db] += na * nb;
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::vector<Atom> standard_labels(std::size_t n) {
  std::vector<Atom> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Atom>(i + 1);
  return out;
}

std::vector<std::vector<Atom>> subsets(const std::vector<Atom>& labels) {
  std::vector<std::vector<Atom>> out;
  const std::size_t n = labels.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Atom> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(labels[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ramop
