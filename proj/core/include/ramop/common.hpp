#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramop {

/// Label of a leaf or vertex. Ordinary labels are small positive integers;
/// the reserved place-holders sort after every ordinary label.
using Atom = std::int32_t;

inline constexpr Atom kStar = 1 << 20;
inline constexpr Atom kHash = kStar + 1;
/// First of a run of scratch place-holders used internally when grafting.
inline constexpr Atom kScratch = kStar + 16;

std::string atom_name(Atom a);

/// Bidegree (h, w): h carries Koszul signs, w is the weight.
struct BiDegree {
  int h = 0;
  int w = 0;

  friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
  BiDegree operator+(const BiDegree& o) const { return {h + o.h, w + o.w}; }
};

std::string to_string(const BiDegree& d);

/// Bigraded dimension table; absent keys mean zero.
using DimTable = std::map<BiDegree, std::size_t>;

std::size_t total(const DimTable& t);
std::string to_string(const DimTable& t);
/// Bigraded convolution: dims of a tensor product.
DimTable convolve(const DimTable& a, const DimTable& b);

inline int koszul(int p, int q) { return ((p * q) & 1) ? -1 : 1; }

/// Thrown on malformed input (duplicate labels, missing place-holder, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a configured size bound would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size bounds for the engines. Exceeding one throws ResourceError.
struct Limits {
  std::size_t max_arity = 5;
  std::size_t max_rows = 2'000'000;
};

/// Outcome of one verification.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  std::string witness;  // first counterexample, empty on success
  std::string note;     // informational (discovered sign, ranks, ...)
};

bool all_pass(const std::vector<CheckResult>& results);

/// Sorted label set {1, ..., n}.
std::vector<Atom> standard_labels(std::size_t n);

/// All subsets of `labels` (as sorted vectors), in bitmask order.
std::vector<std::vector<Atom>> subsets(const std::vector<Atom>& labels);

}  // namespace ramop
