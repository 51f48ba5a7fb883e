#pragma once

// On-disk cache of quotient components: one versioned text record per
// (kind, presentation hash, arity, mode).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ramop/linear.hpp"

namespace ramop::cache {

inline constexpr int kRecordVersion = 1;

struct Record {
  std::string kind;  // "operad" or "graph"
  std::uint64_t presentation_hash = 0;
  std::size_t arity = 0;
  std::string mode;  // ambient mode for graph records, "-" otherwise
  std::vector<std::vector<std::int32_t>> monomials;
  std::vector<linear::SparseVector> rows;  // reducer rows over monomial columns
};

std::filesystem::path record_path(const std::filesystem::path& dir, const std::string& kind,
                                  std::uint64_t hash, std::size_t arity, const std::string& mode);

void write_record(const std::filesystem::path& dir, const Record& r);
/// Returns nullopt when absent, unreadable, or of a different version.
std::optional<Record> read_record(const std::filesystem::path& dir, const std::string& kind,
                                  std::uint64_t hash, std::size_t arity, const std::string& mode);

struct Info {
  std::size_t records = 0;
  std::uintmax_t bytes = 0;
  std::vector<std::string> names;
};

Info info(const std::filesystem::path& dir);
/// Removes cache records (only files this module writes). Returns the count.
std::size_t clear(const std::filesystem::path& dir);

std::uint64_t fnv1a(const std::string& text);

}  // namespace ramop::cache
