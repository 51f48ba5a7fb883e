#include "ramop/cache.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ramop::cache {

namespace fs = std::filesystem;

namespace {
constexpr const char* kExtension = ".ramop";
constexpr const char* kMagic = "ramop-component";

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}
}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

fs::path record_path(const fs::path& dir, const std::string& kind, std::uint64_t hash,
                     std::size_t arity, const std::string& mode) {
  return dir / (kind + "-" + hex(hash) + "-n" + std::to_string(arity) + "-" + mode + kExtension);
}

void write_record(const fs::path& dir, const Record& r) {
  fs::create_directories(dir);
  const fs::path target = record_path(dir, r.kind, r.presentation_hash, r.arity, r.mode);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << kMagic << " " << kRecordVersion << "\n";
    out << "kind " << r.kind << "\n";
    out << "presentation " << hex(r.presentation_hash) << "\n";
    out << "arity " << r.arity << "\n";
    out << "mode " << r.mode << "\n";
    out << "monomials " << r.monomials.size() << "\n";
    for (const auto& m : r.monomials) {
      out << m.size();
      for (auto c : m) out << " " << c;
      out << "\n";
    }
    out << "rows " << r.rows.size() << "\n";
    for (const auto& row : r.rows) {
      out << row.size();
      for (const auto& e : row) out << " " << e.col << " " << e.value.get_str();
      out << "\n";
    }
    out << "end\n";
  }
  // Writers racing on the same key produce identical content.
  fs::rename(tmp, target);
}

std::optional<Record> read_record(const fs::path& dir, const std::string& kind, std::uint64_t hash,
                                  std::size_t arity, const std::string& mode) {
  std::ifstream in(record_path(dir, kind, hash, arity, mode));
  if (!in) return std::nullopt;
  Record r;
  std::string word, hash_text;
  int version = 0;
  std::size_t count = 0;
  if (!(in >> word >> version) || word != kMagic || version != kRecordVersion) return std::nullopt;
  if (!(in >> word >> r.kind) || word != "kind") return std::nullopt;
  if (!(in >> word >> hash_text) || word != "presentation") return std::nullopt;
  r.presentation_hash = std::stoull(hash_text, nullptr, 16);
  if (!(in >> word >> r.arity) || word != "arity") return std::nullopt;
  if (!(in >> word >> r.mode) || word != "mode") return std::nullopt;
  if (!(in >> word >> count) || word != "monomials") return std::nullopt;
  r.monomials.resize(count);
  for (auto& m : r.monomials) {
    std::size_t len = 0;
    if (!(in >> len)) return std::nullopt;
    m.resize(len);
    for (auto& c : m)
      if (!(in >> c)) return std::nullopt;
  }
  if (!(in >> word >> count) || word != "rows") return std::nullopt;
  r.rows.resize(count);
  for (auto& row : r.rows) {
    std::size_t len = 0;
    if (!(in >> len)) return std::nullopt;
    row.resize(len);
    for (auto& e : row) {
      std::string value;
      if (!(in >> e.col >> value)) return std::nullopt;
      e.value = linear::Rational(value);
      e.value.canonicalize();
    }
  }
  if (!(in >> word) || word != "end") return std::nullopt;
  if (r.kind != kind || r.presentation_hash != hash || r.arity != arity || r.mode != mode)
    return std::nullopt;
  return r;
}

Info info(const fs::path& dir) {
  Info i;
  if (!fs::is_directory(dir)) return i;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != kExtension) continue;
    ++i.records;
    i.bytes += entry.file_size();
    i.names.push_back(entry.path().filename().string());
  }
  std::sort(i.names.begin(), i.names.end());
  return i;
}

std::size_t clear(const fs::path& dir) {
  std::size_t removed = 0;
  if (!fs::is_directory(dir)) return 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == kExtension) {
      fs::remove(entry.path());
      ++removed;
    }
  }
  return removed;
}

}  // namespace ramop::cache
