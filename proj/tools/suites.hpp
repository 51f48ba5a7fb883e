#pragma once

// Verification suites and JSON report assembly shared by the ramop CLI.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramop/dual.hpp"
#include "ramop/graph.hpp"
#include "ramop/operad.hpp"

namespace ramop::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct Options {
  Limits limits;
  std::optional<std::filesystem::path> cache_dir;
  std::uint64_t seed = 1729;
  std::size_t trials = 20;
};

/// Lazily built quotients, shared by every suite of one invocation.
class Session {
 public:
  explicit Session(Options o) : opt_(std::move(o)) {}

  const Options& options() const { return opt_; }
  std::shared_ptr<operad::OperadQuotient> ram(const std::string& which);
  std::shared_ptr<graph::GraphQuotient> algebra(const std::string& which);
  dual::Rho& rho();

  /// Name -> hex hash of every presentation built so far.
  Json presentation_hashes() const;

 private:
  Options opt_;
  std::map<std::string, std::shared_ptr<operad::OperadQuotient>> operads_;
  std::map<std::string, std::shared_ptr<graph::GraphQuotient>> algebras_;
  std::unique_ptr<dual::Rho> rho_;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  Json details = Json::object();
  double seconds = 0;

  bool pass() const { return all_pass(checks); }
};

/// dims, hopf, differentials, cooperad, lemmas, forms, dual.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(Session& s, const std::string& suite, std::size_t n);

Json to_json(const CheckResult& c);
Json to_json(const DimTable& t);
Json to_json(const dual::ConjectureReport& r);

/// Header fields common to every report.
Json report_header(const std::string& command, Json parameters);

/// Table expected for a Ram-family presentation from psi_n, if any.
std::optional<DimTable> expected_dims(const std::string& operad, std::size_t n);

/// Aligned "h  w  dim" rows.
std::string format_table(const DimTable& t);

}  // namespace ramop::cli
