#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ramop/cache.hpp"
#include "ramop/dual.hpp"
#include "ramop/graph.hpp"
#include "ramop/ram.hpp"
#include "ramop/ramanujan.hpp"
#include "suites.hpp"

namespace fs = std::filesystem;
using namespace ramop;
using cli::Json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  std::string cache_dir;
  bool no_cache = false;
  std::size_t max_arity = Limits{}.max_arity;
  std::size_t max_rows = Limits{}.max_rows;
  std::string out;
  bool json = false;
  bool timings = false;
};

fs::path resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("RAMOP_CACHE_DIR"); env && *env) return env;
  return ".ramop-cache";
}

cli::Options options_from(const Common& c) {
  cli::Options o;
  o.limits.max_arity = c.max_arity;
  o.limits.max_rows = c.max_rows;
  if (!c.no_cache) o.cache_dir = resolve_cache_dir(c.cache_dir);
  return o;
}

// Writes the report to --out and, with --json, to stdout; otherwise prints `text`.
void emit(const Common& c, const Json& report, const std::string& text) {
  const std::string body = report.dump(2) + "\n";
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + c.out);
    f << body;
  }
  std::cout << (c.json ? body : text);
}

std::string check_line(const CheckResult& r) {
  std::string s = (r.pass ? "PASS " : "FAIL ") + r.name + " [" + std::to_string(r.checked) + "]";
  if (!r.note.empty()) s += " " + r.note;
  if (!r.witness.empty()) s += "\n     witness: " + r.witness;
  return s + "\n";
}

int cmd_dims(const Common& c, const std::string& operad, std::size_t n) {
  cli::Session s(options_from(c));
  const auto comp = s.ram(operad)->component(n);
  Json rep = cli::report_header("dims", {{"operad", operad}, {"n", n}});
  rep["presentations"] = s.presentation_hashes();
  rep["dims"] = cli::to_json(comp->dims);
  rep["total"] = comp->dim();
  rep["ambient"] = comp->ambient.size();
  rep["ideal_rank"] = comp->ideal_rank();
  std::string text = operad + "(" + std::to_string(n) + ")\n" + cli::format_table(comp->dims);
  bool pass = true;
  if (const auto want = cli::expected_dims(operad, n)) {
    pass = *want == comp->dims;
    rep["expected"] = cli::to_json(*want);
    text += std::string("matches psi_") + std::to_string(n) + ": " + (pass ? "yes" : "no") + "\n";
  }
  rep["pass"] = pass;
  emit(c, rep, text);
  return pass ? kPass : kFail;
}

int cmd_ralg_dims(const Common& c, const std::string& presentation, std::size_t n, const std::string& ambient) {
  cli::Session s(options_from(c));
  const auto mode = graph::parse_ambient(ambient);
  const auto comp = s.algebra(presentation)->component(n, mode);
  Json rep = cli::report_header("ralg-dims", {{"presentation", presentation}, {"n", n}, {"ambient", ambient}});
  rep["presentations"] = s.presentation_hashes();
  rep["dims"] = cli::to_json(comp->dims);
  rep["total"] = comp->dim();
  rep["ambient_size"] = comp->ambient.size();
  rep["ideal_rank"] = comp->ideal_rank();
  std::string text = presentation + "({1.." + std::to_string(n) + "}), " + ambient + " ambient\n" +
                     cli::format_table(comp->dims);
  bool pass = true;
  if (presentation == "arnold") {
    std::vector<std::size_t> got;
    for (const auto& [d, dim] : comp->dims) got.push_back(dim);
    pass = got == graph::arnold_poincare(n);
    text += std::string("matches prod (1 + k t): ") + (pass ? "yes" : "no") + "\n";
  }
  rep["pass"] = pass;
  emit(c, rep, text);
  return pass ? kPass : kFail;
}

int cmd_ramanujan(const Common& c, std::size_t n) {
  const auto p = ramanujan::psi(n);
  const auto table = ramanujan::predicted_dims(n);
  Json rep = cli::report_header("ramanujan", {{"n", n}});
  rep["psi"] = ramanujan::to_string(p);
  rep["dims"] = cli::to_json(table);
  rep["pass"] = true;
  emit(c, rep, "psi_" + std::to_string(n) + " = " + ramanujan::to_string(p) + "\n" + cli::format_table(table));
  return kPass;
}

int cmd_verify(const Common& c, const std::string& suite, std::size_t n, std::uint64_t seed, std::size_t trials) {
  auto opt = options_from(c);
  opt.seed = seed;
  opt.trials = trials;
  cli::Session s(opt);
  std::vector<std::string> names;
  if (suite == "all") names = cli::suite_names();
  else names = {suite};

  Json rep = cli::report_header("verify", {{"suite", suite}, {"n", n}, {"seed", seed}, {"trials", trials}});
  Json suites = Json::array();
  Json timings = Json::object();
  std::string text;
  bool pass = true;
  for (const auto& name : names) {
    const auto r = cli::run_suite(s, name, n);
    Json checks = Json::array();
    for (const auto& ch : r.checks) {
      checks.push_back(cli::to_json(ch));
      text += check_line(ch);
    }
    suites.push_back({{"name", r.name}, {"pass", r.pass()}, {"checks", checks}, {"details", r.details}});
    timings[name] = r.seconds;
    pass = pass && r.pass();
  }
  rep["presentations"] = s.presentation_hashes();
  rep["suites"] = suites;
  rep["pass"] = pass;
  if (c.timings) rep["timings"] = timings;
  text += pass ? "all checks passed\n" : "some checks FAILED\n";
  emit(c, rep, text);
  return pass ? kPass : kFail;
}

int cmd_conjecture(const Common& c, std::size_t n) {
  cli::Session s(options_from(c));
  const auto r = dual::conjecture_verdict(s.rho(), n);
  Json rep = cli::report_header("conjecture", {{"n", n}});
  rep["presentations"] = s.presentation_hashes();
  rep["verdict"] = cli::to_json(r);
  rep["pass"] = r.well_defined;
  std::string text = "rho on n=" + std::to_string(n) + "\n";
  text += "well-defined: " + std::string(r.well_defined ? "true" : "false") + " (" +
          std::to_string(r.ideal_rows_checked) + " ideal rows)\n";
  for (const auto& b : r.blocks)
    text += "  " + to_string(b.degree) + " Ram " + std::to_string(b.ram_dim) + ", R " + std::to_string(b.r_dim) +
            ", rank " + std::to_string(b.rank) + "\n";
  text += "dims equal: " + std::string(r.dims_equal ? "true" : "false") + "\n";
  text += "isomorphism: " + std::string(r.isomorphism ? "true" : "false") + "\n";
  if (!r.witness.empty()) text += "witness: " + r.witness + "\n";
  emit(c, rep, text);
  return r.well_defined ? kPass : kFail;
}

int cmd_cache(const Common& c, const std::string& action, const std::string& dir_flag) {
  const fs::path dir = resolve_cache_dir(dir_flag.empty() ? c.cache_dir : dir_flag);
  Json rep = cli::report_header("cache", {{"action", action}, {"dir", dir.string()}});
  std::string text;
  if (action == "info") {
    const auto i = cache::info(dir);
    rep["records"] = i.records;
    rep["bytes"] = i.bytes;
    rep["names"] = i.names;
    text = dir.string() + ": " + std::to_string(i.records) + " records, " + std::to_string(i.bytes) + " bytes\n";
    for (const auto& n : i.names) text += "  " + n + "\n";
  } else {
    const auto removed = cache::clear(dir);
    rep["removed"] = removed;
    text = "removed " + std::to_string(removed) + " records from " + dir.string() + "\n";
  }
  rep["pass"] = true;
  emit(c, rep, text);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification toolkit for the Ram operad and its graph-algebra dual"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kToolVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", common.cache_dir, "Cache directory (else $RAMOP_CACHE_DIR, else .ramop-cache)");
    sub->add_flag("--no-cache", common.no_cache, "Do not read or write the cache");
    sub->add_option("--max-arity", common.max_arity, "Largest arity or vertex count to build")->check(CLI::PositiveNumber);
    sub->add_option("--max-rows", common.max_rows, "Largest ideal spanning set")->check(CLI::PositiveNumber);
    sub->add_option("--out", common.out, "Write the JSON report to this file");
    sub->add_flag("--json", common.json, "Print the JSON report instead of text");
  };

  std::size_t n = 3;
  std::string operad = "ram", ambient = "forest", presentation = "R", suite = "all", action, dir;
  std::uint64_t seed = cli::Options{}.seed;
  std::size_t trials = cli::Options{}.trials;

  auto* dims = app.add_subcommand("dims", "Bigraded dimensions of an operad component");
  dims->add_option("--operad", operad, "Presentation")->check(CLI::IsMember(ram::presentation_names()));
  dims->add_option("--n", n, "Arity")->required()->check(CLI::Range(1, 12));
  add_common(dims);

  auto* ralg = app.add_subcommand("ralg-dims", "Bigraded dimensions of the graph algebra on n vertices");
  ralg->add_option("--n", n, "Vertex count")->required()->check(CLI::Range(1, 12));
  ralg->add_option("--ambient", ambient, "Monomial ambient")->check(CLI::IsMember({"forest", "full"}));
  ralg->add_option("--presentation", presentation, "Algebra")->check(CLI::IsMember({"R", "R-no12", "arnold"}));
  add_common(ralg);

  auto* rama = app.add_subcommand("ramanujan", "Ramanujan polynomial and its predicted table");
  rama->add_option("--n", n, "Index")->required()->check(CLI::Range(1, 40));
  add_common(rama);

  std::vector<std::string> suites = cli::suite_names();
  suites.push_back("all");
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "Suite")->check(CLI::IsMember(suites));
  verify->add_option("--n", n, "Largest size checked")->check(CLI::Range(1, 12));
  verify->add_option("--seed", seed, "Seed for the forms oracle");
  verify->add_option("--trials", trials, "Random points for the forms oracle")->check(CLI::PositiveNumber);
  verify->add_flag("--timings", common.timings, "Include wall-clock timings in the report");
  add_common(verify);

  auto* conj = app.add_subcommand("conjecture", "Is rho : Ram -> R* an isomorphism on n labels?");
  conj->add_option("--n", n, "Arity")->required()->check(CLI::Range(1, 12));
  add_common(conj);

  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the component cache");
  cache_cmd->add_option("action", action, "info or clear")->required()->check(CLI::IsMember({"info", "clear"}));
  cache_cmd->add_option("--dir", dir, "Cache directory");
  add_common(cache_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (*dims) return cmd_dims(common, operad, n);
    if (*ralg) return cmd_ralg_dims(common, presentation, n, ambient);
    if (*rama) return cmd_ramanujan(common, n);
    if (*verify) return cmd_verify(common, suite, n, seed, trials);
    if (*conj) return cmd_conjecture(common, n);
    if (*cache_cmd) return cmd_cache(common, action, dir);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
