#include "suites.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "ramop/cooperad.hpp"
#include "ramop/forms.hpp"
#include "ramop/ram.hpp"
#include "ramop/ramanujan.hpp"

namespace ramop::cli {

namespace {

std::string hex(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string tagged(const std::string& name, std::size_t n) { return name + "(n=" + std::to_string(n) + ")"; }

CheckResult table_check(const std::string& name, std::size_t n, const DimTable& got, const DimTable& want) {
  CheckResult c(tagged(name, n));
  c.checked = want.size();
  if (got != want) {
    c.pass = false;
    c.witness = "computed " + to_string(got) + ", expected " + to_string(want);
  }
  return c;
}

void append(std::vector<CheckResult>& out, std::vector<CheckResult> more) {
  for (auto& c : more) out.push_back(std::move(c));
}

// Coefficients of psi_n on one axis: x^i y^0 at (i,i) or x^0 y^k at (0,k).
DimTable axis_dims(std::size_t n, bool x_axis) {
  DimTable out;
  for (const auto& [deg, c] : ramanujan::predicted_dims(n))
    if (x_axis ? deg.h == deg.w : deg.h == 0) out[deg] = c;
  return out;
}

SuiteResult dims_suite(Session& s, std::size_t n) {
  SuiteResult r{"dims", {}, Json::object(), 0};
  auto ram = s.ram("ram");
  auto poisson = s.ram("poisson");
  auto bessel = s.ram("bessel");
  auto lg = s.ram("liegriess");
  auto R = s.algebra("R");
  Json tables = Json::object();
  for (std::size_t k = 1; k <= n; ++k) {
    const DimTable dims = ram->component(k)->dims;
    tables[std::to_string(k)] = to_json(dims);
    r.checks.push_back(table_check("dims.ram_matches_psi", k, dims, ramanujan::predicted_dims(k)));
    r.checks.push_back(table_check("dims.poisson_matches_psi_y", k, poisson->component(k)->dims, axis_dims(k, false)));
    r.checks.push_back(table_check("dims.bessel_matches_psi_x", k, bessel->component(k)->dims, axis_dims(k, true)));
    const auto dist = ram::distributive_check(*ram, *lg, k);
    r.checks.push_back(table_check("dims.distributive_factorization", k, dist.factorized, dist.direct));
    r.checks.push_back(table_check("dims.r_matches_ram", k, R->component(k)->dims, dims));
  }
  if (n >= 3) {
    const auto c3 = ram->component(3);
    CheckResult rank(tagged("dims.ram_relation_rank", 3));
    rank.checked = 1;
    const auto psi11 = ramanujan::psi(3).evaluate(1, 1);
    rank.note = "ambient " + std::to_string(c3->ambient.size()) + ", ideal rank " + std::to_string(c3->ideal_rank());
    if (c3->ambient.size() != 27 || c3->ideal_rank() != 10 || mpz_class(c3->ambient.size() - c3->ideal_rank()) != psi11) {
      rank.pass = false;
      rank.witness = rank.note + ", psi_3(1,1) = " + psi11.get_str();
    }
    r.checks.push_back(rank);
  }
  r.details["ram_dims"] = tables;
  return r;
}

SuiteResult hopf_suite(Session& s, std::size_t n) {
  SuiteResult r{"hopf", {}, Json::object(), 0};
  auto ram = s.ram("ram");
  for (std::size_t k = 2; k <= n; ++k) append(r.checks, ram::hopf_check(*ram, k));
  return r;
}

SuiteResult differentials_suite(Session& s, std::size_t n) {
  SuiteResult r{"differentials", {}, Json::object(), 0};
  auto ram = s.ram("ram");
  auto R = s.algebra("R");
  for (std::size_t k = 2; k <= n; ++k) {
    append(r.checks, ram::differential_check(*ram, k));
    append(r.checks, graph::differential_check(*R, k));
    append(r.checks, cooperad::theta_differential_check(*R, k));
  }
  return r;
}

SuiteResult cooperad_suite(Session& s, std::size_t n) {
  SuiteResult r{"cooperad", {}, Json::object(), 0};
  auto R = s.algebra("R");
  for (std::size_t k = 2; k <= n; ++k) {
    r.checks.push_back(cooperad::theta_relation_check(*R, k));
    append(r.checks, cooperad::cooperad_axiom_check(*R, k));
    r.checks.push_back(cooperad::theta_morphism_check(*R, k, k >= 5 ? 7 : 1));
  }
  return r;
}

SuiteResult lemmas_suite(Session& s, std::size_t n) {
  SuiteResult r{"lemmas", {}, Json::object(), 0};
  auto R = s.algebra("R");
  auto arnold = s.algebra("arnold");
  append(r.checks, graph::lemma_check(*R));
  for (std::size_t k = 1; k <= n; ++k) {
    append(r.checks, graph::forest_check(*R, k));
    r.checks.push_back(graph::arnold_check(*arnold, k));
  }
  const auto twelve = graph::twelve_term_report(std::min<std::size_t>(n, 4), s.options().limits);
  r.details["twelve_term_ideal_rank"] = {{"n", twelve.n},
                                         {"with", to_json(twelve.with)},
                                         {"without", to_json(twelve.without)}};
  return r;
}

SuiteResult forms_suite(Session& s, std::size_t n) {
  SuiteResult r{"forms", {}, Json::object(), 0};
  const auto& opt = s.options();
  const std::size_t m = std::max<std::size_t>(n, 2);
  const auto survey = forms::relation_survey(m, opt.trials, opt.seed);
  Json families = Json::array();
  for (const auto& f : survey.families) {
    Json j = {{"family", f.name}, {"listed", f.listed}, {"instances", f.instances},
              {"evaluations", f.evaluations}, {"holds", f.holds}};
    if (!f.holds) j["witness"] = f.witness;
    families.push_back(j);
    if (!f.listed) continue;
    CheckResult c(tagged("forms." + f.name + "_holds", m));
    c.checked = f.evaluations;
    c.pass = f.holds;
    c.witness = f.witness;
    r.checks.push_back(c);
  }
  r.checks.push_back(forms::morphism_check(m, opt.trials, opt.seed));
  r.checks.push_back(forms::de_rham_check(m, opt.trials, opt.seed));
  r.details = {{"n", m}, {"trials", opt.trials}, {"seed", opt.seed}, {"survey", families}};
  return r;
}

SuiteResult dual_suite(Session& s, std::size_t n) {
  SuiteResult r{"dual", {}, Json::object(), 0};
  auto& rho = s.rho();
  r.checks.push_back(dual::rho_relation_check(rho));
  Json verdicts = Json::array();
  for (std::size_t k = 1; k <= n; ++k) {
    const auto rep = dual::conjecture_verdict(rho, k);
    CheckResult c(tagged("dual.rho_well_defined", k));
    c.checked = rep.ideal_rows_checked;
    c.pass = rep.well_defined && rep.preserves_bidegree;
    c.witness = rep.witness;
    r.checks.push_back(c);
    verdicts.push_back({{"n", k}, {"dims_equal", rep.dims_equal}, {"isomorphism", rep.isomorphism}});
    if (k <= 3) append(r.checks, dual::compat_checks(rho, k));
  }
  r.details["conjecture"] = verdicts;
  return r;
}

}  // namespace

std::shared_ptr<operad::OperadQuotient> Session::ram(const std::string& which) {
  auto& slot = operads_[which];
  if (!slot) slot = ram::make_quotient(which, opt_.limits, opt_.cache_dir);
  return slot;
}

std::shared_ptr<graph::GraphQuotient> Session::algebra(const std::string& which) {
  auto& slot = algebras_[which];
  if (slot) return slot;
  graph::GraphPresentation p;
  if (which == "R") p = graph::r_presentation(true);
  else if (which == "R-no12") p = graph::r_presentation(false);
  else if (which == "arnold") p = graph::arnold_presentation();
  else throw UsageError("unknown algebra presentation " + which);
  slot = std::make_shared<graph::GraphQuotient>(std::move(p), opt_.limits, opt_.cache_dir);
  return slot;
}

dual::Rho& Session::rho() {
  if (!rho_) rho_ = std::make_unique<dual::Rho>(ram("ram"), std::make_shared<dual::DualOperad>(algebra("R")));
  return *rho_;
}

Json Session::presentation_hashes() const {
  Json out = Json::object();
  for (const auto& [name, q] : operads_) out[name] = hex(q->presentation().hash());
  for (const auto& [name, q] : algebras_) out[name] = hex(q->presentation().hash());
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dims", "hopf", "differentials", "cooperad", "lemmas", "forms", "dual"};
  return names;
}

SuiteResult run_suite(Session& s, const std::string& suite, std::size_t n) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r;
  if (suite == "dims") r = dims_suite(s, n);
  else if (suite == "hopf") r = hopf_suite(s, n);
  else if (suite == "differentials") r = differentials_suite(s, n);
  else if (suite == "cooperad") r = cooperad_suite(s, n);
  else if (suite == "lemmas") r = lemmas_suite(s, n);
  else if (suite == "forms") r = forms_suite(s, n);
  else if (suite == "dual") r = dual_suite(s, n);
  else throw UsageError("unknown suite " + suite);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json to_json(const CheckResult& c) {
  Json j = {{"name", c.name}, {"pass", c.pass}, {"checked", c.checked}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const DimTable& t) {
  Json rows = Json::array();
  for (const auto& [d, dim] : t) rows.push_back({{"h", d.h}, {"w", d.w}, {"dim", dim}});
  return rows;
}

Json to_json(const dual::ConjectureReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks)
    blocks.push_back({{"h", b.degree.h}, {"w", b.degree.w}, {"ram_dim", b.ram_dim}, {"r_dim", b.r_dim},
                      {"rank", b.rank}, {"bijective", b.ram_dim == b.r_dim && b.rank == b.ram_dim}});
  Json j = {{"n", r.n},
            {"well_defined", r.well_defined},
            {"ideal_rows_checked", r.ideal_rows_checked},
            {"preserves_bidegree", r.preserves_bidegree},
            {"blocks", blocks},
            {"dims_equal", r.dims_equal},
            {"isomorphism", r.isomorphism}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

Json report_header(const std::string& command, Json parameters) {
  return {{"schema_version", kSchemaVersion},
          {"tool", "ramop"},
          {"version", kToolVersion},
          {"command", command},
          {"parameters", std::move(parameters)}};
}

std::optional<DimTable> expected_dims(const std::string& operad, std::size_t n) {
  if (operad == "ram") return ramanujan::predicted_dims(n);
  if (operad == "poisson") return axis_dims(n, false);
  if (operad == "bessel") return axis_dims(n, true);
  return std::nullopt;
}

std::string format_table(const DimTable& t) {
  std::ostringstream out;
  char line[64];
  std::snprintf(line, sizeof line, "%4s %4s %8s\n", "h", "w", "dim");
  out << line;
  for (const auto& [d, dim] : t) {
    std::snprintf(line, sizeof line, "%4d %4d %8zu\n", d.h, d.w, dim);
    out << line;
  }
  std::snprintf(line, sizeof line, "%9s %8zu\n", "total", total(t));
  out << line;
  return out.str();
}

}  // namespace ramop::cli
