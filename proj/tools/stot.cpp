// Copyright 2026 The stot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// stot: command-line front end for states over time and two-time quasiprobabilities.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stot/analysis.hpp"
#include "stot/bayes.hpp"
#include "stot/distributions.hpp"
#include "stot/io.hpp"
#include "stot/state_over_time.hpp"

namespace {

using stot::io::Json;

constexpr int kPass = 0;
constexpr int kContractFailure = 1;
constexpr int kInputError = 2;

struct Globals {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool csv = false;
  bool quiet = false;
  std::string out;
};

/// Everything a command produces; nothing is written until the command returns.
struct Result {
  std::string payload;  // JSON or CSV
  std::string summary;  // human-readable, to stderr
  int code = kPass;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<double> env_tolerance() {
  const char* v = std::getenv("STOT_TOL");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const double t = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(t >= 0.0)) throw InputError("STOT_TOL: not a non-negative number");
  return t;
}

/// Check tolerance: --tol, else STOT_TOL, else the command default.
double check_tolerance(const Globals& g, double fallback) {
  if (g.tol) return *g.tol;
  if (auto e = env_tolerance()) return *e;
  return fallback;
}

/// Library tolerances with the identity check overridden by env and flag.
stot::Tolerances base_tolerances() {
  stot::Tolerances t;
  if (auto e = env_tolerance()) t.identity = *e;
  return t;
}

/// Applies --tol, then floors the identity tolerance at the library default so
/// that a tight check never rejects the library's own normalization checks.
/// Returns the unfloored value for use as the command's check tolerance.
double apply_flag(stot::Tolerances& t, const Globals& g) {
  if (g.tol) t.identity = *g.tol;
  const double requested = t.identity;
  t.identity = std::max(t.identity, stot::default_tolerances().identity);
  return requested;
}

std::uint64_t pick_seed(const Globals& g, std::optional<std::uint64_t> from_file) {
  if (g.seed) return *g.seed;
  if (from_file) return *from_file;
  return 0;
}

void require_json_output(const Globals& g, const char* command) {
  if (g.csv) throw InputError(std::string("--csv is not available for ") + command);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << v;
  return os.str();
}

// ---------------------------------------------------------------------------

Result cmd_evaluate(const Globals& g, const std::string& path) {
  auto file = stot::io::scenario_from_json(stot::io::read_file(path), base_tolerances());
  const double limit = apply_flag(file.tolerances, g);
  const stot::Tolerances& tol = file.tolerances;
  const stot::TPSMScenario& s = file.scenario;

  const auto lvn = stot::lvn_distribution(s, tol);
  const auto mh = stot::mh_distribution(s, tol);
  const auto dist = stot::disturbance_term(s, tol);
  const auto sot = stot::state_over_time(s.rho(), s.channel(), tol);
  const auto born = stot::born_evaluate(s, sot, tol);

  const double identity_residual = stot::max_abs(mh.values - lvn.values - dist.values);
  const double born_residual = stot::max_abs(mh.values - born.values);
  const bool passed = identity_residual <= limit && born_residual <= limit;

  Result r;
  if (g.csv) {
    r.payload = stot::io::to_csv(lvn) + "\n" + stot::io::to_csv(mh) + "\n" + stot::io::to_csv(dist) +
                "\n" + stot::io::to_csv(born, "BORN");
  } else {
    Json j = {{"lvn", stot::io::to_json(lvn)},
              {"mh", stot::io::to_json(mh)},
              {"disturbance", stot::io::to_json(dist)},
              {"born", stot::io::to_json(born)},
              {"identity_residual", identity_residual},
              {"born_residual", born_residual},
              {"tolerance", limit},
              {"passed", passed}};
    r.payload = stot::io::dump(j);
  }
  r.summary = stot::io::to_text(lvn) + "\n" + stot::io::to_text(mh) + "\n" + stot::io::to_text(dist) +
              "\nmax|Q - P - D| = " + fmt(identity_residual) + "\nmax|Q - born| = " + fmt(born_residual) +
              "\n" + (passed ? "PASS" : "FAIL") + "\n";
  r.code = passed ? kPass : kContractFailure;
  return r;
}

Result cmd_spectrum(const Globals& g, const std::string& state_path, const std::string& channel_path) {
  stot::Tolerances tol = base_tolerances();
  apply_flag(tol, g);
  const auto rho = stot::io::load_state(stot::io::read_file(state_path), tol);
  const auto e = stot::io::load_channel(stot::io::read_file(channel_path), tol);
  const auto sot = stot::state_over_time(rho, e, tol);
  const auto report = stot::spectrum_report(sot, tol);

  Result r;
  if (g.csv) {
    r.payload = "eigenvalue\n";
    for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g\n", report.eigenvalues(k));
      r.payload += buf;
    }
  } else {
    Json j = stot::io::to_json(report);
    j["marginals"] = stot::io::to_json(stot::check_marginals(sot, tol));
    r.payload = stot::io::dump(j);
  }
  std::ostringstream os;
  os << "eigenvalues:";
  for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) os << ' ' << report.eigenvalues(k);
  os << "\nnegativity = " << report.negativity << "\ncausality measure = " << report.causality_measure
     << "\npsd = " << (report.is_psd ? "yes" : "no") << (report.borderline ? " (borderline)" : "") << "\n";
  r.summary = os.str();
  return r;
}

Result cmd_invert(const Globals& g, const std::string& state_path, const std::string& channel_path) {
  require_json_output(g, "invert");
  stot::Tolerances tol = base_tolerances();
  apply_flag(tol, g);
  const auto rho = stot::io::load_state(stot::io::read_file(state_path), tol);
  const auto e = stot::io::load_channel(stot::io::read_file(channel_path), tol);
  const auto result = stot::bayesian_inverse(e, rho, tol);

  Result r;
  r.payload = stot::io::dump(stot::io::to_json(result));
  std::ostringstream os;
  os << "status: " << stot::to_string(result.status) << "\nsolver residual = " << fmt(result.solver_residual)
     << "\nBayes residual = " << fmt(result.bayes_residual)
     << "\nmin Choi eigenvalue = " << fmt(result.min_choi_eigenvalue) << "\n";
  if (!result.message.empty()) os << result.message << "\n";
  if (result.channel) os << "Kraus operators: " << result.channel->kraus().size() << "\n";
  r.summary = os.str();
  r.code = result.status == stot::InverseStatus::Exact ? kPass : kContractFailure;
  return r;
}

Result cmd_verify(const Globals& g, const std::string& scenario_path, const std::string& inverse_path) {
  auto file = stot::io::scenario_from_json(stot::io::read_file(scenario_path), base_tolerances());
  apply_flag(file.tolerances, g);
  const stot::Tolerances& tol = file.tolerances;
  const auto f = stot::io::load_channel(stot::io::read_file(inverse_path), tol);
  const stot::TPSMScenario& s = file.scenario;
  if (f.dim_in() != s.channel().dim_out() || f.dim_out() != s.channel().dim_in())
    throw InputError(inverse_path + ": inverse channel dimensions do not reverse the forward channel");

  const double limit = check_tolerance(g, 1e-8);
  const double bayes = stot::verify_bayes_rule(s.channel(), s.rho(), f);
  const auto reversed = stot::reversed_mh(s, f, tol);
  const double reversal = stot::time_reversal_residual(s, f, tol);
  const auto conditional = stot::spatiotemporal_bayes_check(s, f, limit, tol);
  const bool passed = bayes <= limit && reversal <= limit && conditional.passed;

  Result r;
  if (g.csv) {
    r.payload = stot::io::to_csv(reversed);
  } else {
    Json j = {{"bayes_residual", bayes},
              {"time_reversal_residual", reversal},
              {"reversed_mh", stot::io::to_json(reversed)},
              {"conditional_check", stot::io::to_json(conditional)},
              {"tolerance", limit},
              {"passed", passed}};
    r.payload = stot::io::dump(j);
  }
  r.summary = stot::io::to_text(reversed) + "\nBayes residual = " + fmt(bayes) +
              "\ntime-reversal residual = " + fmt(reversal) +
              "\nconditional check: " + (conditional.passed ? "pass" : "fail") + " (" +
              std::to_string(conditional.undefined_cells) + " undefined cells)\n" +
              (passed ? "PASS" : "FAIL") + "\n";
  r.code = passed ? kPass : kContractFailure;
  return r;
}

Result cmd_search(const Globals& g, const std::string& mode, int budget_n, const std::string& path) {
  require_json_output(g, "search");
  if (budget_n < 0) throw InputError("--budget must be non-negative");
  stot::Tolerances tol = base_tolerances();
  apply_flag(tol, g);
  Result r;

  if (mode == "qubit-scan") {
    if (!path.empty()) throw InputError("qubit-scan takes no input file");
    const double limit = check_tolerance(g, 1e-8);
    const auto states = stot::bloch_grid({0.0, 0.5, 1.0}, 4, 4);
    auto channels = stot::qubit_unitary_family(4);
    for (auto& c : stot::qubit_depolarizing_family({0.5, 1.0})) channels.push_back(std::move(c));
    for (auto& c : stot::qubit_discard_family({stot::pure_state(stot::ComplexVector::Unit(2, 0)),
                                               stot::maximally_mixed(2)}))
      channels.push_back(std::move(c));
    const auto budget = stot::SearchBudget::from_total(budget_n, pick_seed(g, std::nullopt));
    const auto report = stot::qubit_necessity_scan(states, channels, limit, budget);
    Json j = stot::io::to_json(report);
    j["states"] = states.size();
    j["channels"] = channels.size();
    j["tolerance"] = limit;
    r.payload = stot::io::dump(j);
    r.summary = std::to_string(report.entries.size()) + " pairs, " + std::to_string(report.passing.size()) +
                " within tolerance, " + std::to_string(report.anomalies.size()) + " anomalous\n";
    r.code = report.anomalies.empty() ? kPass : kContractFailure;
    return r;
  }

  if (path.empty()) throw InputError(mode + " needs an input file");
  const Json doc = stot::io::read_file(path);
  const auto rho = stot::io::load_state(doc, tol);
  const auto e = stot::io::load_channel(doc, tol);
  std::optional<std::uint64_t> file_seed;
  if (doc.is_object() && doc.contains("seed") && doc["seed"].is_number_unsigned())
    file_seed = doc["seed"].get<std::uint64_t>();
  const std::uint64_t seed = pick_seed(g, file_seed);
  const auto budget = stot::SearchBudget::from_total(budget_n, seed);

  if (mode == "max-disturbance") {
    const auto result = stot::search_max_disturbance(rho, e, budget);
    Json j = stot::io::to_json(result);
    if (result.scenario) j["scenario"]["seed"] = seed;
    j["seed"] = seed;
    j["budget"] = budget_n;
    r.payload = stot::io::dump(j);
    r.summary = "max |D| = " + fmt(result.value) + " after " + std::to_string(result.evaluations) +
                " evaluations\n";
    if (result.scenario) r.summary += stot::io::to_text(stot::disturbance_term(*result.scenario, tol));
  } else if (mode == "born-existence") {
    const double limit = check_tolerance(g, 1e-8);
    const auto report = stot::born_existence_check(rho, e, budget, limit);
    Json j = stot::io::to_json(report);
    if (report.witness) j["witness"]["scenario"]["seed"] = seed;
    j["seed"] = seed;
    j["budget"] = budget_n;
    j["tolerance"] = limit;
    r.payload = stot::io::dump(j);
    r.summary = std::string("verdict: ") + stot::to_string(report.verdict) +
                "\nmax violation = " + fmt(report.max_violation) + "\n";
    if (report.witness) r.summary += "witness max|P - Q| = " + fmt(report.witness->max_abs_difference) + "\n";
  } else {
    throw InputError("unknown search mode " + mode);
  }
  return r;
}

Result cmd_tomo(const Globals& g, const std::string& path) {
  require_json_output(g, "tomo");
  stot::Tolerances tol = base_tolerances();
  apply_flag(tol, g);
  const Json doc = stot::io::read_file(path);
  const auto rho = stot::io::load_state(doc, tol);
  const auto e = stot::io::load_channel(doc, tol);
  if (rho.dim() != e.dim_in()) throw InputError(path + ": state and channel dimensions differ");
  if (rho.dim() < 2 || e.dim_out() < 2) throw InputError(path + ": tomography needs dimensions >= 2");

  const auto rec = stot::reconstruct_from_mh(stot::mh_oracle(rho, e), e.idx());
  const auto expected = stot::state_over_time_matrix(rho.matrix(), e);
  const double error = (rec.matrix - expected).norm();
  const double limit = check_tolerance(g, 1e-8);
  const bool passed = error <= limit;

  Result r;
  Json j = stot::io::to_json(rec);
  j["frobenius_error"] = error;
  j["tolerance"] = limit;
  j["passed"] = passed;
  r.payload = stot::io::dump(j);
  r.summary = std::to_string(rec.queries) + " queries, design min singular value " +
              fmt(rec.min_singular_value) + "\n||reconstruction - state over time||_F = " + fmt(error) +
              "\nleast-squares residual = " + fmt(rec.ls_residual) + "\n" + (passed ? "PASS" : "FAIL") + "\n";
  r.code = passed ? kPass : kContractFailure;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stot: states over time, two-time quasiprobabilities and Bayesian inversion"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  double tol_flag = 0.0;
  std::uint64_t seed_flag = 0;
  auto* tol_opt = app.add_option("--tol", tol_flag, "Check tolerance (overrides STOT_TOL)")
                      ->check(CLI::NonNegativeNumber);
  auto* seed_opt = app.add_option("--seed", seed_flag, "Seed for searches");
  app.add_flag("--csv", g.csv, "Emit CSV tables instead of JSON");
  app.add_option("--out", g.out, "Write the result to this file instead of stdout");
  app.add_flag("--quiet", g.quiet, "Suppress the human-readable summary");

  std::string a;
  std::string b;
  std::string mode = "max-disturbance";
  int budget = 200;

  auto* evaluate = app.add_subcommand("evaluate", "P, Q, D and Born-rule tables of a scenario file");
  evaluate->add_option("scenario", a, "Scenario file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of the state over time");
  spectrum->add_option("state", a, "State file (or scenario)")->required();
  spectrum->add_option("channel", b, "Channel file (defaults to the state file)");

  auto* invert = app.add_subcommand("invert", "Solve for the Bayesian inverse channel");
  invert->add_option("state", a, "State file (or scenario)")->required();
  invert->add_option("channel", b, "Channel file (defaults to the state file)");

  auto* verify = app.add_subcommand("verify", "Check a forward scenario against an inverse channel");
  verify->add_option("scenario", a, "Forward scenario file")->required();
  verify->add_option("inverse", b, "Inverse channel file or invert output")->required();

  auto* search = app.add_subcommand("search", "Projector searches");
  search->add_option("--mode", mode, "max-disturbance | born-existence | qubit-scan")
      ->check(CLI::IsMember({"max-disturbance", "born-existence", "qubit-scan"}));
  search->add_option("--budget", budget, "Random samples and hill-climbing steps")->check(CLI::NonNegativeNumber);
  search->add_option("input", a, "State and channel (e.g. a scenario file)");

  auto* tomo = app.add_subcommand("tomo", "Reconstruct the state over time from Margenau-Hill queries");
  tomo->add_option("input", a, "State and channel (e.g. a scenario file)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (*tol_opt) g.tol = tol_flag;
  if (*seed_opt) g.seed = seed_flag;

  Result result;
  try {
    if (*evaluate) result = cmd_evaluate(g, a);
    else if (*spectrum) result = cmd_spectrum(g, a, b.empty() ? a : b);
    else if (*invert) result = cmd_invert(g, a, b.empty() ? a : b);
    else if (*verify) result = cmd_verify(g, a, b);
    else if (*search) result = cmd_search(g, mode, budget, a);
    else result = cmd_tomo(g, a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (g.out.empty()) {
    std::cout << result.payload;
    std::cout.flush();
  } else {
    std::ofstream out(g.out, std::ios::binary | std::ios::trunc);
    out << result.payload;
    if (!out) {
      std::cerr << "error: cannot write " << g.out << "\n";
      return kInputError;
    }
  }
  if (!g.quiet) std::cerr << result.summary;
  return result.code;
}
