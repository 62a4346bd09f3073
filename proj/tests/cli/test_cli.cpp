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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stot/io.hpp"
#include "stot/random.hpp"

namespace {

namespace fs = std::filesystem;
using stot::io::Json;

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("stot_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

/// Runs the CLI from the repository root; `env` is prepended to the command.
CliRun run(const std::string& args, const std::string& env = "") {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = "cd '" STOT_SOURCE_DIR "' && env -u STOT_TOL " + env + " '" STOT_CLI "' " + args +
                          " 2>'" + err.string() + "'";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err);
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

Json golden(const std::string& name) {
  return stot::io::read_file(std::string(STOT_SOURCE_DIR) + "/data/golden/" + name);
}

struct GoldenCase {
  std::string golden;
  std::string args;
};

std::vector<GoldenCase> manifest() {
  std::ifstream in(std::string(STOT_SOURCE_DIR) + "/data/golden/commands.txt");
  std::vector<GoldenCase> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto space = line.find(' ');
    out.push_back({line.substr(0, space), line.substr(space + 1)});
  }
  return out;
}

TEST(Golden, EveryOutputRegeneratesByteForByte) {
  const auto cases = manifest();
  ASSERT_GE(cases.size(), 10u);
  for (const auto& c : cases) {
    const fs::path out = scratch() / c.golden;
    const CliRun r = run("--quiet --out '" + out.string() + "' " + c.args);
    EXPECT_LE(r.status, 1) << c.golden << ": " << r.err;
    EXPECT_TRUE(r.out.empty()) << c.golden;
    EXPECT_EQ(slurp(out), slurp(fs::path(STOT_SOURCE_DIR) / "data/golden" / c.golden)) << c.golden;
  }
}

TEST(Golden, StdoutMatchesOutFile) {
  const CliRun r = run("--quiet evaluate data/erasure_coherent_scenario.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.err.empty());
  EXPECT_EQ(r.out, slurp(fs::path(STOT_SOURCE_DIR) / "data/golden/erasure_coherent_evaluate.json"));
}

TEST(Golden, SummaryGoesToStderr) {
  const CliRun r = run("evaluate data/erasure_scenario.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.err.find("max|Q - P - D|"), std::string::npos);
  EXPECT_EQ(stot::io::parse_text(r.out)["passed"], true);
}

// Values below come from an independent dense-matrix computation.

void expect_table(const Json& values, const std::vector<std::vector<double>>& want, double tol) {
  ASSERT_EQ(values.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want[i].size(); ++j)
      EXPECT_NEAR(values[i][j].get<double>(), want[i][j], tol) << i << "," << j;
}

TEST(GoldenValues, CoherentErasureDistributions) {
  const Json j = golden("erasure_coherent_evaluate.json");
  expect_table(j["lvn"]["values"], {{0.28125, 0.28125, 0.1875}, {0.09375, 0.09375, 0.0625}}, 1e-12);
  expect_table(j["mh"]["values"], {{0.375, 0.1875, 0.1875}, {0.1875, 0.0, 0.0625}}, 1e-12);
  expect_table(j["disturbance"]["values"], {{0.09375, -0.09375, 0.0}, {0.09375, -0.09375, 0.0}}, 1e-12);
  EXPECT_EQ(j["passed"], true);
}

TEST(GoldenValues, ErasureMaximallyMixedHasNoDisturbance) {
  const Json j = golden("erasure_evaluate.json");
  expect_table(j["mh"]["values"], {{0.125, 0.125, 0.25}, {0.125, 0.125, 0.25}}, 1e-12);
  expect_table(j["disturbance"]["values"], {{0, 0, 0}, {0, 0, 0}}, 1e-12);
}

TEST(GoldenValues, ErasureSpectrum) {
  const Json j = golden("erasure_spectrum.json");
  const std::vector<double> want = {-0.25, 0.25, 0.25, 0.25, 0.25, 0.25};
  ASSERT_EQ(j["eigenvalues"].size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(j["eigenvalues"][k].get<double>(), want[k], 1e-12);
  EXPECT_NEAR(j["negativity"].get<double>(), 0.25, 1e-12);
  EXPECT_NEAR(j["causality_measure"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["is_psd"], false);
  EXPECT_EQ(j["marginals"]["passed"], true);
}

TEST(GoldenValues, PureIdentityDisturbanceCsv) {
  const std::string csv = slurp(fs::path(STOT_SOURCE_DIR) / "data/golden/pure_identity_evaluate.csv");
  const auto at = csv.find("DISTURBANCE,");
  ASSERT_NE(at, std::string::npos);
  EXPECT_NE(csv.find("\n+,0.25,-0.25\n", at), std::string::npos) << csv;
}

TEST(GoldenValues, SearchesAndTomography) {
  EXPECT_NEAR(golden("pure_max_disturbance.json")["value"].get<double>(), 0.25, 1e-10);
  const Json born = golden("pure_born_existence.json");
  EXPECT_EQ(born["verdict"], "FailsWithWitness");
  EXPECT_NEAR(born["max_violation"].get<double>(), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(born["witness"]["max_abs_difference"].get<double>(), 0.25, 1e-10);
  const Json tomo = golden("erasure_tomo.json");
  EXPECT_LE(tomo["frobenius_error"].get<double>(), 1e-8);
  EXPECT_NEAR(tomo["min_singular_value"].get<double>(), 0.7653668647301803, 1e-12);
  const Json inv = golden("erasure_invert.json");
  EXPECT_EQ(inv["status"], "Exact");
  EXPECT_EQ(golden("erasure_verify.json")["passed"], true);
  EXPECT_TRUE(golden("qubit_scan.json")["anomalies"].empty());
}

TEST(ExitCodes, ContractFailureIsOne) {
  // Bayes inverse for the wrong prior.
  const std::string wrong = write_temp("wrong_inverse.json", stot::io::dump(stot::io::to_json(
                                                                  stot::erasure_bayesian_inverse(0.5, 0.9))));
  CliRun r = run("--quiet verify data/erasure_scenario.json '" + wrong + "'");
  EXPECT_EQ(r.status, 1) << r.err;
  EXPECT_EQ(stot::io::parse_text(r.out)["passed"], false);

  // A generic qubit channel and prior whose Bayes inverse is not completely positive.
  std::uint64_t seed = 0;
  while (stot::bayesian_inverse(stot::random_channel(2, 2, 2, seed), stot::random_state(2, 2, seed + 100)).status ==
         stot::InverseStatus::Exact)
    ++seed;
  const std::string state =
      write_temp("prior.json", stot::io::dump(stot::io::to_json(stot::random_state(2, 2, seed + 100))));
  const std::string chan =
      write_temp("channel.json", stot::io::dump(stot::io::to_json(stot::random_channel(2, 2, 2, seed))));
  r = run("--quiet invert '" + state + "' '" + chan + "'");
  EXPECT_EQ(r.status, 1) << r.out << r.err;
  EXPECT_NE(stot::io::parse_text(r.out)["status"], "Exact");
}

TEST(ExitCodes, InputErrorsAreTwo) {
  const std::string bad = write_temp("bad.json", "{\"rho\": [1, ");
  CliRun r = run("evaluate '" + bad + "'");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("$"), std::string::npos);

  Json j = stot::io::read_file(std::string(STOT_SOURCE_DIR) + "/data/erasure_scenario.json");
  j["rho"]["matrix"][1][1] = "oops";
  r = run("evaluate '" + write_temp("typed.json", j.dump()) + "'");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("$.rho.matrix[1][1]"), std::string::npos) << r.err;

  EXPECT_EQ(run("evaluate /nonexistent/file.json").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("--csv invert data/erasure_state.json data/erasure_channel.json").status, 2);
  EXPECT_EQ(run("search --mode sideways data/pure_qubit_identity.json").status, 2);
  EXPECT_EQ(run("evaluate data/erasure_scenario.json", "STOT_TOL=abc").status, 2);
}

TEST(ExitCodes, SuccessIsZero) {
  EXPECT_EQ(run("--quiet evaluate data/erasure_scenario.json").status, 0);
  EXPECT_EQ(run("--quiet spectrum data/erasure_state.json data/erasure_channel.json").status, 0);
  EXPECT_EQ(run("--quiet --csv evaluate data/pure_qubit_identity.json").status, 0);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Tolerance, Precedence) {
  const std::string scen = "data/erasure_scenario.json";
  auto tol_of = [](const CliRun& r) { return stot::io::parse_text(r.out)["tolerance"].get<double>(); };
  EXPECT_EQ(tol_of(run("--quiet evaluate " + scen)), 1e-10);
  EXPECT_EQ(tol_of(run("--quiet evaluate " + scen, "STOT_TOL=1e-3")), 1e-3);
  EXPECT_EQ(tol_of(run("--quiet --tol 1e-4 evaluate " + scen, "STOT_TOL=1e-3")), 1e-4);

  Json j = stot::io::read_file(std::string(STOT_SOURCE_DIR) + "/" + scen);
  j["tolerances"] = Json::parse(R"({"identity": 1e-6})");
  const std::string file = "'" + write_temp("with_tol.json", j.dump()) + "'";
  EXPECT_EQ(tol_of(run("--quiet evaluate " + file, "STOT_TOL=1e-3")), 1e-6);
  EXPECT_EQ(tol_of(run("--quiet --tol 1e-4 evaluate " + file, "STOT_TOL=1e-3")), 1e-4);
}

TEST(Tolerance, TightToleranceTurnsResidualIntoFailure) {
  // max|Q − born| on this scenario is a few ulps, not zero.
  const Json j = golden("erasure_coherent_evaluate.json");
  const double worst = std::max(j["identity_residual"].get<double>(), j["born_residual"].get<double>());
  ASSERT_GT(worst, 0.0);
  EXPECT_EQ(run("--quiet --tol 0 evaluate data/erasure_coherent_scenario.json").status, 1);
}

TEST(Seed, SearchIsReproducible) {
  const std::string args = "--quiet search --mode max-disturbance --budget 50 data/mixed_qubit_identity.json";
  const CliRun a = run("--seed 11 " + args);
  const CliRun b = run("--seed 11 " + args);
  EXPECT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(stot::io::parse_text(a.out)["seed"], 11);
}

}  // namespace
