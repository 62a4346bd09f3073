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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "stot/analysis.hpp"
#include "stot/bayes.hpp"
#include "stot/channel.hpp"
#include "stot/distributions.hpp"
#include "stot/errors.hpp"
#include "stot/state_over_time.hpp"
#include "stot/tolerances.hpp"

namespace stot::io {

using Json = nlohmann::json;

/// Malformed or invalid input; `path()` locates it, e.g. "$.rho.matrix[1][0]".
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& path, const std::string& message)
      : InvalidArgument(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Reading. Complex entries are numbers or [re, im] pairs; matrices are arrays
// of rows.

Json parse_text(const std::string& text);
Json read_file(const std::string& path);

ComplexMatrix matrix_from_json(const Json& j, const std::string& path);
/// Starts from `base` and applies the keys present in `j`; unknown keys fail.
Tolerances tolerances_from_json(const Json& j, const std::string& path, Tolerances base);
/// {"matrix": M} or {"pure": [amplitudes]}.
DensityOperator state_from_json(const Json& j, const std::string& path, const Tolerances& tol);
/// {"dim_in": n, "dim_out": m, "kraus": [K...]}.
QuantumChannel channel_from_json(const Json& j, const std::string& path, const Tolerances& tol);
/// {"projectors": [P...], "labels": [...]?}.
ProjectiveMeasurement pvm_from_json(const Json& j, const std::string& path, const Tolerances& tol);

struct ScenarioFile {
  TPSMScenario scenario;
  std::optional<std::uint64_t> seed;
  Tolerances tolerances;
};

/// {"rho", "pvm_a", "channel", "pvm_b", "seed"?, "tolerances"?}. File
/// tolerances are applied on top of `base`.
ScenarioFile scenario_from_json(const Json& j, const Tolerances& base = default_tolerances());

/// A state document, or any document with a "rho" member.
DensityOperator load_state(const Json& j, const Tolerances& tol);
/// A channel document, or any document with a "channel" member.
QuantumChannel load_channel(const Json& j, const Tolerances& tol);

// Writing.

Json to_json(const ComplexMatrix& m);
Json to_json(const RealVector& v);
Json to_json(const RealMatrix& m);
Json to_json(const DensityOperator& rho);
Json to_json(const QuantumChannel& e);
Json to_json(const ProjectiveMeasurement& pvm);
Json to_json(const TPSMScenario& s, std::optional<std::uint64_t> seed = std::nullopt);
Json to_json(const JointQuasiDistribution& d);
Json to_json(const SpectrumReport& r);
Json to_json(const MarginalReport& r);
Json to_json(const BayesianInverseResult& r);
Json to_json(const SpatiotemporalBayesReport& r);
Json to_json(const Reconstruction& r);
Json to_json(const BornExistenceReport& r);
Json to_json(const DisturbanceSearchResult& r);
Json to_json(const NecessityScanReport& r);
Json to_json(const Tolerances& t);

/// Header row of column labels, one row per row label; %.17g numbers. The
/// corner cell holds `corner`, or the distribution kind when empty.
std::string to_csv(const JointQuasiDistribution& d, const std::string& corner = "");
/// Aligned text table for terminals.
std::string to_text(const JointQuasiDistribution& d, int precision = 6);

/// Two-space indented JSON with round-trip exact numbers and a trailing newline.
std::string dump(const Json& j);

}  // namespace stot::io
