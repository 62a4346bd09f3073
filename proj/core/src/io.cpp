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

#include "stot/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

namespace stot::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

/// Runs `f`, re-raising library validation errors with the path attached.
template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, std::string("missing member \"") + key + "\"");
  return *it;
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "non-finite number");
  return v;
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
  throw ParseError(path, "expected a number or a [re, im] pair");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::vector<ComplexMatrix> matrices_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(matrix_from_json(j[k], at(path, k)));
  return out;
}

Json pairs_to_json(const std::vector<std::pair<int, int>>& blocks) {
  Json out = Json::array();
  for (const auto& [k, l] : blocks) out.push_back({k, l});
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using ToleranceField = double Tolerances::*;
const std::pair<const char*, ToleranceField> kToleranceFields[] = {
    {"hermiticity", &Tolerances::hermiticity},
    {"psd", &Tolerances::psd},
    {"unit_trace", &Tolerances::unit_trace},
    {"spectral", &Tolerances::spectral},
    {"pvm", &Tolerances::pvm},
    {"channel", &Tolerances::channel},
    {"kraus_truncation", &Tolerances::kraus_truncation},
    {"identity", &Tolerances::identity},
    {"imaginary", &Tolerances::imaginary},
    {"spectrum_psd", &Tolerances::spectrum_psd},
    {"support", &Tolerances::support},
    {"cp", &Tolerances::cp},
    {"conditional", &Tolerances::conditional},
};

}  // namespace

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("$", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ParseError("$", "malformed JSON in " + path + ": " + e.what());
  }
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = at(path, r);
    if (!j[r].is_array() || j[r].empty()) throw ParseError(row_path, "expected a non-empty row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) throw ParseError(row_path, "row length differs from the first row");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], at(at(path, r), c));
  return m;
}

Tolerances tolerances_from_json(const Json& j, const std::string& path, Tolerances base) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    ToleranceField field = nullptr;
    for (const auto& [name, f] : kToleranceFields)
      if (it.key() == name) field = f;
    if (field == nullptr) throw ParseError(at(path, it.key()), "unknown tolerance");
    const double v = number(it.value(), at(path, it.key()));
    if (v < 0.0) throw ParseError(at(path, it.key()), "tolerance must be non-negative");
    base.*field = v;
  }
  return base;
}

DensityOperator state_from_json(const Json& j, const std::string& path, const Tolerances& tol) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  if (j.contains("pure")) {
    const std::string p = at(path, "pure");
    const Json& amps = j.at("pure");
    if (!amps.is_array() || amps.empty()) throw ParseError(p, "expected a non-empty amplitude array");
    ComplexVector psi(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t k = 0; k < amps.size(); ++k)
      psi(static_cast<Eigen::Index>(k)) = complex_from_json(amps[k], at(p, k));
    return guarded(p, [&] { return pure_state(psi); });
  }
  const ComplexMatrix m = matrix_from_json(member(j, path, "matrix"), at(path, "matrix"));
  return guarded(at(path, "matrix"), [&] { return DensityOperator(m, tol); });
}

QuantumChannel channel_from_json(const Json& j, const std::string& path, const Tolerances& tol) {
  const int din = integer(member(j, path, "dim_in"), at(path, "dim_in"));
  const int dout = integer(member(j, path, "dim_out"), at(path, "dim_out"));
  const std::string kp = at(path, "kraus");
  std::vector<ComplexMatrix> kraus = matrices_from_json(member(j, path, "kraus"), kp);
  for (std::size_t k = 0; k < kraus.size(); ++k)
    if (kraus[k].rows() != dout || kraus[k].cols() != din)
      throw ParseError(at(kp, k), "Kraus operator must be dim_out x dim_in");
  return guarded(kp, [&] { return QuantumChannel(din, dout, std::move(kraus), tol); });
}

ProjectiveMeasurement pvm_from_json(const Json& j, const std::string& path, const Tolerances& tol) {
  const std::string pp = at(path, "projectors");
  const std::vector<ComplexMatrix> projectors = matrices_from_json(member(j, path, "projectors"), pp);
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const std::string lp = at(path, "labels");
    const Json& l = j.at("labels");
    if (!l.is_array()) throw ParseError(lp, "expected an array of strings");
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (!l[k].is_string()) throw ParseError(at(lp, k), "expected a string");
      labels.push_back(l[k].get<std::string>());
    }
  }
  return guarded(pp, [&] { return ProjectiveMeasurement(projectors, labels, tol); });
}

ScenarioFile scenario_from_json(const Json& j, const Tolerances& base) {
  const std::string root = "$";
  if (!j.is_object()) throw ParseError(root, "expected an object");
  Tolerances tol = base;
  if (j.contains("tolerances")) tol = tolerances_from_json(j.at("tolerances"), "$.tolerances", base);
  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
      throw ParseError("$.seed", "expected a non-negative integer");
    seed = s.get<std::uint64_t>();
  }
  DensityOperator rho = state_from_json(member(j, root, "rho"), "$.rho", tol);
  ProjectiveMeasurement pa = pvm_from_json(member(j, root, "pvm_a"), "$.pvm_a", tol);
  QuantumChannel e = channel_from_json(member(j, root, "channel"), "$.channel", tol);
  ProjectiveMeasurement pb = pvm_from_json(member(j, root, "pvm_b"), "$.pvm_b", tol);
  TPSMScenario s = guarded("$", [&] { return TPSMScenario(rho, pa, e, pb); });
  return {std::move(s), seed, tol};
}

DensityOperator load_state(const Json& j, const Tolerances& tol) {
  if (j.is_object() && j.contains("rho")) return state_from_json(j.at("rho"), "$.rho", tol);
  return state_from_json(j, "$", tol);
}

QuantumChannel load_channel(const Json& j, const Tolerances& tol) {
  if (j.is_object() && j.contains("channel")) return channel_from_json(j.at("channel"), "$.channel", tol);
  return channel_from_json(j, "$", tol);
}

Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const DensityOperator& rho) { return {{"matrix", to_json(rho.matrix())}}; }

Json to_json(const QuantumChannel& e) {
  Json kraus = Json::array();
  for (const auto& k : e.kraus()) kraus.push_back(to_json(k));
  return {{"dim_in", e.dim_in()}, {"dim_out", e.dim_out()}, {"kraus", std::move(kraus)}};
}

Json to_json(const ProjectiveMeasurement& pvm) {
  Json projectors = Json::array();
  for (int i = 0; i < pvm.size(); ++i) projectors.push_back(to_json(pvm.projector(i)));
  return {{"projectors", std::move(projectors)}, {"labels", pvm.labels()}};
}

Json to_json(const TPSMScenario& s, std::optional<std::uint64_t> seed) {
  Json out = {{"rho", to_json(s.rho())},
              {"pvm_a", to_json(s.pvm_a())},
              {"channel", to_json(s.channel())},
              {"pvm_b", to_json(s.pvm_b())}};
  if (seed) out["seed"] = *seed;
  return out;
}

Json to_json(const JointQuasiDistribution& d) {
  return {{"kind", to_string(d.kind)},
          {"rows", d.row_labels},
          {"cols", d.col_labels},
          {"values", to_json(d.values)}};
}

Json to_json(const SpectrumReport& r) {
  return {{"eigenvalues", to_json(r.eigenvalues)},
          {"negativity", r.negativity},
          {"causality_measure", r.causality_measure},
          {"is_psd", r.is_psd},
          {"borderline", r.borderline}};
}

Json to_json(const MarginalReport& r) {
  return {{"residual_a", r.residual_a}, {"residual_b", r.residual_b}, {"passed", r.passed}};
}

Json to_json(const BayesianInverseResult& r) {
  Json out = {{"status", to_string(r.status)},
              {"message", r.message},
              {"solver_residual", r.solver_residual},
              {"bayes_residual", r.bayes_residual},
              {"min_choi_eigenvalue", r.min_choi_eigenvalue},
              {"tp_residual", r.tp_residual},
              {"sigma_eigenvalues", to_json(r.diagnostics.sigma_eigenvalues)},
              {"sigma_rank", r.diagnostics.sigma_rank},
              {"completed_blocks", pairs_to_json(r.diagnostics.completed_blocks)},
              {"obstruction_blocks", pairs_to_json(r.diagnostics.obstruction_blocks)}};
  out["channel"] = r.channel ? to_json(*r.channel) : Json(nullptr);
  return out;
}

Json to_json(const SpatiotemporalBayesReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"i", c.i},
                     {"j", c.j},
                     {"defined", c.defined},
                     {"forward", c.forward},
                     {"reversed", c.reversed},
                     {"residual", c.residual}});
  return {{"forward_conditional", to_json(r.forward_conditional)},
          {"reversed_conditional", to_json(r.reversed_conditional)},
          {"cells", std::move(cells)},
          {"undefined_cells", r.undefined_cells},
          {"max_defined_residual", r.max_defined_residual},
          {"max_undefined_residual", r.max_undefined_residual},
          {"passed", r.passed}};
}

Json to_json(const Reconstruction& r) {
  return {{"matrix", to_json(r.matrix)},
          {"min_singular_value", r.min_singular_value},
          {"ls_residual", r.ls_residual},
          {"queries", r.queries}};
}

Json to_json(const BornExistenceReport& r) {
  Json out = {{"max_violation", r.max_violation},
              {"verdict", to_string(r.verdict)},
              {"rho_maximally_mixed", r.rho_maximally_mixed},
              {"channel_discard_and_prepare", r.channel_discard_and_prepare},
              {"evaluations", r.evaluations}};
  if (r.witness) {
    out["witness"] = {{"projector", to_json(r.witness->projector)},
                      {"i", r.witness->i},
                      {"j", r.witness->j},
                      {"max_abs_difference", r.witness->max_abs_difference},
                      {"scenario", to_json(r.witness->scenario)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const DisturbanceSearchResult& r) {
  return {{"value", r.value},
          {"evaluations", r.evaluations},
          {"scenario", r.scenario ? to_json(*r.scenario) : Json(nullptr)}};
}

Json to_json(const NecessityScanReport& r) {
  auto entry = [](const ScanEntry& e) {
    return Json{{"state_index", e.state_index},
                {"channel_index", e.channel_index},
                {"max_violation", e.max_violation},
                {"within_tolerance", e.within_tolerance},
                {"maximally_mixed", e.maximally_mixed},
                {"discard_and_prepare", e.discard_and_prepare},
                {"anomalous", e.anomalous}};
  };
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(entry(e));
  Json anomalies = Json::array();
  for (const auto& e : r.anomalies) anomalies.push_back(entry(e));
  return {{"entries", std::move(entries)},
          {"passing", r.passing.size()},
          {"anomalies", std::move(anomalies)}};
}

Json to_json(const Tolerances& t) {
  Json out = Json::object();
  for (const auto& [name, f] : kToleranceFields) out[name] = t.*f;
  return out;
}

std::string to_csv(const JointQuasiDistribution& d, const std::string& corner) {
  std::string out = corner.empty() ? std::string(to_string(d.kind)) : corner;
  for (const auto& c : d.col_labels) out += "," + c;
  out += "\n";
  for (int i = 0; i < d.rows(); ++i) {
    out += d.row_labels[static_cast<std::size_t>(i)];
    for (int j = 0; j < d.cols(); ++j) out += "," + format_number(d.values(i, j));
    out += "\n";
  }
  return out;
}

std::string to_text(const JointQuasiDistribution& d, int precision) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{to_string(d.kind)};
  for (const auto& c : d.col_labels) header.push_back(c);
  cells.push_back(header);
  for (int i = 0; i < d.rows(); ++i) {
    std::vector<std::string> row{d.row_labels[static_cast<std::size_t>(i)]};
    for (int j = 0; j < d.cols(); ++j) {
      std::ostringstream os;
      // Print -0 as 0 so tables of vanishing entries read cleanly.
      const double v = std::abs(d.values(i, j)) < 0.5 * std::pow(10.0, -precision) ? 0.0 : d.values(i, j);
      os << std::fixed << std::setprecision(precision) << v;
      row.push_back(os.str());
    }
    cells.push_back(row);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0)
        os << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      else
        os << "  " << std::right << std::setw(static_cast<int>(width[c])) << row[c];
    }
    os << "\n";
  }
  return os.str();
}

namespace {

bool holds_object(const Json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const auto& e : j)
      if (holds_object(e)) return true;
  return false;
}

void write_json(std::string& out, const Json& j, int indent) {
  constexpr std::size_t kInlineWidth = 100;
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_array() && !j.empty()) {
    const std::string flat = j.dump();
    if (!holds_object(j) && flat.size() <= kInlineWidth) {
      // Same tokens as dump(), with a space after each separator.
      std::string spaced;
      bool in_string = false;
      for (std::size_t k = 0; k < flat.size(); ++k) {
        const char ch = flat[k];
        spaced += ch;
        if (ch == '"' && (k == 0 || flat[k - 1] != '\\')) in_string = !in_string;
        if (ch == ',' && !in_string) spaced += ' ';
      }
      out += spaced;
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      write_json(out, j[k], indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += pad + Json(it.key()).dump() + ": ";
      write_json(out, it.value(), indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write_json(out, j, 0);
  return out + "\n";
}

}  // namespace stot::io
