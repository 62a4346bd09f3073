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

#include "stot/distributions.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "stot/errors.hpp"

namespace stot {

namespace {

constexpr double kLvnNegativityTol = 1e-12;
constexpr double kMeasurableFormTol = 1e-12;

ComplexMatrix complement(const ComplexMatrix& p) {
  return identity(static_cast<int>(p.rows())) - p;
}

/// Re(z) after checking |Im z| ≤ tol.
double checked_real(Complex z, double tol, const char* what) {
  if (std::abs(z.imag()) > tol) {
    std::ostringstream os;
    os << what << ": imaginary residue " << std::abs(z.imag()) << " exceeds " << tol;
    throw ImaginaryResidueExceeded(os.str(), std::abs(z.imag()));
  }
  return z.real();
}

/// T(i,j) = Tr[ℰ(f(i)) Q_j].
template <typename RowOperator>
JointQuasiDistribution tabulate(const TPSMScenario& s, DistributionKind kind, RowOperator row_op,
                                double imag_tol, const char* what) {
  JointQuasiDistribution d;
  d.kind = kind;
  d.row_labels = s.pvm_a().labels();
  d.col_labels = s.pvm_b().labels();
  d.values.resize(s.pvm_a().size(), s.pvm_b().size());
  for (int i = 0; i < s.pvm_a().size(); ++i) {
    const ComplexMatrix evolved = s.channel().apply(row_op(i));
    for (int j = 0; j < s.pvm_b().size(); ++j) {
      d.values(i, j) = checked_real((evolved * s.pvm_b().projector(j)).trace(), imag_tol, what);
    }
  }
  return d;
}

std::string join_labels(const std::vector<std::string>& group) {
  std::string out;
  for (const auto& l : group) {
    if (!out.empty()) out += '+';
    out += l;
  }
  return out;
}

/// Maps each group to row indices; throws on anything that is not a partition.
std::vector<std::vector<int>> resolve_partition(const std::vector<std::string>& labels,
                                                const OutcomePartition& merge) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<int>(i);
  std::set<std::string> seen;
  std::vector<std::vector<int>> groups;
  for (const auto& group : merge) {
    if (group.empty()) throw InvalidArgument("coarse_grain: empty group in partition");
    std::vector<int> rows;
    for (const auto& label : group) {
      const auto it = index.find(label);
      if (it == index.end()) throw InvalidArgument("coarse_grain: unknown label '" + label + "'");
      if (!seen.insert(label).second) {
        throw InvalidArgument("coarse_grain: label '" + label + "' appears in two groups");
      }
      rows.push_back(it->second);
    }
    groups.push_back(std::move(rows));
  }
  if (seen.size() != labels.size()) {
    throw InvalidArgument("coarse_grain: partition does not cover every outcome");
  }
  return groups;
}

}  // namespace

TPSMScenario::TPSMScenario(DensityOperator rho, ProjectiveMeasurement pvm_a, QuantumChannel channel,
                           ProjectiveMeasurement pvm_b)
    : rho_(std::move(rho)),
      pvm_a_(std::move(pvm_a)),
      channel_(std::move(channel)),
      pvm_b_(std::move(pvm_b)) {
  if (rho_.dim() != pvm_a_.dim() || rho_.dim() != channel_.dim_in() ||
      channel_.dim_out() != pvm_b_.dim()) {
    std::ostringstream os;
    os << "TPSMScenario: dimension chain broken (rho " << rho_.dim() << ", pvm_a " << pvm_a_.dim()
       << ", channel " << channel_.dim_in() << "->" << channel_.dim_out() << ", pvm_b "
       << pvm_b_.dim() << ")";
    throw DimensionMismatch(os.str());
  }
}

const char* to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::LVN: return "LVN";
    case DistributionKind::MH: return "MH";
    case DistributionKind::Disturbance: return "DISTURBANCE";
    case DistributionKind::ReversedMH: return "REVERSED_MH";
  }
  return "?";
}

void validate(const JointQuasiDistribution& d, const Tolerances& tol) {
  if (d.values.rows() != static_cast<Eigen::Index>(d.row_labels.size()) ||
      d.values.cols() != static_cast<Eigen::Index>(d.col_labels.size())) {
    throw DimensionMismatch("JointQuasiDistribution: label counts do not match table shape");
  }
  const double expected_total = d.kind == DistributionKind::Disturbance ? 0.0 : 1.0;
  const double total_err = std::abs(d.total() - expected_total);
  if (total_err > tol.identity) {
    std::ostringstream os;
    os << to_string(d.kind) << " distribution: total " << d.total() << " differs from "
       << expected_total;
    throw ValidationError(os.str(), total_err);
  }
  if (d.kind == DistributionKind::LVN && d.values.size() > 0) {
    const double min_entry = d.values.minCoeff();
    if (min_entry < -kLvnNegativityTol) {
      std::ostringstream os;
      os << "LVN distribution: negative entry " << min_entry;
      throw ValidationError(os.str(), -min_entry);
    }
  }
}

JointQuasiDistribution lvn_distribution(const TPSMScenario& s, const Tolerances& tol) {
  const ComplexMatrix& rho = s.rho().matrix();
  auto d = tabulate(
      s, DistributionKind::LVN,
      [&](int i) {
        const ComplexMatrix& p = s.pvm_a().projector(i);
        return ComplexMatrix(p * rho * p);
      },
      tol.imaginary, "lvn_distribution");
  validate(d, tol);
  return d;
}

JointQuasiDistribution mh_distribution(const TPSMScenario& s, const Tolerances& tol) {
  const ComplexMatrix& rho = s.rho().matrix();
  auto d = tabulate(
      s, DistributionKind::MH,
      [&](int i) { return ComplexMatrix(0.5 * anticommutator(rho, s.pvm_a().projector(i))); },
      tol.imaginary, "mh_distribution");
  validate(d, tol);
  return d;
}

JointQuasiDistribution disturbance_term(const TPSMScenario& s, const Tolerances& tol) {
  const ComplexMatrix& rho = s.rho().matrix();
  auto d = tabulate(
      s, DistributionKind::Disturbance,
      [&](int i) {
        const ComplexMatrix& p = s.pvm_a().projector(i);
        const ComplexMatrix q = complement(p);
        return ComplexMatrix(0.5 * (rho - p * rho * p - q * rho * q));
      },
      tol.imaginary, "disturbance_term");
  const double gap = (d.values - disturbance_from_expectations(s)).cwiseAbs().maxCoeff();
  if (gap > kMeasurableFormTol) {
    std::ostringstream os;
    os << "disturbance_term: direct and expectation-value forms differ by " << gap;
    throw ValidationError(os.str(), gap);
  }
  validate(d, tol);
  return d;
}

RealMatrix disturbance_from_expectations(const TPSMScenario& s) {
  const ComplexMatrix& rho = s.rho().matrix();
  const ComplexMatrix evolved = s.channel().apply(rho);
  RealMatrix out(s.pvm_a().size(), s.pvm_b().size());
  for (int i = 0; i < s.pvm_a().size(); ++i) {
    const ComplexMatrix& p = s.pvm_a().projector(i);
    const ComplexMatrix q = complement(p);
    const ComplexMatrix evolved_i = s.channel().apply(p * rho * p + q * rho * q);
    for (int j = 0; j < s.pvm_b().size(); ++j) {
      const ComplexMatrix& qj = s.pvm_b().projector(j);
      out(i, j) = 0.5 * ((evolved * qj).trace().real() - (evolved_i * qj).trace().real());
    }
  }
  return out;
}

JointQuasiDistribution born_evaluate(const TPSMScenario& s, const ComplexMatrix& varrho,
                                     const Tolerances& tol) {
  const BipartiteIndex idx{s.pvm_a().dim(), s.pvm_b().dim()};
  if (varrho.rows() != idx.dim() || varrho.cols() != idx.dim()) {
    throw DimensionMismatch("born_evaluate: operator does not act on H_A (x) H_B");
  }
  JointQuasiDistribution d;
  d.kind = DistributionKind::MH;
  d.row_labels = s.pvm_a().labels();
  d.col_labels = s.pvm_b().labels();
  d.values.resize(s.pvm_a().size(), s.pvm_b().size());
  for (int i = 0; i < s.pvm_a().size(); ++i)
    for (int j = 0; j < s.pvm_b().size(); ++j) {
      const Complex z = (varrho * tensor(s.pvm_a().projector(i), s.pvm_b().projector(j))).trace();
      d.values(i, j) = checked_real(z, tol.imaginary, "born_evaluate");
    }
  return d;
}

JointQuasiDistribution born_evaluate(const TPSMScenario& s, const StateOverTime& varrho,
                                     const Tolerances& tol) {
  return born_evaluate(s, varrho.matrix(), tol);
}

JointQuasiDistribution coarse_grain(const JointQuasiDistribution& d, const OutcomePartition& merge) {
  const auto groups = resolve_partition(d.row_labels, merge);
  JointQuasiDistribution out;
  out.kind = d.kind;
  out.col_labels = d.col_labels;
  out.values = RealMatrix::Zero(static_cast<Eigen::Index>(groups.size()), d.values.cols());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out.row_labels.push_back(join_labels(merge[g]));
    for (int row : groups[g]) out.values.row(g) += d.values.row(row);
  }
  return out;
}

TPSMScenario coarse_grain_scenario(const TPSMScenario& s, const OutcomePartition& merge) {
  const auto groups = resolve_partition(s.pvm_a().labels(), merge);
  std::vector<ComplexMatrix> projectors;
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    ComplexMatrix sum = ComplexMatrix::Zero(s.pvm_a().dim(), s.pvm_a().dim());
    for (int row : groups[g]) sum += s.pvm_a().projector(row);
    projectors.push_back(std::move(sum));
    labels.push_back(join_labels(merge[g]));
  }
  return TPSMScenario(s.rho(), ProjectiveMeasurement(projectors, labels), s.channel(), s.pvm_b());
}

CoarseGrainComparison compare_coarse_graining(const TPSMScenario& s, const OutcomePartition& merge,
                                              DistributionKind kind, const Tolerances& tol) {
  auto compute = [&](const TPSMScenario& sc) {
    switch (kind) {
      case DistributionKind::LVN: return lvn_distribution(sc, tol);
      case DistributionKind::MH: return mh_distribution(sc, tol);
      case DistributionKind::Disturbance: return disturbance_term(sc, tol);
      case DistributionKind::ReversedMH: break;
    }
    throw InvalidArgument("compare_coarse_graining: unsupported distribution kind");
  };
  CoarseGrainComparison out{coarse_grain(compute(s), merge),
                            compute(coarse_grain_scenario(s, merge)), 0.0};
  out.max_deviation =
      (out.merged_distribution.values - out.distribution_of_merged.values).cwiseAbs().maxCoeff();
  return out;
}

double two_time_expectation(const TPSMScenario& s, const HermitianOperator& ob) {
  if (s.pvm_a().size() != 2) {
    throw InvalidArgument("two_time_expectation: first measurement must have exactly two outcomes");
  }
  if (ob.dim() != s.channel().dim_out()) {
    throw DimensionMismatch("two_time_expectation: observable does not act on H_B");
  }
  const ComplexMatrix& rho = s.rho().matrix();
  const ComplexMatrix& p1 = s.pvm_a().projector(0);
  const ComplexMatrix& p2 = s.pvm_a().projector(1);
  const Complex first = (s.channel().apply(p1 * rho * p1) * ob.matrix()).trace();
  const Complex second = (s.channel().apply(p2 * rho * p2) * ob.matrix()).trace();
  return (first - second).real();
}

}  // namespace stot
