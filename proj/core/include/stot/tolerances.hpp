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

namespace stot {

/// Numerical tolerances shared by every module.
///
/// Absolute, max-entry unless noted. All fields can be overridden per call
/// site; the CLI fills them from scenario files, `STOT_TOL` and `--tol`.
struct Tolerances {
  double hermiticity = 1e-12;       // ‖M − M†‖_max accepted before symmetrizing
  double psd = 1e-12;               // density operators: min eigenvalue ≥ −psd
  double unit_trace = 1e-12;        // density operators: |Tr − 1|
  double spectral = 1e-10;          // eigen-reconstruction residual (Frobenius)
  double pvm = 1e-10;               // orthogonality / completeness of projectors
  double channel = 1e-10;           // Σ K†K = I and Choi PSD
  double kraus_truncation = 1e-12;  // Choi eigenvalues dropped when extracting Kraus
  double identity = 1e-10;          // derived identities (marginals, Born rule, ...)
  double imaginary = 1e-10;         // Margenau-Hill imaginary residue
  double spectrum_psd = 1e-10;      // is_psd classification of a state over time
  double support = 1e-12;           // s_k + s_l kernel threshold in the Bayes solver
  double cp = 1e-8;                 // CP acceptance for solved Bayesian inverses
  double conditional = 1e-10;       // |Q(i)| below which conditionals are undefined
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace stot
