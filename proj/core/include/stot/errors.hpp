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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A value failed a structural check (non-Hermitian, non-PSD, not a PVM ...).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class NotCompletelyPositive : public Error {
 public:
  NotCompletelyPositive(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class NotTracePreserving : public Error {
 public:
  NotTracePreserving(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ImaginaryResidueExceeded : public Error {
 public:
  ImaginaryResidueExceeded(const std::string& what, double residue)
      : Error(what), residue_(residue) {}
  double residue() const noexcept { return residue_; }

 private:
  double residue_;
};

/// Kernel obstruction in the anticommutator solve. `blocks` lists the
/// (k, l) eigenbasis blocks of σ where s_k + s_l vanishes but the target does not.
class NoSolution : public Error {
 public:
  NoSolution(const std::string& what,
             std::vector<std::pair<int, int>> blocks, double residual)
      : Error(what), blocks_(std::move(blocks)), residual_(residual) {}
  const std::vector<std::pair<int, int>>& blocks() const noexcept {
    return blocks_;
  }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<std::pair<int, int>> blocks_;
  double residual_;
};

class IllConditionedFrame : public Error {
 public:
  IllConditionedFrame(const std::string& what, double min_singular_value)
      : Error(what), min_singular_value_(min_singular_value) {}
  double min_singular_value() const noexcept { return min_singular_value_; }

 private:
  double min_singular_value_;
};

}  // namespace stot
