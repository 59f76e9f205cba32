// Copyright 2026 The phase-ovm Authors
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
#include <string_view>

namespace phase_ovm {

enum class ErrorKind {
  invalid_dimension,
  truncation_too_small,
  truncation_risk,
  invalid_quadrature,
  invalid_region,
  invalid_state,
  not_representable,
  singular_parameter,
  dimension_mismatch,
  grid_too_coarse,
  odd_parity_state,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::truncation_too_small: return "truncation-too-small";
    case ErrorKind::truncation_risk: return "truncation-risk";
    case ErrorKind::invalid_quadrature: return "invalid-quadrature";
    case ErrorKind::invalid_region: return "invalid-region";
    case ErrorKind::invalid_state: return "invalid-state";
    case ErrorKind::not_representable: return "not-representable";
    case ErrorKind::singular_parameter: return "singular-parameter";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::grid_too_coarse: return "grid-too-coarse";
    case ErrorKind::odd_parity_state: return "odd-parity-state";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Numerical failures (as opposed to bad input) map to CLI exit code 3.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::truncation_too_small || kind_ == ErrorKind::truncation_risk;
  }

 private:
  ErrorKind kind_;
};

}  // namespace phase_ovm
