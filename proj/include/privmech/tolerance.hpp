// Copyright 2026 The privmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVMECH_TOLERANCE_HPP_
#define PRIVMECH_TOLERANCE_HPP_

#include <string>

#include "privmech/error.hpp"

namespace privmech {

/// Shared numerics policy. Every module takes one of these rather than
/// hard-coding its own slack.
struct ToleranceConfig {
  /// Allowed |sum - 1| for a probability vector or channel row.
  double sum_tol = 1e-9;
  /// Equality assertions.
  double eq_tol = 1e-12;
  /// Slack added to the right-hand side of inequality checks.
  double ineq_slack = 1e-10;

  /// Throws InvalidTolerance unless every field lies in (0, 1e-3].
  void validate() const {
    auto check = [](double v, const char* name) {
      if (!(v > 0.0 && v <= 1e-3)) {
        throw Error(ErrorCode::kInvalidTolerance,
                    std::string(name) + " must lie in (0, 1e-3]",
                    ErrorDetail{.value = v});
      }
    };
    check(sum_tol, "sum_tol");
    check(eq_tol, "eq_tol");
    check(ineq_slack, "ineq_slack");
  }
};

}  // namespace privmech

#endif  // PRIVMECH_TOLERANCE_HPP_
