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

// Interchange formats.
//
//   channel:       {"rows": [[...], ...], "tol": {"sum_tol": 1e-9}}
//   distribution:  {"probs": [...]}
//
// Infinite values are written as the strings "inf" / "-inf" and NaN as
// null. Unknown keys are ignored on input.

#ifndef PRIVMECH_JSON_IO_HPP_
#define PRIVMECH_JSON_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "privmech/bounds.hpp"
#include "privmech/coefficients.hpp"
#include "privmech/core.hpp"
#include "privmech/minimax.hpp"

namespace privmech {

using Json = nlohmann::ordered_json;

/// Parses text into JSON, mapping syntax errors to ErrorCode::kParseError.
Json parse_json(std::string_view text);

Json number_to_json(double v);
double number_from_json(const Json& j);

/// Reads "tol" if present; missing fields keep their defaults.
ToleranceConfig tolerance_from_json(const Json& j);

Channel channel_from_json(const Json& j);
Json channel_to_json(const Channel& w, const ToleranceConfig& tol = {});

Distribution distribution_from_json(const Json& j,
                                    const ToleranceConfig& tol = {});
Json distribution_to_json(const Distribution& p);

Json to_json(const PrivacyReport& r);
Json to_json(const BoundCheckResult& r);
Json to_json(const RiskEstimate& r);
Json to_json(const ContractionEstimate& e);
Json to_json(const SweepRow& r);

/// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

inline constexpr std::string_view kSweepCsvHeader =
    "k,alpha_bits,n,replicates,seed,mean_risk,std_error,closed_form,"
    "upper_bound,lecam_lower,normalized_risk";

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace privmech

#endif  // PRIVMECH_JSON_IO_HPP_
