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

#include "privmech/mechanisms.hpp"

#include <cmath>

#include "privmech/random.hpp"

namespace privmech {

Channel random_channel(Index in_size, Index out_size, double concentration,
                       std::uint64_t seed) {
  if (in_size < 1 || out_size < 1) {
    throw Error(ErrorCode::kInvalidSize, "channel sizes must be >= 1");
  }
  if (!(concentration > 0.0) || !std::isfinite(concentration)) {
    throw Error(ErrorCode::kInvalidConcentration,
                "concentration must be positive and finite",
                ErrorDetail{.value = concentration});
  }
  Rng rng(seed);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(
      in_size, out_size);
  for (Index x = 0; x < in_size; ++x) {
    m.row(x) = sample_dirichlet(rng, out_size, concentration).transpose();
  }
  return validate_channel(m);
}

}  // namespace privmech
