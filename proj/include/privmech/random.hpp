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

#ifndef PRIVMECH_RANDOM_HPP_
#define PRIVMECH_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "privmech/core.hpp"

namespace privmech {

/// Mixes (seed, stream) into an independent 64-bit seed. Used to give every
/// replicate / evaluation index its own substream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, std::uint64_t stream)
      : Rng(derive_seed(seed, stream)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return double(engine_() >> 11) * 0x1.0p-53;
  }

  double gamma(double shape);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// One draw from a symmetric Dirichlet(concentration) on k symbols.
Eigen::VectorXd sample_dirichlet(Rng& rng, Index k, double concentration);

}  // namespace privmech

#endif  // PRIVMECH_RANDOM_HPP_
