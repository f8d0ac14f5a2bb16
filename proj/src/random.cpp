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

#include "privmech/random.hpp"

namespace privmech {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  splitmix64(state);
  return splitmix64(state);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  std::seed_seq seq{std::uint32_t(splitmix64(state)),
                    std::uint32_t(splitmix64(state)),
                    std::uint32_t(splitmix64(state)),
                    std::uint32_t(splitmix64(state))};
  engine_.seed(seq);
}

double Rng::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

Eigen::VectorXd sample_dirichlet(Rng& rng, Index k, double concentration) {
  Eigen::VectorXd v(k);
  double sum = 0.0;
  // Tiny concentrations can underflow every component to zero; redraw.
  do {
    for (Index i = 0; i < k; ++i) v(i) = rng.gamma(concentration);
    sum = v.sum();
  } while (!(sum > 0.0));
  return v / sum;
}

}  // namespace privmech
