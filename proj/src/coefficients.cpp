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

#include "privmech/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "privmech/parallel.hpp"
#include "privmech/random.hpp"

namespace privmech {
namespace {

constexpr double kMinInputDivergence = 1e-12;
constexpr double kMaxInputDivergence = 1e12;
constexpr double kMinStep = 1e-9;

struct Candidate {
  bool valid = false;
  double value = 0.0;
  Eigen::VectorXd p0;
  Eigen::VectorXd p1;
};

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

// Total order used for every reduction: higher value wins, ties go to the
// lexicographically smaller (p0, p1).
bool better(const Candidate& a, const Candidate& b) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  if (a.value != b.value) return a.value > b.value;
  if (a.p0 != b.p0) return lex_less(a.p0, b.p0);
  return lex_less(a.p1, b.p1);
}

class RatioEvaluator {
 public:
  RatioEvaluator(const Channel& w, const FDivergenceSpec& spec)
      : wt_(w.matrix().transpose()), spec_(spec) {}

  Candidate operator()(Eigen::VectorXd p0, Eigen::VectorXd p1) const {
    Candidate c;
    const auto d = detail::divergence_pair(wt_, p0, p1, spec_);
    if (d.input >= kMinInputDivergence && d.input <= kMaxInputDivergence &&
        std::isfinite(d.output)) {
      c.valid = true;
      c.value = d.output / d.input;
    }
    c.p0 = std::move(p0);
    c.p1 = std::move(p1);
    return c;
  }

 private:
  Eigen::MatrixXd wt_;
  const FDivergenceSpec& spec_;
};

Distribution to_distribution(const Eigen::VectorXd& v) {
  return Distribution(detail::kTrusted, v);
}

}  // namespace

ContractionEstimate estimate_eta_f(const Channel& w, const FDivergenceSpec& spec,
                                   std::int64_t budget, std::uint64_t seed,
                                   const ToleranceConfig& tol) {
  tol.validate();
  const Index k = w.input_size();
  const std::int64_t vertex_pairs = std::int64_t(k) * std::int64_t(k - 1);
  const bool is_tv = spec.kind() == FDivergenceKind::kTotalVariation;
  if (budget < 1 || (is_tv && budget < vertex_pairs)) {
    throw Error(ErrorCode::kBudgetTooSmall,
                "budget " + std::to_string(budget) + " is below the " +
                    std::to_string(is_tv ? std::max<std::int64_t>(
                                               1, vertex_pairs)
                                         : 1) +
                    " evaluations required",
                ErrorDetail{.value = double(budget)});
  }
  if (spec.kind() == FDivergenceKind::kCustom) {
    const double at_one = spec.custom_f()(1.0);
    if (!(std::abs(at_one) <= tol.eq_tol)) {
      throw Error(ErrorCode::kCustomFNotNormalized, "f(1) must be 0",
                  ErrorDetail{.value = at_one});
    }
  }

  const RatioEvaluator evaluate(w, spec);
  Candidate best;
  std::int64_t used = 0;

  // Point-mass pairs. Exhaustive for TV, where the supremum sits there.
  const std::int64_t vertex_budget =
      is_tv ? vertex_pairs : std::min(vertex_pairs, budget / 4);
  for (Index a = 0; a < k && used < vertex_budget; ++a) {
    for (Index b = 0; b < k && used < vertex_budget; ++b) {
      if (a == b) continue;
      Candidate c = evaluate(Eigen::VectorXd::Unit(k, a),
                             Eigen::VectorXd::Unit(k, b));
      ++used;
      if (better(c, best)) best = std::move(c);
    }
  }

  // Seeded random pairs: half independent Dirichlet pairs, half
  // near-diagonal mixtures P1 = (1 - t) P0 + t R with t log-uniform.
  const std::int64_t random_count = (budget - used) / 2;
  if (random_count > 0 && k > 1) {
    std::vector<Candidate> results(static_cast<std::size_t>(random_count));
    parallel_for(results.size(), [&](std::size_t i) {
      Rng rng(seed, i);
      static constexpr double kConcentrations[] = {1.0, 0.25, 4.0};
      const double conc = kConcentrations[i % 3];
      Eigen::VectorXd p0 = sample_dirichlet(rng, k, conc);
      Eigen::VectorXd r = sample_dirichlet(rng, k, conc);
      if (i % 2 == 1) {
        const double t = std::pow(10.0, -5.0 * rng.uniform());
        r = (1.0 - t) * p0 + t * r;
      }
      results[i] = evaluate(std::move(p0), std::move(r));
    });
    for (auto& c : results) {
      if (better(c, best)) best = std::move(c);
    }
    used += random_count;
  }

  // Greedy coordinate refinement around the incumbent with a halving step.
  std::int64_t levels = 0;
  if (best.valid && k > 1) {
    double step = 0.5;
    levels = 1;
    while (used < budget && step >= kMinStep) {
      bool improved = false;
      auto try_move = [&](Eigen::VectorXd p0, Eigen::VectorXd p1) {
        if (used >= budget) return;
        Candidate c = evaluate(std::move(p0), std::move(p1));
        ++used;
        if (c.valid && c.value > best.value) {
          best = std::move(c);
          improved = true;
        }
      };
      for (int which = 0; which < 2 && used < budget; ++which) {
        for (Index i = 0; i < k && used < budget; ++i) {
          for (Index j = 0; j < k && used < budget; ++j) {
            const Eigen::VectorXd& src = which == 0 ? best.p0 : best.p1;
            if (i == j || src(i) <= 0.0) continue;
            Eigen::VectorXd moved = src;
            const double amount = step * src(i);
            moved(i) -= amount;
            moved(j) += amount;
            if (which == 0) {
              try_move(std::move(moved), best.p1);
            } else {
              try_move(best.p0, std::move(moved));
            }
          }
        }
      }
      if (used < budget) {
        // Pull the pair together, then push it apart.
        const Eigen::VectorXd diff = best.p1 - best.p0;
        try_move(best.p0, best.p0 + (1.0 - step) * diff);
        Eigen::VectorXd apart = best.p0 + (1.0 + step) * (best.p1 - best.p0);
        if (apart.minCoeff() >= 0.0) try_move(best.p0, std::move(apart));
      }
      if (!improved) {
        step *= 0.5;
        ++levels;
      }
    }
  }

  ContractionEstimate out{.spec = spec, .seed = seed};
  out.evaluations = used;
  out.grid_resolution = levels;
  if (best.valid) {
    out.value = best.value;
    out.witness_p0 = to_distribution(best.p0);
    out.witness_p1 = to_distribution(best.p1);
  }
  return out;
}

}  // namespace privmech
