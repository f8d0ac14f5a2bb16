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

// Monte Carlo study of l2-risk for distribution estimation from data
// privatized by a maximal-leakage mechanism.
//
// Upper side: the staircase mechanism (mechanisms.hpp) with the unbiased
// plug-in estimator, whose risk is known in closed form and never exceeds
// (k-1)/(n(2^a-1)). Lower side: the two-point (Le Cam) construction around
// the uniform distribution, with target 1/(16 n (2^a-1)).
//
// Output symbols are 0-based; the staircase dummy symbol is index k.

#ifndef PRIVMECH_MINIMAX_HPP_
#define PRIVMECH_MINIMAX_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "privmech/bounds.hpp"
#include "privmech/core.hpp"

namespace privmech {

struct SimulationConfig {
  Index k = 2;
  double alpha_bits = 1.0;
  std::int64_t n = 1;
  std::int64_t replicates = 1;
  std::uint64_t seed = 0;
  Distribution source;

  /// Throws on bad sizes or when the staircase mechanism does not apply
  /// (needs 0 < alpha, 2^alpha <= k).
  void validate() const;
};

struct RiskEstimate {
  double mean_risk = 0;
  double std_error = 0;
  std::int64_t replicates = 0;
  double closed_form = 0;
  double upper_bound = 0;  // (k-1)/(n(2^a-1))
  double lecam_lower = 0;  // 1/(16 n (2^a-1))
};

/// n i.i.d. draws from pushforward(w, p) by inverse CDF. Deterministic in
/// seed.
std::vector<Index> sample_outputs(const Channel& w, const Distribution& p,
                                  std::int64_t n, std::uint64_t seed);

/// P^(x) = ((k-1)/(2^a-1)) * (1/n) * #{i : Y_i = x} for x < k. Unclipped and
/// unnormalized; the dummy symbol k contributes nothing.
Eigen::VectorXd staircase_estimator(std::span<const Index> samples, Index k,
                                    double alpha_bits, std::int64_t n);

/// E||P^ - P||^2 = (1/(n lambda)) sum_x P(x)(1 - lambda P(x)).
double closed_form_risk(const Distribution& p, Index k, double alpha_bits,
                        std::int64_t n);

/// Mean of ||P^ - source||^2 over cfg.replicates fresh samples of size n.
/// Replicate i draws from substream (seed, i); the result is bit-identical
/// for any thread count.
RiskEstimate empirical_risk(const SimulationConfig& cfg);

// ---------------------------------------------------------------------------
// Two-point lower bound

struct LeCamPair {
  Distribution p0;                   // uniform on [k]
  Eigen::VectorXd p1_entries;        // 1/k + u / sqrt(n(2^a-1)), unchecked
  std::optional<Distribution> p1;    // set iff valid
  Eigen::VectorXd u;
  bool valid = false;
};

/// u = (1/sqrt2, -1/sqrt2, 0, ..., 0).
Eigen::VectorXd default_direction(Index k);

/// Builds the perturbed pair. u must satisfy sum u = 0 and sum u^2 = 1
/// within eq_tol.
LeCamPair lecam_pair(Index k, double alpha_bits, std::int64_t n,
                     const Eigen::VectorXd& u, const ToleranceConfig& tol = {});

struct LeCamPreconditions {
  std::int64_t min_n_pair = 0;  // ceil(k^2/(2^a-1))
  bool pair_ok = false;
  /// n (2^a-1) D_KL(P1||P0) in nats; NaN when the pair is not valid.
  double taylor_value = 0;
  bool taylor_ok = false;
  /// Smallest n on the scan n_pair * 2^j (j <= 40) satisfying both.
  std::optional<std::int64_t> min_n_taylor;
};

LeCamPreconditions lecam_preconditions(Index k, double alpha_bits,
                                       std::int64_t n,
                                       const ToleranceConfig& tol = {});

struct TwoPointRisk {
  double s = 0;  // (risk at P0 + risk at P1) / 2
  double std_error = 0;
  RiskEstimate at_p0;
  RiskEstimate at_p1;
};

/// Monte Carlo two-point risk of the staircase estimator at a valid pair.
/// No precondition gate beyond pair validity.
TwoPointRisk two_point_risk(const LeCamPair& pair, double alpha_bits,
                            std::int64_t n, std::int64_t replicates,
                            std::uint64_t seed);

/// Verdict lhs = 1/(16 n (2^a-1)), rhs = S + 3 * std_error at the default
/// pair. Throws PreconditionNotMet unless n >= k^2/(2^a-1) and
/// n (2^a-1) D_KL(P1||P0) <= 1 (nats).
BoundCheckResult lecam_lower_check(Index k, double alpha_bits, std::int64_t n,
                                   std::int64_t replicates, std::uint64_t seed,
                                   const ToleranceConfig& tol = {});

/// Total variation between the n-fold products a^n and b^n when their
/// common support has at most two symbols (exact binomial sum).
double product_total_variation(const Distribution& a, const Distribution& b,
                               std::int64_t n);

// ---------------------------------------------------------------------------
// Rate sweep

struct SweepRow {
  Index k = 0;
  double alpha_bits = 0;
  std::int64_t n = 0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  double mean_risk = 0;
  double std_error = 0;
  double closed_form = 0;
  double upper_bound = 0;
  double lecam_lower = 0;
  double normalized_risk = 0;  // mean_risk * n * (2^a - 1)
};

/// One empirical_risk run per n (same seed each row), rows sorted by n.
/// The source defaults to uniform on [k].
std::vector<SweepRow> scaling_sweep(Index k, double alpha_bits,
                                    std::span<const std::int64_t> n_grid,
                                    std::int64_t replicates,
                                    std::uint64_t seed,
                                    const std::optional<Distribution>& source =
                                        std::nullopt);

}  // namespace privmech

#endif  // PRIVMECH_MINIMAX_HPP_
