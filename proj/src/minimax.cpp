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

#include "privmech/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "privmech/divergences.hpp"
#include "privmech/mechanisms.hpp"
#include "privmech/parallel.hpp"
#include "privmech/random.hpp"

namespace privmech {
namespace {

void require_staircase_alpha(Index k, double alpha_bits) {
  if (k < 2) throw Error(ErrorCode::kInvalidK, "k must be >= 2");
  if (!(alpha_bits > 0.0) || std::exp2(alpha_bits) > double(k)) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "staircase needs 0 < alpha and 2^alpha <= k",
                ErrorDetail{.value = alpha_bits});
  }
}

void require_positive(std::int64_t v, const char* what) {
  if (v < 1) {
    throw Error(ErrorCode::kInvalidSize, std::string(what) + " must be >= 1",
                ErrorDetail{.value = double(v)});
  }
}

// Neumaier compensated sum, accumulated in index order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double log_binomial_pmf(std::int64_t n, std::int64_t c, double p) {
  const double log_choose = std::lgamma(double(n) + 1) -
                            std::lgamma(double(c) + 1) -
                            std::lgamma(double(n - c) + 1);
  auto xlogy = [](double x, double y) {
    return x == 0.0 ? 0.0 : x * std::log(y);
  };
  return log_choose + xlogy(double(c), p) + xlogy(double(n - c), 1.0 - p);
}

}  // namespace

void SimulationConfig::validate() const {
  require_staircase_alpha(k, alpha_bits);
  require_positive(n, "n");
  require_positive(replicates, "replicates");
  if (source.alphabet_size() != k) {
    throw Error(ErrorCode::kDimensionMismatch,
                "source has " + std::to_string(source.alphabet_size()) +
                    " symbols, expected k = " + std::to_string(k));
  }
}

std::vector<Index> sample_outputs(const Channel& w, const Distribution& p,
                                  std::int64_t n, std::uint64_t seed) {
  require_positive(n, "n");
  const Distribution q = pushforward(w, p);
  const Index m = q.alphabet_size();
  std::vector<double> cdf(static_cast<std::size_t>(m));
  double acc = 0.0;
  Index last_positive = 0;
  for (Index y = 0; y < m; ++y) {
    acc += q(y);
    cdf[std::size_t(y)] = acc;
    if (q(y) > 0.0) last_positive = y;
  }

  Rng rng(seed);
  std::vector<Index> out(static_cast<std::size_t>(n));
  for (auto& s : out) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    s = std::min(Index(it - cdf.begin()), last_positive);
  }
  return out;
}

Eigen::VectorXd staircase_estimator(std::span<const Index> samples, Index k,
                                    double alpha_bits, std::int64_t n) {
  require_staircase_alpha(k, alpha_bits);
  require_positive(n, "n");
  if (std::int64_t(samples.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "got " + std::to_string(samples.size()) + " samples, n = " +
                    std::to_string(n));
  }
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Index s = samples[i];
    if (s < 0 || s > k) {
      throw Error(ErrorCode::kSymbolOutOfRange,
                  "sample " + std::to_string(i) + " = " + std::to_string(s) +
                      " is outside [0, " + std::to_string(k) + "]",
                  ErrorDetail{.index = std::int64_t(i), .value = double(s)});
    }
    if (s < k) counts(s) += 1.0;
  }
  const double scale =
      double(k - 1) / (std::exp2(alpha_bits) - 1.0) / double(n);
  return scale * counts;
}

double closed_form_risk(const Distribution& p, Index k, double alpha_bits,
                        std::int64_t n) {
  require_staircase_alpha(k, alpha_bits);
  require_positive(n, "n");
  if (p.alphabet_size() != k) {
    throw Error(ErrorCode::kDimensionMismatch,
                "distribution size differs from k");
  }
  const double lambda = staircase_lambda(k, alpha_bits);
  const auto& v = p.probs();
  const double total = (v.array() * (1.0 - lambda * v.array())).sum();
  return total / (double(n) * lambda);
}

RiskEstimate empirical_risk(const SimulationConfig& cfg) {
  cfg.validate();
  const Channel w = maxl_staircase(cfg.k, cfg.alpha_bits);
  std::vector<double> losses(static_cast<std::size_t>(cfg.replicates));
  parallel_for(losses.size(), [&](std::size_t i) {
    const auto samples =
        sample_outputs(w, cfg.source, cfg.n, derive_seed(cfg.seed, i));
    const Eigen::VectorXd est =
        staircase_estimator(samples, cfg.k, cfg.alpha_bits, cfg.n);
    losses[i] = (est - cfg.source.probs()).squaredNorm();
  });

  CompensatedSum sum;
  for (double l : losses) sum.add(l);
  const double r = double(cfg.replicates);
  const double mean = sum.value() / r;
  CompensatedSum squares;
  for (double l : losses) squares.add((l - mean) * (l - mean));
  const double variance =
      cfg.replicates > 1 ? squares.value() / (r - 1.0) : 0.0;

  const double scale = double(cfg.n) * (std::exp2(cfg.alpha_bits) - 1.0);
  return RiskEstimate{
      .mean_risk = mean,
      .std_error = std::sqrt(variance / r),
      .replicates = cfg.replicates,
      .closed_form =
          closed_form_risk(cfg.source, cfg.k, cfg.alpha_bits, cfg.n),
      .upper_bound = double(cfg.k - 1) / scale,
      .lecam_lower = 1.0 / (16.0 * scale),
  };
}

Eigen::VectorXd default_direction(Index k) {
  if (k < 2) throw Error(ErrorCode::kInvalidK, "k must be >= 2");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(k);
  u(0) = std::sqrt(0.5);
  u(1) = -std::sqrt(0.5);
  return u;
}

LeCamPair lecam_pair(Index k, double alpha_bits, std::int64_t n,
                     const Eigen::VectorXd& u, const ToleranceConfig& tol) {
  if (k < 2) throw Error(ErrorCode::kInvalidK, "k must be >= 2");
  if (!(alpha_bits > 0.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange, "alpha must be > 0",
                ErrorDetail{.value = alpha_bits});
  }
  require_positive(n, "n");
  if (u.size() != k) {
    throw Error(ErrorCode::kBadDirectionVector,
                "direction has " + std::to_string(u.size()) +
                    " entries, expected " + std::to_string(k));
  }
  const double sum = u.sum();
  const double sum_sq = u.squaredNorm();
  if (!(std::abs(sum) <= tol.eq_tol) || !(std::abs(sum_sq - 1.0) <= tol.eq_tol)) {
    throw Error(ErrorCode::kBadDirectionVector,
                "direction must satisfy sum u = 0 and sum u^2 = 1 (got " +
                    std::to_string(sum) + ", " + std::to_string(sum_sq) + ")",
                ErrorDetail{.value = sum_sq});
  }
  const double scale = std::sqrt(double(n) * (std::exp2(alpha_bits) - 1.0));
  Eigen::VectorXd p1 =
      Eigen::VectorXd::Constant(k, 1.0 / double(k)) + u / scale;
  const bool valid = p1.minCoeff() >= 0.0 && p1.maxCoeff() <= 1.0;

  LeCamPair out{.p0 = uniform_distribution(k),
                .p1_entries = p1,
                .p1 = std::nullopt,
                .u = u,
                .valid = valid};
  if (valid) out.p1 = Distribution(detail::kTrusted, std::move(p1));
  return out;
}

LeCamPreconditions lecam_preconditions(Index k, double alpha_bits,
                                       std::int64_t n,
                                       const ToleranceConfig& tol) {
  const double gain = std::exp2(alpha_bits) - 1.0;
  if (!(gain > 0.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange, "alpha must be > 0",
                ErrorDetail{.value = alpha_bits});
  }
  const Eigen::VectorXd u = default_direction(k);
  auto taylor_at = [&](std::int64_t m) {
    const LeCamPair pair = lecam_pair(k, alpha_bits, m, u, tol);
    if (!pair.valid) return std::numeric_limits<double>::quiet_NaN();
    return double(m) * gain * kl_divergence_nats(*pair.p1, pair.p0);
  };

  LeCamPreconditions out;
  out.min_n_pair = std::int64_t(std::ceil(double(k * k) / gain));
  out.pair_ok = n >= out.min_n_pair;
  out.taylor_value = taylor_at(n);
  out.taylor_ok = out.pair_ok && out.taylor_value <= 1.0 + tol.ineq_slack;

  std::int64_t m = std::max<std::int64_t>(1, out.min_n_pair);
  for (int j = 0; j <= 40; ++j, m *= 2) {
    const double t = taylor_at(m);
    if (t <= 1.0 + tol.ineq_slack) {
      out.min_n_taylor = m;
      break;
    }
  }
  return out;
}

TwoPointRisk two_point_risk(const LeCamPair& pair, double alpha_bits,
                            std::int64_t n, std::int64_t replicates,
                            std::uint64_t seed) {
  if (!pair.valid) {
    throw Error(ErrorCode::kPreconditionNotMet,
                "perturbed distribution has entries outside [0, 1]");
  }
  const Index k = pair.p0.alphabet_size();
  const RiskEstimate r0 = empirical_risk(
      {k, alpha_bits, n, replicates, derive_seed(seed, 0), pair.p0});
  const RiskEstimate r1 = empirical_risk(
      {k, alpha_bits, n, replicates, derive_seed(seed, 1), *pair.p1});
  return TwoPointRisk{
      .s = 0.5 * (r0.mean_risk + r1.mean_risk),
      .std_error = 0.5 * std::hypot(r0.std_error, r1.std_error),
      .at_p0 = r0,
      .at_p1 = r1,
  };
}

BoundCheckResult lecam_lower_check(Index k, double alpha_bits, std::int64_t n,
                                   std::int64_t replicates, std::uint64_t seed,
                                   const ToleranceConfig& tol) {
  const LeCamPreconditions pre = lecam_preconditions(k, alpha_bits, n, tol);
  if (!pre.pair_ok) {
    throw Error(ErrorCode::kPreconditionNotMet,
                "pair validity needs n >= k^2/(2^alpha-1) = " +
                    std::to_string(pre.min_n_pair),
                ErrorDetail{.minimal_n = pre.min_n_pair});
  }
  if (!pre.taylor_ok) {
    std::string msg = "n(2^alpha-1) D_KL(P1||P0) = " +
                      std::to_string(pre.taylor_value) + " exceeds 1; ";
    msg += pre.min_n_taylor
               ? "smallest scanned valid n = " + std::to_string(*pre.min_n_taylor)
               : "no scanned n satisfies it";
    ErrorDetail detail{.value = pre.taylor_value};
    if (pre.min_n_taylor) detail.minimal_n = *pre.min_n_taylor;
    throw Error(ErrorCode::kPreconditionNotMet, msg, detail);
  }
  const LeCamPair pair =
      lecam_pair(k, alpha_bits, n, default_direction(k), tol);
  const TwoPointRisk s = two_point_risk(pair, alpha_bits, n, replicates, seed);
  const double bound =
      1.0 / (16.0 * double(n) * (std::exp2(alpha_bits) - 1.0));
  return detail::make_verdict("lecam_lower", bound, s.s + 3.0 * s.std_error,
                              true, tol);
}

double product_total_variation(const Distribution& a, const Distribution& b,
                               std::int64_t n) {
  require_positive(n, "n");
  if (a.alphabet_size() != b.alphabet_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "alphabet sizes differ");
  }
  std::vector<Index> support;
  for (Index i = 0; i < a.alphabet_size(); ++i) {
    if (a(i) > 0.0 || b(i) > 0.0) support.push_back(i);
  }
  if (support.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "product TV is only implemented for two-symbol supports");
  }
  if (support.size() == 1) return 0.0;
  // Counts of the first symbol are sufficient; normalize the two-point laws.
  const Index s0 = support[0];
  const Index s1 = support[1];
  const double pa = a(s0) / (a(s0) + a(s1));
  const double pb = b(s0) / (b(s0) + b(s1));
  CompensatedSum total;
  for (std::int64_t c = 0; c <= n; ++c) {
    total.add(std::abs(std::exp(log_binomial_pmf(n, c, pa)) -
                       std::exp(log_binomial_pmf(n, c, pb))));
  }
  return 0.5 * total.value();
}

std::vector<SweepRow> scaling_sweep(Index k, double alpha_bits,
                                    std::span<const std::int64_t> n_grid,
                                    std::int64_t replicates,
                                    std::uint64_t seed,
                                    const std::optional<Distribution>& source) {
  std::vector<std::int64_t> grid(n_grid.begin(), n_grid.end());
  std::sort(grid.begin(), grid.end());
  const Distribution src = source ? *source : uniform_distribution(k);
  for (std::int64_t n : grid) {
    SimulationConfig{k, alpha_bits, n, replicates, seed, src}.validate();
  }

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::int64_t n : grid) {
    const RiskEstimate r =
        empirical_risk({k, alpha_bits, n, replicates, seed, src});
    rows.push_back(SweepRow{
        .k = k,
        .alpha_bits = alpha_bits,
        .n = n,
        .replicates = replicates,
        .seed = seed,
        .mean_risk = r.mean_risk,
        .std_error = r.std_error,
        .closed_form = r.closed_form,
        .upper_bound = r.upper_bound,
        .lecam_lower = r.lecam_lower,
        .normalized_risk =
            r.mean_risk * double(n) * (std::exp2(alpha_bits) - 1.0),
    });
  }
  return rows;
}

}  // namespace privmech
