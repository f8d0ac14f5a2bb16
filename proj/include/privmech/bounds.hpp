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

// Numerical certification of the inequalities linking the Dobrushin
// coefficient eta = eta_TV(W) to the LDP level and maximal leakage of W.
//
// Each check recomputes what it needs from the channel, so every verdict is
// self-contained. Notation used below:
//   R   = max_y max_{x1,x2} W(x1,y)/W(x2,y)   (= 2^ldp_level)
//   S   = sum_y max_x W(x,y)                  (= 2^max_leakage)
//   W_* = min_{x,y} W(x,y)

#ifndef PRIVMECH_BOUNDS_HPP_
#define PRIVMECH_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "privmech/coefficients.hpp"
#include "privmech/core.hpp"

namespace privmech {

struct BoundCheckResult {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // rhs - lhs
  bool passed = true;
  bool applicable = true;
  /// Index triples left out of the check (lemma1: 0/0 ratios).
  std::int64_t skipped = 0;
};

namespace detail {

// The slack is ineq_slack scaled by max(1, |rhs|): likelihood ratios can reach
// 1e6 and more when W_* is tiny, and tight cases then differ by rounding far
// above any fixed absolute slack.
template <typename Scalar>
BoundCheckResult make_verdict(std::string name, Scalar lhs, Scalar rhs,
                              bool applicable, const ToleranceConfig& tol) {
  using std::abs;
  using std::isinf;
  const Scalar scale =
      isinf(rhs) ? Scalar(1) : std::max(Scalar(1), Scalar(abs(rhs)));
  BoundCheckResult r;
  r.name = std::move(name);
  r.lhs = double(lhs);
  r.rhs = double(rhs);
  r.margin = double(rhs - lhs);
  r.applicable = applicable;
  r.passed = !applicable || lhs <= rhs + Scalar(tol.ineq_slack) * scale;
  return r;
}

}  // namespace detail

/// eta <= (R - 1)/(R + 1). Vacuous (rhs = 1) when R is infinite.
template <typename Scalar>
BoundCheckResult check_thm1(const BasicChannel<Scalar>& w,
                            const ToleranceConfig& tol = {}) {
  const Scalar eta = dobrushin_coefficient(w);
  const Scalar r = max_likelihood_ratio(w);
  using std::isinf;
  const Scalar rhs = isinf(r) ? Scalar(1) : (r - Scalar(1)) / (r + Scalar(1));
  return detail::make_verdict("thm1", eta, rhs, true, tol);
}

/// R <= 1 + eta / W_*. Applicable only when W_* > 0.
template <typename Scalar>
BoundCheckResult check_thm2(const BasicChannel<Scalar>& w,
                            const ToleranceConfig& tol = {}) {
  const Scalar w_min = min_entry(w);
  const Scalar r = max_likelihood_ratio(w);
  if (!(w_min > Scalar(0))) {
    return detail::make_verdict("thm2", r,
                                std::numeric_limits<Scalar>::infinity(), false,
                                tol);
  }
  const Scalar eta = dobrushin_coefficient(w);
  return detail::make_verdict("thm2", r, Scalar(1) + eta / w_min, true, tol);
}

/// eta <= min{1, S - 1}.
template <typename Scalar>
BoundCheckResult check_thm3(const BasicChannel<Scalar>& w,
                            const ToleranceConfig& tol = {}) {
  const Scalar eta = dobrushin_coefficient(w);
  const Scalar s = column_max_sum(w);
  return detail::make_verdict("thm3", eta, std::min(Scalar(1), s - Scalar(1)),
                              true, tol);
}

/// S <= (|X|/2)(1 + eta). Equality when |X| = 2.
template <typename Scalar>
BoundCheckResult check_thm4(const BasicChannel<Scalar>& w,
                            const ToleranceConfig& tol = {}) {
  const Scalar eta = dobrushin_coefficient(w);
  const Scalar s = column_max_sum(w);
  const Scalar rhs = Scalar(w.input_size()) / Scalar(2) * (Scalar(1) + eta);
  return detail::make_verdict("thm4", s, rhs, true, tol);
}

/// 1 + eta <= S <= (|X|/2)(1 + eta), as (lower, upper).
template <typename Scalar>
std::pair<BoundCheckResult, BoundCheckResult> check_maxl_sandwich(
    const BasicChannel<Scalar>& w, const ToleranceConfig& tol = {}) {
  const Scalar eta = dobrushin_coefficient(w);
  const Scalar s = column_max_sum(w);
  BoundCheckResult lower =
      detail::make_verdict("maxl_sandwich_lower", Scalar(1) + eta, s, true, tol);
  BoundCheckResult upper = check_thm4(w, tol);
  upper.name = "maxl_sandwich_upper";
  return {std::move(lower), std::move(upper)};
}

/// 2 eta/(1 - eta) <= R - 1 <= eta / W_*, as (lower, upper). The lower side
/// needs eta < 1, the upper side W_* > 0.
template <typename Scalar>
std::pair<BoundCheckResult, BoundCheckResult> check_ldp_sandwich(
    const BasicChannel<Scalar>& w, const ToleranceConfig& tol = {}) {
  const Scalar eta = dobrushin_coefficient(w);
  const Scalar r = max_likelihood_ratio(w);
  const Scalar w_min = min_entry(w);
  constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

  const bool lower_ok = eta < Scalar(1);
  BoundCheckResult lower = detail::make_verdict(
      "ldp_sandwich_lower",
      lower_ok ? Scalar(2) * eta / (Scalar(1) - eta) : kInf, r - Scalar(1),
      lower_ok, tol);

  const bool upper_ok = w_min > Scalar(0);
  BoundCheckResult upper = detail::make_verdict(
      "ldp_sandwich_upper", r - Scalar(1), upper_ok ? eta / w_min : kInf,
      upper_ok, tol);
  return {std::move(lower), std::move(upper)};
}

/// max over (x1, x2, y) of |W(x1,y) - W(x2,y)| / (W(x1,y) + W(x2,y)) is at
/// most (R - 1)/(R + 1). Triples with both entries zero are skipped and
/// counted; the check is not applicable when R is infinite.
template <typename Scalar>
BoundCheckResult check_lemma1(const BasicChannel<Scalar>& w,
                              const ToleranceConfig& tol = {}) {
  const Scalar r = max_likelihood_ratio(w);
  using std::isinf;
  if (isinf(r)) {
    return detail::make_verdict("lemma1", Scalar(0), Scalar(1), false, tol);
  }
  const auto& m = w.matrix();
  Scalar worst(0);
  std::int64_t skipped = 0;
  for (Index a = 0; a < m.rows(); ++a) {
    for (Index b = a + 1; b < m.rows(); ++b) {
      for (Index y = 0; y < m.cols(); ++y) {
        const Scalar s = m(a, y) + m(b, y);
        if (s == Scalar(0)) {
          ++skipped;
          continue;
        }
        using std::abs;
        worst = std::max(worst, abs(m(a, y) - m(b, y)) / s);
      }
    }
  }
  BoundCheckResult out = detail::make_verdict(
      "lemma1", worst, (r - Scalar(1)) / (r + Scalar(1)), true, tol);
  out.skipped = skipped;
  return out;
}

/// Every check above, in a fixed order.
template <typename Scalar>
std::vector<BoundCheckResult> run_all_checks(const BasicChannel<Scalar>& w,
                                             const ToleranceConfig& tol = {}) {
  std::vector<BoundCheckResult> out;
  out.push_back(check_thm1(w, tol));
  out.push_back(check_thm2(w, tol));
  out.push_back(check_thm3(w, tol));
  out.push_back(check_thm4(w, tol));
  auto [maxl_lo, maxl_hi] = check_maxl_sandwich(w, tol);
  out.push_back(std::move(maxl_lo));
  out.push_back(std::move(maxl_hi));
  auto [ldp_lo, ldp_hi] = check_ldp_sandwich(w, tol);
  out.push_back(std::move(ldp_lo));
  out.push_back(std::move(ldp_hi));
  out.push_back(check_lemma1(w, tol));
  return out;
}

struct PairwiseMean {
  Index i1 = 0;
  Index i2 = 0;
  double pair_mean = 0;
  double mean = 0;
};

/// For nonnegative a_1..a_k (k >= 2) returns two distinct indices whose mean
/// is at least the overall mean: the two largest entries, ties to the lowest
/// index.
inline PairwiseMean pairwise_mean_bound(const std::vector<double>& values,
                                        const ToleranceConfig& tol = {}) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooFewValues, "need at least two values");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) {
      throw Error(ErrorCode::kNegativeValue,
                  "value " + std::to_string(i) + " is negative",
                  ErrorDetail{.index = std::int64_t(i), .value = values[i]});
    }
  }
  PairwiseMean out;
  out.i1 = Index(std::max_element(values.begin(), values.end()) -
                 values.begin());
  out.i2 = out.i1 == 0 ? 1 : 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (Index(i) != out.i1 && values[i] > values[std::size_t(out.i2)]) {
      out.i2 = Index(i);
    }
  }
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / double(values.size());
  out.pair_mean =
      (values[std::size_t(out.i1)] + values[std::size_t(out.i2)]) / 2.0;
  if (out.mean > out.pair_mean + tol.ineq_slack * std::max(1.0, out.pair_mean)) {
    throw std::logic_error("pairwise mean below overall mean");
  }
  return out;
}

}  // namespace privmech

#endif  // PRIVMECH_BOUNDS_HPP_
