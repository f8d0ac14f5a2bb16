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

// Privacy and contraction certificates of a channel.
//
// Everything here except estimate_eta_f is exact: a finite max/sum over the
// matrix entries. All "bits" quantities use base-2 logarithms.

#ifndef PRIVMECH_COEFFICIENTS_HPP_
#define PRIVMECH_COEFFICIENTS_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "privmech/core.hpp"
#include "privmech/divergences.hpp"

namespace privmech {

/// Dobrushin coefficient: the largest total-variation distance between two
/// rows of W. Equals the TV contraction coefficient eta_TV(W). A single-row
/// channel has coefficient 0.
template <typename Scalar>
Scalar dobrushin_coefficient(const BasicChannel<Scalar>& w) {
  Scalar best(0);
  const auto& m = w.matrix();
  for (Index a = 0; a < m.rows(); ++a) {
    for (Index b = a + 1; b < m.rows(); ++b) {
      const Scalar d = detail::tv_kernel(m.row(a), m.row(b));
      if (d > best) best = d;
    }
  }
  return best;
}

/// max_y max_{x1,x2} W(x1,y)/W(x2,y) with 0/0 := 1 and c/0 := inf for c > 0.
/// This is 2^alpha for the least alpha at which W is alpha-LDP.
template <typename Scalar>
Scalar max_likelihood_ratio(const BasicChannel<Scalar>& w) {
  const auto& m = w.matrix();
  Scalar best(1);
  for (Index y = 0; y < m.cols(); ++y) {
    const Scalar hi = m.col(y).maxCoeff();
    const Scalar lo = m.col(y).minCoeff();
    if (hi == Scalar(0)) continue;  // all-zero column: every ratio is 0/0
    if (lo == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    const Scalar r = hi / lo;
    if (r > best) best = r;
  }
  return best;
}

/// Least alpha (bits) such that W is alpha-locally differentially private.
template <typename Scalar>
Scalar ldp_level(const BasicChannel<Scalar>& w) {
  using std::log2;
  return log2(max_likelihood_ratio(w));
}

/// sum_y max_x W(x, y), the quantity bounded by 2^alpha in the MaxL
/// definition.
template <typename Scalar>
Scalar column_max_sum(const BasicChannel<Scalar>& w) {
  return w.matrix().colwise().maxCoeff().sum();
}

/// Maximal leakage log2(sum_y max_x W(x, y)) in bits.
template <typename Scalar>
Scalar max_leakage(const BasicChannel<Scalar>& w) {
  using std::log2;
  return log2(column_max_sum(w));
}

/// W_* = min over all entries.
template <typename Scalar>
Scalar min_entry(const BasicChannel<Scalar>& w) {
  return w.matrix().minCoeff();
}

/// Multiplicative guessing gain (bits) of a MAP adversary estimating X itself
/// from Y: log2( sum_y max_x P(x) W(x,y) / max_x P(x) ). Equals max_leakage
/// at uniform P.
template <typename Scalar>
Scalar map_adversary_gain(const BasicChannel<Scalar>& w,
                          const BasicDistribution<Scalar>& px) {
  if (px.alphabet_size() != w.input_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prior has " + std::to_string(px.alphabet_size()) +
                    " symbols, channel expects " +
                    std::to_string(w.input_size()));
  }
  const MatrixX<Scalar> joint = px.probs().asDiagonal() * w.matrix();
  const Scalar success = joint.colwise().maxCoeff().sum();
  using std::log2;
  return log2(success / px.probs().maxCoeff());
}

struct PrivacyReport {
  double eta_tv = 0;
  double ldp_level_bits = 0;
  double maxl_bits = 0;
  double min_entry = 0;
  std::int64_t input_size = 0;
  std::int64_t output_size = 0;
};

template <typename Scalar>
PrivacyReport make_privacy_report(const BasicChannel<Scalar>& w) {
  return PrivacyReport{
      .eta_tv = double(dobrushin_coefficient(w)),
      .ldp_level_bits = double(ldp_level(w)),
      .maxl_bits = double(max_leakage(w)),
      .min_entry = double(min_entry(w)),
      .input_size = std::int64_t(w.input_size()),
      .output_size = std::int64_t(w.output_size()),
  };
}

namespace detail {

template <typename Scalar>
struct DivergencePair {
  Scalar input = 0;
  Scalar output = 0;
};

// D_f(P0||P1) and D_f(W(P0)||W(P1)) with wt = W^T. The output difference is
// pushed through W directly instead of subtracting two rounded
// pushforwards, and any rounding residue in sum(P0 - P1) is folded into its
// largest coordinate, so nearly equal pairs keep relative accuracy.
template <typename Scalar, typename M>
DivergencePair<Scalar> divergence_pair(const Eigen::MatrixBase<M>& wt,
                                       VectorX<Scalar> p0, VectorX<Scalar> p1,
                                       const BasicFDivergenceSpec<Scalar>& spec) {
  p0 /= p0.sum();
  p1 /= p1.sum();
  VectorX<Scalar> diff = p0 - p1;
  Index top = 0;
  diff.cwiseAbs().maxCoeff(&top);
  diff(top) -= diff.sum();
  DivergencePair<Scalar> out;
  out.input = f_divergence_kernel(p0, p1, diff, spec);
  const VectorX<Scalar> q0 = wt * p0;
  const VectorX<Scalar> q1 = wt * p1;
  const VectorX<Scalar> qdiff = wt * diff;
  out.output = f_divergence_kernel(q0, q1, qdiff, spec);
  return out;
}

}  // namespace detail

/// D_f(W(P0)||W(P1)) / D_f(P0||P1), or NaN when the input divergence is 0 or
/// infinite.
template <typename Scalar>
Scalar contraction_ratio(const BasicChannel<Scalar>& w,
                         const BasicDistribution<Scalar>& p0,
                         const BasicDistribution<Scalar>& p1,
                         const BasicFDivergenceSpec<Scalar>& spec) {
  if (p0.alphabet_size() != w.input_size() ||
      p1.alphabet_size() != w.input_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "distributions must have " + std::to_string(w.input_size()) +
                    " symbols");
  }
  const auto d = detail::divergence_pair(w.matrix().transpose(), p0.probs(),
                                         p1.probs(), spec);
  using std::isfinite;
  if (!(d.input > Scalar(0)) || !isfinite(d.input)) {
    return std::numeric_limits<Scalar>::quiet_NaN();
  }
  return d.output / d.input;
}

/// Result of a seeded search for the f-divergence contraction coefficient.
/// `value` is a lower bound on eta_f(W), witnessed by (witness_p0,
/// witness_p1) when any admissible pair was found.
struct ContractionEstimate {
  FDivergenceSpec spec;
  double value = 0;
  std::optional<Distribution> witness_p0;
  std::optional<Distribution> witness_p1;
  std::int64_t evaluations = 0;
  /// Number of distinct step sizes visited by the local refinement.
  std::int64_t grid_resolution = 0;
  std::uint64_t seed = 0;
};

/// Lower-bounds eta_f(W) = sup D_f(W(P0)||W(P1)) / D_f(P0||P1) over pairs
/// with 0 < D_f(P0||P1) < inf, spending at most `budget` ratio evaluations.
///
/// The search evaluates point-mass pairs, then seeded random pairs, then
/// hill-climbs from the best pair found. For total variation every ordered
/// point-mass pair is evaluated, so the result is exact (the Dobrushin
/// coefficient); this requires budget >= |X|(|X|-1). Pairs whose input
/// divergence falls outside [1e-12, 1e12] are skipped. The result depends
/// only on (w, spec, budget, seed), not on the thread count.
ContractionEstimate estimate_eta_f(const Channel& w, const FDivergenceSpec& spec,
                                   std::int64_t budget, std::uint64_t seed,
                                   const ToleranceConfig& tol = {});

}  // namespace privmech

#endif  // PRIVMECH_COEFFICIENTS_HPP_
