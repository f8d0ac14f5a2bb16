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

#ifndef PRIVMECH_MECHANISMS_HPP_
#define PRIVMECH_MECHANISMS_HPP_

#include <cmath>
#include <cstdint>
#include <string>

#include "privmech/core.hpp"

namespace privmech {

/// k-ary randomized response W_{k,alpha}: keep the input with probability
/// 2^a / (2^a + k - 1), otherwise report one of the other k - 1 symbols
/// uniformly. alpha-LDP with Dobrushin coefficient (2^a - 1)/(2^a + k - 1).
template <typename Scalar = double>
BasicChannel<Scalar> randomized_response(Index k, Scalar alpha_bits) {
  if (k < 2) throw Error(ErrorCode::kInvalidK, "k must be >= 2");
  using std::isnan;
  if (isnan(alpha_bits) || alpha_bits < Scalar(0)) {
    throw Error(ErrorCode::kNegativeAlpha, "alpha must be >= 0",
                ErrorDetail{.value = double(alpha_bits)});
  }
  using std::exp2;
  const Scalar e = exp2(alpha_bits);
  const Scalar denom = e + Scalar(k - 1);
  MatrixX<Scalar> m = MatrixX<Scalar>::Constant(k, k, Scalar(1) / denom);
  m.diagonal().setConstant(e / denom);
  return BasicChannel<Scalar>(detail::kTrusted, std::move(m));
}

/// Binary Z-channel Z_alpha = [[2^a - 1, 2 - 2^a], [0, 1]] for alpha in
/// [0, 1]. Its maximal leakage is exactly alpha.
template <typename Scalar = double>
BasicChannel<Scalar> z_channel(Scalar alpha_bits) {
  if (!(alpha_bits >= Scalar(0) && alpha_bits <= Scalar(1))) {
    throw Error(ErrorCode::kAlphaOutOfRange, "alpha must lie in [0, 1]",
                ErrorDetail{.value = double(alpha_bits)});
  }
  using std::exp2;
  const Scalar e = exp2(alpha_bits);
  MatrixX<Scalar> m(2, 2);
  m << e - Scalar(1), Scalar(2) - e, Scalar(0), Scalar(1);
  return BasicChannel<Scalar>(detail::kTrusted, std::move(m));
}

/// The k -> k+1 MaxL achievability mechanism: symbol x passes through with
/// probability lambda = (2^a - 1)/(k - 1), otherwise the dummy symbol (last
/// column, index k) is emitted. Requires 0 < alpha and 2^alpha <= k.
template <typename Scalar = double>
BasicChannel<Scalar> maxl_staircase(Index k, Scalar alpha_bits) {
  if (k < 2) throw Error(ErrorCode::kInvalidK, "k must be >= 2");
  using std::exp2;
  if (!(alpha_bits > Scalar(0)) || exp2(alpha_bits) > Scalar(k)) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "staircase needs 0 < alpha and 2^alpha <= k",
                ErrorDetail{.value = double(alpha_bits)});
  }
  const Scalar lambda = (exp2(alpha_bits) - Scalar(1)) / Scalar(k - 1);
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(k, k + 1);
  m.leftCols(k).diagonal().setConstant(lambda);
  m.col(k).setConstant(Scalar(1) - lambda);
  return BasicChannel<Scalar>(detail::kTrusted, std::move(m));
}

/// Pass-through probability of maxl_staircase(k, alpha).
inline double staircase_lambda(Index k, double alpha_bits) {
  return (std::exp2(alpha_bits) - 1.0) / double(k - 1);
}

/// Rows drawn i.i.d. from a symmetric Dirichlet(concentration).
/// Deterministic in seed.
Channel random_channel(Index in_size, Index out_size, double concentration,
                       std::uint64_t seed);

}  // namespace privmech

#endif  // PRIVMECH_MECHANISMS_HPP_
