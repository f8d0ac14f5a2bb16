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

// Finite-alphabet probability objects: distributions on [k] and
// row-stochastic channels W(x, y), together with the two operations that
// every other module builds on (pushforward and composition).
//
// Both types are immutable once constructed. The only public way to build
// one from raw numbers is through validate_distribution / validate_channel,
// which are strict: nothing is renormalized.

#ifndef PRIVMECH_CORE_HPP_
#define PRIVMECH_CORE_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "privmech/error.hpp"
#include "privmech/tolerance.hpp"

namespace privmech {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

namespace detail {
// Marks construction from values already known to satisfy the invariants
// (results of closed operations such as pushforward).
struct TrustedTag {};
inline constexpr TrustedTag kTrusted{};
}  // namespace detail

template <typename Scalar_>
class BasicDistribution {
 public:
  using Scalar = Scalar_;
  using Vector = VectorX<Scalar>;

  BasicDistribution(detail::TrustedTag, Vector probs)
      : probs_(std::move(probs)) {}

  const Vector& probs() const noexcept { return probs_; }
  Index alphabet_size() const noexcept { return probs_.size(); }
  Scalar operator()(Index i) const { return probs_(i); }

  friend bool operator==(const BasicDistribution& a,
                         const BasicDistribution& b) {
    return a.probs_.size() == b.probs_.size() && a.probs_ == b.probs_;
  }

 private:
  Vector probs_;
};

template <typename Scalar_>
class BasicChannel {
 public:
  using Scalar = Scalar_;
  using Matrix = MatrixX<Scalar>;

  BasicChannel(detail::TrustedTag, Matrix rows) : rows_(std::move(rows)) {}

  const Matrix& matrix() const noexcept { return rows_; }
  Index input_size() const noexcept { return rows_.rows(); }
  Index output_size() const noexcept { return rows_.cols(); }
  Scalar operator()(Index x, Index y) const { return rows_(x, y); }
  auto row(Index x) const { return rows_.row(x); }

  friend bool operator==(const BasicChannel& a, const BasicChannel& b) {
    return a.rows_.rows() == b.rows_.rows() &&
           a.rows_.cols() == b.rows_.cols() && a.rows_ == b.rows_;
  }

 private:
  Matrix rows_;
};

using Distribution = BasicDistribution<double>;
using Channel = BasicChannel<double>;

// ---------------------------------------------------------------------------
// Validation

template <typename Derived>
BasicDistribution<typename Derived::Scalar> validate_distribution(
    const Eigen::MatrixBase<Derived>& p, const ToleranceConfig& tol = {}) {
  using Scalar = typename Derived::Scalar;
  tol.validate();
  if (p.size() == 0) {
    throw Error(ErrorCode::kEmptyVector, "distribution has no entries");
  }
  VectorX<Scalar> v = p.reshaped();
  for (Index i = 0; i < v.size(); ++i) {
    using std::isfinite;
    if (!isfinite(v(i))) {
      throw Error(ErrorCode::kNonFiniteEntry,
                  "entry " + std::to_string(i) + " is not finite",
                  ErrorDetail{.index = i});
    }
    if (v(i) < Scalar(0)) {
      throw Error(ErrorCode::kNegativeEntry,
                  "entry " + std::to_string(i) + " is negative",
                  ErrorDetail{.index = i, .value = double(v(i))});
    }
  }
  const Scalar sum = v.sum();
  using std::abs;
  if (abs(sum - Scalar(1)) > Scalar(tol.sum_tol)) {
    throw Error(ErrorCode::kSumOutOfTolerance,
                "entries sum to " + std::to_string(double(sum)),
                ErrorDetail{.value = double(sum)});
  }
  return BasicDistribution<Scalar>(detail::kTrusted, std::move(v));
}

template <typename Scalar>
BasicDistribution<Scalar> validate_distribution(
    const std::vector<Scalar>& p, const ToleranceConfig& tol = {}) {
  return validate_distribution(
      Eigen::Map<const VectorX<Scalar>>(p.data(), Index(p.size())), tol);
}

template <typename Derived>
BasicChannel<typename Derived::Scalar> validate_channel(
    const Eigen::MatrixBase<Derived>& m, const ToleranceConfig& tol = {}) {
  using Scalar = typename Derived::Scalar;
  tol.validate();
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorCode::kEmptyMatrix, "channel has no entries");
  }
  MatrixX<Scalar> w = m;
  for (Index x = 0; x < w.rows(); ++x) {
    for (Index y = 0; y < w.cols(); ++y) {
      using std::isfinite;
      const ErrorDetail where{.row = x, .col = y, .value = double(w(x, y))};
      if (!isfinite(w(x, y))) {
        throw Error(ErrorCode::kNonFiniteEntry,
                    "entry (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") is not finite",
                    where);
      }
      if (w(x, y) < Scalar(0)) {
        throw Error(ErrorCode::kNegativeEntry,
                    "entry (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") is negative",
                    where);
      }
    }
    const Scalar sum = w.row(x).sum();
    using std::abs;
    if (abs(sum - Scalar(1)) > Scalar(tol.sum_tol)) {
      throw Error(ErrorCode::kRowSumOutOfTolerance,
                  "row " + std::to_string(x) + " sums to " +
                      std::to_string(double(sum)),
                  ErrorDetail{.row = x, .value = double(sum)});
    }
  }
  return BasicChannel<Scalar>(detail::kTrusted, std::move(w));
}

template <typename Scalar>
BasicChannel<Scalar> validate_channel(
    const std::vector<std::vector<Scalar>>& rows,
    const ToleranceConfig& tol = {}) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::kEmptyMatrix, "channel has no entries");
  }
  const std::size_t cols = rows.front().size();
  MatrixX<Scalar> m(Index(rows.size()), Index(cols));
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != cols) {
      throw Error(ErrorCode::kRaggedRows,
                  "row " + std::to_string(x) + " has " +
                      std::to_string(rows[x].size()) + " entries, expected " +
                      std::to_string(cols),
                  ErrorDetail{.row = std::int64_t(x)});
    }
    for (std::size_t y = 0; y < cols; ++y) m(Index(x), Index(y)) = rows[x][y];
  }
  return validate_channel(m, tol);
}

// ---------------------------------------------------------------------------
// Constructors for common shapes

template <typename Scalar = double>
BasicDistribution<Scalar> uniform_distribution(Index k) {
  if (k < 1) throw Error(ErrorCode::kInvalidSize, "alphabet size must be >= 1");
  return BasicDistribution<Scalar>(
      detail::kTrusted, VectorX<Scalar>::Constant(k, Scalar(1) / Scalar(k)));
}

template <typename Scalar = double>
BasicDistribution<Scalar> point_mass(Index k, Index x) {
  if (k < 1 || x < 0 || x >= k) {
    throw Error(ErrorCode::kInvalidSize, "point mass index out of range");
  }
  VectorX<Scalar> v = VectorX<Scalar>::Zero(k);
  v(x) = Scalar(1);
  return BasicDistribution<Scalar>(detail::kTrusted, std::move(v));
}

template <typename Scalar = double>
BasicChannel<Scalar> identity_channel(Index k) {
  if (k < 1) throw Error(ErrorCode::kInvalidSize, "alphabet size must be >= 1");
  return BasicChannel<Scalar>(detail::kTrusted,
                              MatrixX<Scalar>::Identity(k, k));
}

/// Every input maps to the same output distribution.
template <typename Scalar>
BasicChannel<Scalar> constant_channel(Index input_size,
                                      const BasicDistribution<Scalar>& row) {
  if (input_size < 1) {
    throw Error(ErrorCode::kInvalidSize, "input size must be >= 1");
  }
  MatrixX<Scalar> m = row.probs().transpose().replicate(input_size, 1);
  return BasicChannel<Scalar>(detail::kTrusted, std::move(m));
}

// ---------------------------------------------------------------------------
// Operations

/// Q(y) = sum_x P(x) W(x, y).
template <typename Scalar>
BasicDistribution<Scalar> pushforward(const BasicChannel<Scalar>& w,
                                      const BasicDistribution<Scalar>& p) {
  if (p.alphabet_size() != w.input_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "distribution has " + std::to_string(p.alphabet_size()) +
                    " symbols, channel expects " +
                    std::to_string(w.input_size()));
  }
  VectorX<Scalar> q = w.matrix().transpose() * p.probs();
  return BasicDistribution<Scalar>(detail::kTrusted, std::move(q));
}

/// Sequential composition: first w1, then w2.
template <typename Scalar>
BasicChannel<Scalar> compose(const BasicChannel<Scalar>& w1,
                             const BasicChannel<Scalar>& w2) {
  if (w1.output_size() != w2.input_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot compose " + std::to_string(w1.input_size()) + "x" +
                    std::to_string(w1.output_size()) + " with " +
                    std::to_string(w2.input_size()) + "x" +
                    std::to_string(w2.output_size()));
  }
  MatrixX<Scalar> m = w1.matrix() * w2.matrix();
  return BasicChannel<Scalar>(detail::kTrusted, std::move(m));
}

}  // namespace privmech

#endif  // PRIVMECH_CORE_HPP_
