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

// Distances and divergences between distributions on a common alphabet.
//
// KL is reported in bits. Infinity is a legal return value (support
// violations), never an error.

#ifndef PRIVMECH_DIVERGENCES_HPP_
#define PRIVMECH_DIVERGENCES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "privmech/core.hpp"

namespace privmech {

enum class FDivergenceKind { kTotalVariation, kKL, kChiSquared, kCustom };

/// Selects the convex generator f of an f-divergence.
///
/// Built-ins: TV uses f(t) = |t - 1| / 2, KL uses f(t) = t log2 t, chi-squared
/// uses f(t) = (t - 1)^2. A custom f must satisfy f(1) = 0 (checked when
/// evaluated) and must be convex (not checked; the caller's obligation).
/// `slope_at_infinity` is lim_{t->inf} f(t)/t, used for terms with Q(z) = 0.
template <typename Scalar>
class BasicFDivergenceSpec {
 public:
  using Generator = std::function<Scalar(Scalar)>;

  static BasicFDivergenceSpec TotalVariation() {
    return BasicFDivergenceSpec(FDivergenceKind::kTotalVariation, {},
                                Scalar(0.5));
  }
  static BasicFDivergenceSpec KL() {
    return BasicFDivergenceSpec(FDivergenceKind::kKL, {}, kInf);
  }
  static BasicFDivergenceSpec ChiSquared() {
    return BasicFDivergenceSpec(FDivergenceKind::kChiSquared, {}, kInf);
  }
  static BasicFDivergenceSpec Custom(Generator f,
                                     Scalar slope_at_infinity = kInf) {
    if (!f) {
      throw Error(ErrorCode::kInvalidArgument,
                  "custom f-divergence requires a generator");
    }
    return BasicFDivergenceSpec(FDivergenceKind::kCustom, std::move(f),
                                slope_at_infinity);
  }

  FDivergenceKind kind() const noexcept { return kind_; }
  const Generator& custom_f() const noexcept { return f_; }
  Scalar slope_at_infinity() const noexcept { return slope_inf_; }

  std::string_view name() const noexcept {
    switch (kind_) {
      case FDivergenceKind::kTotalVariation: return "tv";
      case FDivergenceKind::kKL: return "kl";
      case FDivergenceKind::kChiSquared: return "chi2";
      case FDivergenceKind::kCustom: return "custom";
    }
    return "unknown";
  }

 private:
  static constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

  BasicFDivergenceSpec(FDivergenceKind kind, Generator f, Scalar slope)
      : kind_(kind), f_(std::move(f)), slope_inf_(slope) {}

  FDivergenceKind kind_;
  Generator f_;
  Scalar slope_inf_;
};

using FDivergenceSpec = BasicFDivergenceSpec<double>;

namespace detail {

template <typename A, typename B>
void require_same_size(const Eigen::MatrixBase<A>& a,
                       const Eigen::MatrixBase<B>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "alphabet sizes differ: " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));
  }
}

// The kernels below take arbitrary Eigen expressions so channel rows can be
// passed without copying. No size checks. The three-argument forms take the
// difference d = p - q separately; callers that can form it without
// cancellation (for example as W^T (p0 - p1)) keep full relative accuracy
// when p and q nearly coincide.

template <typename A, typename B, typename D>
typename A::Scalar tv_kernel(const Eigen::MatrixBase<A>&,
                             const Eigen::MatrixBase<B>&,
                             const Eigen::MatrixBase<D>& d) {
  // sup over events A of P(A) - Q(A), in either direction. Equal to half the
  // l1 distance on the simplex, and still exact for rows whose sums are off
  // by rounding.
  using Scalar = typename A::Scalar;
  const Scalar up = d.cwiseMax(Scalar(0)).sum();
  const Scalar down = -d.cwiseMin(Scalar(0)).sum();
  return up > down ? up : down;
}

template <typename A, typename B>
typename A::Scalar tv_kernel(const Eigen::MatrixBase<A>& p,
                             const Eigen::MatrixBase<B>& q) {
  return tv_kernel(p, q, p - q);
}

// Sum of p log(p/q) - p + q per term, in nats. Each term is nonnegative and
// the total equals KL whenever both vectors sum to one.
template <typename A, typename B, typename D>
typename A::Scalar kl_nats_kernel(const Eigen::MatrixBase<A>& p,
                                  const Eigen::MatrixBase<B>& q,
                                  const Eigen::MatrixBase<D>& diff) {
  using Scalar = typename A::Scalar;
  using std::log1p;
  Scalar total(0);
  for (Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p.coeff(i);
    const Scalar qi = q.coeff(i);
    if (pi == Scalar(0)) {
      total += qi;
    } else if (qi == Scalar(0)) {
      return std::numeric_limits<Scalar>::infinity();
    } else {
      const Scalar d = diff.coeff(i);
      total += pi * log1p(d / qi) - d;
    }
  }
  return total < Scalar(0) ? Scalar(0) : total;
}

template <typename A, typename B>
typename A::Scalar kl_nats_kernel(const Eigen::MatrixBase<A>& p,
                                  const Eigen::MatrixBase<B>& q) {
  return kl_nats_kernel(p, q, p - q);
}

template <typename A, typename B, typename D>
typename A::Scalar chi_squared_kernel(const Eigen::MatrixBase<A>& p,
                                      const Eigen::MatrixBase<B>& q,
                                      const Eigen::MatrixBase<D>& diff) {
  using Scalar = typename A::Scalar;
  Scalar total(0);
  for (Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p.coeff(i);
    const Scalar qi = q.coeff(i);
    if (qi == Scalar(0)) {
      if (pi != Scalar(0)) return std::numeric_limits<Scalar>::infinity();
      continue;
    }
    const Scalar d = diff.coeff(i);
    total += d * d / qi;
  }
  return total;
}

template <typename A, typename B>
typename A::Scalar chi_squared_kernel(const Eigen::MatrixBase<A>& p,
                                      const Eigen::MatrixBase<B>& q) {
  return chi_squared_kernel(p, q, p - q);
}

template <typename Scalar>
Scalar ln2() {
  return std::numbers::ln2_v<Scalar>;
}

}  // namespace detail

/// (1/2) sum_z |P(z) - Q(z)|.
template <typename Scalar>
Scalar total_variation(const BasicDistribution<Scalar>& p,
                       const BasicDistribution<Scalar>& q) {
  detail::require_same_size(p.probs(), q.probs());
  return detail::tv_kernel(p.probs(), q.probs());
}

/// D_KL(P || Q) in bits; +inf when P is not absolutely continuous wrt Q.
template <typename Scalar>
Scalar kl_divergence(const BasicDistribution<Scalar>& p,
                     const BasicDistribution<Scalar>& q) {
  detail::require_same_size(p.probs(), q.probs());
  return detail::kl_nats_kernel(p.probs(), q.probs()) / detail::ln2<Scalar>();
}

/// D_KL(P || Q) in nats.
template <typename Scalar>
Scalar kl_divergence_nats(const BasicDistribution<Scalar>& p,
                          const BasicDistribution<Scalar>& q) {
  detail::require_same_size(p.probs(), q.probs());
  return detail::kl_nats_kernel(p.probs(), q.probs());
}

template <typename Scalar>
Scalar chi_squared_divergence(const BasicDistribution<Scalar>& p,
                              const BasicDistribution<Scalar>& q) {
  detail::require_same_size(p.probs(), q.probs());
  return detail::chi_squared_kernel(p.probs(), q.probs());
}

/// sum_z (P(z) - Q(z))^2.
template <typename Scalar>
Scalar l2_distance_sq(const BasicDistribution<Scalar>& p,
                      const BasicDistribution<Scalar>& q) {
  detail::require_same_size(p.probs(), q.probs());
  return (p.probs() - q.probs()).squaredNorm();
}

namespace detail {

template <typename A, typename B, typename D, typename Scalar>
Scalar f_divergence_kernel(const Eigen::MatrixBase<A>& p,
                           const Eigen::MatrixBase<B>& q,
                           const Eigen::MatrixBase<D>& diff,
                           const BasicFDivergenceSpec<Scalar>& spec) {
  switch (spec.kind()) {
    case FDivergenceKind::kTotalVariation:
      return tv_kernel(p, q, diff);
    case FDivergenceKind::kKL:
      return kl_nats_kernel(p, q, diff) / ln2<Scalar>();
    case FDivergenceKind::kChiSquared:
      return chi_squared_kernel(p, q, diff);
    case FDivergenceKind::kCustom:
      break;
  }
  const auto& f = spec.custom_f();
  Scalar total(0);
  for (Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p.coeff(i);
    const Scalar qi = q.coeff(i);
    if (qi > Scalar(0)) {
      total += qi * f(pi / qi);
    } else if (pi > Scalar(0)) {
      // q f(p/q) -> p * lim f(t)/t as q -> 0.
      total += pi * spec.slope_at_infinity();
    }
    // 0/0 := 1 and f(1) = 0: the term vanishes.
  }
  return total;
}

template <typename A, typename B, typename Scalar>
Scalar f_divergence_kernel(const Eigen::MatrixBase<A>& p,
                           const Eigen::MatrixBase<B>& q,
                           const BasicFDivergenceSpec<Scalar>& spec) {
  return f_divergence_kernel(p, q, p - q, spec);
}

}  // namespace detail

/// D_f(P || Q) = sum_z Q(z) f(P(z)/Q(z)), with 0/0 := 1.
template <typename Scalar>
Scalar f_divergence(const BasicDistribution<Scalar>& p,
                    const BasicDistribution<Scalar>& q,
                    const BasicFDivergenceSpec<Scalar>& spec,
                    const ToleranceConfig& tol = {}) {
  detail::require_same_size(p.probs(), q.probs());
  if (spec.kind() == FDivergenceKind::kCustom) {
    const Scalar at_one = spec.custom_f()(Scalar(1));
    using std::abs;
    if (!(abs(at_one) <= Scalar(tol.eq_tol))) {
      throw Error(ErrorCode::kCustomFNotNormalized, "f(1) must be 0",
                  ErrorDetail{.value = double(at_one)});
    }
  }
  return detail::f_divergence_kernel(p.probs(), q.probs(), spec);
}

}  // namespace privmech

#endif  // PRIVMECH_DIVERGENCES_HPP_
