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

#include "privmech/mechanisms.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "privmech/coefficients.hpp"
#include "privmech/divergences.hpp"
#include "test_util.hpp"

namespace privmech {
namespace {

using testing::random_distribution;

constexpr double kEq = 1e-12;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected privmech::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(RandomizedResponse, Examples) {
  const Channel w = randomized_response(2, 1.0);
  EXPECT_NEAR(w(0, 0), 2.0 / 3, kEq);
  EXPECT_NEAR(w(0, 1), 1.0 / 3, kEq);

  const Channel flat = randomized_response(5, 0.0);
  EXPECT_LE((flat.matrix().array() - 0.2).abs().maxCoeff(), kEq);

  const Channel w3 = randomized_response(3, 1.0);
  EXPECT_NEAR(w3(1, 1), 0.5, kEq);
  EXPECT_NEAR(w3(1, 2), 0.25, kEq);
  EXPECT_NEAR(dobrushin_coefficient(w3), 0.25, kEq);
}

TEST(RandomizedResponse, LdpLevelMatchesAlpha) {
  for (Index k = 2; k <= 6; ++k) {
    for (double a : {0.0, 0.25, 1.0, 2.5, 4.0}) {
      EXPECT_NEAR(ldp_level(randomized_response(k, a)), a, 1e-12);
    }
  }
}

TEST(RandomizedResponse, Errors) {
  EXPECT_EQ(code_of([] { randomized_response(1, 1.0); }), ErrorCode::kInvalidK);
  EXPECT_EQ(code_of([] { randomized_response(3, -0.5); }),
            ErrorCode::kNegativeAlpha);
}

TEST(ZChannel, Examples) {
  EXPECT_EQ(z_channel(1.0), identity_channel(2));
  const Channel z0 = z_channel(0.0);
  EXPECT_EQ(z0(0, 1), 1.0);
  EXPECT_EQ(dobrushin_coefficient(z0), 0.0);
  const Channel z = z_channel(0.5);
  EXPECT_NEAR(z(0, 0), std::sqrt(2.0) - 1, kEq);
  EXPECT_NEAR(dobrushin_coefficient(z), std::sqrt(2.0) - 1, kEq);
  EXPECT_EQ(code_of([] { z_channel(1.5); }), ErrorCode::kAlphaOutOfRange);
  EXPECT_EQ(code_of([] { z_channel(-0.1); }), ErrorCode::kAlphaOutOfRange);
}

TEST(MaxlStaircase, Examples) {
  const Channel w = maxl_staircase(3, 1.0);
  ASSERT_EQ(w.output_size(), 4);
  EXPECT_EQ(w(0, 0), 0.5);
  EXPECT_EQ(w(0, 3), 0.5);
  EXPECT_EQ(w(1, 0), 0.0);
  EXPECT_NEAR(max_leakage(w), 1.0, kEq);

  const Channel lossless = maxl_staircase(2, 1.0);
  EXPECT_EQ(lossless(0, 0), 1.0);
  EXPECT_EQ(lossless(1, 1), 1.0);
  EXPECT_EQ(lossless(0, 2), 0.0);
  EXPECT_NEAR(max_leakage(lossless), 1.0, kEq);

  // Near alpha = 0 almost all mass goes to the dummy column and the leakage
  // equals alpha itself.
  const Channel faint = maxl_staircase(3, 0.01);
  EXPECT_NEAR(faint(0, 0), (std::exp2(0.01) - 1) / 2, 1e-15);
  EXPECT_GT(faint(0, 3), 0.996);
  EXPECT_NEAR(max_leakage(faint), 0.01, 1e-6);
}

TEST(MaxlStaircase, MaxLeakageEqualsAlpha) {
  for (Index k = 2; k <= 8; ++k) {
    for (double a = 0.05; std::exp2(a) <= double(k); a += 0.35) {
      EXPECT_NEAR(max_leakage(maxl_staircase(k, a)), a, 1e-12);
    }
  }
}

TEST(MaxlStaircase, Errors) {
  EXPECT_EQ(code_of([] { maxl_staircase(2, 1.5); }),
            ErrorCode::kAlphaOutOfRange);
  EXPECT_EQ(code_of([] { maxl_staircase(3, 0.0); }),
            ErrorCode::kAlphaOutOfRange);
  EXPECT_EQ(code_of([] { maxl_staircase(1, 0.5); }), ErrorCode::kInvalidK);
}

TEST(RandomChannel, Examples) {
  EXPECT_EQ(random_channel(2, 2, 1.0, 7), random_channel(2, 2, 1.0, 7));
  EXPECT_FALSE(random_channel(2, 2, 1.0, 7) == random_channel(2, 2, 1.0, 8));
  const Channel single = random_channel(1, 5, 1.0, 3);
  EXPECT_EQ(single.input_size(), 1);
  EXPECT_EQ(dobrushin_coefficient(single), 0.0);
  const Channel w = random_channel(3, 3, 1.0, 42);
  EXPECT_LE((w.matrix().rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-9);
}

TEST(RandomChannel, Errors) {
  EXPECT_EQ(code_of([] { random_channel(0, 2, 1.0, 0); }),
            ErrorCode::kInvalidSize);
  EXPECT_EQ(code_of([] { random_channel(2, 2, 0.0, 0); }),
            ErrorCode::kInvalidConcentration);
}

TEST(MechanismProperties, RandomizedResponseContractsUniformly) {
  Rng rng(41);
  for (int t = 0; t < 1000; ++t) {
    const Index k = 2 + t % 6;
    const double a = 0.25 * double(1 + t % 12);
    const double e = std::exp2(a);
    const Channel w = randomized_response(k, a);
    const auto p0 = random_distribution(rng, k, 0.5);
    const auto p1 = random_distribution(rng, k, 0.5);
    EXPECT_NEAR(total_variation(pushforward(w, p0), pushforward(w, p1)),
                (e - 1) / (e + double(k) - 1) * total_variation(p0, p1),
                1e-10);
  }
}

TEST(MechanismProperties, ZChannelContractsUniformly) {
  Rng rng(42);
  for (int t = 0; t < 1000; ++t) {
    const double a = double(t % 11) / 10.0;
    const Channel z = z_channel(a);
    const auto p0 = random_distribution(rng, 2);
    const auto p1 = random_distribution(rng, 2);
    EXPECT_NEAR(total_variation(pushforward(z, p0), pushforward(z, p1)),
                (std::exp2(a) - 1) * total_variation(p0, p1), 1e-10);
  }
}

TEST(MechanismProperties, TightnessSweeps) {
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double e = std::exp2(a);
    EXPECT_NEAR(dobrushin_coefficient(randomized_response(2, a)),
                (e - 1) / (e + 1), kEq);
  }
  for (int i = 0; i <= 20; ++i) {
    const double a = i / 20.0;
    EXPECT_NEAR(dobrushin_coefficient(z_channel(a)),
                std::min(1.0, std::exp2(a) - 1), kEq);
  }
}

TEST(MechanismProperties, StaircasePushforwardScalesByLambda) {
  Rng rng(43);
  for (int t = 0; t < 500; ++t) {
    const Index k = 2 + t % 6;
    const double a = 0.1 + std::log2(double(k)) * 0.85 * rng.uniform();
    const double lambda = staircase_lambda(k, a);
    const auto p = random_distribution(rng, k);
    const auto q = pushforward(maxl_staircase(k, a), p);
    for (Index x = 0; x < k; ++x) EXPECT_NEAR(q(x), lambda * p(x), kEq);
    EXPECT_NEAR(q(k), 1 - lambda, kEq);
  }
}

TEST(MechanismTemplates, LongDouble) {
  const auto z = z_channel<long double>(0.5L);
  EXPECT_NEAR(double(dobrushin_coefficient(z)), std::sqrt(2.0) - 1, 1e-15);
  const auto s = maxl_staircase<long double>(3, 1.0L);
  EXPECT_NEAR(double(max_leakage(s)), 1.0, 1e-15);
}

}  // namespace
}  // namespace privmech
