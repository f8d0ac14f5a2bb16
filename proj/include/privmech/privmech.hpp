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

#ifndef PRIVMECH_PRIVMECH_HPP_
#define PRIVMECH_PRIVMECH_HPP_

#include "privmech/bounds.hpp"
#include "privmech/coefficients.hpp"
#include "privmech/core.hpp"
#include "privmech/divergences.hpp"
#include "privmech/error.hpp"
#include "privmech/mechanisms.hpp"
#include "privmech/minimax.hpp"
#include "privmech/parallel.hpp"
#include "privmech/random.hpp"
#include "privmech/tolerance.hpp"

namespace privmech {

inline constexpr const char* kVersion =
#ifdef PRIVMECH_VERSION
    PRIVMECH_VERSION;
#else
    "unknown";
#endif

}  // namespace privmech

#endif  // PRIVMECH_PRIVMECH_HPP_
