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

#ifndef PRIVMECH_PARALLEL_HPP_
#define PRIVMECH_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace privmech {

/// Worker count from PRIVMECH_THREADS; unset or 0 means hardware
/// concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, count) across `threads` workers. Callers write
/// results into per-index slots, so the outcome never depends on scheduling.
/// The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body,
                  unsigned threads = thread_count());

}  // namespace privmech

#endif  // PRIVMECH_PARALLEL_HPP_
