/*
 * Copyright 2026 The rfperm Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RFPERM_PARALLEL_H_
#define RFPERM_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace rfperm {

// Name of the environment variable that overrides the default thread count.
inline constexpr const char kThreadsEnvVar[] = "RFPERM_NUM_THREADS";

// Thread count used when a config asks for 0 ("auto"): the value of
// RFPERM_NUM_THREADS if set and positive, else hardware concurrency.
int DefaultThreadCount();

// Resolves a requested thread count (0 = auto).
int ResolveThreadCount(int requested);

// Calls fn(i) for every i in [0, count) on up to `num_threads` threads.
// Each index is visited exactly once; callers write results into per-index
// slots so output never depends on scheduling. The first exception thrown by
// any task is rethrown on the calling thread.
void ParallelFor(std::size_t count, int num_threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace rfperm

#endif  // RFPERM_PARALLEL_H_
