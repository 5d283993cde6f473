// Copyright 2026 The Compromise Authors
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

#ifndef COMPROMISE_CORE_PARALLEL_HPP_
#define COMPROMISE_CORE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace compromise {

// Worker count: COMPROMISE_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
std::size_t worker_count();

// Calls body(i) for i in [0, n) on up to worker_count() threads. Iterations
// must write to disjoint state. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace compromise

#endif  // COMPROMISE_CORE_PARALLEL_HPP_
