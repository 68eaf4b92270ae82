// Copyright 2026 The Curvcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace curvcheck {

/// Hardware concurrency clamped to at least 1.
std::size_t default_worker_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n) on `workers` threads.
/// Chunk boundaries depend only on n and never on scheduling, so writes into
/// per-index slots produce identical buffers for any worker count.
/// Exceptions thrown inside workers are rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

/// Fixed-shape pairwise (binary tree) summation. The reduction tree depends
/// only on v.size(), which makes the result bit-identical across runs and
/// worker counts.
double pairwise_sum(std::span<const double> v);

}  // namespace curvcheck
