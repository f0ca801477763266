// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace refem {

/// Worker-thread budget for operator assembly and application. 0 picks the
/// hardware concurrency. Results never depend on the thread count: work is
/// split over output rows and each row is reduced sequentially.
void set_thread_count(int threads);
int thread_count();

/// Runs fn(begin, end) over a partition of [0, n).
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace refem
