// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace mcvqe {

// Worker count used by parallel_for. 0 or 1 means serial; the default is the
// hardware concurrency.
void set_num_threads(int n);
int num_threads();

// Runs fn(0..n-1) on a transient worker group. Tasks must not share mutable
// state; callers that reduce results should write into preallocated slots and
// combine sequentially so that results stay deterministic.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace mcvqe
