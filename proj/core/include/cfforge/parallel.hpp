// Copyright 2026 The cfforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cfforge {

/// Number of worker threads: FORGE_THREADS when set and positive, else the
/// hardware concurrency (at least 1).
int default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results
/// must be written by index so the outcome does not depend on scheduling.
/// If any call throws, indices above the lowest failing one are skipped and
/// that lowest exception is rethrown after all workers have joined.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    if (count == 0) return;
    std::size_t width = static_cast<std::size_t>(std::max(1, threads));
    width = std::min(width, count);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{count};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || i > first_failure.load()) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
                std::size_t cur = first_failure.load();
                while (i < cur && !first_failure.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(width);
        for (std::size_t w = 0; w < width; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (std::size_t f = first_failure.load(); f < count) std::rethrow_exception(errors[f]);
}

}  // namespace cfforge
