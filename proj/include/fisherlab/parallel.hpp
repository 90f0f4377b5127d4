// Copyright 2026 The FisherLab Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fisherlab {

/// Thread count: `requested` if positive, else FISHERLAB_THREADS, else the
/// number of hardware threads.
inline int resolve_threads(int requested) {
    if(requested > 0) return requested;
    if(const char *env = std::getenv("FISHERLAB_THREADS")) {
        try {
            const int v = std::stoi(env);
            if(v > 0) return v;
        } catch(const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, count). Each index is visited exactly once; callers
/// write into pre-sized, index-addressed storage so results do not depend on
/// scheduling. The first exception thrown by any worker is rethrown.
template<class Fn>
void parallel_for(std::size_t count, int threads, Fn &&fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if(workers == 1 || count < 2) {
        for(std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for(std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch(...) {
                std::lock_guard lock(error_mutex);
                if(!error) error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for(std::size_t t = 0; t < std::min(workers, count); ++t) pool.emplace_back(work);
    for(auto &t : pool) t.join();
    if(error) std::rethrow_exception(error);
}

} // namespace fisherlab
