// Copyright 2026 The qiso Authors
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

#ifndef QISO_UTIL_PARALLEL_HPP
#define QISO_UTIL_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qiso {

inline int default_threads() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

/// Runs f(i) for i in [0, count) on up to `threads` workers. Callers write results into
/// per-index slots and reduce in index order, so output does not depend on scheduling.
template <typename F>
void parallel_for(uint64_t count, int threads, F &&f) {
    if (threads <= 1 || count <= 1) {
        for (uint64_t i = 0; i < count; i++) {
            f(i);
        }
        return;
    }
    std::atomic<uint64_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        while (true) {
            uint64_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) {
                    err = std::current_exception();
                }
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    int w = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(threads), count));
    for (int t = 0; t < w; t++) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

}  // namespace qiso

#endif
