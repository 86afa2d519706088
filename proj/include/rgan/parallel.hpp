// Copyright 2026 The rgan Authors
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

#ifndef RGAN_PARALLEL_HPP
#define RGAN_PARALLEL_HPP

// Data-parallel helpers. Work is split into contiguous index blocks; callers
// write per-index results into preallocated storage and reduce with
// pairwise_sum, so numeric results never depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace rgan {

namespace detail {
inline std::atomic<std::size_t>& thread_setting()
{
    static std::atomic<std::size_t> n{1};
    return n;
}
inline thread_local bool in_worker = false;
} // namespace detail

inline void set_thread_count(std::size_t n) { detail::thread_setting().store(std::max<std::size_t>(1, n)); }
inline std::size_t thread_count() { return detail::thread_setting().load(); }

/// Calls body(begin, end) over a partition of [0, n). Nested calls run serially.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    const std::size_t workers = detail::in_worker ? 1 : std::min(thread_count(), n);
    if (workers <= 1) {
        if (n > 0) {
            body(std::size_t{0}, n);
        }
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            detail::in_worker = true;
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

/// Fixed-shape tree reduction; the summation order depends only on the length.
inline double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace rgan

#endif // RGAN_PARALLEL_HPP
