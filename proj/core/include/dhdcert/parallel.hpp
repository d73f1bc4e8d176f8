// Copyright 2026 The dhdcert Authors
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

#include <cstdint>
#include <functional>

namespace dhdcert {

/// Worker count from DHDCERT_THREADS, else the hardware concurrency.
int default_thread_count();

/// Calls fn(chunk) for chunk = 0..n_chunks-1 on up to `threads` workers.
/// Chunks are claimed dynamically; callers must write results into per-chunk
/// slots so that the outcome does not depend on scheduling. threads <= 0
/// selects default_thread_count(). The first exception thrown by any worker
/// is rethrown on the caller's thread.
void parallel_for_chunks(std::int64_t n_chunks, int threads,
                         const std::function<void(std::int64_t)> &fn);

/// Compensated (Neumaier) running sum.
class NeumaierSum {
   public:
    void add(double x) noexcept;
    double value() const noexcept {
        return sum_ + comp_;
    }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace dhdcert
