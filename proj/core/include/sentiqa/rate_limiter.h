// Copyright 2026 The sentiqa Authors
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

#ifndef SENTIQA_RATE_LIMITER_H_
#define SENTIQA_RATE_LIMITER_H_

#include <chrono>
#include <mutex>

namespace sentiqa {

// Paces callers to at most `per_second` acquisitions per second across all
// threads. Each acquire() reserves the next free slot, then sleeps until it.
class RateLimiter {
 public:
  explicit RateLimiter(double per_second);

  void acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_slot_;
};

}  // namespace sentiqa

#endif  // SENTIQA_RATE_LIMITER_H_
