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

#include "sentiqa/rate_limiter.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sentiqa/error.h"

namespace sentiqa {

RateLimiter::RateLimiter(double per_second) {
  if (!(per_second > 0.0) || !std::isfinite(per_second)) {
    throw Error(ErrorCode::kConfig, "rate limit must be a positive number");
  }
  interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / per_second));
  next_slot_ = std::chrono::steady_clock::now();
}

void RateLimiter::acquire() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    slot = std::max(std::chrono::steady_clock::now(), next_slot_);
    next_slot_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

}  // namespace sentiqa
