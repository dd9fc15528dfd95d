/*
 * Copyright 2026 The recomp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <chrono>
#include <optional>
#include <stop_token>

#include "recomp/errors.hpp"

namespace recomp {

/// Poll point for cooperative cancellation. Long-running loops call poll()
/// between batches; it throws Stopped when the token fires or the deadline
/// has passed. A default-constructed StopCheck never stops.
class StopCheck {
 public:
  using Clock = std::chrono::steady_clock;

  StopCheck() = default;
  StopCheck(std::stop_token token, std::optional<Clock::time_point> deadline)
      : token_(std::move(token)), deadline_(deadline) {}

  void poll() const {
    if (token_.stop_requested()) throw Stopped(StopReason::kCancelled);
    if (deadline_ && Clock::now() >= *deadline_) throw Stopped(StopReason::kTimeout);
  }

 private:
  std::stop_token token_;
  std::optional<Clock::time_point> deadline_;
};

}  // namespace recomp
