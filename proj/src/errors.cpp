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

#include "recomp/errors.hpp"

#include <fmt/format.h>

namespace recomp {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error(fmt::format("{}:{}: {}", line, column, msg)), line_(line), column_(column) {}

StateBoundExceeded::StateBoundExceeded(std::size_t bound)
    : Error(fmt::format("state bound of {} exceeded", bound)), bound_(bound) {}

Stopped::Stopped(StopReason reason)
    : Error(reason == StopReason::kTimeout ? "timeout" : "cancelled"), reason_(reason) {}

}  // namespace recomp
