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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/engine/engine.hpp"

namespace recomp {

/// A structured report read back from text. Witness steps stay rendered.
struct ParsedReport {
  StatsReport stats;
  Outcome outcome = Outcome::kHolds;
  std::set<InconclusiveReason> reasons;
  std::vector<std::string> witness;
};

/// Human-readable report: verdict, a summary row with the columns
/// name | n | m | k | max states | time | strategy, the stage table and any
/// counterexample.
std::string render_text(const StatsReport& stats, const Verdict& verdict);

/// Versioned line-oriented format:
///
///   recomp-report 1
///   spec <name>
///   property <name>
///   strategy <label>
///   verdict holds|violated|inconclusive
///   reason <reason>                         one line per reason
///   n <n>
///   m <m>
///   k <k>
///   max_states <count>
///   elapsed_us <microseconds>
///   stage <index> <group> <generated> <minimized> <composed>
///   witness <action>                        one line per step
///   end
std::string render_structured(const StatsReport& stats, const Verdict& verdict);

/// Inverse of render_structured. Throws Error on malformed input.
ParsedReport parse_structured(std::string_view text);

}  // namespace recomp
