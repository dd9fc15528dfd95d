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
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "recomp/enumerator/enumerator.hpp"
#include "recomp/heuristics/heuristics.hpp"
#include "recomp/lang/ast.hpp"
#include "recomp/lts/lts.hpp"
#include "recomp/stop.hpp"

namespace recomp {

enum class Outcome { kHolds, kViolated, kInconclusive };
enum class InconclusiveReason { kBoundExceeded, kTimeout, kCancelled };

std::string to_string(Outcome o);
std::string to_string(InconclusiveReason r);

struct Verdict {
  Outcome outcome = Outcome::kHolds;
  std::vector<ConcreteAction> witness;      // Violated only
  std::set<InconclusiveReason> reasons;     // Inconclusive only

  static Verdict holds() { return {}; }
  static Verdict violated(std::vector<ConcreteAction> w) { return {Outcome::kViolated, std::move(w), {}}; }
  static Verdict inconclusive(InconclusiveReason r) { return {Outcome::kInconclusive, {}, {r}}; }
  bool conclusive() const { return outcome != Outcome::kInconclusive; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// State counts of one group: the generated LTS, its minimization, and the
/// running composition after it was added (for P, the minimized error LTS).
struct StageStats {
  std::string group;
  std::size_t generated = 0;
  std::size_t minimized = 0;
  std::size_t composed = 0;
  friend bool operator==(const StageStats&, const StageStats&) = default;
};

struct StatsReport {
  std::string spec;
  std::string property;
  std::string strategy;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<StageStats> stages;
  std::size_t max_states = 0;
  std::chrono::microseconds elapsed{0};
  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

struct VerifyOptions {
  std::size_t bound = kDefaultStateBound;
  MinimizeMode minimize = MinimizeMode::kStrong;
  bool static_reduction = true;
  /// When false, every group is composed even after pi became unreachable.
  bool short_circuit = true;
  StopCheck stop;
};

struct RunResult {
  Verdict verdict;
  StatsReport stats;
};

/// Compositional check of `p` on D_P || D_1 || ... || D_m: minimize the
/// error LTS of D_P, then compose minimized group LTSs one at a time until
/// pi is unreachable.
RunResult comp_verify(const lang::SpecAst& d_p, const std::vector<lang::SpecAst>& groups, const lang::PropertyDef& p,
                      const VerifyOptions& opts = {});

/// Decompose, map with `strategy`, reduce, group and verify. S4 is never
/// reduced.
RunResult recomp_verify(const lang::SpecAst& s, const lang::PropertyDef& p, const Strategy& strategy,
                        const VerifyOptions& opts = {});

struct PortfolioResult {
  Verdict verdict;
  StatsReport stats;
  std::optional<Strategy> winner;
  /// Per strategy in launch order: its verdict (Inconclusive/cancelled
  /// when stopped by the winner), or nothing if it never started.
  std::vector<std::optional<Verdict>> runs;
};

/// Runs one verification per strategy on at most `workers` threads, in
/// launch order. The first conclusive verdict wins and the other runs are
/// cancelled; if none is conclusive the reasons are merged. Each worker
/// gets its own stop token and the shared deadline; `opts.stop` is unused.
PortfolioResult run_portfolio(const lang::SpecAst& s, const lang::PropertyDef& p, const std::vector<Strategy>& strategies,
                              std::size_t workers, std::optional<std::chrono::milliseconds> timeout,
                              const VerifyOptions& opts = {});

}  // namespace recomp
