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

// Hand-written models of the corpus protocols. They share no code with the
// evaluator and serve as reference counts and verdicts.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace recomp::test::oracle {

using State = std::vector<int>;

struct Model {
  std::function<State()> initial;
  /// Successors labelled as ConcreteAction::to_string() would print them.
  std::function<std::vector<std::pair<std::string, State>>(const State&)> next;
  std::function<bool(const State&)> property;
};

struct BfsResult {
  std::size_t states = 0;
  bool holds = true;
  std::size_t shortest_violation = 0;  // steps, when !holds
};

BfsResult bfs(const Model& m);

/// Follows `trace` from the initial state. Returns false if a step is not
/// enabled; otherwise `violates` tells whether the final state breaks the
/// property.
bool replay(const Model& m, const std::vector<std::string>& trace, bool& violates);

/// TwoPhase with `n` RMs. With `prepared_empty` the property is
/// `tmPrepared = {}` instead of Consistent.
Model two_phase(int n, bool prepared_empty = false);

/// Safe states of the RM component's error LTS: every RM moves freely
/// among working/prepared/committed/aborted, and a state is safe unless
/// both committed and aborted occur, so 4^n minus the mixed states.
std::size_t rm_component_safe_states(int n);

Model lock_server(int nodes);

/// Quorums given as bitmasks over nodes.
Model naive_consensus(int nodes, int values, std::vector<unsigned> quorums);

}  // namespace recomp::test::oracle
