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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "recomp/lang/ast.hpp"
#include "recomp/recomposer/recomposer.hpp"

namespace recomp {

/// Data-flow partial order over components: E-sets are the layers added by
/// each X-set step, F links components of consecutive layers that share a
/// symbolic action, and `order` is the reflexive-transitive closure of F.
struct DataFlowOrder {
  std::vector<std::set<std::size_t>> e_sets;
  std::set<std::pair<std::size_t, std::size_t>> f_edges;
  std::set<std::pair<std::size_t, std::size_t>> order;

  bool precedes(std::size_t i, std::size_t j) const { return order.contains({i, j}); }
  /// Components on which the order is defined.
  std::set<std::size_t> domain() const;
};

DataFlowOrder data_flow_order(const std::vector<std::set<std::string>>& alphabets);
DataFlowOrder data_flow_order(const std::vector<lang::SpecAst>& components);

/// Linear extension of the data-flow order. Incomparable components are
/// ordered by ascending occurrence count of their variables in `s`, then
/// by index; components outside the order come last by the same rule.
std::vector<std::size_t> total_order(const std::vector<lang::SpecAst>& components, const lang::SpecAst& s);
std::vector<std::size_t> total_order(const DataFlowOrder& dfo, const std::vector<std::size_t>& weights);

enum class StrategyKind { kS1, kS2, kS3, kS4, kCustom };

struct Strategy {
  StrategyKind kind = StrategyKind::kS4;
  std::optional<RecompositionMap> custom;

  std::string label() const;
  static Strategy s1() { return {StrategyKind::kS1, std::nullopt}; }
  static Strategy s2() { return {StrategyKind::kS2, std::nullopt}; }
  static Strategy s3() { return {StrategyKind::kS3, std::nullopt}; }
  static Strategy s4() { return {StrategyKind::kS4, std::nullopt}; }
};

/// The default portfolio S1, S2, S3, S4 in launch order.
std::vector<Strategy> default_portfolio();

/// Map of a built-in strategy over components listed in total order.
RecompositionMap make_strategy(StrategyKind kind, const std::vector<std::size_t>& order);

}  // namespace recomp
