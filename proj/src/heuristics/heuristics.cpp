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

#include "recomp/heuristics/heuristics.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include "recomp/errors.hpp"
#include "recomp/lang/analysis.hpp"

namespace recomp {

namespace {

bool share(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.contains(x); });
}

std::vector<std::set<std::string>> alphabets_of(const std::vector<lang::SpecAst>& components) {
  std::vector<std::set<std::string>> out;
  for (const auto& c : components) out.push_back(lang::symbolic_actions(c));
  return out;
}

}  // namespace

std::set<std::size_t> DataFlowOrder::domain() const {
  std::set<std::size_t> out;
  for (const auto& e : e_sets) out.insert(e.begin(), e.end());
  return out;
}

DataFlowOrder data_flow_order(const std::vector<std::set<std::string>>& alphabets) {
  DataFlowOrder d;
  ReductionTrace r = necessary_components(alphabets);
  for (std::size_t i = 0; i < r.x_sets.size(); ++i) {
    std::set<std::size_t> e;
    for (auto c : r.x_sets[i]) {
      if (i == 0 || !r.x_sets[i - 1].contains(c)) e.insert(c);
    }
    if (e.empty()) break;
    d.e_sets.push_back(std::move(e));
  }
  for (std::size_t i = 0; i + 1 < d.e_sets.size(); ++i) {
    for (auto j : d.e_sets[i]) {
      for (auto k : d.e_sets[i + 1]) {
        if (share(alphabets[j], alphabets[k])) d.f_edges.insert({j, k});
      }
    }
  }
  // Edges only run from one layer to the next, so processing layers from
  // last to first closes the relation in one pass.
  std::map<std::size_t, std::set<std::size_t>> below;
  for (auto it = d.e_sets.rbegin(); it != d.e_sets.rend(); ++it) {
    for (auto j : *it) {
      auto& b = below[j];
      b.insert(j);
      for (const auto& [x, y] : d.f_edges) {
        if (x == j) b.insert(below[y].begin(), below[y].end());
      }
    }
  }
  for (const auto& [j, b] : below) {
    for (auto k : b) d.order.insert({j, k});
  }
  return d;
}

DataFlowOrder data_flow_order(const std::vector<lang::SpecAst>& components) {
  return data_flow_order(alphabets_of(components));
}

std::vector<std::size_t> total_order(const DataFlowOrder& dfo, const std::vector<std::size_t>& weights) {
  std::set<std::size_t> dom = dfo.domain();
  std::map<std::size_t, std::size_t> indegree;
  for (auto c : dom) indegree[c] = 0;
  for (const auto& [x, y] : dfo.f_edges) ++indegree[y];
  using Key = std::pair<std::size_t, std::size_t>;  // (weight, index)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (const auto& [c, deg] : indegree) {
    if (deg == 0) ready.push({weights[c], c});
  }
  std::vector<std::size_t> out;
  while (!ready.empty()) {
    auto [w, c] = ready.top();
    ready.pop();
    out.push_back(c);
    for (const auto& [x, y] : dfo.f_edges) {
      if (x == c && --indegree[y] == 0) ready.push({weights[y], y});
    }
  }
  std::vector<Key> rest;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (!dom.contains(c)) rest.push_back({weights[c], c});
  }
  std::sort(rest.begin(), rest.end());
  for (const auto& [w, c] : rest) out.push_back(c);
  return out;
}

std::vector<std::size_t> total_order(const std::vector<lang::SpecAst>& components, const lang::SpecAst& s) {
  std::vector<std::size_t> weights;
  for (const auto& c : components) {
    std::size_t w = 0;
    for (const auto& v : c.variables) w += lang::count_occurrences(s, v);
    weights.push_back(w);
  }
  return total_order(data_flow_order(components), weights);
}

std::string Strategy::label() const {
  switch (kind) {
    case StrategyKind::kS1: return "S1";
    case StrategyKind::kS2: return "S2";
    case StrategyKind::kS3: return "S3";
    case StrategyKind::kS4: return "S4";
    case StrategyKind::kCustom: return "custom";
  }
  return "?";
}

std::vector<Strategy> default_portfolio() { return {Strategy::s1(), Strategy::s2(), Strategy::s3(), Strategy::s4()}; }

RecompositionMap make_strategy(StrategyKind kind, const std::vector<std::size_t>& order) {
  if (order.empty()) throw SpecError("a strategy needs at least one component");
  if (order.front() != 0) throw SpecError("the total order must start with the property component");
  RecompositionMap f;
  const std::size_t n = order.size();
  if (n == 1) kind = StrategyKind::kS4;
  for (std::size_t pos = 0; pos < n; ++pos) {
    int g = kGroupP;
    switch (kind) {
      case StrategyKind::kS1:
        g = static_cast<int>(pos);
        break;
      case StrategyKind::kS2:
        g = pos == 0 ? kGroupP : 1;
        break;
      case StrategyKind::kS3:
        g = pos + 1 == n ? 1 : kGroupP;
        break;
      case StrategyKind::kS4:
        g = kGroupP;
        break;
      case StrategyKind::kCustom:
        throw SpecError("custom strategies carry their own map");
    }
    f.assignment[order[pos]] = g;
  }
  switch (kind) {
    case StrategyKind::kS1: f.m = static_cast<int>(n) - 1; break;
    case StrategyKind::kS2:
    case StrategyKind::kS3: f.m = 1; break;
    default: f.m = 0; break;
  }
  f.validate();
  return f;
}

}  // namespace recomp
