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


#include "support/traces.hpp"

#include <map>
#include <set>
#include <utility>

namespace recomp::test {
namespace {

using StateSet = std::vector<StateId>;

StateSet step(const Lts& a, const StateSet& from, const ConcreteAction& action) {
  auto label = a.label_of(action);
  if (!label) return from;
  std::set<StateId> to;
  for (StateId s : from) {
    for (const auto& e : a.out(s)) {
      if (e.label == *label) to.insert(e.dst);
    }
  }
  return {to.begin(), to.end()};
}

StateSet initial(const Lts& a) {
  std::set<StateId> s(a.initials().begin(), a.initials().end());
  return {s.begin(), s.end()};
}

}  // namespace

std::string trace_difference(const Lts& a, const Lts& b, std::size_t len, const std::vector<ConcreteAction>& universe) {
  using Pair = std::pair<StateSet, StateSet>;
  // Shallowest depth at which each pair was seen; a pair reached again at
  // the same or greater depth has nothing new to show.
  std::map<Pair, std::size_t> seen;
  struct Item {
    Pair sets;
    std::vector<std::size_t> trace;
  };
  std::vector<Item> layer{{{initial(a), initial(b)}, {}}};
  if (layer[0].sets.first.empty() != layer[0].sets.second.empty()) return "<empty trace>";
  seen.emplace(layer[0].sets, 0);
  for (std::size_t depth = 1; depth <= len && !layer.empty(); ++depth) {
    std::vector<Item> next;
    for (const auto& item : layer) {
      for (std::size_t l = 0; l < universe.size(); ++l) {
        Pair to{step(a, item.sets.first, universe[l]), step(b, item.sets.second, universe[l])};
        if (to.first.empty() != to.second.empty()) {
          std::string out;
          for (std::size_t x : item.trace) out += universe[x].to_string() + " ";
          return out + universe[l].to_string() + (to.first.empty() ? " (only in second)" : " (only in first)");
        }
        if (to.first.empty()) continue;
        auto [it, fresh] = seen.emplace(to, depth);
        if (!fresh) continue;
        std::vector<std::size_t> trace = item.trace;
        trace.push_back(l);
        next.push_back({std::move(to), std::move(trace)});
      }
    }
    layer = std::move(next);
  }
  return {};
}

}  // namespace recomp::test
