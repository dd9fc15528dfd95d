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

#include "recomp/recomposer/recomposer.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "recomp/decomposer/decomposer.hpp"
#include "recomp/errors.hpp"
#include "recomp/lang/analysis.hpp"
#include "recomp/lang/syntax.hpp"

namespace recomp {

using lang::SpecAst;

namespace {

std::vector<lang::ExprPtr> with_frame(std::vector<lang::ExprPtr> body, const std::vector<std::string>& vars) {
  if (!vars.empty()) body.push_back(lang::make_unchanged(vars));
  return body;
}

}  // namespace

SpecAst compose_specs(const SpecAst& s, const SpecAst& t) {
  for (const auto& v : t.variables) {
    if (s.has_variable(v)) throw SpecError("cannot compose specifications sharing variable '" + v + "'");
  }
  SpecAst out;
  out.variables = s.variables;
  out.variables.insert(out.variables.end(), t.variables.begin(), t.variables.end());
  out.constants = s.constants;
  out.config = s.config;
  for (const auto& c : t.constants) {
    if (std::find(out.constants.begin(), out.constants.end(), c) == out.constants.end()) out.constants.push_back(c);
  }
  for (const auto& [c, e] : t.config) {
    auto it = out.config.find(c);
    if (it == out.config.end()) {
      out.config.emplace(c, e);
    } else if (!lang::equal(it->second, e)) {
      throw SpecError("conflicting CONFIG values for constant '" + c + "'");
    }
  }
  out.init = s.init;
  out.init.insert(out.init.end(), t.init.begin(), t.init.end());

  if (s.next_domain && t.next_domain && !lang::equal(s.next_domain, t.next_domain)) {
    throw SpecError("cannot compose specifications with different NEXT domains");
  }
  out.next_var = s.next_domain ? s.next_var : t.next_var;
  out.next_domain = s.next_domain ? s.next_domain : t.next_domain;

  for (const auto& a : s.actions) {
    const lang::ActionDef* b = t.find_action(a.name);
    if (!b) {
      out.actions.push_back({a.name, a.param, with_frame(a.conjuncts, t.variables)});
      continue;
    }
    if (a.param.has_value() != b->param.has_value()) {
      throw SpecError("action " + a.name + " has different parameters in the composed specifications");
    }
    lang::ActionDef merged{a.name, a.param, a.conjuncts};
    for (const auto& c : b->conjuncts) {
      merged.conjuncts.push_back(a.param && *a.param != *b->param ? lang::rename_bound(c, *b->param, *a.param) : c);
    }
    out.actions.push_back(std::move(merged));
  }
  for (const auto& b : t.actions) {
    if (!s.find_action(b.name)) out.actions.push_back({b.name, b.param, with_frame(b.conjuncts, s.variables)});
  }
  out.properties = s.properties;
  for (const auto& [n, p] : t.properties) out.properties.emplace(n, p);
  out.name = component_name(out);
  if (out.variables.empty()) out.name = s.variables.empty() && !t.name.empty() && t.name != "Unit" ? t.name : s.name;
  return out;
}

SpecAst compose_all(const std::vector<SpecAst>& specs) {
  SpecAst acc = lang::unit_spec();
  for (const auto& s : specs) acc = compose_specs(acc, s);
  return acc;
}

void RecompositionMap::validate() const {
  if (m < 0) throw SpecError("recomposition map has a negative group count");
  auto first = assignment.find(0);
  if (first == assignment.end() || first->second != kGroupP) {
    throw SpecError("recomposition map must send the property component C1 to group P");
  }
  std::vector<bool> hit(static_cast<std::size_t>(m) + 1, false);
  for (const auto& [c, g] : assignment) {
    if (g < 0 || g > m) throw SpecError(fmt::format("component {} mapped to group {} outside P..{}", c + 1, g, m));
    hit[static_cast<std::size_t>(g)] = true;
  }
  for (int g = 1; g <= m; ++g) {
    if (!hit[static_cast<std::size_t>(g)]) throw SpecError(fmt::format("recomposition map is not onto: group {} is empty", g));
  }
}

RecompositionMap parse_map(std::string_view text, const std::vector<SpecAst>& components) {
  RecompositionMap f;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string x) {
      auto b = x.find_first_not_of(" \t\r");
      auto e = x.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(fmt::format("map line {}: expected `name = group`", lineno));
    std::string name = trim(line.substr(0, eq));
    std::string group = trim(line.substr(eq + 1));
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (component_name(components[i]) == name || components[i].has_variable(name)) idx = i;
    }
    if (!idx) throw SpecError(fmt::format("map line {}: no component named '{}'", lineno, name));
    int g;
    if (group == "P") {
      g = kGroupP;
    } else {
      std::size_t used = 0;
      try {
        g = std::stoi(group, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != group.size() || g < 1) {
        throw SpecError(fmt::format("map line {}: group must be P or a positive integer, got '{}'", lineno, group));
      }
    }
    if (!f.assignment.emplace(*idx, g).second) {
      throw SpecError(fmt::format("map line {}: component {} assigned twice", lineno, component_name(components[*idx])));
    }
    f.m = std::max(f.m, g);
  }
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!f.assignment.contains(i)) throw SpecError("map does not assign component " + component_name(components[i]));
  }
  f.validate();
  return f;
}

std::string render_map(const RecompositionMap& f, const std::vector<SpecAst>& components) {
  std::string out;
  for (const auto& [c, g] : f.assignment) {
    out += fmt::format("{} = {}\n", component_name(components[c]), g == kGroupP ? "P" : std::to_string(g));
  }
  return out;
}

ReductionTrace necessary_components(const std::vector<std::set<std::string>>& alphabets) {
  ReductionTrace r;
  if (alphabets.empty()) return r;
  std::set<std::size_t> x{0};
  r.x_sets.push_back(x);
  for (;;) {
    std::set<std::string> reach;
    for (auto i : x) reach.insert(alphabets[i].begin(), alphabets[i].end());
    std::set<std::size_t> next = x;
    for (std::size_t j = 0; j < alphabets.size(); ++j) {
      if (std::any_of(alphabets[j].begin(), alphabets[j].end(), [&](const std::string& a) { return reach.contains(a); })) {
        next.insert(j);
      }
    }
    r.x_sets.push_back(next);
    if (next == x) break;
    x = std::move(next);
  }
  r.kept = r.x_sets.back();
  return r;
}

ReductionTrace necessary_components(const std::vector<SpecAst>& components) {
  std::vector<std::set<std::string>> alphabets;
  for (const auto& c : components) alphabets.push_back(lang::symbolic_actions(c));
  return necessary_components(alphabets);
}

RecompositionMap static_reduce(const RecompositionMap& f, const std::vector<SpecAst>& components) {
  ReductionTrace r = necessary_components(components);
  std::map<int, int> renumber{{kGroupP, kGroupP}};
  RecompositionMap out;
  for (const auto& [c, g] : f.assignment) {
    if (r.kept.contains(c) && g != kGroupP) renumber.emplace(g, 0);
  }
  int next = 1;
  for (auto& [old, fresh] : renumber) {
    if (old != kGroupP) fresh = next++;
  }
  for (const auto& [c, g] : f.assignment) {
    if (r.kept.contains(c)) out.assignment.emplace(c, renumber.at(g));
  }
  out.m = next - 1;
  out.validate();
  return out;
}

Groups build_groups(const RecompositionMap& f, const std::vector<SpecAst>& components) {
  f.validate();
  Groups g;
  g.members.resize(static_cast<std::size_t>(f.m) + 1);
  for (const auto& [c, grp] : f.assignment) {
    if (c >= components.size()) throw SpecError(fmt::format("map refers to component {} of {}", c + 1, components.size()));
    g.members[static_cast<std::size_t>(grp)].push_back(c);
  }
  auto fold = [&](const std::vector<std::size_t>& idx) {
    SpecAst acc = components[idx[0]];
    for (std::size_t i = 1; i < idx.size(); ++i) acc = compose_specs(acc, components[idx[i]]);
    return acc;
  };
  g.d_p = fold(g.members[0]);
  for (std::size_t j = 1; j < g.members.size(); ++j) g.d.push_back(fold(g.members[j]));
  return g;
}

}  // namespace recomp
