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

#include "recomp/decomposer/decomposer.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "recomp/errors.hpp"
#include "recomp/lang/syntax.hpp"

namespace recomp {

using lang::ConjunctKind;
using lang::NameSet;
using lang::SpecAst;

namespace {

bool intersects(const NameSet& a, const NameSet& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.contains(x); });
}

bool subset(const NameSet& a, const NameSet& b) {
  return std::all_of(a.begin(), a.end(), [&](const std::string& x) { return b.contains(x); });
}

std::string fewest_occurrences(const SpecAst& s) {
  std::string best;
  std::size_t best_count = std::numeric_limits<std::size_t>::max();
  NameSet sorted(s.variables.begin(), s.variables.end());
  for (const auto& v : sorted) {
    std::size_t c = lang::count_occurrences(s, v);
    if (c < best_count) {
      best = v;
      best_count = c;
    }
  }
  return best;
}

}  // namespace

NameSet occurs(const SpecAst& s, const NameSet& v) {
  NameSet out;
  for (const auto& a : s.actions) {
    for (const auto& c : a.conjuncts) {
      if (lang::classify(*c) == ConjunctKind::kFrame) continue;
      NameSet fv = lang::free_vars(*c);
      if (intersects(fv, v)) out.insert(fv.begin(), fv.end());
    }
  }
  return out;
}

NameSet fixpoint(const std::function<NameSet(const NameSet&)>& op, NameSet x) {
  for (;;) {
    NameSet y = x;
    NameSet more = op(x);
    y.insert(more.begin(), more.end());
    if (y == x) return x;
    x = std::move(y);
  }
}

NameSet closure(const SpecAst& s, const NameSet& v) {
  return fixpoint([&](const NameSet& x) { return occurs(s, x); }, v);
}

Partition partition(const SpecAst& s, const NameSet& v) {
  Partition p;
  p.v_c = closure(s, v);
  for (const auto& x : s.variables) {
    if (!p.v_c.contains(x)) p.v_t.insert(x);
  }
  return p;
}

std::string component_name(const SpecAst& c) {
  std::string out;
  for (const auto& v : c.variables) {
    if (!out.empty()) out += "+";
    out += v;
  }
  return out.empty() ? c.name : out;
}

SpecAst slice(const SpecAst& s, const NameSet& v) {
  SpecAst out;
  out.constants = s.constants;
  out.config = s.config;
  for (const auto& x : s.variables) {
    if (v.contains(x)) out.variables.push_back(x);
  }
  for (const auto& c : s.init) {
    if (subset(lang::free_vars(*c), v)) out.init.push_back(c);
  }
  for (const auto& a : s.actions) {
    lang::ActionDef kept{a.name, a.param, {}};
    NameSet updated;
    // A pure stuttering action has nothing to slice; every side keeps it
    // with its own frame so that composition restores it.
    const bool stutter = std::all_of(a.conjuncts.begin(), a.conjuncts.end(), [](const lang::ExprPtr& c) {
      return lang::classify(*c) == ConjunctKind::kFrame;
    });
    for (const auto& c : a.conjuncts) {
      if (lang::classify(*c) == ConjunctKind::kFrame) continue;
      NameSet fv = lang::free_vars(*c);
      if (!subset(fv, v)) {
        if (intersects(fv, v)) {
          throw SpecError(fmt::format("action {}: conjunct {} straddles the variable partition", a.name,
                                      lang::print(*c)));
        }
        continue;
      }
      if (lang::classify(*c) == ConjunctKind::kUpdate) updated.insert(lang::updated_variable(*c));
      kept.conjuncts.push_back(c);
    }
    if (kept.conjuncts.empty() && !stutter) continue;
    std::vector<std::string> frame;
    for (const auto& x : out.variables) {
      if (!updated.contains(x)) frame.push_back(x);
    }
    if (!frame.empty()) kept.conjuncts.push_back(lang::make_unchanged(std::move(frame)));
    out.actions.push_back(std::move(kept));
  }
  if (std::any_of(out.actions.begin(), out.actions.end(), [](const lang::ActionDef& a) { return a.param; })) {
    out.next_var = s.next_var;
    out.next_domain = s.next_domain;
  }
  for (const auto& [name, p] : s.properties) {
    if (subset(lang::free_vars(*p.body), v)) out.properties.emplace(name, p);
  }
  out.name = component_name(out);
  if (out.variables.empty()) out.name = s.name;
  return out;
}

std::vector<SpecAst> decompose(const SpecAst& s, const lang::PropertyDef& p) {
  NameSet pv = lang::free_vars(*p.body);
  for (const auto& x : pv) {
    if (!s.has_variable(x)) throw SpecError("property " + p.name + " references unknown variable " + x);
  }
  if (s.variables.empty()) return {s};
  if (pv.empty()) pv.insert(fewest_occurrences(s));
  Partition part = partition(s, pv);
  if (part.v_t.empty()) return {s};
  std::vector<SpecAst> out;
  SpecAst t = s;
  while (!part.v_t.empty()) {
    out.push_back(slice(t, part.v_c));
    SpecAst rest = slice(t, part.v_t);
    part = partition(rest, {fewest_occurrences(rest)});
    t = std::move(rest);
  }
  out.push_back(std::move(t));
  return out;
}

}  // namespace recomp
