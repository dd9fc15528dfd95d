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

#include "recomp/lang/analysis.hpp"

#include <algorithm>

#include "recomp/errors.hpp"
#include "recomp/lang/syntax.hpp"

namespace recomp::lang {
namespace {

void collect_vars(const Expr& e, NameSet& out) {
  switch (e.kind) {
    case ExprKind::kVar:
    case ExprKind::kPrimed:
      out.insert(e.text);
      return;
    case ExprKind::kUnchanged:
      out.insert(e.names.begin(), e.names.end());
      return;
    default:
      for (const auto& a : e.args) collect_vars(*a, out);
  }
}

std::size_t count_in(const Expr& e, const std::string& v) {
  switch (e.kind) {
    case ExprKind::kVar:
    case ExprKind::kPrimed:
      return e.text == v ? 1 : 0;
    case ExprKind::kUnchanged:
      return static_cast<std::size_t>(std::count(e.names.begin(), e.names.end(), v));
    default: {
      std::size_t n = 0;
      for (const auto& a : e.args) n += count_in(*a, v);
      return n;
    }
  }
}

// Sorts by rendering and drops duplicates.
void sort_unique(std::vector<ExprPtr>& items) {
  std::vector<std::pair<std::string, ExprPtr>> keyed;
  keyed.reserve(items.size());
  for (auto& e : items) keyed.emplace_back(print(*e), std::move(e));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  items.clear();
  for (auto& [k, e] : keyed) items.push_back(std::move(e));
}

}  // namespace

NameSet free_vars(const Expr& e) {
  NameSet out;
  collect_vars(e, out);
  return out;
}

NameSet free_vars(const SpecAst& s) { return NameSet(s.variables.begin(), s.variables.end()); }

NameSet symbolic_actions(const SpecAst& s) {
  NameSet out;
  for (const auto& a : s.actions) out.insert(a.name);
  return out;
}

const std::vector<ExprPtr>& conjuncts(const ActionDef& a) { return a.conjuncts; }

std::size_t count_occurrences(const SpecAst& s, const std::string& v) {
  if (!s.has_variable(v)) throw SpecError("unknown variable '" + v + "'");
  std::size_t n = 1;  // the vars tuple
  for (const auto& c : s.init) n += count_in(*c, v);
  for (const auto& a : s.actions) {
    for (const auto& c : a.conjuncts) n += count_in(*c, v);
  }
  return n;
}

SpecAst normalize(const SpecAst& s) {
  SpecAst out = s;
  std::sort(out.constants.begin(), out.constants.end());
  std::sort(out.variables.begin(), out.variables.end());
  sort_unique(out.init);
  for (auto& a : out.actions) {
    std::vector<ExprPtr> guards, updates;
    NameSet frame;
    for (const auto& c : a.conjuncts) {
      switch (classify(*c)) {
        case ConjunctKind::kGuard:
          guards.push_back(c);
          break;
        case ConjunctKind::kUpdate:
          updates.push_back(c);
          break;
        case ConjunctKind::kFrame:
          frame.insert(c->names.begin(), c->names.end());
          break;
      }
    }
    sort_unique(guards);
    sort_unique(updates);
    a.conjuncts = std::move(guards);
    a.conjuncts.insert(a.conjuncts.end(), updates.begin(), updates.end());
    if (!frame.empty()) a.conjuncts.push_back(make_unchanged({frame.begin(), frame.end()}));
  }
  std::sort(out.actions.begin(), out.actions.end(),
            [](const ActionDef& x, const ActionDef& y) { return x.name < y.name; });
  if (std::none_of(out.actions.begin(), out.actions.end(), [](const ActionDef& a) { return a.param.has_value(); })) {
    out.next_var.clear();
    out.next_domain = nullptr;
  }
  return out;
}

bool structurally_equal(const SpecAst& a, const SpecAst& b) {
  SpecAst na = normalize(a);
  SpecAst nb = normalize(b);
  na.name.clear();
  nb.name.clear();
  return print(na) == print(nb);
}

namespace {

bool mentions_bound(const Expr& e, const std::string& name) {
  if (e.kind == ExprKind::kBound) return e.text == name;
  return std::any_of(e.args.begin(), e.args.end(), [&](const ExprPtr& a) { return mentions_bound(*a, name); });
}

bool is_binder(ExprKind k) {
  return k == ExprKind::kForall || k == ExprKind::kExists || k == ExprKind::kSetFilter || k == ExprKind::kFunc;
}

}  // namespace

ExprPtr rename_bound(const ExprPtr& e, const std::string& from, const std::string& to) {
  if (e->kind == ExprKind::kBound) return e->text == from ? make_ident(ExprKind::kBound, to) : e;
  if (!mentions_bound(*e, from)) return e;
  std::vector<ExprPtr> args = e->args;
  if (is_binder(e->kind)) {
    args[0] = rename_bound(args[0], from, to);
    bool shadows = std::find(e->names.begin(), e->names.end(), from) != e->names.end();
    if (!shadows) {
      if (std::find(e->names.begin(), e->names.end(), to) != e->names.end() && mentions_bound(*args[1], from)) {
        throw SpecError("renaming " + from + " to " + to + " would be captured by an inner binder");
      }
      args[1] = rename_bound(args[1], from, to);
    }
  } else {
    for (auto& a : args) a = rename_bound(a, from, to);
  }
  return std::make_shared<const Expr>(Expr{e->kind, e->number, e->text, e->names, std::move(args)});
}

SpecAst unit_spec() {
  SpecAst s;
  s.name = "Unit";
  return s;
}

}  // namespace recomp::lang
