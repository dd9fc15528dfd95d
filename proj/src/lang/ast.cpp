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

#include "recomp/lang/ast.hpp"

#include <algorithm>

#include "recomp/errors.hpp"

namespace recomp::lang {

ExprPtr make_bool(bool b) {
  return std::make_shared<const Expr>(Expr{ExprKind::kBool, b ? 1 : 0, {}, {}, {}});
}

ExprPtr make_int(std::int64_t n) {
  return std::make_shared<const Expr>(Expr{ExprKind::kInt, n, {}, {}, {}});
}

ExprPtr make_string(std::string s) {
  return std::make_shared<const Expr>(Expr{ExprKind::kString, 0, std::move(s), {}, {}});
}

ExprPtr make_ident(ExprKind kind, std::string name) {
  return std::make_shared<const Expr>(Expr{kind, 0, std::move(name), {}, {}});
}

ExprPtr make_node(ExprKind kind, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(Expr{kind, 0, {}, {}, std::move(args)});
}

ExprPtr make_binder(ExprKind kind, std::vector<std::string> names, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(Expr{kind, 0, {}, std::move(names), std::move(args)});
}

ExprPtr make_field(ExprPtr record, std::string field) {
  return std::make_shared<const Expr>(Expr{ExprKind::kField, 0, std::move(field), {}, {std::move(record)}});
}

ExprPtr make_unchanged(std::vector<std::string> vars) {
  return std::make_shared<const Expr>(Expr{ExprKind::kUnchanged, 0, {}, std::move(vars), {}});
}

bool equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.number != b.number || a.text != b.text || a.names != b.names ||
      a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

const ActionDef* SpecAst::find_action(const std::string& n) const {
  auto it = std::find_if(actions.begin(), actions.end(), [&](const ActionDef& a) { return a.name == n; });
  return it == actions.end() ? nullptr : &*it;
}

const PropertyDef& SpecAst::property(const std::string& n) const {
  auto it = properties.find(n);
  if (it == properties.end()) throw SpecError("unknown property '" + n + "'");
  return it->second;
}

bool SpecAst::has_variable(const std::string& v) const {
  return std::find(variables.begin(), variables.end(), v) != variables.end();
}

namespace {

bool has_prime(const Expr& e) {
  if (e.kind == ExprKind::kPrimed) return true;
  for (const auto& a : e.args) {
    if (has_prime(*a)) return true;
  }
  return false;
}

}  // namespace

ConjunctKind classify(const Expr& c) {
  if (c.kind == ExprKind::kUnchanged) return ConjunctKind::kFrame;
  if (!has_prime(c)) return ConjunctKind::kGuard;
  if (c.kind == ExprKind::kEq && c.args[0]->kind == ExprKind::kPrimed && !has_prime(*c.args[1])) {
    return ConjunctKind::kUpdate;
  }
  throw SpecError("conjunct with primed variables must have the form v' = e");
}

const std::string& updated_variable(const Expr& update) { return update.args[0]->text; }

}  // namespace recomp::lang
