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
#include <set>
#include <string>
#include <vector>

#include "recomp/lang/ast.hpp"

namespace recomp::lang {

using NameSet = std::set<std::string>;

/// State variables occurring in `e`; primed and unprimed occurrences both
/// count, constants and bound names do not.
NameSet free_vars(const Expr& e);
inline NameSet free_vars(const ExprPtr& e) { return free_vars(*e); }
NameSet free_vars(const SpecAst& s);

/// Action names of `s`.
NameSet symbolic_actions(const SpecAst& s);

/// Top-level conjuncts of an action body in source order.
const std::vector<ExprPtr>& conjuncts(const ActionDef& a);

/// Syntactic occurrences of variable `v` in Init, every action (including
/// UNCHANGED tuples) and the vars tuple. Throws SpecError for unknown `v`.
std::size_t count_occurrences(const SpecAst& s, const std::string& v);

/// Canonical form: sorted declarations, per-action conjuncts ordered
/// guards, updates, frame (each alphabetical by rendering, duplicates
/// removed), all UNCHANGED clauses merged into one sorted tuple.
SpecAst normalize(const SpecAst& s);

/// Equality of the normalized forms, ignoring the module name.
bool structurally_equal(const SpecAst& a, const SpecAst& b);

/// Renames free occurrences of the bound name `from` to `to`. Throws
/// SpecError if an inner binder named `to` would capture them.
ExprPtr rename_bound(const ExprPtr& e, const std::string& from, const std::string& to);

/// The empty specification; identity of parallel composition.
SpecAst unit_spec();

}  // namespace recomp::lang
