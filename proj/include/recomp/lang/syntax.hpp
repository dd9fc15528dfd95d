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

#include <map>
#include <string>
#include <string_view>

#include "recomp/lang/ast.hpp"

namespace recomp::lang {

/// Parses a specification file. See docs/spec-format.md for the grammar.
SpecAst parse(std::string_view text);

/// Parses a standalone expression, resolving identifiers against the
/// variables and constants of `scope`.
ExprPtr parse_expression(std::string_view text, const SpecAst& scope);

/// Replaces CONFIG bindings. Each value is expression text over constants.
SpecAst bind_constants(SpecAst spec, const std::map<std::string, std::string>& overrides);

/// Canonical rendering; parse(print(s)) is structurally equal to s and
/// print(parse(t)) == t for text already in canonical layout.
std::string print(const SpecAst& spec);
std::string print(const Expr& e);
inline std::string print(const ExprPtr& e) { return print(*e); }

}  // namespace recomp::lang
