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

#include <functional>
#include <string>
#include <vector>

#include "recomp/lang/analysis.hpp"
#include "recomp/lang/ast.hpp"

namespace recomp {

/// A split of a spec's variables into the component side and the rest.
struct Partition {
  lang::NameSet v_c;
  lang::NameSet v_t;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Variables of every non-frame action conjunct that mentions a variable
/// of `v`.
lang::NameSet occurs(const lang::SpecAst& s, const lang::NameSet& v);

/// Least fixpoint of `op` above `x`.
lang::NameSet fixpoint(const std::function<lang::NameSet(const lang::NameSet&)>& op, lang::NameSet x);

lang::NameSet closure(const lang::SpecAst& s, const lang::NameSet& v);
Partition partition(const lang::SpecAst& s, const lang::NameSet& v);

/// Restriction of `s` to the variables `v`. Non-frame conjuncts over `v`
/// are kept, actions left with none are deleted and surviving actions get
/// a frame over the variables of `v` they no longer update. Actions made
/// only of frames survive in every slice. Throws SpecError when a
/// kept-side conjunct mentions variables outside `v`.
/// The result is named after its variables joined by '+'.
lang::SpecAst slice(const lang::SpecAst& s, const lang::NameSet& v);

/// Splits `s` into components C1..Cn with disjoint variables, C1 holding
/// every variable of `p`.
std::vector<lang::SpecAst> decompose(const lang::SpecAst& s, const lang::PropertyDef& p);

/// Name used for a component: its variables in declaration order joined
/// by '+'.
std::string component_name(const lang::SpecAst& component);

}  // namespace recomp
