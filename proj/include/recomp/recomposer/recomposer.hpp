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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/lang/ast.hpp"

namespace recomp {

/// Parallel composition of two specifications with disjoint variables.
/// Shared actions conjoin their bodies; an action of one side only gains a
/// frame over the other side's variables. Throws SpecError on overlapping
/// variables, mismatched parameters or NEXT domains, or conflicting CONFIG.
lang::SpecAst compose_specs(const lang::SpecAst& s, const lang::SpecAst& t);

/// Left fold of compose_specs starting from the unit spec.
lang::SpecAst compose_all(const std::vector<lang::SpecAst>& specs);

/// Group id of the property group.
inline constexpr int kGroupP = 0;

/// Assignment of components (0-based; component 0 is C1) to groups
/// P = 0 and 1..m. After static reduction the domain may be a subset of
/// the components.
struct RecompositionMap {
  std::map<std::size_t, int> assignment;
  int m = 0;

  /// Throws SpecError unless component 0 maps to P, every id is in
  /// [0, m] and every group has a member.
  void validate() const;
  friend bool operator==(const RecompositionMap&, const RecompositionMap&) = default;
};

/// Parses `name = P|int` lines (blank lines and `#` comments ignored).
/// A name is a component name or any variable of that component. Every
/// component must be assigned exactly once.
RecompositionMap parse_map(std::string_view text, const std::vector<lang::SpecAst>& components);

/// Renders `f` in the map file format.
std::string render_map(const RecompositionMap& f, const std::vector<lang::SpecAst>& components);

/// Cumulative X-sets of components whose symbolic alphabets can influence
/// C1, up to and including the first repeated set.
struct ReductionTrace {
  std::vector<std::set<std::size_t>> x_sets;
  std::set<std::size_t> kept;
};

ReductionTrace necessary_components(const std::vector<lang::SpecAst>& components);
ReductionTrace necessary_components(const std::vector<std::set<std::string>>& alphabets);

/// Restricts `f` to the necessary components and renumbers the remaining
/// groups densely in their original order.
RecompositionMap static_reduce(const RecompositionMap& f, const std::vector<lang::SpecAst>& components);

struct Groups {
  lang::SpecAst d_p;
  std::vector<lang::SpecAst> d;               // D_1..D_m
  std::vector<std::vector<std::size_t>> members;  // members[0] is P
};

/// Composes the members of every group in component index order.
Groups build_groups(const RecompositionMap& f, const std::vector<lang::SpecAst>& components);

}  // namespace recomp
