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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recomp/enumerator/value.hpp"
#include "recomp/lang/ast.hpp"
#include "recomp/lts/lts.hpp"
#include "recomp/stop.hpp"

namespace recomp {

inline constexpr std::size_t kDefaultStateBound = 10'000'000;

/// Values of the spec's variables in declaration order.
using State = std::vector<Value>;

struct StateHash {
  std::size_t operator()(const State& s) const;
};

namespace detail {
struct Code;
struct CompiledAction;
}  // namespace detail

/// A compiled state predicate.
class Predicate {
 public:
  Predicate();
  ~Predicate();
  Predicate(Predicate&&) noexcept;
  Predicate& operator=(Predicate&&) noexcept;

 private:
  friend class CompiledSpec;
  std::unique_ptr<detail::Code> code_;
  std::size_t slots_ = 1;
};

/// A specification with identifiers resolved to slots and constant
/// subexpressions folded. Immutable; safe to share between threads.
class CompiledSpec {
 public:
  /// Throws SpecError when an action leaves a variable unconstrained, the
  /// NEXT domain is not a finite set, or a constant cannot be evaluated.
  explicit CompiledSpec(lang::SpecAst spec);
  ~CompiledSpec();
  CompiledSpec(CompiledSpec&&) noexcept;

  const lang::SpecAst& spec() const { return spec_; }
  std::size_t num_vars() const { return spec_.variables.size(); }
  /// Sorted concrete alphabet: every action applied to every domain value.
  const std::vector<ConcreteAction>& alphabet() const { return alphabet_; }

  State initial_state() const;

  /// Successors of `q` as (alphabet index, state) pairs, appended to `out`.
  void successors(const State& q, std::vector<std::pair<std::uint32_t, State>>& out) const;
  std::vector<std::pair<ConcreteAction, State>> successors(const State& q) const;

  /// Throws SpecError when `p` references variables outside this spec.
  Predicate compile(const lang::PropertyDef& p) const;
  bool holds(const Predicate& p, const State& q) const;

  /// Evaluates `e` in state `q` with the given bound names.
  Value eval(const lang::Expr& e, const State& q, const std::map<std::string, Value>& bound = {}) const;

  Value constant(const std::string& name) const;
  std::string render(const State& q) const;

 private:
  lang::SpecAst spec_;
  std::map<std::string, Value> constants_;
  std::vector<ConcreteAction> alphabet_;
  std::vector<detail::CompiledAction> actions_;
  std::vector<std::unique_ptr<detail::Code>> init_;
  std::size_t num_slots_ = 0;
};

/// init_states of the restricted grammar: exactly one state.
std::vector<State> init_states(const CompiledSpec& s);

/// Reachable state graph. Throws StateBoundExceeded past `bound` states.
Lts to_lts(const CompiledSpec& s, std::size_t bound = kDefaultStateBound, const StopCheck& stop = {});
Lts to_lts(const lang::SpecAst& s, std::size_t bound = kDefaultStateBound, const StopCheck& stop = {});

/// Like to_lts, but every transition into a state violating `p` goes to
/// pi instead, and pi is initial if the initial state violates `p`. pi is
/// only added when some violation is reachable; it is the last state id.
Lts err_lts(const CompiledSpec& s, const lang::PropertyDef& p, std::size_t bound = kDefaultStateBound,
            const StopCheck& stop = {});
Lts err_lts(const lang::SpecAst& s, const lang::PropertyDef& p, std::size_t bound = kDefaultStateBound,
            const StopCheck& stop = {});

std::vector<ConcreteAction> concrete_alphabet(const lang::SpecAst& s);

/// State graph together with the concrete state behind every LTS state
/// (pi, if present, has no entry).
struct StateGraph {
  Lts lts;
  std::vector<State> states;
};
StateGraph explore(const CompiledSpec& s, const lang::PropertyDef* p, std::size_t bound = kDefaultStateBound,
                   const StopCheck& stop = {});

/// Direct breadth-first invariant check on the whole specification.
struct InvariantCheck {
  bool holds = true;
  std::vector<ConcreteAction> trace;  // shortest path to a violating state
  std::size_t states = 0;
};
InvariantCheck check_invariant(const CompiledSpec& s, const lang::PropertyDef& p,
                               std::size_t bound = kDefaultStateBound, const StopCheck& stop = {});

/// Text form of a state graph: the LTS dump followed by `state <id> <vars>`
/// lines.
std::string dump(const StateGraph& g, const CompiledSpec& s);

}  // namespace recomp
