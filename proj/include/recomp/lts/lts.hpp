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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "recomp/enumerator/value.hpp"
#include "recomp/stop.hpp"

namespace recomp {

/// An action name applied to an optional argument, e.g. SndPrepare("rm1").
struct ConcreteAction {
  std::string name;
  std::optional<Value> arg;

  std::string to_string() const;
  friend bool operator==(const ConcreteAction&, const ConcreteAction&) = default;
  friend std::strong_ordering operator<=>(const ConcreteAction& a, const ConcreteAction& b);
};

using StateId = std::uint32_t;

/// Explicit labeled transition system with an optional absorbing error
/// state pi. Edges are stored per source state, sorted by (label, target);
/// labels index into the sorted, duplicate-free alphabet.
class Lts {
 public:
  struct Edge {
    std::uint32_t label;
    StateId dst;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  Lts() = default;

  std::size_t num_states() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_transitions() const { return edges_.size(); }
  const std::vector<ConcreteAction>& alphabet() const { return alphabet_; }
  std::span<const Edge> out(StateId s) const {
    return {edges_.data() + offsets_[s], edges_.data() + offsets_[s + 1]};
  }
  const std::vector<StateId>& initials() const { return initials_; }
  std::optional<StateId> pi() const { return pi_; }
  bool is_pi(StateId s) const { return pi_ && *pi_ == s; }
  /// Index of `a` in the alphabet, if present.
  std::optional<std::uint32_t> label_of(const ConcreteAction& a) const;

 private:
  friend class LtsBuilder;
  std::vector<ConcreteAction> alphabet_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Edge> edges_;
  std::vector<StateId> initials_;
  std::optional<StateId> pi_;
};

/// Incremental construction of an Lts. build() sorts and deduplicates
/// edges and gives pi a self-loop on every alphabet symbol.
class LtsBuilder {
 public:
  /// `alphabet` is sorted and deduplicated by the builder; labels passed to
  /// add_edge index into the original vector.
  explicit LtsBuilder(std::vector<ConcreteAction> alphabet);

  StateId add_state() { return num_states_++; }
  void add_states(std::size_t n) { num_states_ += static_cast<StateId>(n); }
  std::size_t num_states() const { return num_states_; }
  void add_edge(StateId src, std::uint32_t label, StateId dst) { raw_.push_back({src, label, dst}); }
  void add_initial(StateId s) { initials_.push_back(s); }
  void set_pi(StateId s) { pi_ = s; }
  Lts build() &&;

 private:
  struct RawEdge {
    StateId src;
    std::uint32_t label;
    StateId dst;
  };
  std::vector<ConcreteAction> alphabet_;
  std::vector<std::uint32_t> relabel_;
  StateId num_states_ = 0;
  std::vector<RawEdge> raw_;
  std::vector<StateId> initials_;
  std::optional<StateId> pi_;
};

/// Parallel composition: shared labels synchronize, others interleave.
/// Product states are restricted to the reachable part and every product
/// state whose coordinate is pi is merged into one pi. Throws Error when
/// both operands have pi.
Lts compose(const Lts& a, const Lts& b, const StopCheck& stop = {}, std::size_t bound = SIZE_MAX);

/// LTS with one initial state, no transitions and an empty alphabet.
Lts unit_lts();

bool pi_reachable(const Lts& a);

/// States reachable from the initial states.
std::vector<bool> reachable(const Lts& a);

/// Shortest label sequence from an initial state to pi, if pi is reachable.
std::optional<std::vector<ConcreteAction>> path_to_pi(const Lts& a);

enum class MinimizeMode { kStrong, kObservational };

/// Quotient by strong bisimulation, or by branching bisimulation after
/// hiding every label in `hidden` (observational mode). pi stays a class
/// of its own. Unreachable states are dropped first.
Lts minimize(const Lts& a, MinimizeMode mode = MinimizeMode::kStrong, const std::set<ConcreteAction>& hidden = {},
             const StopCheck& stop = {});

using Trace = std::vector<std::uint32_t>;

/// Traces of length <= len over `universe` (which must contain a's
/// alphabet). Symbols outside a's alphabet stutter. Labels are indices into
/// `universe`.
std::set<Trace> trace_set(const Lts& a, std::size_t len, const std::vector<ConcreteAction>& universe);
/// Traces over a's own alphabet.
std::set<Trace> trace_set(const Lts& a, std::size_t len);

/// Strong bisimilarity of the reachable parts, with pi matched to pi.
bool bisimilar(const Lts& a, const Lts& b);

/// Text dump: `initial <id>` lines, an optional `pi <id>` line, then one
/// `src action(arg) dst` line per edge.
std::string dump(const Lts& a);

}  // namespace recomp
