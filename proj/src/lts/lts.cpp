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

#include "recomp/lts/lts.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "recomp/errors.hpp"

namespace recomp {

std::strong_ordering operator<=>(const ConcreteAction& a, const ConcreteAction& b) {
  if (auto c = a.name <=> b.name; c != 0) return c;
  if (a.arg.has_value() != b.arg.has_value()) return a.arg.has_value() ? std::strong_ordering::greater
                                                                       : std::strong_ordering::less;
  if (!a.arg) return std::strong_ordering::equal;
  return *a.arg <=> *b.arg;
}

std::string ConcreteAction::to_string() const { return arg ? name + "(" + arg->to_string() + ")" : name; }

std::optional<std::uint32_t> Lts::label_of(const ConcreteAction& a) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), a);
  if (it == alphabet_.end() || *it != a) return std::nullopt;
  return static_cast<std::uint32_t>(it - alphabet_.begin());
}

LtsBuilder::LtsBuilder(std::vector<ConcreteAction> alphabet) {
  alphabet_ = alphabet;
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  relabel_.reserve(alphabet.size());
  for (const auto& a : alphabet) {
    relabel_.push_back(static_cast<std::uint32_t>(std::lower_bound(alphabet_.begin(), alphabet_.end(), a) -
                                                  alphabet_.begin()));
  }
}

Lts LtsBuilder::build() && {
  for (auto& e : raw_) e.label = relabel_[e.label];
  if (pi_) {
    std::erase_if(raw_, [&](const RawEdge& e) { return e.src == *pi_; });
    for (std::uint32_t l = 0; l < alphabet_.size(); ++l) raw_.push_back({*pi_, l, *pi_});
  }
  std::sort(raw_.begin(), raw_.end(), [](const RawEdge& x, const RawEdge& y) {
    return std::tie(x.src, x.label, x.dst) < std::tie(y.src, y.label, y.dst);
  });
  raw_.erase(std::unique(raw_.begin(), raw_.end(),
                         [](const RawEdge& x, const RawEdge& y) {
                           return x.src == y.src && x.label == y.label && x.dst == y.dst;
                         }),
             raw_.end());
  Lts out;
  out.alphabet_ = std::move(alphabet_);
  out.offsets_.assign(num_states_ + 1, 0);
  out.edges_.reserve(raw_.size());
  for (const auto& e : raw_) {
    ++out.offsets_[e.src + 1];
    out.edges_.push_back({e.label, e.dst});
  }
  for (std::size_t i = 1; i < out.offsets_.size(); ++i) out.offsets_[i] += out.offsets_[i - 1];
  std::sort(initials_.begin(), initials_.end());
  initials_.erase(std::unique(initials_.begin(), initials_.end()), initials_.end());
  out.initials_ = std::move(initials_);
  out.pi_ = pi_;
  raw_.clear();
  raw_.shrink_to_fit();
  return out;
}

Lts unit_lts() {
  LtsBuilder b({});
  b.add_initial(b.add_state());
  return std::move(b).build();
}

namespace {

// Merged alphabet of two LTSs with the index maps from each side.
struct Merge {
  std::vector<ConcreteAction> alphabet;
  std::vector<std::uint32_t> from_a, from_b;
  std::vector<std::int64_t> a_to_b;  // b label for a shared a label, else -1
  std::vector<bool> b_shared;
};

Merge merge_alphabets(const std::vector<ConcreteAction>& a, const std::vector<ConcreteAction>& b) {
  Merge m;
  m.from_a.resize(a.size());
  m.from_b.resize(b.size());
  m.a_to_b.assign(a.size(), -1);
  m.b_shared.assign(b.size(), false);
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    auto idx = static_cast<std::uint32_t>(m.alphabet.size());
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      m.from_a[i++] = idx;
      m.alphabet.push_back(a[i - 1]);
    } else if (i == a.size() || b[j] < a[i]) {
      m.from_b[j++] = idx;
      m.alphabet.push_back(b[j - 1]);
    } else {
      m.from_a[i] = idx;
      m.from_b[j] = idx;
      m.a_to_b[i] = static_cast<std::int64_t>(j);
      m.b_shared[j] = true;
      m.alphabet.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return m;
}

std::span<const Lts::Edge> edges_with_label(const Lts& l, StateId s, std::uint32_t label) {
  auto all = l.out(s);
  auto lo = std::lower_bound(all.begin(), all.end(), label,
                             [](const Lts::Edge& e, std::uint32_t x) { return e.label < x; });
  auto hi = std::upper_bound(lo, all.end(), label, [](std::uint32_t x, const Lts::Edge& e) { return x < e.label; });
  return {lo, hi};
}

}  // namespace

Lts compose(const Lts& a, const Lts& b, const StopCheck& stop, std::size_t bound) {
  if (a.pi() && b.pi()) throw Error("cannot compose two LTSs that both have an error state");
  Merge m = merge_alphabets(a.alphabet(), b.alphabet());
  LtsBuilder out(m.alphabet);
  std::unordered_map<std::uint64_t, StateId> index;
  std::deque<std::uint64_t> queue;
  std::optional<StateId> pi;

  auto is_pi = [&](StateId x, StateId y) { return a.is_pi(x) || b.is_pi(y); };
  auto intern = [&](StateId x, StateId y) -> StateId {
    if (is_pi(x, y)) {
      if (!pi) {
        pi = out.add_state();
        out.set_pi(*pi);
      }
      return *pi;
    }
    std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
    auto [it, fresh] = index.try_emplace(key, 0);
    if (fresh) {
      it->second = out.add_state();
      if (out.num_states() > bound) throw StateBoundExceeded(bound);
      if ((out.num_states() & 0xfff) == 0) stop.poll();
      queue.push_back(key);
    }
    return it->second;
  };

  for (StateId x : a.initials()) {
    for (StateId y : b.initials()) out.add_initial(intern(x, y));
  }
  while (!queue.empty()) {
    std::uint64_t key = queue.front();
    queue.pop_front();
    auto x = static_cast<StateId>(key >> 32);
    auto y = static_cast<StateId>(key & 0xffffffffu);
    StateId src = index.at(key);
    for (const auto& e : a.out(x)) {
      std::int64_t lb = m.a_to_b[e.label];
      if (lb < 0) {
        out.add_edge(src, m.from_a[e.label], intern(e.dst, y));
      } else {
        for (const auto& f : edges_with_label(b, y, static_cast<std::uint32_t>(lb))) {
          out.add_edge(src, m.from_a[e.label], intern(e.dst, f.dst));
        }
      }
    }
    for (const auto& f : b.out(y)) {
      if (!m.b_shared[f.label]) out.add_edge(src, m.from_b[f.label], intern(x, f.dst));
    }
  }
  return std::move(out).build();
}

std::vector<bool> reachable(const Lts& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<StateId> stack;
  for (StateId s : a.initials()) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const auto& e : a.out(s)) {
      if (!seen[e.dst]) {
        seen[e.dst] = true;
        stack.push_back(e.dst);
      }
    }
  }
  return seen;
}

bool pi_reachable(const Lts& a) { return a.pi() && reachable(a)[*a.pi()]; }

std::optional<std::vector<ConcreteAction>> path_to_pi(const Lts& a) {
  if (!a.pi()) return std::nullopt;
  constexpr StateId kNone = std::numeric_limits<StateId>::max();
  std::vector<StateId> parent(a.num_states(), kNone);
  std::vector<std::uint32_t> via(a.num_states(), 0);
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue;
  for (StateId s : a.initials()) {
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    if (a.is_pi(s)) {
      std::vector<ConcreteAction> path;
      for (StateId t = s; parent[t] != kNone; t = parent[t]) path.push_back(a.alphabet()[via[t]]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const auto& e : a.out(s)) {
      if (!seen[e.dst]) {
        seen[e.dst] = true;
        parent[e.dst] = s;
        via[e.dst] = e.label;
        queue.push_back(e.dst);
      }
    }
  }
  return std::nullopt;
}

namespace {

constexpr std::uint32_t kTau = std::numeric_limits<std::uint32_t>::max();

struct SigHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::uint64_t pack(std::uint32_t label, std::uint32_t block) {
  return (static_cast<std::uint64_t>(label) << 32) | block;
}

// Plain edge graph used by the refinement loops.
struct Graph {
  std::size_t n = 0;
  std::vector<std::uint32_t> offsets;
  std::vector<Lts::Edge> edges;
  std::span<const Lts::Edge> out(std::uint32_t s) const {
    return {edges.data() + offsets[s], edges.data() + offsets[s + 1]};
  }
};

// Assigns new block ids keyed by (old block, signature) in state order.
std::size_t renumber(std::vector<std::uint32_t>& block, std::vector<std::vector<std::uint64_t>>& sigs) {
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, SigHash> ids;
  ids.reserve(block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    auto& sig = sigs[s];
    sig.insert(sig.begin(), block[s]);
    auto [it, fresh] = ids.try_emplace(std::move(sig), static_cast<std::uint32_t>(ids.size()));
    block[s] = it->second;
  }
  return ids.size();
}

// Strong bisimulation refinement starting from `block`.
void refine_strong(const Graph& g, std::vector<std::uint32_t>& block, const StopCheck& stop) {
  std::size_t count = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<std::vector<std::uint64_t>> sigs(g.n);
  for (;;) {
    stop.poll();
    for (std::uint32_t s = 0; s < g.n; ++s) {
      auto& sig = sigs[s];
      sig.clear();
      for (const auto& e : g.out(s)) sig.push_back(pack(e.label, block[e.dst]));
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    }
    std::size_t next = renumber(block, sigs);
    if (next == count) return;
    count = next;
  }
}

// Branching bisimulation refinement on a graph whose tau edges (label
// kTau) are acyclic; `topo` lists states so that tau successors come first.
void refine_branching(const Graph& g, const std::vector<std::uint32_t>& topo, std::vector<std::uint32_t>& block,
                      const StopCheck& stop) {
  std::size_t count = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<std::vector<std::uint64_t>> sigs(g.n);
  for (;;) {
    stop.poll();
    for (std::uint32_t s : topo) {
      std::vector<std::uint64_t> sig;
      for (const auto& e : g.out(s)) {
        if (e.label == kTau && block[e.dst] == block[s]) {
          const auto& inner = sigs[e.dst];
          sig.insert(sig.end(), inner.begin(), inner.end());
        } else {
          sig.push_back(pack(e.label, block[e.dst]));
        }
      }
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      sigs[s] = std::move(sig);
    }
    // renumber() consumes the signatures, so keep a copy ordering by state.
    std::vector<std::vector<std::uint64_t>> keyed = sigs;
    std::size_t next = renumber(block, keyed);
    if (next == count) return;
    count = next;
  }
}

Graph to_graph(const Lts& a, const std::vector<std::uint32_t>& keep_index, std::size_t n,
               const std::vector<bool>* tau) {
  Graph g;
  g.n = n;
  g.offsets.assign(n + 1, 0);
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (keep_index[s] == kTau) continue;
    for (const auto& e : a.out(s)) {
      std::uint32_t label = (tau && (*tau)[e.label]) ? kTau : e.label;
      g.edges.push_back({label, keep_index[e.dst]});
    }
    g.offsets[keep_index[s] + 1] = static_cast<std::uint32_t>(g.edges.size());
  }
  for (std::size_t i = 1; i <= n; ++i) g.offsets[i] = std::max(g.offsets[i], g.offsets[i - 1]);
  return g;
}

// Iterative Tarjan over tau edges; returns the SCC id of every state with
// ids in reverse topological order of the condensation (sinks first).
std::vector<std::uint32_t> tau_sccs(const Graph& g, std::size_t& num_sccs) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(g.n, kUnset), low(g.n, 0), comp(g.n, kUnset);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(g.n, false);
  std::uint32_t next_index = 0;
  num_sccs = 0;
  struct Frame {
    std::uint32_t s;
    std::uint32_t edge;
  };
  std::vector<Frame> call;
  for (std::uint32_t root = 0; root < g.n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, g.offsets[root]});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < g.offsets[f.s + 1]) {
        const auto& e = g.edges[f.edge++];
        if (e.label != kTau) continue;
        std::uint32_t t = e.dst;
        if (index[t] == kUnset) {
          index[t] = low[t] = next_index++;
          stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, g.offsets[t]});
        } else if (on_stack[t]) {
          low[f.s] = std::min(low[f.s], index[t]);
        }
        continue;
      }
      std::uint32_t s = f.s;
      call.pop_back();
      if (!call.empty()) low[call.back().s] = std::min(low[call.back().s], low[s]);
      if (low[s] == index[s]) {
        for (;;) {
          std::uint32_t t = stack.back();
          stack.pop_back();
          on_stack[t] = false;
          comp[t] = static_cast<std::uint32_t>(num_sccs);
          if (t == s) break;
        }
        ++num_sccs;
      }
    }
  }
  return comp;
}

Lts quotient(const Lts& a, const std::vector<std::uint32_t>& cls, std::size_t num_classes,
             const std::vector<bool>* tau) {
  LtsBuilder b(a.alphabet());
  b.add_states(num_classes);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> tau_rep;
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (cls[s] == kTau || a.is_pi(s)) continue;
    for (const auto& e : a.out(s)) {
      std::uint32_t from = cls[s], to = cls[e.dst];
      if (tau && (*tau)[e.label]) {
        if (from == to) continue;
        auto [it, fresh] = tau_rep.try_emplace({from, to}, e.label);
        if (!fresh) it->second = std::min(it->second, e.label);
      } else {
        b.add_edge(from, e.label, to);
      }
    }
  }
  for (const auto& [key, label] : tau_rep) b.add_edge(key.first, label, key.second);
  for (StateId s : a.initials()) b.add_initial(cls[s]);
  if (a.pi() && cls[*a.pi()] != kTau) b.set_pi(cls[*a.pi()]);
  return std::move(b).build();
}

}  // namespace

Lts minimize(const Lts& a, MinimizeMode mode, const std::set<ConcreteAction>& hidden, const StopCheck& stop) {
  // Restrict to reachable states.
  std::vector<bool> live = reachable(a);
  std::vector<std::uint32_t> keep(a.num_states(), kTau);
  std::size_t n = 0;
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (live[s]) keep[s] = static_cast<std::uint32_t>(n++);
  }
  if (n == 0) return a;

  std::vector<bool> tau_labels(a.alphabet().size(), false);
  bool any_tau = false;
  if (mode == MinimizeMode::kObservational) {
    for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
      tau_labels[l] = hidden.contains(a.alphabet()[l]);
      any_tau = any_tau || tau_labels[l];
    }
  }

  std::vector<std::uint32_t> block(n, 0);
  auto pi_block = [&](std::vector<std::uint32_t>& blk, const std::vector<std::uint32_t>& map_to) {
    if (a.pi() && live[*a.pi()]) blk[map_to[*a.pi()]] = 1;
  };

  if (!any_tau) {
    Graph g = to_graph(a, keep, n, nullptr);
    pi_block(block, keep);
    refine_strong(g, block, stop);
    std::vector<std::uint32_t> cls(a.num_states(), kTau);
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (keep[s] != kTau) cls[s] = block[keep[s]];
    }
    std::size_t num = n ? *std::max_element(block.begin(), block.end()) + 1 : 0;
    return quotient(a, cls, num, nullptr);
  }

  // Collapse tau cycles, then refine by branching signatures.
  Graph g0 = to_graph(a, keep, n, &tau_labels);
  std::size_t num_sccs = 0;
  std::vector<std::uint32_t> scc = tau_sccs(g0, num_sccs);
  std::vector<std::uint32_t> via_scc(a.num_states(), kTau);
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (keep[s] != kTau) via_scc[s] = scc[keep[s]];
  }
  Graph g;
  g.n = num_sccs;
  {
    std::vector<std::vector<Lts::Edge>> adj(num_sccs);
    for (StateId s = 0; s < g0.n; ++s) {
      for (const auto& e : g0.out(s)) {
        if (e.label == kTau && scc[s] == scc[e.dst]) continue;
        adj[scc[s]].push_back({e.label, scc[e.dst]});
      }
    }
    g.offsets.assign(num_sccs + 1, 0);
    for (std::size_t c = 0; c < num_sccs; ++c) {
      auto& v = adj[c];
      std::sort(v.begin(), v.end(),
                [](const Lts::Edge& x, const Lts::Edge& y) { return std::tie(x.label, x.dst) < std::tie(y.label, y.dst); });
      v.erase(std::unique(v.begin(), v.end()), v.end());
      g.edges.insert(g.edges.end(), v.begin(), v.end());
      g.offsets[c + 1] = static_cast<std::uint32_t>(g.edges.size());
    }
  }
  // Tarjan numbers sink components first, which is the order the
  // branching signature needs.
  std::vector<std::uint32_t> topo(num_sccs);
  for (std::uint32_t c = 0; c < num_sccs; ++c) topo[c] = c;
  block.assign(num_sccs, 0);
  pi_block(block, via_scc);
  refine_branching(g, topo, block, stop);
  std::vector<std::uint32_t> cls(a.num_states(), kTau);
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (via_scc[s] != kTau) cls[s] = block[via_scc[s]];
  }
  std::size_t num = *std::max_element(block.begin(), block.end()) + 1;
  return quotient(a, cls, num, &tau_labels);
}

std::set<Trace> trace_set(const Lts& a, std::size_t len, const std::vector<ConcreteAction>& universe) {
  std::vector<std::optional<std::uint32_t>> local(universe.size());
  for (std::size_t u = 0; u < universe.size(); ++u) local[u] = a.label_of(universe[u]);
  for (const auto& l : a.alphabet()) {
    if (std::find(universe.begin(), universe.end(), l) == universe.end()) {
      throw Error("trace universe is missing " + l.to_string());
    }
  }
  std::set<Trace> out;
  std::map<Trace, std::vector<StateId>> level;
  level[{}] = a.initials();
  if (a.initials().empty()) return out;
  out.insert(Trace{});
  for (std::size_t k = 0; k < len; ++k) {
    std::map<Trace, std::vector<StateId>> next;
    for (const auto& [trace, states] : level) {
      for (std::uint32_t u = 0; u < universe.size(); ++u) {
        std::vector<StateId> succ;
        if (!local[u]) {
          succ = states;
        } else {
          for (StateId s : states) {
            for (const auto& e : edges_with_label(a, s, *local[u])) succ.push_back(e.dst);
          }
          std::sort(succ.begin(), succ.end());
          succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        }
        if (succ.empty()) continue;
        Trace t = trace;
        t.push_back(u);
        out.insert(t);
        next.emplace(std::move(t), std::move(succ));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::set<Trace> trace_set(const Lts& a, std::size_t len) { return trace_set(a, len, a.alphabet()); }

bool bisimilar(const Lts& a, const Lts& b) {
  Merge m = merge_alphabets(a.alphabet(), b.alphabet());
  std::size_t na = a.num_states();
  Graph g;
  g.n = na + b.num_states();
  g.offsets.assign(g.n + 1, 0);
  for (StateId s = 0; s < na; ++s) {
    for (const auto& e : a.out(s)) g.edges.push_back({m.from_a[e.label], e.dst});
    g.offsets[s + 1] = static_cast<std::uint32_t>(g.edges.size());
  }
  for (StateId s = 0; s < b.num_states(); ++s) {
    for (const auto& e : b.out(s)) g.edges.push_back({m.from_b[e.label], static_cast<StateId>(na + e.dst)});
    g.offsets[na + s + 1] = static_cast<std::uint32_t>(g.edges.size());
  }
  std::vector<std::uint32_t> block(g.n, 0);
  if (a.pi()) block[*a.pi()] = 1;
  if (b.pi()) block[na + *b.pi()] = 1;
  if (g.n == 0) return true;
  refine_strong(g, block, {});
  std::set<std::uint32_t> ia, ib;
  for (StateId s : a.initials()) ia.insert(block[s]);
  for (StateId s : b.initials()) ib.insert(block[na + s]);
  return ia == ib;
}

std::string dump(const Lts& a) {
  std::string out;
  for (StateId s : a.initials()) out += fmt::format("initial {}\n", s);
  if (a.pi()) out += fmt::format("pi {}\n", *a.pi());
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const auto& e : a.out(s)) out += fmt::format("{} {} {}\n", s, a.alphabet()[e.label].to_string(), e.dst);
  }
  return out;
}

}  // namespace recomp
