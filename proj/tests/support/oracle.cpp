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

#include "oracle.hpp"

#include <bit>
#include <deque>
#include <map>
#include <set>

namespace recomp::test::oracle {

namespace {

std::string atom(const std::string& prefix, int i) { return "\"" + prefix + std::to_string(i + 1) + "\""; }

std::string call(const std::string& name, const std::string& arg) { return name + "(" + arg + ")"; }

}  // namespace

BfsResult bfs(const Model& m) {
  BfsResult r;
  std::map<State, std::size_t> depth;
  std::deque<State> queue;
  State init = m.initial();
  depth[init] = 0;
  queue.push_back(init);
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    if (r.holds && !m.property(s)) {
      r.holds = false;
      r.shortest_violation = depth[s];
    }
    for (auto& [label, t] : m.next(s)) {
      if (depth.emplace(t, depth[s] + 1).second) queue.push_back(std::move(t));
    }
  }
  r.states = depth.size();
  return r;
}

bool replay(const Model& m, const std::vector<std::string>& trace, bool& violates) {
  State s = m.initial();
  for (const auto& step : trace) {
    bool found = false;
    for (auto& [label, t] : m.next(s)) {
      if (label == step) {
        s = std::move(t);
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  violates = !m.property(s);
  return true;
}

// Layout: rm[0..n-1] (0 working, 1 prepared, 2 committed, 3 aborted), then
// tm (0 init, 1 committed, 2 aborted), tmPrepared mask, Prepared-message
// mask, Commit message, Abort message.
Model two_phase(int n, bool prepared_empty) {
  enum { kWorking, kPrepared, kCommitted, kAborted };
  const int tm = n, prep = n + 1, pmsg = n + 2, commit = n + 3, abort = n + 4;
  Model m;
  m.initial = [=] { return State(n + 5, 0); };
  m.next = [=](const State& s) {
    std::vector<std::pair<std::string, State>> out;
    auto emit = [&](std::string label, State t) { out.emplace_back(std::move(label), std::move(t)); };
    for (int i = 0; i < n; ++i) {
      const std::string rm = atom("rm", i);
      if ((s[pmsg] >> i & 1) && s[tm] == 0) {
        State t = s;
        t[prep] |= 1 << i;
        emit(call("RcvPrepare", rm), t);
      }
      if (s[i] == kWorking) {
        State t = s;
        t[pmsg] |= 1 << i;
        t[i] = kPrepared;
        emit(call("SndPrepare", rm), t);
        State u = s;
        u[i] = kAborted;
        emit(call("SilentAbort", rm), u);
      }
      if (s[commit]) {
        State t = s;
        t[i] = kCommitted;
        emit(call("RcvCommit", rm), t);
      }
      if (s[abort]) {
        State t = s;
        t[i] = kAborted;
        emit(call("RcvAbort", rm), t);
      }
    }
    if (s[tm] == 0 && s[prep] == (1 << n) - 1) {
      State t = s;
      t[tm] = 1;
      t[commit] = 1;
      emit("SndCommit", t);
    }
    if (s[tm] == 0) {
      State t = s;
      t[tm] = 2;
      t[abort] = 1;
      emit("SndAbort", t);
    }
    return out;
  };
  m.property = [=](const State& s) {
    if (prepared_empty) return s[prep] == 0;
    bool committed = false, aborted = false;
    for (int i = 0; i < n; ++i) {
      committed |= s[i] == kCommitted;
      aborted |= s[i] == kAborted;
    }
    return !(committed && aborted);
  };
  return m;
}

std::size_t rm_component_safe_states(int n) {
  std::size_t all = 1, no_commit = 1, no_abort = 1, neither = 1;
  for (int i = 0; i < n; ++i) {
    all *= 4;
    no_commit *= 3;
    no_abort *= 3;
    neither *= 2;
  }
  std::size_t mixed = all - no_commit - no_abort + neither;
  return all - mixed;
}

// Layout: lock_msg, grant_msg, unlock_msg, holds_lock masks, server flag.
Model lock_server(int nodes) {
  Model m;
  m.initial = [] { return State{0, 0, 0, 0, 1}; };
  m.next = [=](const State& s) {
    std::vector<std::pair<std::string, State>> out;
    for (int i = 0; i < nodes; ++i) {
      const int bit = 1 << i;
      const std::string n = atom("n", i);
      State t = s;
      t[0] |= bit;
      out.emplace_back(call("SendLock", n), t);
      if (s[4] && (s[0] & bit)) {
        t = s;
        t[4] = 0;
        t[0] &= ~bit;
        t[1] |= bit;
        out.emplace_back(call("RecvLock", n), t);
      }
      if (s[1] & bit) {
        t = s;
        t[1] &= ~bit;
        t[3] |= bit;
        out.emplace_back(call("RecvGrant", n), t);
      }
      if (s[3] & bit) {
        t = s;
        t[3] &= ~bit;
        t[2] |= bit;
        out.emplace_back(call("Unlock", n), t);
      }
      if (s[2] & bit) {
        t = s;
        t[2] &= ~bit;
        t[4] = 1;
        out.emplace_back(call("RecvUnlock", n), t);
      }
    }
    return out;
  };
  m.property = [](const State& s) { return std::popcount(static_cast<unsigned>(s[3])) <= 1; };
  return m;
}

// Layout: voted node mask, then vote-message, received and decided masks
// over pairs (node, value) with bit node * values + value.
Model naive_consensus(int nodes, int values, std::vector<unsigned> quorums) {
  Model m;
  m.initial = [] { return State{0, 0, 0, 0}; };
  m.next = [=](const State& s) {
    std::vector<std::pair<std::string, State>> out;
    for (int n = 0; n < nodes; ++n) {
      for (int v = 0; v < values; ++v) {
        const int bit = 1 << (n * values + v);
        const std::string arg = "<<" + atom("n", n) + ", " + atom("v", v) + ">>";
        if (!(s[0] >> n & 1)) {
          State t = s;
          t[0] |= 1 << n;
          t[1] |= bit;
          out.emplace_back(call("CastVote", arg), t);
        }
        if (s[1] & bit) {
          State t = s;
          t[2] |= bit;
          out.emplace_back(call("Receive", arg), t);
        }
        bool quorum = false;
        for (unsigned q : quorums) {
          bool all = true;
          for (int k = 0; k < nodes; ++k) {
            if ((q >> k & 1) && !(s[2] >> (k * values + v) & 1)) all = false;
          }
          quorum |= all;
        }
        if (quorum) {
          State t = s;
          t[3] |= bit;
          out.emplace_back(call("Decide", arg), t);
        }
      }
    }
    return out;
  };
  m.property = [=](const State& s) {
    std::set<int> decided_values;
    for (int n = 0; n < nodes; ++n) {
      for (int v = 0; v < values; ++v) {
        if (s[3] >> (n * values + v) & 1) decided_values.insert(v);
      }
    }
    return decided_values.size() <= 1;
  };
  return m;
}

}  // namespace recomp::test::oracle
