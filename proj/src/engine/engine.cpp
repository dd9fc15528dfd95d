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

#include "recomp/engine/engine.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>

#include "recomp/decomposer/decomposer.hpp"
#include "recomp/errors.hpp"
#include "recomp/recomposer/recomposer.hpp"

namespace recomp {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kHolds: return "holds";
    case Outcome::kViolated: return "violated";
    case Outcome::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(InconclusiveReason r) {
  switch (r) {
    case InconclusiveReason::kBoundExceeded: return "bound-exceeded";
    case InconclusiveReason::kTimeout: return "timeout";
    case InconclusiveReason::kCancelled: return "cancelled";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Labels of `own` that occur in none of `others`.
std::set<ConcreteAction> private_labels(const std::vector<ConcreteAction>& own,
                                        const std::vector<const std::vector<ConcreteAction>*>& others) {
  std::set<ConcreteAction> out;
  for (const auto& a : own) {
    bool shared = std::any_of(others.begin(), others.end(),
                              [&](const auto* alpha) { return std::binary_search(alpha->begin(), alpha->end(), a); });
    if (!shared) out.insert(a);
  }
  return out;
}

}  // namespace

RunResult comp_verify(const lang::SpecAst& d_p, const std::vector<lang::SpecAst>& groups, const lang::PropertyDef& p,
                      const VerifyOptions& opts) {
  const auto start = Clock::now();
  RunResult r;
  StatsReport& st = r.stats;
  st.spec = d_p.name;
  st.property = p.name;
  st.m = groups.size();
  auto finish = [&]() -> RunResult {
    st.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return std::move(r);
  };
  const bool observational = opts.minimize == MinimizeMode::kObservational;
  try {
    CompiledSpec cp(d_p);
    std::vector<CompiledSpec> cg;
    cg.reserve(groups.size());
    for (const auto& g : groups) cg.emplace_back(g);

    // Labels that no later group can synchronize on.
    auto hidden_after = [&](const std::vector<ConcreteAction>& own, std::size_t composed) {
      std::vector<const std::vector<ConcreteAction>*> later;
      for (std::size_t j = composed; j < cg.size(); ++j) later.push_back(&cg[j].alphabet());
      return private_labels(own, later);
    };

    Lts d = err_lts(cp, p, opts.bound, opts.stop);
    StageStats stage{component_name(d_p), d.num_states(), 0, 0};
    st.max_states = d.num_states();
    d = minimize(d, opts.minimize, observational ? hidden_after(cp.alphabet(), 0) : std::set<ConcreteAction>{},
                 opts.stop);
    stage.minimized = stage.composed = d.num_states();
    st.stages.push_back(stage);

    std::optional<std::size_t> first_safe;
    if (!pi_reachable(d)) first_safe = 0;
    for (std::size_t j = 0; j < cg.size() && !(first_safe && opts.short_circuit); ++j) {
      Lts g = to_lts(cg[j], opts.bound, opts.stop);
      StageStats s{component_name(groups[j]), g.num_states(), 0, 0};
      st.max_states = std::max(st.max_states, g.num_states());
      if (observational) {
        std::vector<const std::vector<ConcreteAction>*> others{&cp.alphabet()};
        for (std::size_t i = 0; i < cg.size(); ++i) {
          if (i != j) others.push_back(&cg[i].alphabet());
        }
        g = minimize(g, opts.minimize, private_labels(cg[j].alphabet(), others), opts.stop);
      } else {
        g = minimize(g, opts.minimize, {}, opts.stop);
      }
      s.minimized = g.num_states();
      d = compose(d, g, opts.stop, opts.bound);
      s.composed = d.num_states();
      st.max_states = std::max(st.max_states, d.num_states());
      st.stages.push_back(s);
      if (!first_safe && !pi_reachable(d)) first_safe = j + 1;
    }
    if (first_safe) {
      st.k = *first_safe;
      r.verdict = Verdict::holds();
      if (!opts.short_circuit && pi_reachable(d)) {
        // Only reachable if short-circuiting were unsound; report what the
        // full composition says.
        r.verdict = Verdict::violated(path_to_pi(d).value_or(std::vector<ConcreteAction>{}));
      }
      return finish();
    }
    st.k = groups.size();
    std::vector<ConcreteAction> witness = path_to_pi(d).value_or(std::vector<ConcreteAction>{});
    if (observational) {
      // Hidden labels were merged during minimization, so search the
      // composed specification directly for a concrete trace.
      std::vector<lang::SpecAst> all{d_p};
      all.insert(all.end(), groups.begin(), groups.end());
      InvariantCheck check = check_invariant(CompiledSpec(compose_all(all)), p, opts.bound, opts.stop);
      if (!check.holds) witness = std::move(check.trace);
    }
    r.verdict = Verdict::violated(std::move(witness));
  } catch (const StateBoundExceeded&) {
    r.verdict = Verdict::inconclusive(InconclusiveReason::kBoundExceeded);
  } catch (const Stopped& e) {
    r.verdict = Verdict::inconclusive(e.reason() == StopReason::kTimeout ? InconclusiveReason::kTimeout
                                                                         : InconclusiveReason::kCancelled);
  }
  return finish();
}

RunResult recomp_verify(const lang::SpecAst& s, const lang::PropertyDef& p, const Strategy& strategy,
                        const VerifyOptions& opts) {
  const auto start = Clock::now();
  std::vector<lang::SpecAst> components = decompose(s, p);
  RecompositionMap f;
  if (strategy.kind == StrategyKind::kCustom) {
    if (!strategy.custom) throw SpecError("custom strategy without a map");
    f = *strategy.custom;
    f.validate();
    if (f.assignment.size() != components.size() || f.assignment.rbegin()->first >= components.size()) {
      throw SpecError("recomposition map does not cover the decomposition");
    }
  } else {
    f = make_strategy(strategy.kind, total_order(components, s));
  }
  // S4 stands for checking the whole specification, so it keeps every
  // component.
  if (opts.static_reduction && strategy.kind != StrategyKind::kS4) f = static_reduce(f, components);
  Groups g = build_groups(f, components);
  RunResult r = comp_verify(g.d_p, g.d, p, opts);
  r.stats.spec = s.name;
  r.stats.strategy = strategy.label();
  r.stats.n = components.size();
  r.stats.m = static_cast<std::size_t>(f.m);
  r.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
  return r;
}

PortfolioResult run_portfolio(const lang::SpecAst& s, const lang::PropertyDef& p, const std::vector<Strategy>& strategies,
                              std::size_t workers, std::optional<std::chrono::milliseconds> timeout,
                              const VerifyOptions& opts) {
  if (strategies.empty()) throw SpecError("the portfolio needs at least one strategy");
  workers = std::max<std::size_t>(workers, 1);
  std::optional<Clock::time_point> deadline;
  if (timeout) deadline = Clock::now() + *timeout;

  struct Done {
    std::size_t index;
    RunResult result;
    std::exception_ptr error;
  };
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Done> done;
  std::vector<std::jthread> threads(strategies.size());

  auto launch = [&](std::size_t i) {
    threads[i] = std::jthread([&, i](std::stop_token token) {
      Done d{i, {}, nullptr};
      try {
        VerifyOptions o = opts;
        o.stop = StopCheck(token, deadline);
        d.result = recomp_verify(s, p, strategies[i], o);
      } catch (...) {
        d.error = std::current_exception();
      }
      std::lock_guard lock(mu);
      done.push_back(std::move(d));
      cv.notify_all();
    });
  };

  PortfolioResult out;
  out.runs.resize(strategies.size());
  std::vector<std::optional<RunResult>> results(strategies.size());
  std::exception_ptr error;
  std::size_t next = 0, running = 0;
  std::optional<std::size_t> winner;
  for (; next < strategies.size() && running < workers; ++next, ++running) launch(next);
  while (running > 0) {
    Done d;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return !done.empty(); });
      d = std::move(done.front());
      done.pop_front();
    }
    --running;
    if (d.error) {
      if (!error) error = d.error;
    } else {
      results[d.index] = std::move(d.result);
    }
    bool stop_all = (error != nullptr) || (!winner && results[d.index] && results[d.index]->verdict.conclusive());
    if (stop_all && !winner && !error) winner = d.index;
    if (stop_all) {
      for (auto& t : threads) {
        if (t.joinable()) t.request_stop();
      }
    } else if (!winner && !error && next < strategies.size()) {
      launch(next++);
      ++running;
    }
  }
  for (auto& t : threads) {
    if (t.joinable()) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (results[i]) out.runs[i] = results[i]->verdict;
  }
  if (winner) {
    out.verdict = results[*winner]->verdict;
    out.stats = results[*winner]->stats;
    out.winner = strategies[*winner];
    return out;
  }
  out.verdict.outcome = Outcome::kInconclusive;
  for (const auto& r : results) {
    if (r) out.verdict.reasons.insert(r->verdict.reasons.begin(), r->verdict.reasons.end());
  }
  for (const auto& r : results) {
    if (r) {
      out.stats = r->stats;
      break;
    }
  }
  return out;
}

}  // namespace recomp
