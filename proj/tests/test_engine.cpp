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


#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <string>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "recomp/decomposer/decomposer.hpp"
#include "recomp/engine/engine.hpp"
#include "recomp/enumerator/enumerator.hpp"
#include "recomp/lang/syntax.hpp"
#include "support/cases.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

namespace recomp {
namespace {

using lang::SpecAst;
using namespace std::chrono_literals;

const StrategyKind kBuiltIn[] = {StrategyKind::kS1, StrategyKind::kS2, StrategyKind::kS3, StrategyKind::kS4};
const MinimizeMode kModes[] = {MinimizeMode::kStrong, MinimizeMode::kObservational};

Strategy builtin(StrategyKind k) { return {k, std::nullopt}; }

VerifyOptions with_mode(MinimizeMode m) {
  VerifyOptions o;
  o.minimize = m;
  return o;
}

// Built-in strategies followed by `extra` random valid maps.
std::vector<Strategy> strategies_for(const SpecAst& s, const lang::PropertyDef& p, test::Rng& rng, int extra) {
  std::vector<Strategy> out;
  for (auto k : kBuiltIn) out.push_back(builtin(k));
  const std::size_t n = decompose(s, p).size();
  for (int i = 0; i < extra; ++i) out.push_back({StrategyKind::kCustom, test::random_map(rng, n)});
  return out;
}

std::vector<std::string> rendered(const std::vector<ConcreteAction>& trace) {
  std::vector<std::string> out;
  for (const auto& a : trace) out.push_back(a.to_string());
  return out;
}

void expect_replays_to_violation(const test::oracle::Model& model, const std::vector<ConcreteAction>& witness) {
  bool violates = false;
  ASSERT_TRUE(test::oracle::replay(model, rendered(witness), violates)) << fmt::format("{}", fmt::join(rendered(witness), " "));
  EXPECT_TRUE(violates);
}

void expect_consistent_stats(const StatsReport& st) {
  EXPECT_LE(st.k, st.m);
  ASSERT_FALSE(st.stages.empty());
  std::size_t max = 0;
  for (const auto& s : st.stages) max = std::max({max, s.generated, s.composed});
  EXPECT_EQ(st.max_states, max);
}

SpecAst bounded_counter(int rms, int limit) {
  std::string text = test::read_text(test::corpus_path("tpcounter.spec"));
  const std::string update = "  /\\ counter' = counter + 1\n";
  text.replace(text.find(update), update.size(), fmt::format("  /\\ counter < {}\n{}", limit, update));
  return lang::bind_constants(lang::parse(text), {{"RMs", test::atom_set("rm", rms)}});
}

lang::PropertyDef property_over(const SpecAst& s, const std::string& name, const std::string& text) {
  return {name, lang::parse_expression(text, s)};
}

TEST(CompVerify, TrueHoldsWithoutComposing) {
  SpecAst tp = test::two_phase(3);
  auto cs = decompose(tp, tp.property("Consistent"));
  std::vector<SpecAst> rest(cs.begin() + 1, cs.end());
  RunResult r = comp_verify(cs[0], rest, property_over(cs[0], "Trivial", "TRUE"));
  EXPECT_EQ(r.verdict, Verdict::holds());
  EXPECT_EQ(r.stats.k, 0u);
  EXPECT_EQ(r.stats.m, 3u);
  EXPECT_EQ(r.stats.stages.size(), 1u);
}

TEST(CompVerify, StageCountsOnSmallInstance) {
  SpecAst tp = test::two_phase(3);
  auto cs = decompose(tp, tp.property("Consistent"));
  std::vector<SpecAst> rest(cs.begin() + 1, cs.end());
  RunResult r = comp_verify(cs[0], rest, tp.property("Consistent"));
  EXPECT_EQ(r.verdict, Verdict::holds());
  ASSERT_EQ(r.stats.stages.size(), 4u);
  // The RM component alone: every safe assignment plus pi.
  EXPECT_EQ(r.stats.stages[0].generated, test::oracle::rm_component_safe_states(3) + 1);
  EXPECT_LE(r.stats.stages[0].minimized, r.stats.stages[0].generated);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_EQ(r.stats.stages[j].generated, to_lts(rest[j - 1]).num_states());
  expect_consistent_stats(r.stats);
}

TEST(CompVerify, FalseInvariantYieldsReplayableWitness) {
  for (int n = 2; n <= 3; ++n) {
    SpecAst tp = test::two_phase(n);
    auto prop = property_over(tp, "Empty", "tmPrepared = {}");
    auto model = test::oracle::two_phase(n, true);
    const std::size_t shortest = test::oracle::bfs(model).shortest_violation;
    for (auto mode : kModes) {
      for (auto k : kBuiltIn) {
        RunResult r = recomp_verify(tp, prop, builtin(k), with_mode(mode));
        ASSERT_EQ(r.verdict.outcome, Outcome::kViolated) << n << " " << builtin(k).label();
        ASSERT_FALSE(r.verdict.witness.empty());
        EXPECT_EQ(r.verdict.witness.back().name, "RcvPrepare");
        EXPECT_EQ(r.verdict.witness.size(), shortest);
        expect_replays_to_violation(model, r.verdict.witness);
        EXPECT_EQ(r.stats.k, r.stats.m);
      }
    }
  }
}

TEST(RecompVerify, CounterHoldsUnderS1) {
  SpecAst s = test::two_phase(3, true);
  RunResult r = recomp_verify(s, s.property("Consistent"), Strategy::s1());
  EXPECT_EQ(r.verdict, Verdict::holds());
  EXPECT_EQ(r.stats.n, 5u);
  EXPECT_EQ(r.stats.m, 3u);
  EXPECT_EQ(r.stats.strategy, "S1");
}

TEST(RecompVerify, CounterIsInconclusiveUnderS4) {
  SpecAst s = test::two_phase(3, true);
  VerifyOptions o;
  o.bound = 20'000;
  RunResult r = recomp_verify(s, s.property("Consistent"), Strategy::s4(), o);
  EXPECT_EQ(r.verdict, Verdict::inconclusive(InconclusiveReason::kBoundExceeded));
  EXPECT_EQ(r.stats.m, 0u);
}

TEST(RecompVerify, CounterWithoutReductionShortCircuits) {
  SpecAst s = test::two_phase(2, true);
  VerifyOptions o;
  o.static_reduction = false;
  RunResult r = recomp_verify(s, s.property("Consistent"), Strategy::s1(), o);
  EXPECT_EQ(r.verdict, Verdict::holds());
  EXPECT_EQ(r.stats.m, 4u);
  EXPECT_EQ(r.stats.k, 3u);
}

TEST(RecompVerify, MonolithicCountsTheReachableStates) {
  for (int n = 2; n <= 4; ++n) {
    SpecAst tp = test::two_phase(n);
    RunResult r = recomp_verify(tp, tp.property("Consistent"), Strategy::s4());
    EXPECT_EQ(r.verdict, Verdict::holds());
    EXPECT_EQ(r.stats.max_states, test::oracle::bfs(test::oracle::two_phase(n)).states) << n;
    EXPECT_EQ(r.stats.k, 0u);
    EXPECT_EQ(r.stats.m, 0u);
  }
  EXPECT_EQ(recomp_verify(test::two_phase(3), test::two_phase(3).property("Consistent"), Strategy::s4()).stats.max_states,
            288u);
}

TEST(RecompVerify, SingleComponentMatchesMonolithic) {
  SpecAst s = lang::parse(R"(MODULE Tangle
VARIABLES x, y
INIT
  /\ x = 0
  /\ y = 0
ACTION Step(p) ==
  /\ x < 3
  /\ x' = y + p
  /\ y' = x
NEXT \E p \in {0, 1} :
  \/ Step(p)
PROPERTY Small ==
  y < 3
PROPERTY Tiny ==
  x < 2
)");
  for (const auto& [name, p] : s.properties) {
    RunResult mono = recomp_verify(s, p, Strategy::s4());
    EXPECT_EQ(mono.stats.n, 1u);
    for (auto k : kBuiltIn) {
      RunResult r = recomp_verify(s, p, builtin(k));
      EXPECT_EQ(r.verdict, mono.verdict) << name;
      EXPECT_EQ(r.stats.m, 0u);
      EXPECT_EQ(r.stats.stages, mono.stats.stages);
      EXPECT_EQ(r.stats.max_states, mono.stats.max_states);
    }
  }
}

TEST(RecompVerify, CustomMapMustCoverTheDecomposition) {
  SpecAst tp = test::two_phase(2);
  Strategy bad{StrategyKind::kCustom, RecompositionMap{{{0, kGroupP}, {1, 1}}, 1}};
  EXPECT_THROW(recomp_verify(tp, tp.property("Consistent"), bad), SpecError);
}

TEST(RecompVerify, AgreesWithOraclesOnCorpus) {
  test::Rng rng(1);
  for (const auto& c : test::finite_cases(3)) {
    const bool holds = test::oracle::bfs(c.model).holds;
    for (const auto& st : strategies_for(c.spec, c.property, rng, 3)) {
      for (auto mode : kModes) {
        RunResult r = recomp_verify(c.spec, c.property, st, with_mode(mode));
        ASSERT_TRUE(r.verdict.conclusive()) << c.label;
        EXPECT_EQ(r.verdict.outcome == Outcome::kHolds, holds) << c.label << " " << st.label();
        if (!holds) expect_replays_to_violation(c.model, r.verdict.witness);
        expect_consistent_stats(r.stats);
      }
    }
  }
}

TEST(RecompVerify, MonolithicAgreesWithDirectCheck) {
  test::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    SpecAst s = test::random_spec(rng);
    const auto& p = s.properties.begin()->second;
    InvariantCheck direct = check_invariant(CompiledSpec(s), p);
    RunResult r = recomp_verify(s, p, Strategy::s4());
    EXPECT_EQ(r.verdict.outcome == Outcome::kHolds, direct.holds) << lang::print(s);
  }
}

TEST(RecompVerify, RandomSpecsAgreeAcrossStrategies) {
  test::Rng rng(77);
  for (int i = 0; i < 80; ++i) {
    SpecAst s = test::random_spec(rng);
    const auto& p = s.properties.begin()->second;
    InvariantCheck direct = check_invariant(CompiledSpec(s), p);
    for (const auto& st : strategies_for(s, p, rng, 2)) {
      for (auto mode : kModes) {
        RunResult r = recomp_verify(s, p, st, with_mode(mode));
        ASSERT_TRUE(r.verdict.conclusive());
        ASSERT_EQ(r.verdict.outcome == Outcome::kHolds, direct.holds) << st.label() << "\n" << lang::print(s);
        if (!direct.holds) {
          // The witness must drive the whole specification into a bad state.
          CompiledSpec cs(s);
          auto pred = cs.compile(p);
          State q = cs.initial_state();
          for (const auto& a : r.verdict.witness) {
            auto next = cs.successors(q);
            auto it = std::find_if(next.begin(), next.end(), [&](const auto& e) { return e.first == a; });
            ASSERT_NE(it, next.end()) << a.to_string() << "\n" << lang::print(s);
            q = it->second;
          }
          EXPECT_FALSE(cs.holds(pred, q));
        }
      }
    }
  }
}

TEST(RecompVerify, ReductionDoesNotChangeVerdicts) {
  std::vector<std::pair<SpecAst, lang::PropertyDef>> cases;
  for (const auto& c : test::finite_cases(3)) cases.emplace_back(c.spec, c.property);
  SpecAst bc = bounded_counter(2, 3);
  cases.emplace_back(bc, bc.property("Consistent"));
  for (const auto& [s, p] : cases) {
    for (auto k : kBuiltIn) {
      VerifyOptions off;
      off.static_reduction = false;
      RunResult with = recomp_verify(s, p, builtin(k));
      RunResult without = recomp_verify(s, p, builtin(k), off);
      EXPECT_EQ(with.verdict.outcome, without.verdict.outcome) << s.name << " " << builtin(k).label();
    }
  }
}

TEST(RecompVerify, ShortCircuitIsSound) {
  SpecAst s = bounded_counter(2, 3);
  VerifyOptions o;
  o.static_reduction = false;
  RunResult early = recomp_verify(s, s.property("Consistent"), Strategy::s1(), o);
  ASSERT_EQ(early.verdict, Verdict::holds());
  ASSERT_LT(early.stats.k, early.stats.m);
  EXPECT_EQ(early.stats.stages.size(), early.stats.k + 1);
  o.short_circuit = false;
  RunResult full = recomp_verify(s, s.property("Consistent"), Strategy::s1(), o);
  EXPECT_EQ(full.verdict, Verdict::holds());
  EXPECT_EQ(full.stats.stages.size(), full.stats.m + 1);
  EXPECT_EQ(full.stats.k, early.stats.k);
}

TEST(RecompVerify, BestRecompositionBeatsMonolithicFromFourRms) {
  for (int n = 4; n <= 5; ++n) {
    SpecAst tp = test::two_phase(n);
    const std::size_t mono = test::oracle::bfs(test::oracle::two_phase(n)).states;
    for (auto k : {StrategyKind::kS1, StrategyKind::kS2}) {
      EXPECT_LT(recomp_verify(tp, tp.property("Consistent"), builtin(k)).stats.max_states, mono) << n;
    }
  }
}

// Groups enumerated in isolation lack their peers' constraints, so on small
// instances a recomposed run can visit more states than the whole system.
TEST(RecompVerify, IsolatedGroupsCanExceedMonolithicCount) {
  SpecAst tp = test::two_phase(3);
  EXPECT_EQ(recomp_verify(tp, tp.property("Consistent"), Strategy::s3()).stats.max_states, 304u);
  SpecAst ls = test::load_corpus("lockserv.spec");
  EXPECT_EQ(recomp_verify(ls, ls.property("Mutex"), Strategy::s1()).stats.max_states, 2049u);
  EXPECT_EQ(recomp_verify(ls, ls.property("Mutex"), Strategy::s4()).stats.max_states, 80u);
}

TEST(RecompVerify, BoundAndStopAreReported) {
  SpecAst tp = test::two_phase(3);
  VerifyOptions o;
  o.bound = 50;
  EXPECT_EQ(recomp_verify(tp, tp.property("Consistent"), Strategy::s4(), o).verdict,
            Verdict::inconclusive(InconclusiveReason::kBoundExceeded));
  std::stop_source src;
  src.request_stop();
  o.bound = kDefaultStateBound;
  o.stop = StopCheck(src.get_token(), std::nullopt);
  EXPECT_EQ(recomp_verify(tp, tp.property("Consistent"), Strategy::s4(), o).verdict,
            Verdict::inconclusive(InconclusiveReason::kCancelled));
  o.stop = StopCheck({}, StopCheck::Clock::now());
  EXPECT_EQ(recomp_verify(tp, tp.property("Consistent"), Strategy::s4(), o).verdict,
            Verdict::inconclusive(InconclusiveReason::kTimeout));
}

TEST(Portfolio, TwoPhaseHolds) {
  SpecAst tp = test::two_phase(3);
  PortfolioResult r = run_portfolio(tp, tp.property("Consistent"), default_portfolio(), 4, std::nullopt);
  EXPECT_EQ(r.verdict, Verdict::holds());
  ASSERT_TRUE(r.winner);
  EXPECT_EQ(r.stats.strategy, r.winner->label());
  EXPECT_EQ(r.runs.size(), 4u);
}

TEST(Portfolio, ViolationWins) {
  SpecAst tp = test::two_phase(3);
  auto prop = property_over(tp, "Empty", "tmPrepared = {}");
  PortfolioResult r = run_portfolio(tp, prop, default_portfolio(), 2, std::nullopt);
  ASSERT_EQ(r.verdict.outcome, Outcome::kViolated);
  expect_replays_to_violation(test::oracle::two_phase(3, true), r.verdict.witness);
}

TEST(Portfolio, MonolithicAloneIsInconclusiveOnCounter) {
  SpecAst s = test::two_phase(3, true);
  VerifyOptions o;
  o.bound = 20'000;
  PortfolioResult r = run_portfolio(s, s.property("Consistent"), {Strategy::s4()}, 1, std::nullopt, o);
  EXPECT_EQ(r.verdict, Verdict::inconclusive(InconclusiveReason::kBoundExceeded));
  EXPECT_FALSE(r.winner);
}

TEST(Portfolio, ReducedStrategyWinsAndMonolithicIsCancelled) {
  SpecAst s = test::two_phase(3, true);
  PortfolioResult r = run_portfolio(s, s.property("Consistent"), {Strategy::s1(), Strategy::s4()}, 4, std::nullopt);
  EXPECT_EQ(r.verdict, Verdict::holds());
  ASSERT_TRUE(r.winner);
  EXPECT_EQ(r.winner->kind, StrategyKind::kS1);
  ASSERT_EQ(r.runs.size(), 2u);
  ASSERT_TRUE(r.runs[1]);
  EXPECT_EQ(*r.runs[1], Verdict::inconclusive(InconclusiveReason::kCancelled));
}

TEST(Portfolio, SingleWorkerRunsInOrder) {
  SpecAst s = test::two_phase(3, true);
  PortfolioResult r = run_portfolio(s, s.property("Consistent"), {Strategy::s1(), Strategy::s4()}, 1, std::nullopt);
  EXPECT_EQ(r.verdict, Verdict::holds());
  ASSERT_TRUE(r.winner);
  EXPECT_EQ(r.winner->kind, StrategyKind::kS1);
  EXPECT_FALSE(r.runs[1]);
}

TEST(Portfolio, TimeoutIsInconclusive) {
  SpecAst s = test::two_phase(3, true);
  const auto start = std::chrono::steady_clock::now();
  PortfolioResult r = run_portfolio(s, s.property("Consistent"), {Strategy::s4()}, 1, 200ms);
  EXPECT_EQ(r.verdict, Verdict::inconclusive(InconclusiveReason::kTimeout));
  EXPECT_LT(std::chrono::steady_clock::now() - start, 20s);
}

}  // namespace
}  // namespace recomp
