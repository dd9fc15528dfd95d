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
#include <map>
#include <numeric>

#include "recomp/decomposer/decomposer.hpp"
#include "recomp/enumerator/enumerator.hpp"
#include "recomp/errors.hpp"
#include "recomp/lang/analysis.hpp"
#include "recomp/lang/syntax.hpp"
#include "recomp/lts/lts.hpp"
#include "recomp/recomposer/recomposer.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/traces.hpp"

namespace recomp {
namespace {

using lang::SpecAst;
using test::load_corpus;
using Assignment = std::map<std::size_t, int>;
using Index = std::set<std::size_t>;

const char* kCorpus[] = {"twophase.spec", "tpcounter.spec", "lockserv.spec", "naive_consensus.spec"};

const char* kT2 = R"(MODULE T2

CONSTANTS RMs

VARIABLES tmState, tmPrepared

CONFIG
  RMs = {"rm1", "rm2", "rm3"}

INIT
  /\ tmState = "init"
  /\ tmPrepared = {}

ACTION RcvPrepare(rm) ==
  /\ tmState = "init"
  /\ tmPrepared' = tmPrepared \cup {rm}
  /\ UNCHANGED <<tmState>>

ACTION SndCommit ==
  /\ tmState = "init"
  /\ tmPrepared = RMs
  /\ tmState' = "committed"
  /\ UNCHANGED <<tmPrepared>>

ACTION SndAbort ==
  /\ tmState = "init"
  /\ tmState' = "aborted"
  /\ UNCHANGED <<tmPrepared>>

NEXT \E rm \in RMs :
  \/ RcvPrepare(rm)
  \/ SndCommit
  \/ SndAbort
)";

const char* kT1 = R"(MODULE T1

CONSTANTS RMs

VARIABLES msgs, tmState, tmPrepared

CONFIG
  RMs = {"rm1", "rm2", "rm3"}

INIT
  /\ msgs = {}
  /\ tmState = "init"
  /\ tmPrepared = {}

ACTION RcvPrepare(rm) ==
  /\ [type |-> "Prepared", theRM |-> rm] \in msgs
  /\ tmState = "init"
  /\ tmPrepared' = tmPrepared \cup {rm}
  /\ UNCHANGED <<msgs, tmState>>

ACTION SndPrepare(rm) ==
  /\ msgs' = msgs \cup {[type |-> "Prepared", theRM |-> rm]}
  /\ UNCHANGED <<tmState, tmPrepared>>

ACTION SndCommit ==
  /\ tmState = "init"
  /\ tmPrepared = RMs
  /\ tmState' = "committed"
  /\ msgs' = msgs \cup {[type |-> "Commit"]}
  /\ UNCHANGED <<tmPrepared>>

ACTION SndAbort ==
  /\ tmState = "init"
  /\ tmState' = "aborted"
  /\ msgs' = msgs \cup {[type |-> "Abort"]}
  /\ UNCHANGED <<tmPrepared>>

ACTION RcvCommit(rm) ==
  /\ [type |-> "Commit"] \in msgs
  /\ UNCHANGED <<msgs, tmState, tmPrepared>>

ACTION RcvAbort(rm) ==
  /\ [type |-> "Abort"] \in msgs
  /\ UNCHANGED <<msgs, tmState, tmPrepared>>

NEXT \E rm \in RMs :
  \/ RcvPrepare(rm)
  \/ SndPrepare(rm)
  \/ SndCommit
  \/ SndAbort
  \/ RcvCommit(rm)
  \/ RcvAbort(rm)
)";

// Two-phase components by variable.
std::map<std::string, SpecAst> tp_components() {
  SpecAst tp = load_corpus("twophase.spec");
  std::map<std::string, SpecAst> out;
  for (auto& c : decompose(tp, tp.property("Consistent"))) out.emplace(c.variables[0], std::move(c));
  return out;
}

std::vector<SpecAst> corpus_components(const std::string& file) {
  SpecAst s = load_corpus(file);
  return decompose(s, s.properties.begin()->second);
}

std::size_t index_of(const std::vector<SpecAst>& cs, const std::string& var) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].has_variable(var)) return i;
  }
  ADD_FAILURE() << "no component holds " << var;
  return 0;
}

std::vector<ConcreteAction> merged_alphabet(const Lts& a, const Lts& b) {
  std::set<ConcreteAction> u(a.alphabet().begin(), a.alphabet().end());
  u.insert(b.alphabet().begin(), b.alphabet().end());
  return {u.begin(), u.end()};
}

void expect_same_traces(const SpecAst& s, const SpecAst& t, std::size_t len, const std::string& what) {
  Lts ls = to_lts(s);
  Lts lt = to_lts(t);
  Lts syntactic = to_lts(compose_specs(s, t));
  Lts semantic = compose(ls, lt);
  auto universe = merged_alphabet(ls, lt);
  ASSERT_EQ(syntactic.alphabet(), universe) << what;
  EXPECT_EQ(test::trace_difference(syntactic, semantic, len, universe), "") << what;
}

// Components reachable from component 0 through shared symbols, by
// graph search.
Index connected_to_first(const std::vector<std::set<std::string>>& alphabets) {
  Index seen{0};
  std::vector<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    for (std::size_t j = 0; j < alphabets.size(); ++j) {
      if (seen.contains(j)) continue;
      bool shared = std::any_of(alphabets[i].begin(), alphabets[i].end(),
                                [&](const std::string& a) { return alphabets[j].contains(a); });
      if (shared) {
        seen.insert(j);
        work.push_back(j);
      }
    }
  }
  return seen;
}

TEST(ComposeSpecs, PreparedAndStateManagers) {
  auto cs = tp_components();
  SpecAst t2 = compose_specs(cs.at("tmState"), cs.at("tmPrepared"));
  EXPECT_TRUE(lang::structurally_equal(t2, lang::parse(kT2))) << lang::print(t2);
  SpecAst t1 = compose_specs(cs.at("msgs"), t2);
  EXPECT_TRUE(lang::structurally_equal(t1, lang::parse(kT1))) << lang::print(t1);
}

TEST(ComposeSpecs, UnitIsIdentity) {
  SpecAst u = lang::unit_spec();
  EXPECT_TRUE(u.variables.empty());
  EXPECT_TRUE(u.actions.empty());
  EXPECT_TRUE(lang::structurally_equal(compose_all({}), u));
  for (const char* f : kCorpus) {
    SpecAst s = load_corpus(f);
    EXPECT_TRUE(lang::structurally_equal(compose_specs(s, u), s)) << f;
    EXPECT_TRUE(lang::structurally_equal(compose_specs(u, s), s)) << f;
  }
}

TEST(ComposeSpecs, FreeVariablesAreTheUnion) {
  auto cs = tp_components();
  SpecAst t = compose_specs(cs.at("msgs"), cs.at("rmState"));
  EXPECT_EQ(lang::free_vars(t), (lang::NameSet{"msgs", "rmState"}));
}

TEST(ComposeSpecs, RejectsOverlappingVariables) {
  auto cs = tp_components();
  EXPECT_THROW(compose_specs(cs.at("msgs"), cs.at("msgs")), SpecError);
}

TEST(ComposeSpecs, RejectsMismatchedParameters) {
  SpecAst a = lang::parse(R"(MODULE A
VARIABLES x
INIT
  /\ x = 0
ACTION Go(p) ==
  /\ x' = p
NEXT \E p \in {0, 1} :
  \/ Go(p)
)");
  SpecAst b = lang::parse(R"(MODULE B
VARIABLES y
INIT
  /\ y = 0
ACTION Go ==
  /\ y' = 1
NEXT Go
)");
  SpecAst c = lang::parse(R"(MODULE C
VARIABLES z
INIT
  /\ z = 0
ACTION Go(q) ==
  /\ z' = q
NEXT \E q \in {0, 1, 2} :
  \/ Go(q)
)");
  EXPECT_THROW(compose_specs(a, b), SpecError);
  EXPECT_THROW(compose_specs(a, c), SpecError);
}

TEST(ComposeSpecs, RejectsConflictingConfig) {
  auto cs = tp_components();
  SpecAst other = lang::bind_constants(cs.at("msgs"), {{"RMs", R"({"rm1"})"}});
  EXPECT_THROW(compose_specs(cs.at("rmState"), other), SpecError);
}

TEST(ComposeSpecs, TraceSemanticsOnRandomPairs) {
  test::Rng rng(2026);
  for (int i = 0; i < 60; ++i) {
    auto [s, t] = test::random_spec_pair(rng);
    expect_same_traces(s, t, 8, "pair #" + std::to_string(i) + "\n" + lang::print(s) + "\n" + lang::print(t));
  }
}

TEST(ComposeSpecs, TraceSemanticsOnCorpusDecompositions) {
  std::vector<SpecAst> specs = {test::two_phase(2), test::two_phase(3),
                                load_corpus("lockserv.spec", {{"Node", test::atom_set("n", 2)}}),
                                load_corpus("naive_consensus.spec")};
  for (const auto& s : specs) {
    auto cs = decompose(s, s.properties.begin()->second);
    SpecAst acc = cs[0];
    for (std::size_t i = 1; i < cs.size(); ++i) {
      expect_same_traces(acc, cs[i], 8, s.name + " prefix " + std::to_string(i));
      acc = compose_specs(acc, cs[i]);
    }
  }
}

TEST(RecompositionMap, Validation) {
  EXPECT_NO_THROW((RecompositionMap{{{0, kGroupP}, {1, 1}, {2, 1}}, 1}.validate()));
  EXPECT_NO_THROW((RecompositionMap{{{0, kGroupP}, {1, kGroupP}}, 0}.validate()));
  EXPECT_THROW((RecompositionMap{{{0, 1}, {1, kGroupP}}, 1}.validate()), SpecError);
  EXPECT_THROW((RecompositionMap{{{0, kGroupP}, {1, 2}}, 2}.validate()), SpecError);
  EXPECT_THROW((RecompositionMap{{{0, kGroupP}, {1, 3}}, 2}.validate()), SpecError);
  EXPECT_THROW((RecompositionMap{{{1, 1}}, 1}.validate()), SpecError);
}

TEST(ParseMap, BundledOptimalMap) {
  auto cs = corpus_components("twophase.spec");
  RecompositionMap f = parse_map(test::read_text(test::corpus_path("opt.map")), cs);
  EXPECT_EQ(f.m, 2);
  EXPECT_EQ(f.assignment.at(index_of(cs, "rmState")), kGroupP);
  EXPECT_EQ(f.assignment.at(index_of(cs, "msgs")), 1);
  EXPECT_EQ(f.assignment.at(index_of(cs, "tmState")), 1);
  EXPECT_EQ(f.assignment.at(index_of(cs, "tmPrepared")), 2);
  EXPECT_EQ(parse_map(render_map(f, cs), cs), f);
}

TEST(ParseMap, CommentsAndVariableNames) {
  SpecAst s = lang::parse(R"(MODULE M
VARIABLES x, y, z
INIT
  /\ x = 0
  /\ y = 0
  /\ z = 0
ACTION A ==
  /\ x < 1
  /\ x' = y + 1
  /\ y' = x
  /\ UNCHANGED <<z>>
ACTION B ==
  /\ z < 1
  /\ z' = z + 1
  /\ UNCHANGED <<x, y>>
NEXT
  \/ A
  \/ B
PROPERTY P ==
  x < 3
)");
  auto cs = decompose(s, s.property("P"));
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(component_name(cs[0]), "x+y");
  auto by_name = parse_map("# property side\nx+y = P\n\nz = 1\n", cs);
  auto by_var = parse_map("y = P\nz = 1  # tail comment\n", cs);
  EXPECT_EQ(by_name, by_var);
  EXPECT_EQ(by_name.m, 1);
}

TEST(ParseMap, Errors) {
  auto cs = corpus_components("twophase.spec");
  const char* bad[] = {
      "rmState = P\nmsgs = 1\ntmState = 1\n",                          // tmPrepared missing
      "rmState = P\nmsgs = 1\ntmState = 1\ntmPrepared = 2\nmsgs = 2\n",  // twice
      "rmState = P\nmsgs = 1\ntmState = 1\nbogus = 2\n",                 // unknown name
      "rmState = 1\nmsgs = P\ntmState = 1\ntmPrepared = 1\n",            // C1 not in P
      "rmState = P\nmsgs = 1\ntmState = 1\ntmPrepared = 3\n",            // group 2 empty
      "rmState = P\nmsgs = 1\ntmState = 1\ntmPrepared = x\n",            // bad group
      "rmState = P\nmsgs = 1\ntmState = 1\ntmPrepared = -1\n",           // negative
      "rmState P\nmsgs = 1\ntmState = 1\ntmPrepared = 2\n",              // no '='
  };
  for (const char* text : bad) EXPECT_THROW(parse_map(text, cs), SpecError) << text;
}

TEST(NecessaryComponents, CounterIsExcluded) {
  auto cs = corpus_components("tpcounter.spec");
  ASSERT_EQ(cs.size(), 5u);
  const std::size_t rm = index_of(cs, "rmState"), env = index_of(cs, "msgs"), tm1 = index_of(cs, "tmState"),
                    tm2 = index_of(cs, "tmPrepared"), counter = index_of(cs, "counter");
  ReductionTrace r = necessary_components(cs);
  ASSERT_EQ(r.x_sets.size(), 4u);
  EXPECT_EQ(r.x_sets[0], Index{rm});
  EXPECT_EQ(r.x_sets[1], (Index{rm, env}));
  EXPECT_EQ(r.x_sets[2], (Index{rm, env, tm1, tm2}));
  EXPECT_EQ(r.x_sets[3], r.x_sets[2]);
  EXPECT_EQ(r.kept, r.x_sets.back());
  EXPECT_FALSE(r.kept.contains(counter));
}

TEST(NecessaryComponents, SingleComponent) {
  SpecAst tp = load_corpus("twophase.spec");
  ReductionTrace r = necessary_components(std::vector<SpecAst>{tp});
  EXPECT_EQ(r.kept, Index{0});
}

TEST(NecessaryComponents, TwoPhaseKeepsEverything) {
  auto cs = corpus_components("twophase.spec");
  EXPECT_EQ(necessary_components(cs).kept, (Index{0, 1, 2, 3}));
}

TEST(NecessaryComponents, MonotoneAndConvergentOnRandomAlphabets) {
  test::Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 8));
    auto alphabets = test::random_alphabets(rng, n, static_cast<std::size_t>(test::uniform(rng, 1, 10)));
    ReductionTrace r = necessary_components(alphabets);
    ASSERT_FALSE(r.x_sets.empty());
    EXPECT_EQ(r.x_sets.front(), Index{0});
    EXPECT_LE(r.x_sets.size(), n + 1);
    for (std::size_t k = 0; k + 1 < r.x_sets.size(); ++k) {
      EXPECT_TRUE(std::includes(r.x_sets[k + 1].begin(), r.x_sets[k + 1].end(), r.x_sets[k].begin(),
                                r.x_sets[k].end()));
    }
    if (r.x_sets.size() >= 2) {
      EXPECT_EQ(r.x_sets.back(), r.x_sets[r.x_sets.size() - 2]);
    }
    EXPECT_EQ(r.kept, r.x_sets.back());
    EXPECT_EQ(r.kept, connected_to_first(alphabets));
  }
}

TEST(NecessaryComponents, CorpusConvergesByIndexN) {
  for (const char* f : kCorpus) {
    auto cs = corpus_components(f);
    ReductionTrace r = necessary_components(cs);
    EXPECT_LE(r.x_sets.size(), cs.size() + 1) << f;
    std::vector<std::set<std::string>> alphabets;
    for (const auto& c : cs) alphabets.push_back(lang::symbolic_actions(c));
    EXPECT_EQ(r.kept, connected_to_first(alphabets)) << f;
  }
}

TEST(StaticReduce, DropsCounterAndItsGroup) {
  auto cs = corpus_components("tpcounter.spec");
  const std::size_t counter = index_of(cs, "counter");
  Assignment identity;
  for (std::size_t i = 0; i < cs.size(); ++i) identity[i] = static_cast<int>(i);
  RecompositionMap f{identity, 4};
  RecompositionMap r = static_reduce(f, cs);
  EXPECT_EQ(r.m, 3);
  EXPECT_FALSE(r.assignment.contains(counter));
  EXPECT_EQ(r.assignment.size(), 4u);
  EXPECT_NO_THROW(r.validate());
  // Surviving groups keep their relative order.
  std::vector<int> groups;
  for (const auto& [c, g] : r.assignment) groups.push_back(g);
  EXPECT_TRUE(std::is_sorted(groups.begin(), groups.end()));
}

TEST(StaticReduce, SharedGroupSurvives) {
  auto cs = corpus_components("tpcounter.spec");
  const std::size_t rm = index_of(cs, "rmState"), env = index_of(cs, "msgs"), tm1 = index_of(cs, "tmState"),
                    tm2 = index_of(cs, "tmPrepared"), counter = index_of(cs, "counter");
  RecompositionMap f{{{rm, kGroupP}, {env, 1}, {counter, 1}, {tm1, 2}, {tm2, 2}}, 2};
  RecompositionMap r = static_reduce(f, cs);
  EXPECT_EQ(r, (RecompositionMap{{{rm, kGroupP}, {env, 1}, {tm1, 2}, {tm2, 2}}, 2}));
}

TEST(StaticReduce, RenumbersDensely) {
  auto cs = corpus_components("tpcounter.spec");
  const std::size_t rm = index_of(cs, "rmState"), env = index_of(cs, "msgs"), tm1 = index_of(cs, "tmState"),
                    tm2 = index_of(cs, "tmPrepared"), counter = index_of(cs, "counter");
  RecompositionMap f{{{rm, kGroupP}, {env, 1}, {counter, 2}, {tm1, 3}, {tm2, 3}}, 3};
  EXPECT_EQ(static_reduce(f, cs), (RecompositionMap{{{rm, kGroupP}, {env, 1}, {tm1, 2}, {tm2, 2}}, 2}));
}

TEST(StaticReduce, TwoPhaseUnchanged) {
  auto cs = corpus_components("twophase.spec");
  test::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    RecompositionMap f = test::random_map(rng, cs.size());
    EXPECT_EQ(static_reduce(f, cs), f);
  }
}

TEST(BuildGroups, OptimalMap) {
  auto cs = corpus_components("twophase.spec");
  auto by_var = tp_components();
  RecompositionMap f = parse_map(test::read_text(test::corpus_path("opt.map")), cs);
  Groups g = build_groups(f, cs);
  EXPECT_TRUE(lang::structurally_equal(g.d_p, by_var.at("rmState")));
  ASSERT_EQ(g.d.size(), 2u);
  EXPECT_TRUE(lang::structurally_equal(g.d[0], compose_specs(by_var.at("msgs"), by_var.at("tmState"))));
  EXPECT_TRUE(lang::structurally_equal(g.d[1], by_var.at("tmPrepared")));
  ASSERT_EQ(g.members.size(), 3u);
  EXPECT_EQ(g.members[0], std::vector<std::size_t>{index_of(cs, "rmState")});
  EXPECT_EQ(g.members[2], std::vector<std::size_t>{index_of(cs, "tmPrepared")});
  EXPECT_TRUE(std::is_sorted(g.members[1].begin(), g.members[1].end()));
}

TEST(BuildGroups, Monolithic) {
  SpecAst tp = load_corpus("twophase.spec");
  auto cs = decompose(tp, tp.property("Consistent"));
  Assignment all;
  for (std::size_t i = 0; i < cs.size(); ++i) all[i] = kGroupP;
  Groups g = build_groups({all, 0}, cs);
  EXPECT_TRUE(lang::structurally_equal(g.d_p, tp));
  EXPECT_TRUE(g.d.empty());
}

TEST(BuildGroups, IdentityMap) {
  auto cs = corpus_components("twophase.spec");
  Assignment identity;
  for (std::size_t i = 0; i < cs.size(); ++i) identity[i] = static_cast<int>(i);
  Groups g = build_groups({identity, 3}, cs);
  EXPECT_TRUE(lang::structurally_equal(g.d_p, cs[0]));
  ASSERT_EQ(g.d.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(lang::structurally_equal(g.d[j], cs[j + 1]));
}

TEST(BuildGroups, VariablesPartitionKeptComponents) {
  test::Rng rng(17);
  for (const char* f : kCorpus) {
    auto cs = corpus_components(f);
    for (int i = 0; i < 20; ++i) {
      RecompositionMap map = static_reduce(test::random_map(rng, cs.size()), cs);
      Groups g = build_groups(map, cs);
      std::multiset<std::string> got(g.d_p.variables.begin(), g.d_p.variables.end());
      for (const auto& d : g.d) got.insert(d.variables.begin(), d.variables.end());
      std::multiset<std::string> want;
      for (const auto& [c, grp] : map.assignment) want.insert(cs[c].variables.begin(), cs[c].variables.end());
      EXPECT_EQ(got, want) << f;
    }
  }
}

}  // namespace
}  // namespace recomp
