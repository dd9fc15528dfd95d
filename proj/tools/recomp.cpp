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

// recomp: decompose, recompose and verify safety properties of
// specifications. Exit status: 0 holds, 1 violated, 2 inconclusive,
// 3 usage or specification error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "recomp/cli/report.hpp"
#include "recomp/decomposer/decomposer.hpp"
#include "recomp/engine/engine.hpp"
#include "recomp/errors.hpp"
#include "recomp/heuristics/heuristics.hpp"
#include "recomp/lang/syntax.hpp"
#include "recomp/recomposer/recomposer.hpp"

namespace {

using namespace recomp;

constexpr int kExitError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot read '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Accepts "250ms", "30s", "2m" or a bare number of seconds.
std::chrono::milliseconds parse_duration(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(fmt::format("invalid duration '{}'", text));
  }
  std::string unit = text.substr(used);
  double ms = 0;
  if (unit.empty() || unit == "s") ms = v * 1000;
  else if (unit == "ms") ms = v;
  else if (unit == "m") ms = v * 60'000;
  else throw Error(fmt::format("invalid duration unit in '{}'", text));
  if (ms <= 0) throw Error("the timeout must be positive");
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

struct SpecOptions {
  std::string path;
  std::string property;
  std::vector<std::string> consts;
};

lang::SpecAst load_spec(const SpecOptions& o) {
  lang::SpecAst s = lang::parse(read_file(o.path));
  std::map<std::string, std::string> overrides;
  for (const auto& c : o.consts) {
    auto eq = c.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(fmt::format("--const expects NAME=EXPR, got '{}'", c));
    overrides[c.substr(0, eq)] = c.substr(eq + 1);
  }
  return overrides.empty() ? s : lang::bind_constants(std::move(s), overrides);
}

const lang::PropertyDef& pick_property(const lang::SpecAst& s, const std::string& name) {
  if (!name.empty()) return s.property(name);
  if (s.properties.size() != 1) {
    throw Error(fmt::format("{} has {} properties; choose one with --property", s.name, s.properties.size()));
  }
  return s.properties.begin()->second;
}

void add_spec_options(CLI::App* cmd, SpecOptions& o, bool with_property) {
  cmd->add_option("spec", o.path, "Specification file")->required();
  if (with_property) cmd->add_option("-p,--property", o.property, "Invariant to check (default: the only one)");
  cmd->add_option("-c,--const", o.consts, "Override a constant binding, NAME=EXPR (repeatable)");
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::kHolds: return 0;
    case Outcome::kViolated: return 1;
    case Outcome::kInconclusive: return 2;
  }
  return kExitError;
}

std::string component_list(const std::vector<std::size_t>& ids, const std::vector<lang::SpecAst>& comps) {
  std::vector<std::string> names;
  for (auto i : ids) names.push_back(component_name(comps[i]));
  return fmt::format("[{}]", fmt::join(names, ", "));
}

std::string component_set(const std::set<std::size_t>& ids, const std::vector<lang::SpecAst>& comps) {
  return component_list({ids.begin(), ids.end()}, comps);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compositional safety verification by decomposition and recomposition"};
  app.require_subcommand(1);

  SpecOptions check_spec;
  std::string strategy = "portfolio";
  std::size_t workers = 4;
  std::size_t bound = kDefaultStateBound;
  std::string timeout;
  std::string minimize = "strong";
  std::string format = "text";
  bool no_reduction = false;
  bool no_short_circuit = false;
  auto* check = app.add_subcommand("check", "Verify an invariant");
  add_spec_options(check, check_spec, true);
  check->add_option("-s,--strategy", strategy, "s1|s2|s3|s4|portfolio|map:<path>")->capture_default_str();
  check->add_option("-w,--workers", workers, "Concurrent portfolio runs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  check->add_option("-b,--bound", bound, "Maximum states per generated or composed LTS")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->envname("RECOMP_BOUND");
  check->add_option("-t,--timeout", timeout, "Wall-clock limit, e.g. 30s, 500ms, 2m")->envname("RECOMP_TIMEOUT");
  check->add_option("-M,--minimize", minimize, "Minimization equivalence")
      ->capture_default_str()
      ->check(CLI::IsMember({"strong", "observational"}));
  check->add_option("-f,--format", format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "structured"}));
  check->add_flag("--no-reduction", no_reduction, "Skip static specification reduction");
  check->add_flag("--no-short-circuit", no_short_circuit, "Compose every group even once pi is unreachable");

  SpecOptions dec_spec;
  bool names_only = false;
  auto* dec = app.add_subcommand("decompose", "Print the components of a specification");
  add_spec_options(dec, dec_spec, true);
  dec->add_flag("--names", names_only, "Only list component names");

  SpecOptions ord_spec;
  auto* ord = app.add_subcommand("order", "Print X-sets, the data-flow order and the strategies");
  add_spec_options(ord, ord_spec, true);

  SpecOptions dump_spec;
  bool dump_error = false;
  bool dump_states = false;
  std::size_t dump_bound = kDefaultStateBound;
  auto* dump_cmd = app.add_subcommand("dump-lts", "Print the LTS of a specification");
  add_spec_options(dump_cmd, dump_spec, true);
  dump_cmd->add_flag("--error", dump_error, "Build the error LTS for the property");
  dump_cmd->add_flag("--states", dump_states, "Append the concrete state of every LTS state");
  dump_cmd->add_option("-b,--bound", dump_bound, "Maximum states")->envname("RECOMP_BOUND");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*check) {
      lang::SpecAst s = load_spec(check_spec);
      const lang::PropertyDef& p = pick_property(s, check_spec.property);
      VerifyOptions opts;
      opts.bound = bound;
      opts.minimize = minimize == "observational" ? MinimizeMode::kObservational : MinimizeMode::kStrong;
      opts.static_reduction = !no_reduction;
      opts.short_circuit = !no_short_circuit;
      std::optional<std::chrono::milliseconds> limit;
      if (!timeout.empty()) limit = parse_duration(timeout);

      Verdict verdict;
      StatsReport stats;
      if (strategy == "portfolio") {
        PortfolioResult r = run_portfolio(s, p, default_portfolio(), workers, limit, opts);
        verdict = std::move(r.verdict);
        stats = std::move(r.stats);
        if (!r.winner) stats.strategy = "-";
      } else {
        Strategy st;
        if (strategy == "s1") st = Strategy::s1();
        else if (strategy == "s2") st = Strategy::s2();
        else if (strategy == "s3") st = Strategy::s3();
        else if (strategy == "s4") st = Strategy::s4();
        else if (strategy.starts_with("map:")) {
          std::vector<lang::SpecAst> comps = decompose(s, p);
          st = Strategy{StrategyKind::kCustom, parse_map(read_file(strategy.substr(4)), comps)};
        } else {
          throw Error(fmt::format("unknown strategy '{}'", strategy));
        }
        // A single run honours the timeout through the same deadline
        // mechanism as the portfolio.
        PortfolioResult r = run_portfolio(s, p, {st}, 1, limit, opts);
        verdict = std::move(r.verdict);
        stats = std::move(r.stats);
      }
      std::cout << (format == "structured" ? render_structured(stats, verdict) : render_text(stats, verdict));
      return exit_code(verdict.outcome);
    }
    if (*dec) {
      lang::SpecAst s = load_spec(dec_spec);
      std::vector<lang::SpecAst> comps = decompose(s, pick_property(s, dec_spec.property));
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (names_only) {
          std::cout << component_name(comps[i]) << '\n';
        } else {
          std::cout << (i ? "\n" : "") << "---- component " << i + 1 << " ----\n" << lang::print(comps[i]);
        }
      }
      return 0;
    }
    if (*ord) {
      lang::SpecAst s = load_spec(ord_spec);
      std::vector<lang::SpecAst> comps = decompose(s, pick_property(s, ord_spec.property));
      for (std::size_t i = 0; i < comps.size(); ++i) {
        std::cout << fmt::format("C{} {}\n", i + 1, component_name(comps[i]));
      }
      ReductionTrace rt = necessary_components(comps);
      for (std::size_t i = 0; i < rt.x_sets.size(); ++i) {
        std::cout << fmt::format("X{} {}\n", i, component_set(rt.x_sets[i], comps));
      }
      std::cout << fmt::format("necessary {}\n", component_set(rt.kept, comps));
      DataFlowOrder dfo = data_flow_order(comps);
      for (std::size_t i = 0; i < dfo.e_sets.size(); ++i) {
        std::cout << fmt::format("E{} {}\n", i, component_set(dfo.e_sets[i], comps));
      }
      for (auto [a, b] : dfo.f_edges) {
        std::cout << fmt::format("F {} -> {}\n", component_name(comps[a]), component_name(comps[b]));
      }
      std::vector<std::size_t> order = total_order(comps, s);
      std::cout << fmt::format("order {}\n", component_list(order, comps));
      for (const auto& st : default_portfolio()) {
        RecompositionMap f = make_strategy(st.kind, order);
        if (st.kind != StrategyKind::kS4) f = static_reduce(f, comps);
        std::cout << fmt::format("---- {} (m={}) ----\n{}", st.label(), f.m, render_map(f, comps));
      }
      return 0;
    }
    if (*dump_cmd) {
      lang::SpecAst s = load_spec(dump_spec);
      CompiledSpec cs(s);
      const lang::PropertyDef* p = dump_error ? &pick_property(s, dump_spec.property) : nullptr;
      StateGraph g = explore(cs, p, dump_bound);
      std::cout << (dump_states ? dump(g, cs) : dump(g.lts));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "recomp: " << e.what() << '\n';
  }
  return kExitError;
}
