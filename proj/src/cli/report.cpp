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

#include "recomp/cli/report.hpp"

#include <cctype>
#include <charconv>
#include <fmt/format.h>

#include "recomp/errors.hpp"

namespace recomp {

namespace {

constexpr std::string_view kHeader = "recomp-report 1";

std::string grouped(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::size_t to_size(std::string_view s, int line) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw Error(fmt::format("report line {}: expected a number, got '{}'", line, s));
  }
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string render_text(const StatsReport& stats, const Verdict& verdict) {
  std::string out;
  std::string head = to_string(verdict.outcome);
  for (auto& c : head) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (!verdict.reasons.empty()) {
    std::vector<std::string> rs;
    for (auto r : verdict.reasons) rs.push_back(to_string(r));
    head += fmt::format(" ({})", fmt::join(rs, ", "));
  }
  out += fmt::format("{}: {} {}\n\n", stats.spec, stats.property, head);
  out += fmt::format("{:<24} | {:>3} | {:>3} | {:>3} | {:>12} | {:>10} | {}\n", "spec", "n", "m", "k", "max states",
                     "time (s)", "strat");
  out += fmt::format("{:<24} | {:>3} | {:>3} | {:>3} | {:>12} | {:>10.3f} | {}\n", stats.spec, stats.n, stats.m,
                     stats.k, grouped(stats.max_states), static_cast<double>(stats.elapsed.count()) / 1e6,
                     stats.strategy.empty() ? "-" : stats.strategy);
  if (!stats.stages.empty()) {
    out += fmt::format("\n{:>5}  {:<32} {:>12} {:>12} {:>12}\n", "stage", "group", "generated", "minimized", "composed");
    for (std::size_t i = 0; i < stats.stages.size(); ++i) {
      const auto& s = stats.stages[i];
      out += fmt::format("{:>5}  {:<32} {:>12} {:>12} {:>12}\n", i == 0 ? std::string("P") : std::to_string(i),
                         s.group, grouped(s.generated), grouped(s.minimized), grouped(s.composed));
    }
  }
  if (verdict.outcome == Outcome::kViolated) {
    out += fmt::format("\ncounterexample ({} steps):\n", verdict.witness.size());
    for (std::size_t i = 0; i < verdict.witness.size(); ++i) {
      out += fmt::format("  {:>3}. {}\n", i + 1, verdict.witness[i].to_string());
    }
  }
  return out;
}

std::string render_structured(const StatsReport& stats, const Verdict& verdict) {
  std::string out(kHeader);
  out += '\n';
  out += fmt::format("spec {}\nproperty {}\nstrategy {}\nverdict {}\n", stats.spec, stats.property, stats.strategy,
                     to_string(verdict.outcome));
  for (auto r : verdict.reasons) out += fmt::format("reason {}\n", to_string(r));
  out += fmt::format("n {}\nm {}\nk {}\nmax_states {}\nelapsed_us {}\n", stats.n, stats.m, stats.k, stats.max_states,
                     stats.elapsed.count());
  for (std::size_t i = 0; i < stats.stages.size(); ++i) {
    const auto& s = stats.stages[i];
    out += fmt::format("stage {} {} {} {} {}\n", i, s.group, s.generated, s.minimized, s.composed);
  }
  for (const auto& a : verdict.witness) out += fmt::format("witness {}\n", a.to_string());
  out += "end\n";
  return out;
}

ParsedReport parse_structured(std::string_view text) {
  ParsedReport r;
  int line_no = 0;
  bool header = false, ended = false;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (ended) {
      if (!line.empty()) throw Error(fmt::format("report line {}: content after 'end'", line_no));
      continue;
    }
    if (!header) {
      if (line != kHeader) throw Error(fmt::format("report line {}: expected '{}'", line_no, kHeader));
      header = true;
      continue;
    }
    if (line == "end") {
      ended = true;
      continue;
    }
    std::size_t sp = line.find(' ');
    std::string_view key = line.substr(0, sp);
    std::string_view value = sp == std::string_view::npos ? std::string_view{} : line.substr(sp + 1);
    if (key == "spec") {
      r.stats.spec = value;
    } else if (key == "property") {
      r.stats.property = value;
    } else if (key == "strategy") {
      r.stats.strategy = value;
    } else if (key == "verdict") {
      if (value == "holds") r.outcome = Outcome::kHolds;
      else if (value == "violated") r.outcome = Outcome::kViolated;
      else if (value == "inconclusive") r.outcome = Outcome::kInconclusive;
      else throw Error(fmt::format("report line {}: unknown verdict '{}'", line_no, value));
    } else if (key == "reason") {
      if (value == "bound-exceeded") r.reasons.insert(InconclusiveReason::kBoundExceeded);
      else if (value == "timeout") r.reasons.insert(InconclusiveReason::kTimeout);
      else if (value == "cancelled") r.reasons.insert(InconclusiveReason::kCancelled);
      else throw Error(fmt::format("report line {}: unknown reason '{}'", line_no, value));
    } else if (key == "n") {
      r.stats.n = to_size(value, line_no);
    } else if (key == "m") {
      r.stats.m = to_size(value, line_no);
    } else if (key == "k") {
      r.stats.k = to_size(value, line_no);
    } else if (key == "max_states") {
      r.stats.max_states = to_size(value, line_no);
    } else if (key == "elapsed_us") {
      r.stats.elapsed = std::chrono::microseconds(to_size(value, line_no));
    } else if (key == "stage") {
      auto f = split_ws(value);
      if (f.size() != 5 || to_size(f[0], line_no) != r.stats.stages.size()) {
        throw Error(fmt::format("report line {}: malformed stage row", line_no));
      }
      r.stats.stages.push_back(
          {std::string(f[1]), to_size(f[2], line_no), to_size(f[3], line_no), to_size(f[4], line_no)});
    } else if (key == "witness") {
      r.witness.emplace_back(value);
    } else {
      throw Error(fmt::format("report line {}: unknown key '{}'", line_no, key));
    }
  }
  if (!header) throw Error("empty report");
  if (!ended) throw Error("report is missing 'end'");
  return r;
}

}  // namespace recomp
