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


#include "support/cases.hpp"

#include "recomp/lang/syntax.hpp"
#include "support/corpus.hpp"

namespace recomp::test {

std::vector<FiniteCase> finite_cases(int max_rms) {
  std::vector<FiniteCase> out;
  for (int n = 2; n <= max_rms; ++n) {
    lang::SpecAst tp = two_phase(n);
    const std::string label = "twophase-" + std::to_string(n);
    out.push_back({label, tp, tp.property("Consistent"), oracle::two_phase(n)});
    out.push_back({label + "-empty", tp, {"Empty", lang::parse_expression("tmPrepared = {}", tp)},
                   oracle::two_phase(n, true)});
  }
  lang::SpecAst ls = load_corpus("lockserv.spec");
  out.push_back({"lockserv-3", ls, ls.property("Mutex"), oracle::lock_server(3)});
  lang::SpecAst nc = load_corpus("naive_consensus.spec");
  out.push_back({"consensus", nc, nc.property("Agreement"), oracle::naive_consensus(3, 2, {0b011, 0b101, 0b110})});
  lang::SpecAst bad = load_corpus("naive_consensus.spec", {{"Quorums", R"({{"n1"}, {"n2", "n3"}})"}});
  out.push_back({"consensus-bad-quorums", bad, bad.property("Agreement"), oracle::naive_consensus(3, 2, {0b001, 0b110})});
  return out;
}

}  // namespace recomp::test
