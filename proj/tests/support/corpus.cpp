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

#include "corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "recomp/lang/syntax.hpp"

namespace recomp::test {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus_path(const std::string& file) { return std::string(RECOMP_SPEC_DIR) + "/" + file; }

lang::SpecAst load_corpus(const std::string& file, const std::map<std::string, std::string>& overrides) {
  lang::SpecAst s = lang::parse(read_text(corpus_path(file)));
  return overrides.empty() ? s : lang::bind_constants(std::move(s), overrides);
}

std::string atom_set(const std::string& prefix, int n) {
  std::string out = "{";
  for (int i = 1; i <= n; ++i) out += (i > 1 ? ", \"" : "\"") + prefix + std::to_string(i) + "\"";
  return out + "}";
}

lang::SpecAst two_phase(int rms, bool counter) {
  return load_corpus(counter ? "tpcounter.spec" : "twophase.spec", {{"RMs", atom_set("rm", rms)}});
}

}  // namespace recomp::test
