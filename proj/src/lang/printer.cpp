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

// Canonical text rendering of specifications and expressions.

#include <string>

#include <fmt/format.h>

#include "recomp/lang/syntax.hpp"

namespace recomp::lang {
namespace {

// Binding strength; higher binds tighter.
enum Prec : int {
  kPrecQuant = 0,
  kPrecImplies = 1,
  kPrecOr = 2,
  kPrecAnd = 3,
  kPrecNot = 4,
  kPrecCmp = 5,
  kPrecSet = 6,
  kPrecRange = 7,
  kPrecAdd = 8,
  kPrecCross = 9,
  kPrecAtom = 10,
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kForall:
    case ExprKind::kExists:
    case ExprKind::kIf:
      return kPrecQuant;
    case ExprKind::kImplies:
      return kPrecImplies;
    case ExprKind::kOr:
      return kPrecOr;
    case ExprKind::kAnd:
      return kPrecAnd;
    case ExprKind::kNot:
      return kPrecNot;
    case ExprKind::kEq:
    case ExprKind::kNeq:
    case ExprKind::kIn:
    case ExprKind::kNotIn:
    case ExprKind::kSubseteq:
    case ExprKind::kLt:
    case ExprKind::kLe:
    case ExprKind::kGt:
    case ExprKind::kGe:
      return kPrecCmp;
    case ExprKind::kUnion:
    case ExprKind::kDiff:
    case ExprKind::kIntersect:
      return kPrecSet;
    case ExprKind::kRange:
      return kPrecRange;
    case ExprKind::kPlus:
    case ExprKind::kMinus:
      return kPrecAdd;
    case ExprKind::kCross:
      return kPrecCross;
    case ExprKind::kInt:
      return e.number < 0 ? kPrecAdd : kPrecAtom;
    default:
      return kPrecAtom;
  }
}

const char* binary_op(ExprKind k) {
  switch (k) {
    case ExprKind::kImplies: return "=>";
    case ExprKind::kOr: return "\\/";
    case ExprKind::kAnd: return "/\\";
    case ExprKind::kEq: return "=";
    case ExprKind::kNeq: return "#";
    case ExprKind::kIn: return "\\in";
    case ExprKind::kNotIn: return "\\notin";
    case ExprKind::kSubseteq: return "\\subseteq";
    case ExprKind::kLt: return "<";
    case ExprKind::kLe: return "<=";
    case ExprKind::kGt: return ">";
    case ExprKind::kGe: return ">=";
    case ExprKind::kUnion: return "\\cup";
    case ExprKind::kDiff: return "\\";
    case ExprKind::kIntersect: return "\\cap";
    case ExprKind::kRange: return "..";
    case ExprKind::kPlus: return "+";
    case ExprKind::kMinus: return "-";
    default: return nullptr;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render(const Expr& e, int min_prec);

std::string join(const std::vector<ExprPtr>& items, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < items.size(); ++i) {
    if (i > from) out += ", ";
    out += render(*items[i], kPrecQuant);
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

std::string render_raw(const Expr& e) {
  const int p = precedence(e);
  switch (e.kind) {
    case ExprKind::kBool:
      return e.number ? "TRUE" : "FALSE";
    case ExprKind::kInt:
      return std::to_string(e.number);
    case ExprKind::kString:
      return quote(e.text);
    case ExprKind::kVar:
    case ExprKind::kConst:
    case ExprKind::kBound:
      return e.text;
    case ExprKind::kPrimed:
      return e.text + "'";
    case ExprKind::kSet:
      return "{" + join(e.args) + "}";
    case ExprKind::kSetFilter:
      return fmt::format("{{{} \\in {} : {}}}", e.names[0], render(*e.args[0], kPrecQuant),
                         render(*e.args[1], kPrecQuant));
    case ExprKind::kRecord: {
      std::string out = "[";
      for (std::size_t i = 0; i < e.names.size(); ++i) {
        if (i) out += ", ";
        out += e.names[i] + " |-> " + render(*e.args[i], kPrecQuant);
      }
      return out + "]";
    }
    case ExprKind::kFunc:
      return fmt::format("[{} \\in {} |-> {}]", e.names[0], render(*e.args[0], kPrecQuant),
                         render(*e.args[1], kPrecQuant));
    case ExprKind::kTuple:
      return "<<" + join(e.args) + ">>";
    case ExprKind::kApply:
      return render(*e.args[0], kPrecAtom) + "[" + render(*e.args[1], kPrecQuant) + "]";
    case ExprKind::kField:
      return render(*e.args[0], kPrecAtom) + "." + e.text;
    case ExprKind::kExcept: {
      std::string out = "[" + render(*e.args[0], kPrecQuant) + " EXCEPT ";
      for (std::size_t i = 1; i + 1 < e.args.size(); i += 2) {
        if (i > 1) out += ", ";
        out += "![" + render(*e.args[i], kPrecQuant) + "] = " + render(*e.args[i + 1], kPrecQuant);
      }
      return out + "]";
    }
    case ExprKind::kCardinality:
      return "Cardinality(" + render(*e.args[0], kPrecQuant) + ")";
    case ExprKind::kCross: {
      std::string out;
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += " \\X ";
        out += render(*e.args[i], kPrecAtom);
      }
      return out;
    }
    case ExprKind::kNot: {
      const Expr& a = *e.args[0];
      std::string inner = render(a, kPrecQuant);
      return precedence(a) == kPrecAtom ? "~" + inner : "~(" + inner + ")";
    }
    case ExprKind::kImplies:
      return render(*e.args[0], p + 1) + " => " + render(*e.args[1], p);
    case ExprKind::kForall:
    case ExprKind::kExists:
      return fmt::format("{} {} \\in {} : {}", e.kind == ExprKind::kForall ? "\\A" : "\\E", join_names(e.names),
                         render(*e.args[0], kPrecQuant), render(*e.args[1], kPrecQuant));
    case ExprKind::kIf:
      return fmt::format("IF {} THEN {} ELSE {}", render(*e.args[0], kPrecQuant), render(*e.args[1], kPrecQuant),
                         render(*e.args[2], kPrecQuant));
    case ExprKind::kUnchanged:
      return "UNCHANGED <<" + join_names(e.names) + ">>";
    default: {
      const char* op = binary_op(e.kind);
      // Comparisons and .. are non-associative; the rest associate left.
      int left = (p == kPrecCmp || p == kPrecRange) ? p + 1 : p;
      return fmt::format("{} {} {}", render(*e.args[0], left), op, render(*e.args[1], p + 1));
    }
  }
}

std::string render(const Expr& e, int min_prec) {
  std::string s = render_raw(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

void conjunct_lines(std::string& out, const std::vector<ExprPtr>& items) {
  for (const auto& c : items) out += "\n  /\\ " + render(*c, kPrecQuant);
}

}  // namespace

std::string print(const Expr& e) { return render(e, kPrecQuant); }

std::string print(const SpecAst& s) {
  std::vector<std::string> sections;
  sections.push_back("MODULE " + s.name);
  if (!s.constants.empty()) sections.push_back("CONSTANTS " + join_names(s.constants));
  if (!s.variables.empty()) sections.push_back("VARIABLES " + join_names(s.variables));
  if (!s.config.empty()) {
    std::string out = "CONFIG";
    for (const auto& c : s.constants) {
      auto it = s.config.find(c);
      if (it != s.config.end()) out += "\n  " + c + " = " + print(*it->second);
    }
    sections.push_back(std::move(out));
  }
  if (!s.init.empty()) {
    std::string out = "INIT";
    conjunct_lines(out, s.init);
    sections.push_back(std::move(out));
  }
  for (const auto& a : s.actions) {
    std::string out = "ACTION " + a.name + (a.param ? "(" + *a.param + ")" : "") + " ==";
    conjunct_lines(out, a.conjuncts);
    sections.push_back(std::move(out));
  }
  if (!s.actions.empty()) {
    std::string out = "NEXT";
    if (s.next_domain) out += fmt::format(" \\E {} \\in {} :", s.next_var, print(*s.next_domain));
    for (const auto& a : s.actions) out += "\n  \\/ " + a.name + (a.param ? "(" + s.next_var + ")" : "");
    sections.push_back(std::move(out));
  }
  for (const auto& [name, p] : s.properties) {
    sections.push_back("PROPERTY " + name + " ==\n  " + print(*p.body));
  }
  std::string out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (i) out += "\n\n";
    out += sections[i];
  }
  return out + "\n";
}

}  // namespace recomp::lang
