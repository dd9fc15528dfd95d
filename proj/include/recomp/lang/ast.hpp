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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace recomp::lang {

enum class ExprKind : std::uint8_t {
  // literals
  kBool,
  kInt,
  kString,
  // resolved identifiers
  kVar,
  kPrimed,
  kConst,
  kBound,
  // constructors
  kSet,        // {a, b, ...}
  kSetFilter,  // {x \in S : p}        names={x}, args={S, p}
  kRecord,     // [f |-> e, ...]       names=fields, args=values
  kFunc,       // [x \in S |-> e]      names={x}, args={S, e}
  kTuple,      // <<a, b>>
  // access
  kApply,      // f[x]
  kField,      // r.f                  text=f
  kExcept,     // [f EXCEPT ![k] = v, ...]   args={f, k1, v1, k2, v2, ...}
  kCardinality,
  // set / arithmetic / comparison
  kEq,
  kNeq,
  kIn,
  kNotIn,
  kSubseteq,
  kUnion,
  kDiff,
  kIntersect,
  kCross,
  kRange,
  kPlus,
  kMinus,
  kLt,
  kLe,
  kGt,
  kGe,
  // logic
  kAnd,
  kOr,
  kNot,
  kImplies,
  kForall,     // names=binders, args={domain, body}
  kExists,
  kIf,         // args={cond, then, else}
  kUnchanged,  // names=variables
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree node. Identifiers are resolved by the parser
/// into kVar / kPrimed / kConst / kBound and keep their source names, so a
/// tree can be moved between specifications that share those names.
struct Expr {
  ExprKind kind;
  std::int64_t number = 0;
  std::string text;
  std::vector<std::string> names;
  std::vector<ExprPtr> args;
};

ExprPtr make_bool(bool b);
ExprPtr make_int(std::int64_t n);
ExprPtr make_string(std::string s);
ExprPtr make_ident(ExprKind kind, std::string name);
ExprPtr make_node(ExprKind kind, std::vector<ExprPtr> args);
ExprPtr make_binder(ExprKind kind, std::vector<std::string> names, std::vector<ExprPtr> args);
ExprPtr make_field(ExprPtr record, std::string field);
ExprPtr make_unchanged(std::vector<std::string> vars);

/// Deep structural equality.
bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

/// Definition of one action: `name(param) == /\ c1 /\ c2 ...`.
struct ActionDef {
  std::string name;
  std::optional<std::string> param;
  std::vector<ExprPtr> conjuncts;
};

/// A named state predicate checked as an invariant.
struct PropertyDef {
  std::string name;
  ExprPtr body;
};

/// A specification in the restricted grammar. Next is implicit: it is
/// `\E next_var \in next_domain : \/ A_1(next_var) \/ ...` over `actions`.
struct SpecAst {
  std::string name;
  std::vector<std::string> constants;
  std::map<std::string, ExprPtr> config;
  std::vector<std::string> variables;
  std::vector<ExprPtr> init;
  std::vector<ActionDef> actions;
  std::string next_var;
  ExprPtr next_domain;  // null when no action takes a parameter
  std::map<std::string, PropertyDef> properties;

  const ActionDef* find_action(const std::string& name) const;
  const PropertyDef& property(const std::string& name) const;
  bool has_variable(const std::string& v) const;
};

enum class ConjunctKind { kGuard, kUpdate, kFrame };

/// Classifies an action conjunct. Throws SpecError when the conjunct has
/// primes but is not of the form `v' = e` with `e` unprimed.
ConjunctKind classify(const Expr& conjunct);

/// For an update conjunct, the variable it assigns.
const std::string& updated_variable(const Expr& update);

}  // namespace recomp::lang
