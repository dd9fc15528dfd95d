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

#include "recomp/enumerator/enumerator.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "recomp/errors.hpp"
#include "recomp/lang/analysis.hpp"
#include "recomp/lang/syntax.hpp"

namespace recomp {

using lang::ExprKind;

namespace detail {

struct Code {
  ExprKind kind = ExprKind::kBool;
  bool closed = false;
  Value constant;
  std::uint32_t slot = 0;
  std::string text;
  std::vector<std::string> names;
  std::vector<std::uint32_t> slots;
  std::vector<Code> args;
};

struct CompiledAction {
  std::string name;
  bool has_param = false;
  std::uint32_t param_slot = 0;
  std::vector<Value> domain;
  std::vector<std::uint32_t> labels;
  std::vector<Code> guards;
  std::vector<std::pair<std::uint32_t, Code>> updates;
  std::vector<std::uint32_t> frames;
};

}  // namespace detail

using detail::Code;

namespace {

struct Ctx {
  const Value* vars;
  std::vector<Value>& bound;
};

Value eval(const Code& c, Ctx& ctx);

bool eval_bool(const Code& c, Ctx& ctx) { return eval(c, ctx).as_bool(); }

const Value& as_set(const Value& v) {
  if (v.kind() != Value::Kind::kSet) throw EvalError("expected a set, got " + v.to_string());
  return v;
}

template <typename F>
bool quantify(const Code& c, Ctx& ctx, std::size_t i, bool forall, F&& body) {
  if (i == c.slots.size()) return body();
  const Value dom = eval(c.args[0], ctx);
  for (const auto& x : as_set(dom).items()) {
    ctx.bound[c.slots[i]] = x;
    bool r = quantify(c, ctx, i + 1, forall, body);
    if (r != forall) return r;
  }
  return forall;
}

Value set_op(ExprKind k, const Value& a, const Value& b) {
  const auto& x = as_set(a).items();
  const auto& y = as_set(b).items();
  std::vector<Value> out;
  switch (k) {
    case ExprKind::kUnion:
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      break;
    case ExprKind::kDiff:
      std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      break;
    default:
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      break;
  }
  return Value::set(std::move(out));
}

void cross(const std::vector<Value>& sets, std::size_t i, std::vector<Value>& prefix, std::vector<Value>& out) {
  if (i == sets.size()) {
    out.push_back(Value::tuple(prefix));
    return;
  }
  for (const auto& x : as_set(sets[i]).items()) {
    prefix.push_back(x);
    cross(sets, i + 1, prefix, out);
    prefix.pop_back();
  }
}

Value eval(const Code& c, Ctx& ctx) {
  if (c.closed) return c.constant;
  switch (c.kind) {
    case ExprKind::kVar:
      return ctx.vars[c.slot];
    case ExprKind::kBound:
      return ctx.bound[c.slot];
    case ExprKind::kSet: {
      std::vector<Value> items;
      items.reserve(c.args.size());
      for (const auto& a : c.args) items.push_back(eval(a, ctx));
      return Value::set(std::move(items));
    }
    case ExprKind::kSetFilter: {
      Value dom = eval(c.args[0], ctx);
      std::vector<Value> items;
      for (const auto& x : as_set(dom).items()) {
        ctx.bound[c.slots[0]] = x;
        if (eval_bool(c.args[1], ctx)) items.push_back(x);
      }
      return Value::set(std::move(items));
    }
    case ExprKind::kRecord: {
      std::vector<std::pair<std::string, Value>> fields;
      for (std::size_t i = 0; i < c.names.size(); ++i) fields.emplace_back(c.names[i], eval(c.args[i], ctx));
      return Value::record(std::move(fields));
    }
    case ExprKind::kFunc: {
      Value dom = eval(c.args[0], ctx);
      std::vector<Value> values;
      values.reserve(as_set(dom).size());
      for (const auto& x : dom.items()) {
        ctx.bound[c.slots[0]] = x;
        values.push_back(eval(c.args[1], ctx));
      }
      return Value::func_sorted(dom.items(), std::move(values));
    }
    case ExprKind::kTuple: {
      std::vector<Value> items;
      for (const auto& a : c.args) items.push_back(eval(a, ctx));
      return Value::tuple(std::move(items));
    }
    case ExprKind::kApply:
      return eval(c.args[0], ctx).apply(eval(c.args[1], ctx));
    case ExprKind::kField:
      return eval(c.args[0], ctx).field(c.text);
    case ExprKind::kExcept: {
      Value f = eval(c.args[0], ctx);
      for (std::size_t i = 1; i + 1 < c.args.size(); i += 2) f = f.except(eval(c.args[i], ctx), eval(c.args[i + 1], ctx));
      return f;
    }
    case ExprKind::kCardinality:
      return Value::integer(static_cast<std::int64_t>(as_set(eval(c.args[0], ctx)).size()));
    case ExprKind::kEq:
      return Value::boolean(eval(c.args[0], ctx) == eval(c.args[1], ctx));
    case ExprKind::kNeq:
      return Value::boolean(eval(c.args[0], ctx) != eval(c.args[1], ctx));
    case ExprKind::kIn:
      return Value::boolean(eval(c.args[1], ctx).contains(eval(c.args[0], ctx)));
    case ExprKind::kNotIn:
      return Value::boolean(!eval(c.args[1], ctx).contains(eval(c.args[0], ctx)));
    case ExprKind::kSubseteq: {
      Value a = eval(c.args[0], ctx), b = eval(c.args[1], ctx);
      const auto& x = as_set(a).items();
      const auto& y = as_set(b).items();
      return Value::boolean(std::includes(y.begin(), y.end(), x.begin(), x.end()));
    }
    case ExprKind::kUnion:
    case ExprKind::kDiff:
    case ExprKind::kIntersect:
      return set_op(c.kind, eval(c.args[0], ctx), eval(c.args[1], ctx));
    case ExprKind::kCross: {
      std::vector<Value> sets, prefix, out;
      for (const auto& a : c.args) sets.push_back(eval(a, ctx));
      cross(sets, 0, prefix, out);
      return Value::set(std::move(out));
    }
    case ExprKind::kRange: {
      std::int64_t lo = eval(c.args[0], ctx).as_int(), hi = eval(c.args[1], ctx).as_int();
      std::vector<Value> items;
      for (std::int64_t i = lo; i <= hi; ++i) items.push_back(Value::integer(i));
      return Value::set(std::move(items));
    }
    case ExprKind::kPlus:
      return Value::integer(eval(c.args[0], ctx).as_int() + eval(c.args[1], ctx).as_int());
    case ExprKind::kMinus:
      return Value::integer(eval(c.args[0], ctx).as_int() - eval(c.args[1], ctx).as_int());
    case ExprKind::kLt:
      return Value::boolean(eval(c.args[0], ctx).as_int() < eval(c.args[1], ctx).as_int());
    case ExprKind::kLe:
      return Value::boolean(eval(c.args[0], ctx).as_int() <= eval(c.args[1], ctx).as_int());
    case ExprKind::kGt:
      return Value::boolean(eval(c.args[0], ctx).as_int() > eval(c.args[1], ctx).as_int());
    case ExprKind::kGe:
      return Value::boolean(eval(c.args[0], ctx).as_int() >= eval(c.args[1], ctx).as_int());
    case ExprKind::kAnd:
      return Value::boolean(eval_bool(c.args[0], ctx) && eval_bool(c.args[1], ctx));
    case ExprKind::kOr:
      return Value::boolean(eval_bool(c.args[0], ctx) || eval_bool(c.args[1], ctx));
    case ExprKind::kImplies:
      return Value::boolean(!eval_bool(c.args[0], ctx) || eval_bool(c.args[1], ctx));
    case ExprKind::kNot:
      return Value::boolean(!eval_bool(c.args[0], ctx));
    case ExprKind::kForall:
      return Value::boolean(quantify(c, ctx, 0, true, [&] { return eval_bool(c.args[1], ctx); }));
    case ExprKind::kExists:
      return Value::boolean(quantify(c, ctx, 0, false, [&] { return eval_bool(c.args[1], ctx); }));
    case ExprKind::kIf:
      return eval_bool(c.args[0], ctx) ? eval(c.args[1], ctx) : eval(c.args[2], ctx);
    default:
      throw EvalError("expression cannot be evaluated in this position");
  }
}

// Resolves names to slots and folds closed subtrees.
class Compiler {
 public:
  using ConstLookup = std::function<Value(const std::string&)>;

  Compiler(const lang::SpecAst& spec, ConstLookup consts, std::size_t& num_slots)
      : spec_(spec), consts_(std::move(consts)), num_slots_(num_slots) {}

  std::uint32_t bind(const std::string& name) {
    auto slot = static_cast<std::uint32_t>(scope_.size());
    scope_.emplace_back(name, slot);
    num_slots_ = std::max(num_slots_, scope_.size());
    return slot;
  }
  void unbind(std::size_t n) { scope_.resize(scope_.size() - n); }

  Code compile(const lang::Expr& e) {
    Code c;
    c.kind = e.kind;
    c.text = e.text;
    bool closed = false;
    switch (e.kind) {
      case ExprKind::kBool:
        c.constant = Value::boolean(e.number != 0);
        c.closed = true;
        return c;
      case ExprKind::kInt:
        c.constant = Value::integer(e.number);
        c.closed = true;
        return c;
      case ExprKind::kString:
        c.constant = Value::atom(e.text);
        c.closed = true;
        return c;
      case ExprKind::kConst:
        c.constant = consts_(e.text);
        c.closed = true;
        return c;
      case ExprKind::kVar: {
        auto it = std::find(spec_.variables.begin(), spec_.variables.end(), e.text);
        if (it == spec_.variables.end()) throw SpecError("unknown variable '" + e.text + "'");
        c.slot = static_cast<std::uint32_t>(it - spec_.variables.begin());
        return c;
      }
      case ExprKind::kBound: {
        auto it = std::find_if(scope_.rbegin(), scope_.rend(), [&](const auto& p) { return p.first == e.text; });
        if (it == scope_.rend()) throw SpecError("unbound identifier '" + e.text + "'");
        c.slot = it->second;
        bound_refs_.back().insert(it->second);
        return c;
      }
      case ExprKind::kPrimed:
      case ExprKind::kUnchanged:
        throw SpecError("primed variables are only allowed in action updates");
      default:
        break;
    }
    c.names = e.names;
    bool binder = e.kind == ExprKind::kForall || e.kind == ExprKind::kExists || e.kind == ExprKind::kSetFilter ||
                  e.kind == ExprKind::kFunc;
    bound_refs_.emplace_back();
    if (binder) {
      c.args.push_back(compile(*e.args[0]));
      for (const auto& n : e.names) c.slots.push_back(bind(n));
      c.args.push_back(compile(*e.args[1]));
      unbind(e.names.size());
    } else {
      for (const auto& a : e.args) c.args.push_back(compile(*a));
    }
    std::set<std::uint32_t> refs = std::move(bound_refs_.back());
    bound_refs_.pop_back();
    for (auto s : c.slots) refs.erase(s);
    closed = refs.empty() && !uses_vars(c);
    if (!bound_refs_.empty()) bound_refs_.back().insert(refs.begin(), refs.end());
    if (closed) {
      std::vector<Value> scratch(num_slots_ + 1);
      Ctx ctx{nullptr, scratch};
      c.constant = eval(c, ctx);
      c.closed = true;
      c.args.clear();
    }
    return c;
  }

  Code compile_top(const lang::Expr& e) {
    bound_refs_.emplace_back();
    Code c = compile(e);
    bound_refs_.pop_back();
    return c;
  }

 private:
  static bool uses_vars(const Code& c) {
    if (c.closed) return false;
    if (c.kind == ExprKind::kVar) return true;
    return std::any_of(c.args.begin(), c.args.end(), [](const Code& a) { return uses_vars(a); });
  }

  const lang::SpecAst& spec_;
  ConstLookup consts_;
  std::size_t& num_slots_;
  std::vector<std::pair<std::string, std::uint32_t>> scope_;
  std::vector<std::set<std::uint32_t>> bound_refs_;
};

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

std::size_t StateHash::operator()(const State& s) const {
  std::size_t h = s.size();
  for (const auto& v : s) h = mix(h, v.hash());
  return h;
}

Predicate::Predicate() = default;
Predicate::~Predicate() = default;
Predicate::Predicate(Predicate&&) noexcept = default;
Predicate& Predicate::operator=(Predicate&&) noexcept = default;

CompiledSpec::~CompiledSpec() = default;
CompiledSpec::CompiledSpec(CompiledSpec&&) noexcept = default;

CompiledSpec::CompiledSpec(lang::SpecAst spec) : spec_(std::move(spec)) {
  std::set<std::string> visiting;
  std::function<Value(const std::string&)> lookup = [&](const std::string& name) -> Value {
    if (auto it = constants_.find(name); it != constants_.end()) return it->second;
    auto cfg = spec_.config.find(name);
    if (cfg == spec_.config.end()) throw SpecError("constant '" + name + "' has no value");
    if (!visiting.insert(name).second) throw SpecError("constant '" + name + "' is defined in terms of itself");
    std::size_t slots = 0;
    Compiler cc(spec_, lookup, slots);
    Code code = cc.compile_top(*cfg->second);
    if (!code.closed) throw SpecError("constant '" + name + "' must not depend on state variables");
    visiting.erase(name);
    constants_.emplace(name, code.constant);
    return code.constant;
  };
  for (const auto& c : spec_.constants) lookup(c);

  Compiler cc(spec_, lookup, num_slots_);
  for (const auto& c : spec_.init) {
    if (c->kind != ExprKind::kEq || c->args[0]->kind != ExprKind::kVar) {
      throw SpecError("Init conjunct is not of the form v = e: " + lang::print(*c));
    }
    init_.push_back(std::make_unique<Code>(cc.compile_top(*c->args[1])));
    if (!init_.back()->closed) throw SpecError("Init value must be constant: " + lang::print(*c));
  }
  for (const auto& v : spec_.variables) {
    auto n = std::count_if(spec_.init.begin(), spec_.init.end(),
                           [&](const lang::ExprPtr& c) { return c->args[0]->text == v; });
    if (n != 1) throw SpecError("Init must assign variable '" + v + "' exactly once");
  }

  std::vector<Value> domain;
  if (spec_.next_domain) {
    Code d = cc.compile_top(*spec_.next_domain);
    if (!d.closed || d.constant.kind() != Value::Kind::kSet) throw SpecError("NEXT domain must be a constant set");
    domain = d.constant.items();
  }
  auto var_index = [&](const std::string& v) {
    return static_cast<std::uint32_t>(std::find(spec_.variables.begin(), spec_.variables.end(), v) -
                                      spec_.variables.begin());
  };
  for (const auto& a : spec_.actions) {
    detail::CompiledAction ca;
    ca.name = a.name;
    ca.has_param = a.param.has_value();
    if (ca.has_param) {
      ca.param_slot = cc.bind(*a.param);
      ca.domain = domain;
      for (const auto& d : domain) alphabet_.push_back({a.name, d});
    } else {
      alphabet_.push_back({a.name, std::nullopt});
    }
    std::vector<bool> constrained(spec_.variables.size(), false);
    for (const auto& c : a.conjuncts) {
      switch (lang::classify(*c)) {
        case lang::ConjunctKind::kGuard:
          ca.guards.push_back(cc.compile_top(*c));
          break;
        case lang::ConjunctKind::kUpdate: {
          std::uint32_t v = var_index(lang::updated_variable(*c));
          ca.updates.emplace_back(v, cc.compile_top(*c->args[1]));
          constrained[v] = true;
          break;
        }
        case lang::ConjunctKind::kFrame:
          for (const auto& n : c->names) {
            ca.frames.push_back(var_index(n));
            constrained[var_index(n)] = true;
          }
          break;
      }
    }
    if (ca.has_param) cc.unbind(1);
    for (std::size_t v = 0; v < constrained.size(); ++v) {
      if (!constrained[v]) {
        throw SpecError(fmt::format("action {} leaves variable {} unconstrained", a.name, spec_.variables[v]));
      }
    }
    actions_.push_back(std::move(ca));
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  for (auto& ca : actions_) {
    auto label = [&](const ConcreteAction& x) {
      return static_cast<std::uint32_t>(std::lower_bound(alphabet_.begin(), alphabet_.end(), x) - alphabet_.begin());
    };
    if (ca.has_param) {
      for (const auto& d : ca.domain) ca.labels.push_back(label({ca.name, d}));
    } else {
      ca.labels.push_back(label({ca.name, std::nullopt}));
    }
  }
  num_slots_ = std::max<std::size_t>(num_slots_, 1);
}

State CompiledSpec::initial_state() const {
  State s(spec_.variables.size());
  for (std::size_t i = 0; i < spec_.init.size(); ++i) {
    const auto& v = spec_.init[i]->args[0]->text;
    auto idx = std::find(spec_.variables.begin(), spec_.variables.end(), v) - spec_.variables.begin();
    s[static_cast<std::size_t>(idx)] = init_[i]->constant;
  }
  return s;
}

void CompiledSpec::successors(const State& q, std::vector<std::pair<std::uint32_t, State>>& out) const {
  std::vector<Value> bound(num_slots_);
  Ctx ctx{q.data(), bound};
  std::vector<char> assigned(q.size());
  for (const auto& a : actions_) {
    std::size_t rounds = a.has_param ? a.domain.size() : 1;
    for (std::size_t r = 0; r < rounds; ++r) {
      if (a.has_param) bound[a.param_slot] = a.domain[r];
      bool enabled = true;
      for (const auto& g : a.guards) {
        if (!eval_bool(g, ctx)) {
          enabled = false;
          break;
        }
      }
      if (!enabled) continue;
      State next(q.size());
      std::fill(assigned.begin(), assigned.end(), 0);
      for (const auto& [v, rhs] : a.updates) {
        Value x = recomp::eval(rhs, ctx);
        if (assigned[v] && next[v] != x) {
          enabled = false;
          break;
        }
        next[v] = std::move(x);
        assigned[v] = 1;
      }
      if (!enabled) continue;
      for (auto v : a.frames) {
        if (assigned[v] && next[v] != q[v]) {
          enabled = false;
          break;
        }
        next[v] = q[v];
        assigned[v] = 1;
      }
      if (enabled) out.emplace_back(a.labels[r], std::move(next));
    }
  }
}

std::vector<std::pair<ConcreteAction, State>> CompiledSpec::successors(const State& q) const {
  std::vector<std::pair<std::uint32_t, State>> raw;
  successors(q, raw);
  std::vector<std::pair<ConcreteAction, State>> out;
  for (auto& [l, s] : raw) out.emplace_back(alphabet_[l], std::move(s));
  return out;
}

Predicate CompiledSpec::compile(const lang::PropertyDef& p) const {
  for (const auto& v : lang::free_vars(*p.body)) {
    if (!spec_.has_variable(v)) {
      throw SpecError(fmt::format("property {} references variable {} outside the specification", p.name, v));
    }
  }
  std::size_t slots = num_slots_;
  Compiler cc(spec_, [this](const std::string& n) { return constant(n); }, slots);
  Predicate out;
  out.code_ = std::make_unique<Code>(cc.compile_top(*p.body));
  out.slots_ = slots + 1;
  return out;
}

bool CompiledSpec::holds(const Predicate& p, const State& q) const {
  std::vector<Value> bound(p.slots_);
  Ctx ctx{q.data(), bound};
  return eval_bool(*p.code_, ctx);
}

Value CompiledSpec::eval(const lang::Expr& e, const State& q, const std::map<std::string, Value>& bound) const {
  std::size_t slots = 0;
  Compiler cc(spec_, [this](const std::string& n) { return constant(n); }, slots);
  std::vector<Value> values;
  for (const auto& [name, v] : bound) {
    cc.bind(name);
    values.push_back(v);
  }
  Code c = cc.compile_top(e);
  values.resize(std::max(slots, values.size()) + 1);
  Ctx ctx{q.data(), values};
  return recomp::eval(c, ctx);
}

Value CompiledSpec::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) throw SpecError("unknown constant '" + name + "'");
  return it->second;
}

std::string CompiledSpec::render(const State& q) const {
  std::string out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out += ", ";
    out += spec_.variables[i] + " = " + q[i].to_string();
  }
  return out;
}

std::vector<State> init_states(const CompiledSpec& s) { return {s.initial_state()}; }

namespace {

// Hash-consed state storage: each variable has a pool of distinct values
// and a state is the vector of pool ids, stored in one flat array.
class StateStore {
 public:
  explicit StateStore(std::size_t nvars) : nvars_(nvars), pools_(nvars), index_(nvars), slots_(1024, kEmpty) {}

  std::size_t size() const { return count_; }

  std::optional<std::uint32_t> find(const State& s) {
    ids_buf_.resize(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) {
      auto it = index_[v].find(s[v]);
      if (it == index_[v].end()) return std::nullopt;
      ids_buf_[v] = it->second;
    }
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash_ids(ids_buf_.data()) & mask; slots_[i] != kEmpty; i = (i + 1) & mask) {
      if (std::equal(ids_buf_.begin(), ids_buf_.end(), ids_.begin() + static_cast<std::ptrdiff_t>(slots_[i] * nvars_))) {
        return slots_[i];
      }
    }
    return std::nullopt;
  }

  std::pair<std::uint32_t, bool> insert(const State& s) {
    ids_buf_.resize(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) {
      auto [it, fresh] = index_[v].try_emplace(s[v], static_cast<std::uint32_t>(pools_[v].size()));
      if (fresh) pools_[v].push_back(s[v]);
      ids_buf_[v] = it->second;
    }
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash_ids(ids_buf_.data()) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == kEmpty) {
        auto id = static_cast<std::uint32_t>(count_++);
        slots_[i] = id;
        ids_.insert(ids_.end(), ids_buf_.begin(), ids_buf_.end());
        return {id, true};
      }
      if (std::equal(ids_buf_.begin(), ids_buf_.end(), ids_.begin() + static_cast<std::ptrdiff_t>(slots_[i] * nvars_))) {
        return {slots_[i], false};
      }
    }
  }

  State get(std::uint32_t id) const {
    State s(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) s[v] = pools_[v][ids_[id * nvars_ + v]];
    return s;
  }

 private:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  std::size_t hash_ids(const std::uint32_t* p) const {
    std::size_t h = 0x12345;
    for (std::size_t v = 0; v < nvars_; ++v) h = mix(h, p[v] * 0xff51afd7ed558ccdULL);
    return h ^ (h >> 29);
  }

  void grow() {
    std::vector<std::uint32_t> bigger(slots_.size() * 2, kEmpty);
    std::size_t mask = bigger.size() - 1;
    for (std::uint32_t id = 0; id < count_; ++id) {
      std::size_t i = hash_ids(ids_.data() + id * nvars_) & mask;
      while (bigger[i] != kEmpty) i = (i + 1) & mask;
      bigger[i] = id;
    }
    slots_ = std::move(bigger);
  }

  std::size_t nvars_;
  std::vector<std::vector<Value>> pools_;
  std::vector<std::unordered_map<Value, std::uint32_t, ValueHash>> index_;
  std::vector<std::uint32_t> ids_;
  std::vector<std::uint32_t> ids_buf_;
  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
};

constexpr StateId kPiPlaceholder = std::numeric_limits<StateId>::max();

StateGraph explore_impl(const CompiledSpec& s, const Predicate* pred, std::size_t bound, const StopCheck& stop,
                        bool keep_states) {
  StateStore store(s.num_vars());
  StateStore violating(s.num_vars());
  LtsBuilder b(s.alphabet());
  bool has_pi = false;
  auto count = [&] { return store.size() + (has_pi ? 1 : 0); };
  auto check_bound = [&] {
    if (count() > bound) throw StateBoundExceeded(bound);
  };

  State init = s.initial_state();
  std::vector<StateId> initials;
  if (pred && !s.holds(*pred, init)) {
    has_pi = true;
    initials.push_back(kPiPlaceholder);
  } else {
    store.insert(init);
    initials.push_back(0);
  }
  check_bound();

  struct Pending {
    StateId src;
    std::uint32_t label;
    StateId dst;
  };
  std::vector<Pending> edges;
  std::vector<std::pair<std::uint32_t, State>> succ;
  for (std::uint32_t id = 0; id < store.size(); ++id) {
    if ((id & 0x3ff) == 0) stop.poll();
    State q = store.get(id);
    succ.clear();
    s.successors(q, succ);
    for (auto& [label, next] : succ) {
      if (pred) {
        // Known states are safe; violating ones are remembered separately
        // so the predicate runs once per distinct state.
        if (auto known = store.find(next)) {
          edges.push_back({id, label, *known});
          continue;
        }
        if (violating.find(next) || !s.holds(*pred, next)) {
          violating.insert(next);
          has_pi = true;
          edges.push_back({id, label, kPiPlaceholder});
          check_bound();
          continue;
        }
      }
      auto [dst, fresh] = store.insert(next);
      if (fresh) check_bound();
      edges.push_back({id, label, dst});
    }
  }

  StateGraph out;
  b.add_states(store.size());
  std::optional<StateId> pi;
  if (has_pi) {
    pi = b.add_state();
    b.set_pi(*pi);
  }
  for (const auto& e : edges) b.add_edge(e.src, e.label, e.dst == kPiPlaceholder ? *pi : e.dst);
  edges.clear();
  edges.shrink_to_fit();
  for (StateId i : initials) b.add_initial(i == kPiPlaceholder ? *pi : i);
  out.lts = std::move(b).build();
  if (keep_states) {
    out.states.reserve(store.size());
    for (std::uint32_t id = 0; id < store.size(); ++id) out.states.push_back(store.get(id));
  }
  return out;
}

}  // namespace

Lts to_lts(const CompiledSpec& s, std::size_t bound, const StopCheck& stop) {
  return explore_impl(s, nullptr, bound, stop, false).lts;
}

Lts to_lts(const lang::SpecAst& s, std::size_t bound, const StopCheck& stop) {
  return to_lts(CompiledSpec(s), bound, stop);
}

Lts err_lts(const CompiledSpec& s, const lang::PropertyDef& p, std::size_t bound, const StopCheck& stop) {
  Predicate pred = s.compile(p);
  return explore_impl(s, &pred, bound, stop, false).lts;
}

Lts err_lts(const lang::SpecAst& s, const lang::PropertyDef& p, std::size_t bound, const StopCheck& stop) {
  return err_lts(CompiledSpec(s), p, bound, stop);
}

std::vector<ConcreteAction> concrete_alphabet(const lang::SpecAst& s) { return CompiledSpec(s).alphabet(); }

StateGraph explore(const CompiledSpec& s, const lang::PropertyDef* p, std::size_t bound, const StopCheck& stop) {
  if (!p) return explore_impl(s, nullptr, bound, stop, true);
  Predicate pred = s.compile(*p);
  return explore_impl(s, &pred, bound, stop, true);
}

InvariantCheck check_invariant(const CompiledSpec& s, const lang::PropertyDef& p, std::size_t bound,
                               const StopCheck& stop) {
  Predicate pred = s.compile(p);
  StateStore store(s.num_vars());
  std::vector<std::uint32_t> parent, via;
  InvariantCheck out;
  auto trace_to = [&](std::uint32_t id, std::optional<std::uint32_t> last) {
    std::vector<ConcreteAction> t;
    if (last) t.push_back(s.alphabet()[*last]);
    for (std::uint32_t x = id; x != 0; x = parent[x]) t.push_back(s.alphabet()[via[x]]);
    std::reverse(t.begin(), t.end());
    return t;
  };
  State init = s.initial_state();
  if (!s.holds(pred, init)) {
    out.holds = false;
    out.states = 1;
    return out;
  }
  store.insert(init);
  parent.push_back(0);
  via.push_back(0);
  std::vector<std::pair<std::uint32_t, State>> succ;
  for (std::uint32_t id = 0; id < store.size(); ++id) {
    if ((id & 0x3ff) == 0) stop.poll();
    succ.clear();
    s.successors(store.get(id), succ);
    for (auto& [label, next] : succ) {
      if (store.find(next)) continue;
      if (!s.holds(pred, next)) {
        out.holds = false;
        out.trace = trace_to(id, label);
        out.states = store.size() + 1;
        return out;
      }
      auto [dst, fresh] = store.insert(next);
      if (fresh) {
        if (store.size() > bound) throw StateBoundExceeded(bound);
        parent.push_back(id);
        via.push_back(label);
      }
    }
  }
  out.states = store.size();
  return out;
}

std::string dump(const StateGraph& g, const CompiledSpec& s) {
  std::string out = dump(g.lts);
  for (std::size_t i = 0; i < g.states.size(); ++i) out += fmt::format("state {} {}\n", i, s.render(g.states[i]));
  return out;
}

}  // namespace recomp
