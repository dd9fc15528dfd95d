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

#include "recomp/enumerator/value.hpp"

#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "recomp/errors.hpp"

namespace recomp {

struct Value::Node {
  std::size_t hash = 0;
  std::string atom;
  std::vector<std::string> fields;
  std::vector<Value> items;
  std::vector<Value> values;
};

namespace {

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::kBool: return "boolean";
    case Value::Kind::kInt: return "integer";
    case Value::Kind::kAtom: return "string";
    case Value::Kind::kSet: return "set";
    case Value::Kind::kRecord: return "record";
    case Value::Kind::kFunc: return "function";
    case Value::Kind::kTuple: return "tuple";
  }
  return "?";
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::vector<Value> kNoValues;
const std::vector<std::string> kNoFields;

}  // namespace

Value Value::make(Kind k, std::shared_ptr<Node> node) {
  std::size_t h = mix(0, static_cast<std::size_t>(k) + 1);
  h = mix(h, std::hash<std::string>{}(node->atom));
  for (const auto& f : node->fields) h = mix(h, std::hash<std::string>{}(f));
  for (const auto& v : node->items) h = mix(h, v.hash());
  for (const auto& v : node->values) h = mix(h, v.hash());
  node->hash = h;
  return Value(k, 0, std::move(node));
}

Value Value::boolean(bool b) { return Value(Kind::kBool, b ? 1 : 0, nullptr); }
Value Value::integer(std::int64_t n) { return Value(Kind::kInt, n, nullptr); }

Value Value::atom(std::string s) {
  auto n = std::make_shared<Node>();
  n->atom = std::move(s);
  return make(Kind::kAtom, std::move(n));
}

Value Value::set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  auto n = std::make_shared<Node>();
  n->items = std::move(elems);
  return make(Kind::kSet, std::move(n));
}

Value Value::tuple(std::vector<Value> items) {
  auto n = std::make_shared<Node>();
  n->items = std::move(items);
  return make(Kind::kTuple, std::move(n));
}

Value Value::record(std::vector<std::pair<std::string, Value>> fields) {
  std::sort(fields.begin(), fields.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = std::make_shared<Node>();
  for (auto& [f, v] : fields) {
    if (!n->fields.empty() && n->fields.back() == f) throw EvalError("duplicate record field '" + f + "'");
    n->fields.push_back(std::move(f));
    n->items.push_back(std::move(v));
  }
  return make(Kind::kRecord, std::move(n));
}

Value Value::func(std::vector<std::pair<Value, Value>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Value> keys, values;
  for (auto& [k, v] : entries) {
    if (!keys.empty() && keys.back() == k) throw EvalError("duplicate function key " + k.to_string());
    keys.push_back(std::move(k));
    values.push_back(std::move(v));
  }
  return func_sorted(std::move(keys), std::move(values));
}

Value Value::func_sorted(std::vector<Value> keys, std::vector<Value> values) {
  auto n = std::make_shared<Node>();
  n->items = std::move(keys);
  n->values = std::move(values);
  return make(Kind::kFunc, std::move(n));
}

bool Value::as_bool() const {
  if (kind_ != Kind::kBool) throw EvalError(fmt::format("expected boolean, got {} {}", kind_name(kind_), to_string()));
  return scalar_ != 0;
}

std::int64_t Value::as_int() const {
  if (kind_ != Kind::kInt) throw EvalError(fmt::format("expected integer, got {} {}", kind_name(kind_), to_string()));
  return scalar_;
}

const std::string& Value::as_atom() const {
  if (kind_ != Kind::kAtom) throw EvalError(fmt::format("expected string, got {} {}", kind_name(kind_), to_string()));
  return node_->atom;
}

const std::vector<Value>& Value::items() const { return node_ ? node_->items : kNoValues; }
const std::vector<Value>& Value::values() const { return node_ ? node_->values : kNoValues; }
const std::vector<std::string>& Value::fields() const { return node_ ? node_->fields : kNoFields; }

bool Value::contains(const Value& v) const {
  if (kind_ != Kind::kSet) throw EvalError(fmt::format("membership test on {} {}", kind_name(kind_), to_string()));
  return std::binary_search(node_->items.begin(), node_->items.end(), v);
}

const Value& Value::apply(const Value& arg) const {
  switch (kind_) {
    case Kind::kFunc: {
      auto it = std::lower_bound(node_->items.begin(), node_->items.end(), arg);
      if (it == node_->items.end() || *it != arg) {
        throw EvalError(fmt::format("function applied outside its domain: {}[{}]", to_string(), arg.to_string()));
      }
      return node_->values[static_cast<std::size_t>(it - node_->items.begin())];
    }
    case Kind::kTuple: {
      std::int64_t i = arg.as_int();
      if (i < 1 || i > static_cast<std::int64_t>(node_->items.size())) {
        throw EvalError(fmt::format("tuple index {} out of range in {}", i, to_string()));
      }
      return node_->items[static_cast<std::size_t>(i - 1)];
    }
    case Kind::kRecord:
      return field(arg.as_atom());
    default:
      throw EvalError(fmt::format("cannot apply {} {}", kind_name(kind_), to_string()));
  }
}

const Value& Value::field(std::string_view name) const {
  if (kind_ != Kind::kRecord) throw EvalError(fmt::format("field access .{} on {}", name, to_string()));
  auto it = std::lower_bound(node_->fields.begin(), node_->fields.end(), name);
  if (it == node_->fields.end() || *it != name) throw EvalError(fmt::format("record {} has no field {}", to_string(), name));
  return node_->items[static_cast<std::size_t>(it - node_->fields.begin())];
}

Value Value::except(const Value& arg, Value v) const {
  if (!node_) throw EvalError(fmt::format("EXCEPT on {} {}", kind_name(kind_), to_string()));
  auto n = std::make_shared<Node>(*node_);
  switch (kind_) {
    case Kind::kFunc: {
      auto it = std::lower_bound(n->items.begin(), n->items.end(), arg);
      if (it == n->items.end() || *it != arg) {
        throw EvalError(fmt::format("EXCEPT outside the domain: {} at {}", to_string(), arg.to_string()));
      }
      n->values[static_cast<std::size_t>(it - n->items.begin())] = std::move(v);
      break;
    }
    case Kind::kTuple: {
      std::int64_t i = arg.as_int();
      if (i < 1 || i > static_cast<std::int64_t>(n->items.size())) {
        throw EvalError(fmt::format("EXCEPT tuple index {} out of range", i));
      }
      n->items[static_cast<std::size_t>(i - 1)] = std::move(v);
      break;
    }
    case Kind::kRecord: {
      const std::string& f = arg.as_atom();
      auto it = std::lower_bound(n->fields.begin(), n->fields.end(), f);
      if (it == n->fields.end() || *it != f) throw EvalError("EXCEPT on missing record field " + f);
      n->items[static_cast<std::size_t>(it - n->fields.begin())] = std::move(v);
      break;
    }
    default:
      throw EvalError(fmt::format("EXCEPT on {} {}", kind_name(kind_), to_string()));
  }
  return make(kind_, std::move(n));
}

std::size_t Value::hash() const {
  if (node_) return node_->hash;
  return mix(static_cast<std::size_t>(kind_) + 1, static_cast<std::size_t>(scalar_));
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  if (!a.node_ || !b.node_) return a.scalar_ == b.scalar_ && a.node_ == b.node_;
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return a.node_->atom == b.node_->atom && a.node_->fields == b.node_->fields && a.node_->items == b.node_->items &&
         a.node_->values == b.node_->values;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (!a.node_) return a.scalar_ <=> b.scalar_;
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.atom <=> y.atom; c != 0) return c;
  if (auto c = x.fields <=> y.fields; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(x.items.begin(), x.items.end(), y.items.begin(), y.items.end());
      c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(x.values.begin(), x.values.end(), y.values.begin(), y.values.end());
}

std::string Value::to_string() const {
  auto join = [](const std::vector<Value>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) out += ", ";
      out += vs[i].to_string();
    }
    return out;
  };
  switch (kind_) {
    case Kind::kBool:
      return scalar_ ? "TRUE" : "FALSE";
    case Kind::kInt:
      return std::to_string(scalar_);
    case Kind::kAtom:
      return "\"" + node_->atom + "\"";
    case Kind::kSet:
      return "{" + join(node_->items) + "}";
    case Kind::kTuple:
      return "<<" + join(node_->items) + ">>";
    case Kind::kRecord: {
      std::string out = "[";
      for (std::size_t i = 0; i < node_->fields.size(); ++i) {
        if (i) out += ", ";
        out += node_->fields[i] + " |-> " + node_->items[i].to_string();
      }
      return out + "]";
    }
    case Kind::kFunc: {
      if (node_->items.empty()) return "<<>>";
      std::string out = "(";
      for (std::size_t i = 0; i < node_->items.size(); ++i) {
        if (i) out += " @@ ";
        out += node_->items[i].to_string() + " :> " + node_->values[i].to_string();
      }
      return out + ")";
    }
  }
  return "?";
}

}  // namespace recomp
