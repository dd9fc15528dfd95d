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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace recomp {

/// Immutable value of the specification language. Scalars are stored
/// inline; compound values share a node that caches its hash. Sets are kept
/// sorted and duplicate-free, records sorted by field name and functions
/// sorted by key, so equality and ordering are structural.
class Value {
 public:
  enum class Kind : std::uint8_t { kBool, kInt, kAtom, kSet, kRecord, kFunc, kTuple };

  Value() = default;

  static Value boolean(bool b);
  static Value integer(std::int64_t n);
  static Value atom(std::string s);
  static Value set(std::vector<Value> elems);
  static Value tuple(std::vector<Value> items);
  static Value record(std::vector<std::pair<std::string, Value>> fields);
  static Value func(std::vector<std::pair<Value, Value>> entries);
  /// `keys` must already be sorted and unique.
  static Value func_sorted(std::vector<Value> keys, std::vector<Value> values);

  Kind kind() const { return kind_; }
  bool as_bool() const;
  std::int64_t as_int() const;
  const std::string& as_atom() const;

  /// Set elements, tuple items, function keys or record values.
  const std::vector<Value>& items() const;
  /// Function values, parallel to items().
  const std::vector<Value>& values() const;
  /// Record field names, parallel to items().
  const std::vector<std::string>& fields() const;
  std::size_t size() const { return items().size(); }

  bool contains(const Value& v) const;
  const Value& apply(const Value& arg) const;
  const Value& field(std::string_view name) const;
  Value except(const Value& arg, Value v) const;

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  struct Node;
  Value(Kind k, std::int64_t scalar, std::shared_ptr<const Node> node)
      : kind_(k), scalar_(scalar), node_(std::move(node)) {}
  static Value make(Kind k, std::shared_ptr<Node> node);

  Kind kind_ = Kind::kBool;
  std::int64_t scalar_ = 0;
  std::shared_ptr<const Node> node_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

}  // namespace recomp
