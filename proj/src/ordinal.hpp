// Copyright 2026 The hdforce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Ordinals below a level width are plain naturals. An OrderMap is a strictly
// increasing table theta_src -> theta_dst; a PairGraph is a finite colored
// function on ordinal pairs, transported and pulled back pointwise.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hdf {

using Ord = std::uint32_t;
using Color = std::uint32_t;

class OrderMap {
 public:
  OrderMap() = default;

  // Rejects tables that are not strictly increasing or leave [0, dst_bound).
  OrderMap(std::vector<Ord> values, Ord dst_bound);

  static OrderMap identity(Ord bound);

  Ord src_bound() const { return static_cast<Ord>(values_.size()); }
  Ord dst_bound() const { return dst_bound_; }
  const std::vector<Ord>& values() const { return values_; }

  Ord operator()(Ord x) const { return values_.at(x); }

  bool is_identity() const;
  bool in_range(Ord y) const;
  // Inverse image of a single ordinal, if it lies in the range.
  std::optional<Ord> preimage(Ord y) const;

  std::string to_string() const;

  friend bool operator==(const OrderMap&, const OrderMap&) = default;
  friend auto operator<=>(const OrderMap&, const OrderMap&) = default;

 private:
  std::vector<Ord> values_;
  Ord dst_bound_ = 0;
};

// result(i) = f(g(i)); requires g.dst_bound() == f.src_bound().
OrderMap compose(const OrderMap& f, const OrderMap& g);

OrderMap restrict(const OrderMap& f, Ord bound);

// Least point moved by f, none for an identity.
std::optional<Ord> critical_point(const OrderMap& f);

// Sorted images/preimages of finite ordinal sets.
std::vector<Ord> image(const OrderMap& f, std::span<const Ord> xs);
std::vector<Ord> preimage(const OrderMap& f, std::span<const Ord> xs);

struct OrdPair {
  Ord first = 0;
  Ord second = 0;
  friend bool operator==(const OrdPair&, const OrdPair&) = default;
  friend auto operator<=>(const OrdPair&, const OrdPair&) = default;
};

class PairGraph {
 public:
  using Entries = std::map<OrdPair, Color>;

  PairGraph() = default;
  explicit PairGraph(Entries entries) : entries_(std::move(entries)) {}

  // Rejects a second entry on an existing pair.
  void insert(OrdPair key, Color c);

  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::optional<Color> at(OrdPair key) const;
  bool contains(OrdPair key) const { return entries_.count(key) != 0; }

  friend bool operator==(const PairGraph&, const PairGraph&) = default;
  friend auto operator<=>(const PairGraph&, const PairGraph&) = default;

 private:
  Entries entries_;
};

// <<a,g>,c> |-> <<f(a),f(g)>,c>. Every ordinal must be below f.src_bound().
PairGraph transport(const OrderMap& f, const PairGraph& p);

// Entries of p whose coordinates both lie in rng(f), pulled back through f.
PairGraph pullback(const OrderMap& f, const PairGraph& p);

}  // namespace hdf
