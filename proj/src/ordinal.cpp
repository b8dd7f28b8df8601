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

#include "ordinal.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace hdf {

OrderMap::OrderMap(std::vector<Ord> values, Ord dst_bound)
    : values_(std::move(values)), dst_bound_(dst_bound) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= dst_bound_) {
      reject("order map value " + std::to_string(values_[i]) + " at " +
             std::to_string(i) + " is not below " + std::to_string(dst_bound_));
    }
    if (i > 0 && values_[i - 1] >= values_[i]) {
      reject("order map is not strictly increasing at " + std::to_string(i));
    }
  }
}

OrderMap OrderMap::identity(Ord bound) {
  std::vector<Ord> v(bound);
  for (Ord i = 0; i < bound; ++i) v[i] = i;
  return OrderMap(std::move(v), bound);
}

bool OrderMap::is_identity() const {
  for (Ord i = 0; i < src_bound(); ++i) {
    if (values_[i] != i) return false;
  }
  return true;
}

bool OrderMap::in_range(Ord y) const {
  return std::binary_search(values_.begin(), values_.end(), y);
}

std::optional<Ord> OrderMap::preimage(Ord y) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), y);
  if (it == values_.end() || *it != y) return std::nullopt;
  return static_cast<Ord>(it - values_.begin());
}

std::string OrderMap::to_string() const {
  std::ostringstream out;
  out << '{';
  for (Ord i = 0; i < src_bound(); ++i) {
    if (i) out << ", ";
    out << i << "->" << values_[i];
  }
  out << "} (" << src_bound() << "->" << dst_bound_ << ')';
  return out.str();
}

OrderMap compose(const OrderMap& f, const OrderMap& g) {
  if (g.dst_bound() != f.src_bound()) {
    reject("compose: bound mismatch " + std::to_string(g.dst_bound()) +
           " vs " + std::to_string(f.src_bound()));
  }
  std::vector<Ord> v(g.src_bound());
  for (Ord i = 0; i < g.src_bound(); ++i) v[i] = f(g(i));
  return OrderMap(std::move(v), f.dst_bound());
}

OrderMap restrict(const OrderMap& f, Ord bound) {
  if (bound > f.src_bound()) {
    reject("restrict: bound " + std::to_string(bound) + " exceeds source " +
           std::to_string(f.src_bound()));
  }
  std::vector<Ord> v(f.values().begin(), f.values().begin() + bound);
  return OrderMap(std::move(v), f.dst_bound());
}

std::optional<Ord> critical_point(const OrderMap& f) {
  for (Ord i = 0; i < f.src_bound(); ++i) {
    if (f(i) != i) return i;
  }
  return std::nullopt;
}

std::vector<Ord> image(const OrderMap& f, std::span<const Ord> xs) {
  std::vector<Ord> out;
  out.reserve(xs.size());
  for (Ord x : xs) {
    if (x >= f.src_bound()) {
      reject("image: ordinal " + std::to_string(x) + " outside source bound");
    }
    out.push_back(f(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Ord> preimage(const OrderMap& f, std::span<const Ord> xs) {
  std::vector<Ord> out;
  for (Ord x : xs) {
    if (auto p = f.preimage(x)) out.push_back(*p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void PairGraph::insert(OrdPair key, Color c) {
  auto [it, fresh] = entries_.emplace(key, c);
  if (!fresh && it->second != c) {
    reject("pair graph is not functional at <" + std::to_string(key.first) +
           "," + std::to_string(key.second) + ">");
  }
}

std::optional<Color> PairGraph::at(OrdPair key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

PairGraph transport(const OrderMap& f, const PairGraph& p) {
  PairGraph::Entries out;
  for (const auto& [key, c] : p.entries()) {
    if (key.first >= f.src_bound() || key.second >= f.src_bound()) {
      reject("transport: pair <" + std::to_string(key.first) + "," +
             std::to_string(key.second) + "> outside source bound " +
             std::to_string(f.src_bound()));
    }
    out.emplace(OrdPair{f(key.first), f(key.second)}, c);
  }
  return PairGraph(std::move(out));
}

PairGraph pullback(const OrderMap& f, const PairGraph& p) {
  PairGraph::Entries out;
  for (const auto& [key, c] : p.entries()) {
    auto a = f.preimage(key.first);
    auto b = f.preimage(key.second);
    if (a && b) out.emplace(OrdPair{*a, *b}, c);
  }
  return PairGraph(std::move(out));
}

}  // namespace hdf
