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


#include <functional>

#include "doctest.h"
#include "errors.hpp"
#include "ordinal.hpp"

using namespace hdf;

namespace {

OrderMap m(std::vector<Ord> v, Ord dst) { return OrderMap(std::move(v), dst); }

PairGraph g(std::initializer_list<std::tuple<Ord, Ord, Color>> xs) {
  PairGraph p;
  for (auto [a, b, c] : xs) p.insert({a, b}, c);
  return p;
}

// All strictly increasing maps n -> k.
std::vector<OrderMap> all_maps(Ord n, Ord k) {
  std::vector<OrderMap> out;
  std::vector<Ord> cur;
  std::function<void(Ord)> rec = [&](Ord next) {
    if (cur.size() == n) {
      out.push_back(m(cur, k));
      return;
    }
    for (Ord v = next; v < k; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("order maps reject bad tables") {
  CHECK_THROWS_AS(m({1, 1}, 3), Error);
  CHECK_THROWS_AS(m({0, 3}, 3), Error);
  CHECK_NOTHROW(m({}, 0));
}

TEST_CASE("compose") {
  const OrderMap f1 = m({2, 3}, 4), f0 = m({1}, 2);
  CHECK(compose(f1, f0) == m({3}, 4));
  CHECK(compose(OrderMap::identity(4), m({1}, 4)) == m({1}, 4));
  CHECK_THROWS_AS(compose(f1, m({0}, 3)), Error);
}

TEST_CASE("compose is associative on small bounds") {
  int triples = 0;
  for (Ord a = 0; a <= 4; ++a) {
    for (Ord b = a; b <= 4; ++b) {
      for (Ord c = b; c <= 4; ++c) {
        for (Ord d = c; d <= 4; ++d) {
          for (const auto& h : all_maps(a, b)) {
            for (const auto& gg : all_maps(b, c)) {
              for (const auto& f : all_maps(c, d)) {
                CHECK(compose(f, compose(gg, h)) == compose(compose(f, gg), h));
                ++triples;
              }
            }
          }
        }
      }
    }
  }
  CHECK(triples > 100);
}

TEST_CASE("transport and pullback") {
  const OrderMap f1 = m({2, 3}, 4), f0 = m({1}, 2);
  const PairGraph p = g({{1, 0, 5}});
  CHECK(transport(OrderMap::identity(2), p) == p);
  CHECK(transport(f1, p) == g({{3, 2, 5}}));
  CHECK_THROWS_AS(transport(f0, g({{2, 0, 1}})), Error);

  CHECK(pullback(f1, g({{3, 1, 7}})).empty());
  CHECK(pullback(f1, g({{3, 2, 7}})) == g({{1, 0, 7}}));
  CHECK(pullback(OrderMap::identity(2), g({{1, 0, 1}, {3, 1, 2}})) ==
        g({{1, 0, 1}}));
}

TEST_CASE("pullback inverts transport, sizes behave") {
  for (const auto& f : all_maps(3, 5)) {
    for (Color c = 0; c < 2; ++c) {
      PairGraph p = g({{1, 0, c}, {2, 0, 1}, {2, 1, c + 3}});
      PairGraph t = transport(f, p);
      CHECK(t.size() == p.size());
      CHECK(pullback(f, t) == p);
      PairGraph wide = g({{4, 0, 1}, {3, 2, 1}, {1, 0, 2}});
      CHECK(pullback(f, wide).size() <= wide.size());
    }
  }
}

TEST_CASE("pair graphs are functional") {
  PairGraph p;
  p.insert({1, 0}, 2);
  CHECK_NOTHROW(p.insert({1, 0}, 2));
  CHECK_THROWS_AS(p.insert({1, 0}, 3), Error);
}

TEST_CASE("restrict and critical point") {
  const OrderMap f1 = m({2, 3}, 4);
  CHECK(restrict(f1, 2) == f1);
  CHECK(restrict(f1, 1) == m({2}, 4));
  CHECK_THROWS_AS(restrict(f1, 3), Error);
  CHECK_FALSE(critical_point(OrderMap::identity(4)).has_value());
  CHECK(critical_point(m({1}, 2)) == 0u);
  CHECK(critical_point(m({0, 2}, 3)) == 1u);
}
