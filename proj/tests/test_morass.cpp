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


#include <set>

#include "doctest.h"
#include "errors.hpp"
#include "morass.hpp"

using namespace hdf;

namespace {

// Family oracle for successor-only data: walk every word over {id, f}.
std::set<std::vector<Ord>> words(const MorassData& d, unsigned a, unsigned b) {
  std::set<std::vector<Ord>> out;
  const unsigned len = b - a;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    std::vector<Ord> v;
    for (Ord x = 0; x < d.thetas[a]; ++x) {
      Ord y = x;
      for (unsigned k = 0; k < len; ++k) {
        if (mask >> k & 1) y = std::get<SuccessorStep>(d.steps[a + k]).f[y];
      }
      v.push_back(y);
    }
    out.insert(v);
  }
  return out;
}

std::set<std::vector<Ord>> as_set(const std::vector<OrderMap>& fam) {
  std::set<std::vector<Ord>> out;
  for (const auto& f : fam) out.insert(f.values());
  return out;
}

MorassData m2_data() { return build_doubling(2).data(); }

// M2 followed by an amalgam level that copies level 2.
MorassData m2_copy_data() {
  MorassData d = m2_data();
  d.height = 3;
  d.thetas.push_back(4);
  d.steps.emplace_back(AmalgamStep{{{0, 1, 2, 3}}});
  return d;
}

}  // namespace

TEST_CASE("doubling builder") {
  Morass m2 = build_doubling(2);
  CHECK(m2.data().thetas == std::vector<Ord>{1, 2, 4});
  CHECK(m2.split(0) == OrderMap({1}, 2));
  CHECK(m2.split(1) == OrderMap({2, 3}, 4));
  CHECK(validate(m2).all_pass());
  Morass m0 = build_doubling(0);
  CHECK(m0.data().thetas == std::vector<Ord>{1});
  CHECK(m0.data().steps.empty());
  CHECK(build_doubling(3).top_width() == 8);
}

TEST_CASE("families") {
  Morass m2 = build_doubling(2);
  CHECK(as_set(m2.family(1, 2)) ==
        std::set<std::vector<Ord>>{{0, 1}, {2, 3}});
  CHECK(as_set(m2.family(0, 2)) ==
        std::set<std::vector<Ord>>{{0}, {1}, {2}, {3}});
  CHECK(as_set(m2.family(0, 1)) == std::set<std::vector<Ord>>{{0}, {1}});
  CHECK_THROWS_AS(m2.family(1, 1), Error);
  CHECK_THROWS_AS(m2.family(2, 1), Error);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Morass m = build_random(4, 12, seed);
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = a + 1; b <= 4; ++b) {
        CHECK(as_set(m.family(a, b)) == words(m.data(), a, b));
      }
    }
  }
}

TEST_CASE("tree order and pi on M2") {
  Morass m2 = build_doubling(2);
  CHECK(m2.precedes({0, 0}, {2, 3}));
  CHECK(m2.precedes({1, 1}, {2, 3}));
  CHECK_FALSE(m2.precedes({1, 0}, {1, 1}));
  CHECK_FALSE(m2.precedes({1, 0}, {2, 3}));
  CHECK(m2.pi({1, 1}, {2, 3}) == OrderMap({2, 3}, 4));
  CHECK(m2.pi({0, 0}, {2, 3}) == OrderMap({3}, 4));
  CHECK(m2.pi({1, 0}, {2, 0}).values() == std::vector<Ord>{0});
  CHECK_THROWS_AS(m2.pi({1, 0}, {2, 3}), Error);
  CHECK(m2.level_predecessor({2, 3}, 1) == TreeNode{1, 1});
  CHECK(m2.level_predecessor({2, 3}, 0) == TreeNode{0, 0});
  CHECK(m2.level_predecessor({2, 0}, 1) == TreeNode{1, 0});
}

TEST_CASE("branch count") {
  CHECK(build_doubling(2).branch_count() == 4);
  CHECK(build_doubling(0).branch_count() == 1);
  for (unsigned h = 0; h <= 8; ++h) {
    CHECK(build_doubling(h).branch_count() == (1ull << h));
  }
}

TEST_CASE("validator flags broken data") {
  MorassData bad = m2_data();
  std::get<SuccessorStep>(bad.steps[1]).f = {2, 1};
  Report r = validate(bad);
  CHECK(r.failed("P0b"));
  CHECK_THROWS_AS(build_custom(bad), Error);

  MorassData flat = m2_data();
  std::get<SuccessorStep>(flat.steps[1]).f = {0, 1};
  r = validate(flat);
  CHECK(r.failed("P3"));
  CHECK(r.failed("P5"));
  CHECK_FALSE(r.failed("P2"));
}

TEST_CASE("successor data is the unique covering split") {
  MorassData d = successor_data({0, 1, 2});
  CHECK(d.thetas == std::vector<Ord>{1, 2, 3, 4});
  CHECK(std::get<SuccessorStep>(d.steps[1]).f == std::vector<Ord>{0, 2});
  CHECK(validate(d).all_pass());
  CHECK_THROWS_AS(successor_data({1}), Error);
}

TEST_CASE("random morasses") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Morass m = build_random(4, 10, seed);
    CHECK(validate(m).all_pass());
    CHECK(m.data() == build_random(4, 10, seed).data());
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(build_random(1, 4, seed).top_width() >= 2);
  }
}

TEST_CASE("amalgam copy level") {
  Morass m = build_custom(m2_copy_data());
  CHECK(validate(m).all_pass());
  CHECK(check_tree_lemmas(m).all_pass());
  CHECK(m.family(2, 3).size() == 1);
  CHECK(as_set(m.family(0, 3)) == as_set(m.family(0, 2)));
  CHECK(m.branch_count() == 4);
  CHECK(m.pi({2, 1}, {3, 1}).values() == std::vector<Ord>{0, 1});
}

TEST_CASE("amalgam mutations") {
  // Two different maps from the level below: not directed.
  MorassData nd = build_doubling(1).data();
  nd.height = 2;
  nd.thetas.push_back(3);
  nd.steps.emplace_back(AmalgamStep{{{0, 1}, {0, 2}}});
  Report r = validate(nd);
  CHECK(r.failed("P4"));
  CHECK_FALSE(r.failed("P2"));
  CHECK_FALSE(r.failed("P5"));

  // A map from level 0 that does not factor through level 1.
  MorassData nf = build_doubling(1).data();
  nf.height = 2;
  nf.thetas.push_back(3);
  nf.steps.emplace_back(AmalgamStep{{{0, 1}, {2}}});
  CHECK(validate(nf).failed("P2"));

  // Coherence: two maps reach 2 from the same point through different pasts.
  MorassData nc = build_doubling(1).data();
  nc.height = 2;
  nc.thetas.push_back(3);
  nc.steps.emplace_back(AmalgamStep{{{1, 2}, {0, 2}}});
  CHECK(validate(nc).failed("coherence"));
}

TEST_CASE("tree lemmas on doubling morasses") {
  for (unsigned h = 0; h <= 4; ++h) {
    Report r = check_tree_lemmas(build_doubling(h));
    CHECK(r.all_pass());
  }
}
