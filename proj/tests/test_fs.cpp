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


#include "doctest.h"
#include "errors.hpp"
#include "fs_system.hpp"

using namespace hdf;

namespace {

FsCondition c(std::initializer_list<std::pair<const Ord, Color>> xs) {
  return FsCondition(xs);
}

Morass m2() { return build_doubling(2); }

Morass m2_copy() {
  MorassData d = build_doubling(2).data();
  d.height = 3;
  d.thetas.push_back(4);
  d.steps.emplace_back(AmalgamStep{{{0, 1, 2, 3}}});
  return Morass(d);
}

}  // namespace

TEST_CASE("fixtures on M2 and on an amalgam copy") {
  for (const Morass& m : {m2(), m2_copy()}) {
    for (const char* name : {"subset", "harmonized-cohen"}) {
      auto s = make_fs_fixture(name, m);
      FsUniverse u(*s);
      Report r = validate_fs(u);
      INFO(name);
      CHECK(r.all_pass());
      CHECK(r.clauses.size() == 9);
    }
  }
  auto s = make_fs_fixture("subset", m2());
  FsUniverse u(*s);
  CHECK(u.elements(4).size() == 16);
  CHECK_THROWS_AS(make_fs_fixture("nope", m2()), Error);
}

TEST_CASE("plain Cohen fails FS6 on a split pair") {
  auto s = make_fs_fixture("plain-cohen", m2());
  FsUniverse u(*s);
  Report r = validate_fs(u);
  CHECK(r.failed("FS6b"));
  // The witness q = {0->0, 1->1} disagrees with itself along f_0(0) = 1.
  CHECK(r.find("FS6b")->witness.find("{0->0,1->1}") != std::string::npos);
  // No single condition reduces it for both the inclusion and sigma_0.
  const auto& P = u.poset(1);
  const auto& Q = u.poset(2);
  std::vector<std::size_t> incl, sig;
  for (const auto& p : u.elements(1)) {
    incl.push_back(*u.index(2, p));
    sig.push_back(*u.index(2, s->sigma({0, 0}, {1, 1}, p)));
  }
  const auto q = *u.index(2, c({{0, 0}, {1, 1}}));
  CHECK(find_reduction({incl}, P, Q, q).has_value());
  CHECK(find_reduction({sig}, P, Q, q).has_value());
  CHECK_FALSE(find_reduction({incl, sig}, P, Q, q).has_value());
}

TEST_CASE("star traces on M2") {
  auto sub = make_fs_fixture("subset", m2());
  SUBCASE("empty condition") {
    auto d = star(*sub, {});
    CHECK(d.stages.size() == 1);
    CHECK(d.supp == std::vector<unsigned>{0});
    CHECK(d.pstar.size() == 3);
  }
  SUBCASE("singleton at the top") {
    auto d = star(*sub, c({{3, 0}}));
    REQUIRE(d.stages.size() == 1);
    CHECK(d.stages[0].nu == 3);
    CHECK(d.stages[0].t == TreeNode{2, 3});
    CHECK(d.stages[0].values.at(1) == c({{1, 0}}));
    CHECK(d.stages[0].values.at(0) == c({{0, 0}}));
    CHECK(d.supp == std::vector<unsigned>{0});
  }
  SUBCASE("singleton at the bottom") {
    CHECK(support(*sub, c({{0, 0}})) == std::vector<unsigned>{0});
  }
  SUBCASE("a split condition needs two stages") {
    // {0, 2}: 0 is not in the range of pi_<1,0><2,2> = {0->2}, so gamma_0 = 2,
    // then e_1({0,2}) = {0} drops to level 0.
    auto d = star(*sub, c({{0, 0}, {2, 0}}));
    REQUIRE(d.stages.size() == 2);
    CHECK(d.stages[0].gamma == 2);
    CHECK(d.stages[1].p == c({{0, 0}}));
    CHECK(d.stages[1].gamma == 0);
    CHECK(d.supp == std::vector<unsigned>{0, 2});
    CHECK(d.pstar.at(2) == c({{0, 0}, {2, 0}}));
    CHECK(d.pstar.at(1) == c({{0, 0}}));
    CHECK(d.pstar.at(0) == c({{0, 0}}));
  }
  CHECK_THROWS_AS(star(*sub, c({{5, 0}})), Error);
}

TEST_CASE("supports stay inside the levels and gammas decrease") {
  for (const char* name : {"subset", "harmonized-cohen", "plain-cohen"}) {
    auto s = make_fs_fixture(name, build_doubling(3));
    FsUniverse u(*s);
    for (const auto& p : u.elements(u.top())) {
      auto d = star(*s, p);
      for (std::size_t i = 1; i < d.stages.size(); ++i) {
        CHECK(d.stages[i].gamma < d.stages[i - 1].gamma);
      }
      CHECK(d.supp.front() == 0);
      CHECK(d.supp.back() <= 3);
      for (const auto& [a, q] : d.pstar) {
        CHECK(u.index(s->morass().theta(a), q).has_value());
      }
    }
  }
}

TEST_CASE("star-level compatibility sweeps") {
  auto harm = make_fs_fixture("harmonized-cohen", m2());
  FsUniverse u(*harm);
  auto sw = thm32_sweep(u);
  CHECK(sw.counterexamples == 0);
  CHECK(sw.hypothesis_true > 0);
  const auto& top = u.elements(u.top());
  for (const auto& p : top) {
    CHECK(check_thm32(u, p, p).verdict == Thm32Verdict::kConfirmed);
  }
  auto sub = make_fs_fixture("subset", m2());
  FsUniverse us(*sub);
  auto ss = thm32_sweep(us);
  CHECK(ss.confirmed == ss.pairs);

  auto lossy = make_fs_fixture("lossy-reduction", m2());
  FsUniverse ul(*lossy);
  auto r = check_thm32(ul, c({{0, 0}}), c({{0, 1}, {1, 1}}));
  CHECK(r.verdict == Thm32Verdict::kCounterexample);
  CHECK(thm32_sweep(ul).counterexamples > 0);
}

TEST_CASE("Q and the dense embedding") {
  auto sub = make_fs_fixture("subset", m2());
  FsUniverse u(*sub);
  QResult q = build_Q(u);
  CHECK(q.built);
  CHECK(q.report.all_pass());
  CHECK(q.elements.size() <= u.elements(u.top()).size());

  auto bad = make_fs_fixture("non-monotone-reduction", m2());
  FsUniverse ub(*bad);
  QResult qb = build_Q(ub);
  CHECK_FALSE(qb.built);
  CHECK(qb.report.failed("monotone"));
}

TEST_CASE("mutations are caught by the validator") {
  for (const char* name : {"broken-fs5", "lossy-reduction"}) {
    auto s = make_fs_fixture(name, m2());
    FsUniverse u(*s);
    CHECK_FALSE(validate_fs(u).all_pass());
  }
  auto s = make_fs_fixture("broken-fs5", m2());
  FsUniverse u(*s);
  CHECK(validate_fs(u).failed("FS5"));
}

TEST_CASE("Delta-system experiment") {
  auto s = make_fs_fixture("harmonized-cohen", m2());
  FsUniverse u(*s);
  auto ex = ccc_experiment(u, 5, 30, 8);
  CHECK(ex.trials.size() == 30);
  CHECK(ex.pairs_found > 0);
  CHECK(ex.confirmed == ex.pairs_found);
  CHECK(ex.level_antichains.size() == 3);
  CHECK(ex.level_antichains[0].size == 2);
  auto again = ccc_experiment(u, 5, 30, 8);
  CHECK(again.confirmed == ex.confirmed);
}
