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

#include "delta_forcing.hpp"
#include "doctest.h"
#include "errors.hpp"

using namespace hdf;

namespace {

using Cells = std::vector<std::pair<OrdPair, Color>>;

DeltaCondition cond(std::vector<Ord> a, std::vector<Ord> b, Cells cells = {}) {
  return make_condition(std::move(a), std::move(b), cells);
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

TEST_CASE("conditions are checked against their bracket") {
  CHECK(bracket({2, 3}, {0, 2}) ==
        std::vector<OrdPair>{{2, 0}, {3, 0}, {3, 2}});
  CHECK_THROWS_AS(cond({2}, {0}), Error);
  CHECK_THROWS_AS(cond({2}, {3}, {{{2, 3}, 1}}), Error);
  CHECK(malformed(cond({3}, {3})) == std::nullopt);  // gamma < alpha only
}

TEST_CASE("order examples") {
  DeltaForcing P(m2());
  const auto q = cond({2}, {0}, {{{2, 0}, 5}});
  const auto p = cond({2}, {0, 1}, {{{2, 0}, 5}, {{2, 1}, 7}});
  CHECK(P.leq(p, p));
  CHECK(P.leq(p, q));
  CHECK_FALSE(P.leq(q, p));
  const auto q2 = cond({2, 3}, {});
  const auto p2 = cond({2, 3}, {1}, {{{2, 1}, 4}, {{3, 1}, 4}});
  CHECK_FALSE(P.leq(p2, q2));
  CHECK(P.leq(cond({2, 3}, {1}, {{{2, 1}, 4}, {{3, 1}, 5}}), q2));
  // The extension clause: a recolored cell is not below.
  CHECK_FALSE(P.leq(cond({2}, {0}, {{{2, 0}, 6}}), q));
  DeltaForcing loose(m2(), delta_mutation("leq-no-extension"));
  CHECK(loose.leq(cond({2}, {0}, {{{2, 0}, 6}}), q));
}

TEST_CASE("membership examples on M2") {
  DeltaForcing P(m2());
  for (Color c : {0u, 3u, 9u}) {
    const auto p = cond({3}, {1}, {{{3, 1}, c}});
    CHECK(P.member(4, p));
    CHECK(P.member_char(p));
  }
  const auto bad = cond({2, 3}, {0}, {{{2, 0}, 5}, {{3, 0}, 5}});
  CHECK_FALSE(P.member(4, bad));
  CHECK_FALSE(P.member_char(bad));
  CHECK(P.rectangle(1, bad).size() == 2);
  CHECK(P.member(1, cond({0}, {0})));
  CHECK(P.member_char(DeltaCondition{}));
  CHECK(P.member(0, DeltaCondition{}));
  // Ordinals at or above nu are outside P_nu.
  CHECK_FALSE(P.member(2, cond({3}, {1}, {{{3, 1}, 0}})));
  CHECK(P.member(2, cond({1}, {0}, {{{1, 0}, 0}})));
}

TEST_CASE("member agrees with member_char exhaustively") {
  for (const Morass& m : {m2(), m2_copy(), build_doubling(3)}) {
    DeltaForcing P(m);
    const auto s = member_oracle_sweep(P, 2, 2, 3);
    CHECK(s.mismatches == 0);
    CHECK(s.members > 0);
    CHECK(s.members < s.checked);
  }
  const auto s = member_oracle_sweep(DeltaForcing(m2()), 2, 2, 3);
  CHECK(s.checked == 557);
  CHECK(s.members == 416);
}

TEST_CASE("D_p in both forms") {
  DeltaForcing P(m2());
  CHECK(P.dp_definitional(DeltaCondition{}).empty());
  CHECK(P.dp_tree(DeltaCondition{}).empty());
  const auto p = cond({3}, {1}, {{{3, 1}, 2}});
  CHECK(P.dp_definitional(p) == std::vector<unsigned>{1});
  CHECK(P.dp_tree(p) == std::vector<unsigned>{1});
  // <1,0> enters the tree at level 1, so it lives in the rectangle of 0.
  const auto r = cond({1}, {0}, {{{1, 0}, 2}});
  CHECK(P.dp_definitional(r) == std::vector<unsigned>{0});
  CHECK(P.dp_tree(r) == std::vector<unsigned>{0});
  DeltaForcing literal(m2(), delta_mutation("dp-literal-alignment"));
  CHECK(literal.dp_tree(r) == std::vector<unsigned>{1});

  for (const Morass& m : {m2(), m2_copy(), build_doubling(4),
                          build_random(4, 9, 5)}) {
    DeltaForcing Q(m);
    const auto s = dp_sweep(Q, 17, 2000);
    CHECK(s.mismatches == 0);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
      const auto x = random_condition(m.top_width(), 3, 4, rng);
      CHECK(Q.dp_definitional(x).size() <= x.f.size());
    }
  }
}

TEST_CASE("star decomposition over Delta") {
  DeltaForcing P(m2());
  const auto p = cond({3}, {2}, {{{3, 2}, 7}});
  const auto s = P.star(p, {3});
  CHECK(s.top == TreeNode{2, 3});
  CHECK(s.alpha0 == 0);
  CHECK(s.at(1) == cond({1}, {0}, {{{1, 0}, 7}}));
  CHECK(s.at(0) == cond({0}, {}));
  CHECK(s.at(2) == p);
  CHECK(s.supp == std::vector<unsigned>{0, 1});
  CHECK_THROWS_AS(P.star(p, {}), Error);
  CHECK_THROWS_AS(P.star(p, {2}), Error);

  // Delta = {1, 3} needs both branches, so only the top level covers it.
  const auto wide = P.star(cond({1, 3}, {0}, {{{1, 0}, 1}, {{3, 0}, 2}}),
                           {1, 3});
  CHECK(wide.alpha0 == 2);
  CHECK(wide.supp == std::vector<unsigned>{2});
}

TEST_CASE("exact compatibility matches brute force") {
  DeltaForcing P(m2());
  const auto small = enumerate_poset(P, 1, 1, 2);
  const auto wit = enumerate_poset(P, 2, 2, 6);
  const auto s = compatibility_oracle_sweep(P, small, wit);
  CHECK(s.checked == 496);
  CHECK(s.mismatches == 0);
  CHECK(s.members == 478);

  DeltaForcing loose(m2(), delta_mutation("leq-no-extension"));
  CHECK(compatibility_oracle_sweep(loose, small, wit).mismatches > 0);
}

TEST_CASE("compatibility propagates from the star level") {
  DeltaForcing P(m2());
  const auto u = enumerate_poset(P, 2, 2, 3);
  const auto s = star_compat_sweep(P, u);
  CHECK(s.deltas == 15);
  CHECK(s.hypothesis_true > 0);
  CHECK(s.counterexamples == 0);
  // The truncated poset is not closed under unions, so compatibility there
  // is strictly weaker than in P.
  CHECK(s.enumerated_failures > 0);

  DeltaForcing shifted(m2(), delta_mutation("char-rect-off-by-one"));
  const auto us = enumerate_poset(shifted, 2, 2, 3);
  CHECK(star_compat_sweep(shifted, us).counterexamples > 0);
}

TEST_CASE("amalgamation") {
  DeltaForcing P(m2());
  const auto p = cond({2, 3}, {0}, {{{2, 0}, 1}, {{3, 0}, 2}});
  auto same = P.amalgamate(p, p);
  REQUIRE(same.p);
  CHECK(*same.p == p);
  CHECK(same.report.all_pass());

  const auto p1 = cond({1}, {0}, {{{1, 0}, 0}});
  const auto p2 = cond({3}, {1}, {{{3, 1}, 0}});
  auto r = P.amalgamate(p1, p2);
  REQUIRE(r.p);
  CHECK(r.report.all_pass());
  // The gap (3,0) gets the least color unused by p1 and p2.
  CHECK(*r.p == cond({1, 3}, {0, 1}, {{{1, 0}, 0}, {{3, 0}, 1}, {{3, 1}, 0}}));
  // Both operands reach the rectangle of level 0, through different maps.
  auto h2 = P.amalgamate(p1, cond({3}, {2}, {{{3, 2}, 0}}));
  CHECK_FALSE(h2.p);
  CHECK(h2.report.failed("H2"));

  auto clash = P.amalgamate(p1, cond({1}, {0}, {{{1, 0}, 5}}));
  CHECK_FALSE(clash.p);
  CHECK(clash.report.failed("H1"));

  auto sep = P.amalgamate(cond({1, 2}, {}),
                          cond({1, 2}, {0}, {{{1, 0}, 4}, {{2, 0}, 4}}));
  CHECK_FALSE(sep.p);
  CHECK(sep.report.failed("H3"));

  const auto u = enumerate_poset(P, 2, 2, 3);
  const auto s = amalgamate_sweep(P, u);
  CHECK(s.hypotheses_hold > 0);
  CHECK(s.failures == 0);

  DeltaForcing stale(m2(), delta_mutation("amalgamate-stale-colors"));
  CHECK(amalgamate_sweep(stale, u).failures > 0);
}

TEST_CASE("density extensions") {
  DeltaForcing P(m2());
  const auto p = cond({3}, {1}, {{{3, 1}, 4}});
  CHECK(P.extend(p, 3, 1) == p);
  CHECK(P.extend(DeltaCondition{}, 3, 1) == cond({3}, {1}, {{{3, 1}, 0}}));
  CHECK(P.extend(DeltaCondition{}, 1, 3) == cond({1}, {3}));
  const auto q = P.extend(p, 2, 0);
  CHECK(q == cond({2, 3}, {0, 1},
                  {{{2, 0}, 0}, {{2, 1}, 1}, {{3, 0}, 2}, {{3, 1}, 4}}));
  CHECK(P.leq(q, p));
  CHECK_THROWS_AS(P.extend(p, 4, 0), Error);

  const auto u = enumerate_poset(P, 2, 2, 3);
  const auto s = density_sweep(P, u);
  CHECK(s.extensions == 416 * 16);
  CHECK(s.failures == 0);
  DeltaForcing stale(m2(), delta_mutation("extend-stale-colors"));
  CHECK(density_sweep(stale, u).failures > 0);
}

TEST_CASE("enumerated universes") {
  DeltaForcing P(m2());
  const auto trivial = enumerate_poset(P, 0, 0, 1);
  REQUIRE(trivial.elements.size() == 1);
  CHECK(trivial.elements[0] == DeltaCondition{});
  CHECK(enumerate_poset(P, 1, 1, 2).elements.size() == 31);
  CHECK(enumerate_poset(P, 1, 1, 2).order.check_preorder().all_pass());
  CHECK_THROWS_AS(enumerate_poset(DeltaForcing(build_doubling(4)), 3, 3, 5),
                  Error);
  try {
    enumerate_poset(DeltaForcing(build_doubling(4)), 3, 3, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeLimit);
  }

  // Pullbacks of members are members one level down, along every map.
  const Morass m = build_doubling(3);
  DeltaForcing Q(m);
  const auto u = enumerate_poset(Q, 2, 2, 2);
  for (const auto& p : u.elements) {
    for (unsigned a = 0; a < m.height(); ++a) {
      for (const auto& f : m.family(a, m.height())) {
        CHECK(Q.member_char_at(a, pullback(f, p)));
      }
    }
  }
}

TEST_CASE("generic filter simulation") {
  DeltaForcing P(m2());
  const auto none = P.generic_simulate(1, 0);
  CHECK(none.g.empty());
  CHECK(none.chain.size() == 1);
  const auto g = P.generic_simulate(1, 50);
  CHECK(g.pairs == 6);
  CHECK(g.total());
  CHECK(g.chain_descends);
  CHECK(g.chain_members);
  CHECK(P.generic_simulate(1, 50).g == g.g);
  CHECK(P.generic_simulate(2, 50).total());

  DeltaForcing big(build_doubling(4));
  const auto g4 = big.generic_simulate(9, 400);
  CHECK(g4.pairs == 120);
  CHECK(g4.total());
  CHECK(g4.chain_members);
}
