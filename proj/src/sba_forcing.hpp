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

// Finite strict partial orders with block restrictions and infima, thinned
// along a morass the same way as the colored-pair forcing. Blocks have a
// fixed finite size B standing in for the omega-blocks.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delta_forcing.hpp"
#include "morass.hpp"
#include "report.hpp"

namespace hdf {

struct SpoCondition {
  std::vector<Ord> x;                       // sorted, distinct
  std::vector<std::pair<Ord, Ord>> lt;      // sorted pairs <alpha, beta>
  Ord block = 2;                            // B

  friend bool operator==(const SpoCondition&, const SpoCondition&) = default;
  friend auto operator<=>(const SpoCondition&, const SpoCondition&) = default;
};

std::string to_string(const SpoCondition& p);

// Sorts and deduplicates; rejects relation pairs leaving x or B = 0.
SpoCondition make_spo(std::vector<Ord> x,
                      std::vector<std::pair<Ord, Ord>> lt, Ord block);

// Which pairs count as compatible in clause (c) and in the order.
enum class CompatReading {
  kLowerBound,  // a common lower bound in x (reflexive), the adopted reading
  kUpperBound,  // a common upper bound in x (reflexive)
};

class SpoView {
 public:
  explicit SpoView(const SpoCondition& p);

  std::size_t size() const { return x_.size(); }
  std::optional<std::size_t> index(Ord a) const;
  Ord ordinal(std::size_t i) const { return x_[i]; }
  bool lt(std::size_t i, std::size_t j) const { return rel_[i][j]; }
  bool le(std::size_t i, std::size_t j) const { return i == j || rel_[i][j]; }
  bool compatible(std::size_t i, std::size_t j, CompatReading r) const;
  // Greatest common lower bound, if there is one.
  std::optional<std::size_t> infimum(std::size_t i, std::size_t j) const;

 private:
  std::vector<Ord> x_;
  std::vector<std::vector<bool>> rel_;
};

// "irreflexive", "transitive", "(a)", "(b)", "(c)".
Report validate_cond(const SpoCondition& p,
                     CompatReading reading = CompatReading::kLowerBound);
bool valid_cond(const SpoCondition& p,
                CompatReading reading = CompatReading::kLowerBound);

// f_p : [a_p, b_p] -> 2 with keys <beta, alpha>, alpha < beta; value 1 iff
// alpha <_p beta.
DeltaCondition encode(const SpoCondition& p);
std::vector<std::pair<Ord, Ord>> decode(const DeltaCondition& e);

SpoCondition pullback(const OrderMap& f, const SpoCondition& p);
SpoCondition transport(const OrderMap& f, const SpoCondition& p);

struct SbaRules {
  CompatReading reading = CompatReading::kLowerBound;
  // New successors allowed per old ordinal in the literal recursion;
  // member_char always uses 1.
  std::size_t member_clause3_bound = 1;
};

std::vector<std::string> sba_mutation_names();
SbaRules sba_mutation(const std::string& name);

struct SbaAmalgamResult {
  // Set only when every clause passes.
  std::optional<SpoCondition> p;
  // "H1", "H2", then checks of the closed union: "valid", "member",
  // "below-p1", "below-p2". A failed check rejects the pair.
  Report report;
};

struct SbaGenericRun {
  std::vector<SpoCondition> chain;
  SpoCondition order;  // the union, i.e. the last condition
  Report report;       // "(a)", "(b)", "(c)", "(d')", "chain"
  std::uint64_t requirements = 0;
  std::uint64_t met = 0;
};

class SbaForcing {
 public:
  explicit SbaForcing(Morass m, SbaRules rules = {});

  const Morass& morass() const { return m_; }
  const SbaRules& rules() const { return rules_; }

  bool leq(const SpoCondition& p, const SpoCondition& q) const;

  bool member(Ord nu, const SpoCondition& p) const;
  bool member_char(const SpoCondition& p) const;

  // The relation pairs alpha <_p beta of p with beta in
  // theta_{a+1} - theta_a and alpha in theta_a - delta_a.
  std::vector<std::pair<Ord, Ord>> rectangle(unsigned a,
                                             const SpoCondition& p) const;
  std::vector<unsigned> dp(const SpoCondition& p) const;

  SbaAmalgamResult amalgamate(const SpoCondition& p1,
                              const SpoCondition& p2) const;

  // p with alpha <_q beta added (plus transitivity), or none if the result
  // is not a condition below p.
  std::optional<SpoCondition> extend(const SpoCondition& p, Ord below,
                                     Ord above) const;

  SbaGenericRun generic_union_check(std::uint64_t seed, std::uint64_t steps,
                                    Ord block) const;

 private:
  bool member_level(unsigned level, const SpoCondition& p) const;
  bool clause3(unsigned a, const SpoCondition& p) const;

  Morass m_;
  SbaRules rules_;
};

// Every transitive relation on every x with |x| <= max_x below top, valid or
// not.
void for_each_spo(Ord top, std::size_t max_x, Ord block,
                  const std::function<void(const SpoCondition&)>& fn);

// member_char members within the bounds, sorted.
std::vector<SpoCondition> enumerate_spo(const SbaForcing& P,
                                        std::size_t max_x, Ord block);

OracleSweep sba_member_oracle_sweep(const SbaForcing& P, std::size_t max_x,
                                    Ord block);

struct SbaAmalgamSweep {
  std::uint64_t pairs = 0;
  std::uint64_t hypotheses_hold = 0;
  std::uint64_t returned = 0;
  // Returned amalgams failing validate_cond, the literal recursion or leq.
  std::uint64_t failures = 0;
  std::map<std::string, std::uint64_t> rejected_by;  // first failed clause
  std::string first_failure;
};
SbaAmalgamSweep sba_amalgamate_sweep(const SbaForcing& P,
                                     const std::vector<SpoCondition>& u);

// DOT digraph of an order, one cluster per block, edges alpha -> beta for
// the covering pairs of alpha < beta.
std::string order_dot(const SpoCondition& p);

}  // namespace hdf
