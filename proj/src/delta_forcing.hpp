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

// The colored-pair forcing along a morass. A condition is <a, b, f> with f a
// coloring of [a,b] = {<alpha,gamma> : alpha in a, gamma in b, gamma <
// alpha}. theta_h plays omega_2, the level count plays omega_1 and colors
// are unbounded naturals except where a universe is enumerated.

#include <compare>
#include <map>
#include <initializer_list>
#include <cstdint>
#include <functional>
#include <random>
#include <optional>
#include <string>
#include <vector>

#include "morass.hpp"
#include "posets.hpp"
#include "report.hpp"

namespace hdf {

struct DeltaCondition {
  std::vector<Ord> a;  // sorted, distinct
  std::vector<Ord> b;  // sorted, distinct
  PairGraph f;         // keyed <alpha, gamma>

  friend bool operator==(const DeltaCondition&, const DeltaCondition&) =
      default;
  friend auto operator<=>(const DeltaCondition&, const DeltaCondition&) =
      default;
};

std::string to_string(const DeltaCondition& p);

// The bracket [a,b] in lexicographic order.
std::vector<OrdPair> bracket(const std::vector<Ord>& a,
                             const std::vector<Ord>& b);

// Sorted sets and dom(f) = [a,b]. Returns an explanation on failure.
std::optional<std::string> malformed(const DeltaCondition& p);

// Builds and checks; throws Error(kRejectedInput) on malformed input.
DeltaCondition make_condition(std::vector<Ord> a, std::vector<Ord> b,
                              const std::vector<std::pair<OrdPair, Color>>&
                                  cells);

// f^{-1}[p]: preimages of a, b and of the colored pairs.
DeltaCondition pullback(const OrderMap& f, const DeltaCondition& p);
// f[p]; every ordinal of p must lie below f.src_bound().
DeltaCondition transport(const OrderMap& f, const DeltaCondition& p);

// Switches for the mutation harness. Defaults are the real forcing.
struct DeltaRules {
  bool leq_extension = true;   // f_p restricted to [a_q,b_q] equals f_q
  bool member_clause3 = true;  // successor clause (3) in the recursion
  Ord char_rect_shift = 0;     // shifts the rectangle's lower corner in
                               // member_char
  bool literal_dp_levels = false;  // tree-mode D_p without the -1
  bool fresh_amalgamate = true;
  bool fresh_extend = true;
};

std::vector<std::string> delta_mutation_names();
DeltaRules delta_mutation(const std::string& name);

struct DeltaStar {
  unsigned alpha0 = 0;
  TreeNode top;  // <h, max Delta>
  std::vector<DeltaCondition> values;  // values[alpha - alpha0]
  std::vector<unsigned> supp;          // ascending

  const DeltaCondition& at(unsigned alpha) const {
    return values.at(alpha - alpha0);
  }
};

struct AmalgamResult {
  std::optional<DeltaCondition> p;
  Report report;  // "H1", "H2", "H3", then "member", "below-p1", "below-p2"
};

struct GenericRun {
  std::vector<DeltaCondition> chain;  // chain[0] is the empty condition
  PairGraph g;
  std::uint64_t pairs = 0;    // <xi, alpha> with xi < alpha < theta_h
  std::uint64_t defined = 0;  // of those, how many g colors
  bool chain_descends = true;
  bool chain_members = true;
  // Largest |{xi < alpha : g(alpha,xi) = g(beta,xi)}| over alpha < beta.
  std::uint64_t max_agreement = 0;
  bool total() const { return defined == pairs; }
};

class DeltaForcing {
 public:
  explicit DeltaForcing(Morass m, DeltaRules rules = {});

  const Morass& morass() const { return m_; }
  const DeltaRules& rules() const { return rules_; }

  bool leq(const DeltaCondition& p, const DeltaCondition& q) const;

  // The recursive definition of P_nu, nu <= theta_h, evaluated literally:
  // base P_1, successor clauses (1)-(3), intermediate widths, and the limit
  // clause at amalgam levels.
  bool member(Ord nu, const DeltaCondition& p) const;

  // Closed form: for all alpha < gamma and f in F_{alpha+1,gamma} the
  // rectangle part of f^{-1}[p] is injective. member_char uses gamma = h.
  bool member_char(const DeltaCondition& p) const;
  bool member_char_at(unsigned gamma, const DeltaCondition& p) const;

  // Cells of p in (theta_{alpha+1} - theta_alpha) x (theta_alpha - delta_a);
  // empty at amalgam steps.
  std::vector<std::pair<OrdPair, Color>> rectangle(
      unsigned alpha, const DeltaCondition& p) const;

  std::vector<unsigned> dp_definitional(const DeltaCondition& p) const;
  std::vector<unsigned> dp_tree(const DeltaCondition& p) const;

  DeltaStar star(const DeltaCondition& p, const std::vector<Ord>& delta) const;

  // Exact compatibility inside P_{theta_gamma} with unbounded colors: the
  // union on a_p + a_q, b_p + b_q with fresh colors on new cells is a lower
  // bound whenever any lower bound exists.
  bool compatible_at(unsigned gamma, const DeltaCondition& p,
                     const DeltaCondition& q) const;
  bool compatible(const DeltaCondition& p, const DeltaCondition& q) const {
    return compatible_at(m_.height(), p, q);
  }

  AmalgamResult amalgamate(const DeltaCondition& p1,
                           const DeltaCondition& p2) const;
  DeltaCondition extend(const DeltaCondition& p, Ord alpha, Ord beta) const;

  GenericRun generic_simulate(std::uint64_t seed, std::uint64_t steps) const;

 private:
  bool member_level(unsigned level, const DeltaCondition& p) const;
  // The condition on [a,b] carrying the cells of `parts`, new cells colored
  // by the fresh policy (or 0 when `fresh` is off). None on a clash.
  std::optional<DeltaCondition> fill(
      std::vector<Ord> a, std::vector<Ord> b,
      std::initializer_list<const DeltaCondition*> parts, bool fresh) const;
  std::optional<DeltaCondition> glue(const DeltaCondition& p,
                                     const DeltaCondition& q,
                                     bool fresh) const;

  Morass m_;
  DeltaRules rules_;
};

struct DeltaUniverse {
  std::vector<DeltaCondition> elements;  // sorted
  FinitePoset order;
};

// Number of colorings scanned by enumerate_poset; used for the size guard.
double delta_universe_estimate(const Morass& m, std::size_t max_a,
                               std::size_t max_b, Color colors);

// All conditions within the bounds (ordinals below theta_h) that pass
// member_char, ordered by leq. Throws Error(kSizeLimit) past `limit` scanned
// colorings.
DeltaUniverse enumerate_poset(const DeltaForcing& P, std::size_t max_a,
                              std::size_t max_b, Color colors,
                              double limit = 5e6);

// Visits every valid condition with |a| <= max_a, |b| <= max_b, ordinals
// below `top` and colors below `colors`, members or not.
void for_each_condition(Ord top, std::size_t max_a, std::size_t max_b,
                        Color colors,
                        const std::function<void(const DeltaCondition&)>& fn);

// A valid condition with |a|, |b| <= max_size and colors < colors.
DeltaCondition random_condition(Ord top, std::size_t max_size, Color colors,
                                std::mt19937_64& rng);

// Exhaustive and sampled sweeps behind the acceptance suite, the CLI and the
// tests. Each records the first failure as a printable witness.
struct OracleSweep {
  std::uint64_t checked = 0;
  std::uint64_t members = 0;
  std::uint64_t mismatches = 0;
  std::string first_mismatch;
};
// member(theta_h, .) against member_char on every condition in the bounds.
OracleSweep member_oracle_sweep(const DeltaForcing& P, std::size_t max_a,
                                std::size_t max_b, Color colors);
// dp_definitional against dp_tree on `count` seeded random conditions.
OracleSweep dp_sweep(const DeltaForcing& P, std::uint64_t seed,
                     std::uint64_t count);

// Exact compatibility against a brute-force search for a common lower bound
// in `witnesses`, over all pairs of `conditions`. The witness universe must be
// large enough to hold the union with fresh colors.
OracleSweep compatibility_oracle_sweep(const DeltaForcing& P,
                                       const DeltaUniverse& conditions,
                                       const DeltaUniverse& witnesses);

struct StarCompatSweep {
  std::uint64_t deltas = 0;
  std::uint64_t pairs = 0;           // (Delta, {p,q}) with a_p, a_q in Delta
  std::uint64_t hypothesis_true = 0; // star-level compatible
  std::uint64_t counterexamples = 0; // exact compatibility fails
  std::uint64_t enumerated_failures = 0;  // no lower bound inside u
  std::string first_counterexample;
  std::string first_enumerated_failure;
};
StarCompatSweep star_compat_sweep(const DeltaForcing& P, const DeltaUniverse& u);

struct AmalgamSweep {
  std::uint64_t pairs = 0;
  std::uint64_t hypotheses_hold = 0;
  std::uint64_t failures = 0;  // hypotheses hold but the output is wrong
  std::map<std::string, std::uint64_t> rejected_by;  // first failed clause
  std::string first_failure;
};
AmalgamSweep amalgamate_sweep(const DeltaForcing& P, const DeltaUniverse& u);

struct DensitySweep {
  std::uint64_t extensions = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
};
DensitySweep density_sweep(const DeltaForcing& P, const DeltaUniverse& u);

}  // namespace hdf
