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

// Finite-height simplified gap-1 morasses. Level alpha has width theta_alpha;
// step alpha joins level alpha to alpha + 1 and is either a successor split
// {id, f_alpha} with critical point delta, or an amalgam level whose maps are
// listed explicitly (the finite stand-in for a limit level).

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ordinal.hpp"
#include "report.hpp"

namespace hdf {

struct SuccessorStep {
  Ord delta = 0;
  std::vector<Ord> f;
  friend bool operator==(const SuccessorStep&, const SuccessorStep&) = default;
};

struct AmalgamStep {
  // Each member maps some lower theta_beta into the level above the step;
  // beta is recovered from the member's length.
  std::vector<std::vector<Ord>> family;
  friend bool operator==(const AmalgamStep&, const AmalgamStep&) = default;
};

using LevelStep = std::variant<SuccessorStep, AmalgamStep>;

// Raw, unchecked level data as read from a document or produced by a builder.
struct MorassData {
  unsigned height = 0;
  std::vector<Ord> thetas;
  std::vector<LevelStep> steps;
  friend bool operator==(const MorassData&, const MorassData&) = default;
};

struct TreeNode {
  unsigned level = 0;
  Ord index = 0;
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
  friend auto operator<=>(const TreeNode&, const TreeNode&) = default;
  std::string to_string() const;
};

class Morass {
 public:
  // Checks only the typing of the data: shapes, and that every listed map is
  // an order-preserving function between the right widths. Axioms are left
  // to validate(). Throws Error(kRejectedInput) naming "P0b" on failure.
  explicit Morass(MorassData data);

  const MorassData& data() const { return data_; }
  unsigned height() const { return data_.height; }
  Ord theta(unsigned level) const { return data_.thetas.at(level); }
  Ord top_width() const { return data_.thetas.back(); }

  bool is_successor(unsigned step) const;
  // Successor steps only.
  Ord delta(unsigned step) const;
  const OrderMap& split(unsigned step) const;

  // F_{alpha,beta} for alpha < beta, deduplicated and sorted. Precomputed at
  // construction. family_weak also accepts alpha == beta, giving {id}.
  const std::vector<OrderMap>& family(unsigned alpha, unsigned beta) const;
  const std::vector<OrderMap>& family_weak(unsigned alpha,
                                           unsigned beta) const;

  // Listed amalgam maps of a step together with their source levels.
  struct SourcedMap {
    unsigned source_level;
    OrderMap map;
  };
  const std::vector<SourcedMap>& amalgam(unsigned step) const;

  bool valid_node(TreeNode t) const;
  std::vector<TreeNode> level_nodes(unsigned level) const;
  std::vector<TreeNode> nodes() const;

  bool precedes(TreeNode s, TreeNode t) const;
  bool precedes_or_equal(TreeNode s, TreeNode t) const {
    return s == t || precedes(s, t);
  }

  // f restricted to index(s) + 1 for any f witnessing s < t. Rejects s not
  // below t; throws kInternalInconsistency if two witnesses disagree.
  OrderMap pi(TreeNode s, TreeNode t) const;
  // As pi, but s == t gives id restricted to index(t) + 1.
  OrderMap pi_weak(TreeNode s, TreeNode t) const;

  // Every node of level alpha below t (alpha < level(t)); a singleton on a
  // valid morass.
  const std::vector<Ord>& predecessors(TreeNode t, unsigned alpha) const;

  // The unique node of level alpha below t (alpha < level(t)), or t itself
  // when alpha == level(t).
  TreeNode level_predecessor(TreeNode t, unsigned alpha) const;

  // Maximal branches of the tree: one per node without an immediate
  // successor.
  std::uint64_t branch_count() const;

 private:
  void compute_families();

  MorassData data_;
  std::vector<OrderMap> splits_;
  std::vector<std::vector<SourcedMap>> amalgams_;
  // families_[alpha][beta - alpha]
  std::vector<std::vector<std::vector<OrderMap>>> families_;
  // preds_[beta][alpha][tau]: the nu < theta_alpha with <alpha,nu> below
  // <beta,tau>, sorted (alpha < beta).
  std::vector<std::vector<std::vector<std::vector<Ord>>>> preds_;
};

// Axiom analogues P0a, P0b, P1, P2, P3, P4, P5 and the coherence lemma for
// pairs of family maps ("coherence"). Never throws for malformed data.
Report validate(const MorassData& data);
Report validate(const Morass& m);

// Tree lemmas: "tree" (tree, heights), "pi-commutes" (commutativity,
// pi_{t0 t2} = pi_{t1 t2} o pi_{t0 t1}), "pi-restriction" (restriction) and
// "limit-cover" (limit nodes are covered by their predecessors' ranges).
Report check_tree_lemmas(const Morass& m);

// theta_alpha = 2^alpha, delta = 0, f_alpha(x) = x + theta_alpha.
Morass build_doubling(unsigned height);

// Successor-only morass from critical points; the split is the unique
// (P3)/(P5)-legal one for each delta.
MorassData successor_data(const std::vector<Ord>& deltas);

// Builds from arbitrary step data; rejects data that fails validate() with
// the first violated clause.
Morass build_custom(MorassData data);

// Seeded successor-only morass. Critical points are chosen so that widths stay
// within theta_cap where that is still possible.
Morass build_random(unsigned height, Ord theta_cap, std::uint64_t seed);

}  // namespace hdf
