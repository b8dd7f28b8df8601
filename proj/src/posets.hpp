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

// Finite preorders over element indices, (complete) embeddings between them,
// reductions, exact antichain search and sunflower extraction. Conditions
// themselves live with their forcing; posets only see indices.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordinal.hpp"
#include "report.hpp"

namespace hdf {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool test(std::size_t i) const { return words_[i >> 6] >> (i & 63) & 1; }
  bool any() const;
  std::size_t count() const;
  bool intersects(const Bitset& o) const;
  // Least index set in both, if any.
  std::optional<std::size_t> first_common(const Bitset& o) const;
  std::optional<std::size_t> first() const;
  Bitset& operator&=(const Bitset& o);
  Bitset& operator|=(const Bitset& o);
  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class FinitePoset {
 public:
  using Relation = std::function<bool(std::size_t, std::size_t)>;

  FinitePoset() = default;
  // leq(i, j) reads "i <= j". Evaluated once for every ordered pair.
  FinitePoset(std::size_t n, const Relation& leq);

  std::size_t size() const { return below_.size(); }
  bool leq(std::size_t i, std::size_t j) const { return below_[j].test(i); }
  // {i : i <= j}
  const Bitset& below(std::size_t j) const { return below_[j]; }
  bool compatible(std::size_t i, std::size_t j) const {
    return below_[i].intersects(below_[j]);
  }
  std::optional<std::size_t> common_extension(std::size_t i,
                                              std::size_t j) const {
    return below_[i].first_common(below_[j]);
  }

  // Reflexivity and transitivity.
  Report check_preorder() const;

 private:
  std::vector<Bitset> below_;
};

using Namer = std::function<std::string(std::size_t)>;

struct EmbeddingReport {
  bool is_embedding = false;
  bool is_complete = false;
  // Clauses "1", "2", "3" and, when a designated reduction map is supplied,
  // "reduction".
  Report clauses;
};

// sigma maps P indices to Q indices. `designated`, if given, maps each Q index
// to the P index that is claimed to be its reduction.
EmbeddingReport check_embedding(const std::vector<std::size_t>& sigma,
                                const FinitePoset& P, const FinitePoset& Q,
                                const std::vector<std::size_t>* designated =
                                    nullptr,
                                const Namer& p_name = {},
                                const Namer& q_name = {});

bool is_reduction(const std::vector<std::size_t>& sigma, const FinitePoset& P,
                  const FinitePoset& Q, std::size_t p, std::size_t q);

// Least p that is a reduction of q for every listed sigma simultaneously.
std::optional<std::size_t> find_reduction(
    const std::vector<std::vector<std::size_t>>& sigmas, const FinitePoset& P,
    const FinitePoset& Q, std::size_t q);

struct AntichainResult {
  std::size_t size = 0;
  bool exact = true;  // false: the search stopped at the cutoff
  std::vector<std::size_t> witness;
};

// Largest pairwise incompatible subset, by branch and bound on the
// incompatibility graph. Stops once `cutoff` elements are found.
AntichainResult max_antichain(const FinitePoset& P, std::size_t cutoff);

struct DeltaSystem {
  std::vector<Ord> root;
  std::vector<std::size_t> members;  // indices into the input family
  bool exact = true;
};

// Families of fewer than this many sets are searched exhaustively.
inline constexpr std::size_t kExactDeltaLimit = 20;

// Largest sub-family whose pairwise intersections all equal one root, if it
// has at least `target` members. Input sets must be sorted.
std::optional<DeltaSystem> delta_system_extract(
    const std::vector<std::vector<Ord>>& family, std::size_t target);

}  // namespace hdf
