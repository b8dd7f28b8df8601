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

// FS systems along a morass: a poset P_eta for every eta <= theta_h, condition
// maps sigma_st for s below t in the morass tree, and reductions e_alpha. The
// concrete fixtures here are all partial-function forcings; mutations wrap a
// base system and override one map.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morass.hpp"
#include "posets.hpp"
#include "report.hpp"

namespace hdf {

// A finite partial function from ordinals to colors. The subset fixture uses
// the single color 0, so its conditions are just finite sets.
using FsCondition = std::map<Ord, Color>;

std::string to_string(const FsCondition& p);

class FsSystem {
 public:
  explicit FsSystem(Morass m) : m_(std::move(m)) {}
  virtual ~FsSystem() = default;

  const Morass& morass() const { return m_; }
  virtual std::string name() const = 0;

  // All conditions of P_eta, sorted. Must be finite.
  virtual std::vector<FsCondition> universe(Ord eta) const = 0;
  virtual bool contains(Ord eta, const FsCondition& p) const = 0;
  // p <= q, i.e. p is the stronger condition.
  virtual bool leq(const FsCondition& p, const FsCondition& q) const = 0;
  // sigma_st on P_{nu(s)+1}; callers guarantee s < t.
  virtual FsCondition sigma(TreeNode s, TreeNode t,
                            const FsCondition& p) const = 0;
  // The preimage of p under sigma_st, searched over P_{nu(s)+1}.
  virtual std::optional<FsCondition> sigma_inverse(TreeNode s, TreeNode t,
                                                   const FsCondition& p) const;
  // e_alpha : P_{theta_{alpha+1}} -> P_{theta_alpha}.
  virtual FsCondition e(unsigned alpha, const FsCondition& p) const = 0;

 protected:
  Morass m_;
};

// Partial functions into `colors` colors. With `harmonized`, P_{theta_{a+1}}
// holds the p whose restriction to theta_a, whose pullback along f_a, and
// whose union of the two are all in P_{theta_a}; e_a(p) is that union. Without
// it every partial function is a condition.
class PartialFunctionSystem : public FsSystem {
 public:
  PartialFunctionSystem(Morass m, Color colors, bool harmonized,
                        std::string name);

  std::string name() const override { return name_; }
  std::vector<FsCondition> universe(Ord eta) const override;
  bool contains(Ord eta, const FsCondition& p) const override;
  bool leq(const FsCondition& p, const FsCondition& q) const override;
  FsCondition sigma(TreeNode s, TreeNode t,
                    const FsCondition& p) const override;
  std::optional<FsCondition> sigma_inverse(TreeNode s, TreeNode t,
                                           const FsCondition& p) const override;
  FsCondition e(unsigned alpha, const FsCondition& p) const override;

 private:
  bool in_level(unsigned level, const FsCondition& p) const;

  Color colors_;
  bool harmonized_;
  std::string name_;
};

// Forwards everything to a base system; mutations override single maps.
class FsDecorator : public FsSystem {
 public:
  explicit FsDecorator(std::unique_ptr<FsSystem> base)
      : FsSystem(base->morass()), base_(std::move(base)) {}

  std::string name() const override { return base_->name(); }
  std::vector<FsCondition> universe(Ord eta) const override {
    return base_->universe(eta);
  }
  bool contains(Ord eta, const FsCondition& p) const override {
    return base_->contains(eta, p);
  }
  bool leq(const FsCondition& p, const FsCondition& q) const override {
    return base_->leq(p, q);
  }
  FsCondition sigma(TreeNode s, TreeNode t,
                    const FsCondition& p) const override {
    return base_->sigma(s, t, p);
  }
  std::optional<FsCondition> sigma_inverse(TreeNode s, TreeNode t,
                                           const FsCondition& p) const override {
    return base_->sigma_inverse(s, t, p);
  }
  FsCondition e(unsigned alpha, const FsCondition& p) const override {
    return base_->e(alpha, p);
  }

 protected:
  std::unique_ptr<FsSystem> base_;
};

// Fixture names: "subset", "harmonized-cohen", "plain-cohen"; mutations
// "broken-fs5" (sigma recolors along identity pi), "lossy-reduction" (e
// returns the empty condition), "non-monotone-reduction" (e empties
// conditions with more than one point). Mutations wrap harmonized-cohen,
// except non-monotone-reduction which wraps subset.
std::unique_ptr<FsSystem> make_fs_fixture(const std::string& name,
                                          const Morass& m);
std::vector<std::string> fs_fixture_names();

// The finite posets P_eta of a system, with compatibility taken inside each.
class FsUniverse {
 public:
  explicit FsUniverse(const FsSystem& s);

  const FsSystem& system() const { return *s_; }
  Ord top() const { return static_cast<Ord>(elements_.size() - 1); }
  const std::vector<FsCondition>& elements(Ord eta) const {
    return elements_.at(eta);
  }
  const FinitePoset& poset(Ord eta) const { return posets_.at(eta); }
  std::optional<std::size_t> index(Ord eta, const FsCondition& p) const;
  // Compatibility inside P_eta; both conditions must belong to it.
  bool compatible(Ord eta, const FsCondition& p, const FsCondition& q) const;

 private:
  const FsSystem* s_;
  std::vector<std::vector<FsCondition>> elements_;
  std::vector<std::map<FsCondition, std::size_t>> index_;
  std::vector<FinitePoset> posets_;
};

// Clauses FS1, FS2, FS3, FS4, FS5, FS6a, FS6b, FS7a, FS7b.
Report validate_fs(const FsUniverse& u);

struct StarStage {
  FsCondition p;
  Ord nu = 0;
  TreeNode t;
  unsigned gamma = 0;
  // p^(n): level -> sigma_st^{-1}(p_n)
  std::map<unsigned, FsCondition> values;
};

struct StarDecomposition {
  std::vector<StarStage> stages;
  std::map<unsigned, FsCondition> pstar;
  std::vector<unsigned> supp;  // ascending
};

// Runs the decomposition recursion. p^(n) is defined on every level alpha
// <= h that admits a preimage (alpha = h through t_n itself), and
// p* = union of p^(n) on [gamma_n, gamma_{n-1}) with gamma_{-1} = h + 1.
StarDecomposition star(const FsSystem& s, const FsCondition& p);
std::vector<unsigned> support(const FsSystem& s, const FsCondition& p);

enum class Thm32Verdict { kHypothesisFalse, kConfirmed, kCounterexample };
std::string to_string(Thm32Verdict v);

struct Thm32Result {
  Thm32Verdict verdict = Thm32Verdict::kHypothesisFalse;
  unsigned alpha = 0;
  bool star_compatible = false;
  bool compatible = false;
};

Thm32Result check_thm32(const FsUniverse& u, const FsCondition& p,
                        const FsCondition& q);

struct Thm32Sweep {
  std::uint64_t pairs = 0;
  std::uint64_t hypothesis_true = 0;
  std::uint64_t confirmed = 0;
  std::uint64_t counterexamples = 0;
  std::string first_counterexample;
};

// Every unordered pair of top-level conditions (including p = q).
Thm32Sweep thm32_sweep(const FsUniverse& u);

// Element of Q: p* restricted to supp(p).
using QCondition = std::map<unsigned, FsCondition>;

struct QResult {
  bool built = false;  // false: monotonicity hypothesis refuted
  Report report;       // "monotone", "surjective", "1", "2"
  std::vector<QCondition> elements;
  FinitePoset order;
  std::vector<std::size_t> embedding;  // top index -> Q index
};

QResult build_Q(const FsUniverse& u);

struct CccTrial {
  std::size_t family_size = 0;
  std::size_t delta_members = 0;
  std::optional<unsigned> root_max;
  bool pair_found = false;
  bool pair_compatible = false;
};

struct CccExperiment {
  std::vector<CccTrial> trials;
  std::size_t pairs_found = 0;
  std::size_t confirmed = 0;
  // Maximum antichain size of each P_{theta_alpha}, alpha = 0..h.
  std::vector<AntichainResult> level_antichains;
};

// The Delta-system argument on seeded families of top-level conditions.
CccExperiment ccc_experiment(const FsUniverse& u, std::uint64_t seed,
                             std::size_t trials, std::size_t family_size);

}  // namespace hdf
