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


#include "posets.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "parallel.hpp"

namespace hdf {

bool Bitset::any() const {
  for (auto w : words_) {
    if (w) return true;
  }
  return false;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool Bitset::intersects(const Bitset& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & o.words_[i]) return true;
  }
  return false;
}

std::optional<std::size_t> Bitset::first_common(const Bitset& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (auto w = words_[i] & o.words_[i]) return i * 64 + std::countr_zero(w);
  }
  return std::nullopt;
}

std::optional<std::size_t> Bitset::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
  }
  return std::nullopt;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

FinitePoset::FinitePoset(std::size_t n, const Relation& leq)
    : below_(n, Bitset(n)) {
  parallel_for(n, [&](std::size_t j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (leq(i, j)) below_[j].set(i);
    }
  });
}

Report FinitePoset::check_preorder() const {
  Report r;
  const std::size_t n = size();
  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    if (!leq(i, i)) w = "element " + std::to_string(i) + " is not <= itself";
  }
  r.add("reflexive", w.empty(), w);
  w.clear();
  for (std::size_t j = 0; j < n && w.empty(); ++j) {
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      if (!leq(i, j)) continue;
      // Everything below i must be below j.
      for (std::size_t k = 0; k < n; ++k) {
        if (below_[i].test(k) && !below_[j].test(k)) {
          w = std::to_string(k) + " <= " + std::to_string(i) + " <= " +
              std::to_string(j) + " but not " + std::to_string(k) +
              " <= " + std::to_string(j);
          break;
        }
      }
    }
  }
  r.add("transitive", w.empty(), w);
  return r;
}

namespace {

std::string name_of(const Namer& n, std::size_t i) {
  return n ? n(i) : "#" + std::to_string(i);
}

// Elements of P whose image is incompatible with q.
Bitset bad_set(const std::vector<std::size_t>& sigma, const FinitePoset& P,
               const FinitePoset& Q, std::size_t q) {
  Bitset bad(P.size());
  for (std::size_t p = 0; p < P.size(); ++p) {
    if (!Q.compatible(sigma[p], q)) bad.set(p);
  }
  return bad;
}

}  // namespace

bool is_reduction(const std::vector<std::size_t>& sigma, const FinitePoset& P,
                  const FinitePoset& Q, std::size_t p, std::size_t q) {
  return !P.below(p).intersects(bad_set(sigma, P, Q, q));
}

std::optional<std::size_t> find_reduction(
    const std::vector<std::vector<std::size_t>>& sigmas, const FinitePoset& P,
    const FinitePoset& Q, std::size_t q) {
  Bitset bad(P.size());
  for (const auto& sigma : sigmas) bad |= bad_set(sigma, P, Q, q);
  for (std::size_t p = 0; p < P.size(); ++p) {
    if (!P.below(p).intersects(bad)) return p;
  }
  return std::nullopt;
}

EmbeddingReport check_embedding(const std::vector<std::size_t>& sigma,
                                const FinitePoset& P, const FinitePoset& Q,
                                const std::vector<std::size_t>* designated,
                                const Namer& p_name, const Namer& q_name) {
  EmbeddingReport out;
  const std::size_t n = P.size();
  std::string w;
  for (std::size_t p = 0; p < n && w.empty(); ++p) {
    for (std::size_t p2 = 0; p2 < n; ++p2) {
      if (P.leq(p2, p) && !Q.leq(sigma[p2], sigma[p])) {
        w = name_of(p_name, p2) + " <= " + name_of(p_name, p) +
            " but images are not ordered";
        break;
      }
    }
  }
  out.clauses.add("1", w.empty(), w);
  w.clear();
  for (std::size_t p = 0; p < n && w.empty(); ++p) {
    for (std::size_t p2 = p; p2 < n; ++p2) {
      const bool a = P.compatible(p, p2);
      const bool b = Q.compatible(sigma[p], sigma[p2]);
      if (a != b) {
        w = name_of(p_name, p) + ", " + name_of(p_name, p2) + " are " +
            (a ? "compatible" : "incompatible") + " but images are " +
            (b ? "compatible" : "incompatible");
        break;
      }
    }
  }
  out.clauses.add("2", w.empty(), w);
  w.clear();
  std::vector<char> has_reduction(Q.size(), 0);
  std::vector<char> designated_ok(Q.size(), 1);
  parallel_for(Q.size(), [&](std::size_t q) {
    Bitset bad = bad_set(sigma, P, Q, q);
    for (std::size_t p = 0; p < n; ++p) {
      if (!P.below(p).intersects(bad)) {
        has_reduction[q] = 1;
        break;
      }
    }
    if (designated) {
      designated_ok[q] = !P.below((*designated)[q]).intersects(bad);
    }
  });
  for (std::size_t q = 0; q < Q.size(); ++q) {
    if (!has_reduction[q]) {
      w = name_of(q_name, q) + " has no reduction";
      break;
    }
  }
  out.clauses.add("3", w.empty(), w);
  if (designated) {
    w.clear();
    for (std::size_t q = 0; q < Q.size(); ++q) {
      if (designated_ok[q]) continue;
      const std::size_t p = (*designated)[q];
      Bitset bad = bad_set(sigma, P, Q, q);
      Bitset below = P.below(p);
      below &= bad;
      w = name_of(p_name, p) + " is not a reduction of " + name_of(q_name, q) +
          ": " + name_of(p_name, *below.first()) + " extends it but its image " +
          "is incompatible with " + name_of(q_name, q);
      break;
    }
    out.clauses.add("reduction", w.empty(), w);
  }
  out.is_embedding = !out.clauses.failed("1") && !out.clauses.failed("2");
  out.is_complete = out.is_embedding && !out.clauses.failed("3");
  return out;
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const std::vector<Bitset>& adj, std::size_t cutoff)
      : adj_(adj), cutoff_(cutoff) {}

  void run(std::vector<std::size_t> cands) { expand(cands); }

  std::vector<std::size_t> best;
  bool hit_cutoff = false;

 private:
  // Greedy coloring; returns candidates ordered by color with bounds.
  void color_sort(const std::vector<std::size_t>& cands,
                  std::vector<std::size_t>& order,
                  std::vector<std::size_t>& bound) {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : cands) {
      std::size_t k = 0;
      for (; k < classes.size(); ++k) {
        bool clash = false;
        for (std::size_t u : classes[k]) {
          if (adj_[v].test(u)) {
            clash = true;
            break;
          }
        }
        if (!clash) break;
      }
      if (k == classes.size()) classes.emplace_back();
      classes[k].push_back(v);
    }
    for (std::size_t k = 0; k < classes.size(); ++k) {
      for (std::size_t v : classes[k]) {
        order.push_back(v);
        bound.push_back(k + 1);
      }
    }
  }

  void expand(const std::vector<std::size_t>& cands) {
    std::vector<std::size_t> order, bound;
    color_sort(cands, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (hit_cutoff || cur_.size() + bound[i] <= best.size()) return;
      const std::size_t v = order[i];
      cur_.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t j = 0; j < i; ++j) {
        if (adj_[v].test(order[j])) next.push_back(order[j]);
      }
      if (next.empty()) {
        if (cur_.size() > best.size()) {
          best = cur_;
          if (best.size() >= cutoff_) hit_cutoff = true;
        }
      } else {
        expand(next);
      }
      cur_.pop_back();
    }
  }

  const std::vector<Bitset>& adj_;
  std::size_t cutoff_;
  std::vector<std::size_t> cur_;
};

}  // namespace

AntichainResult max_antichain(const FinitePoset& P, std::size_t cutoff) {
  const std::size_t n = P.size();
  AntichainResult out;
  if (n == 0 || cutoff == 0) {
    out.exact = n == 0;
    return out;
  }
  std::vector<Bitset> adj(n, Bitset(n));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !P.compatible(i, j)) adj[i].set(j);
    }
  });
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  CliqueSearch search(adj, cutoff);
  search.run(all);
  out.witness = search.best;
  std::sort(out.witness.begin(), out.witness.end());
  out.size = out.witness.size();
  out.exact = !search.hit_cutoff;
  return out;
}

namespace {

std::vector<Ord> intersect(const std::vector<Ord>& a,
                           const std::vector<Ord>& b) {
  std::vector<Ord> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool includes(const std::vector<Ord>& big, const std::vector<Ord>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Maximum set of pairwise non-adjacent vertices among `vs` (small inputs).
void max_independent(const std::vector<std::uint32_t>& conflict,
                     std::uint32_t cand, std::uint32_t chosen,
                     std::uint32_t& best) {
  if (cand == 0) {
    if (std::popcount(chosen) > std::popcount(best)) best = chosen;
    return;
  }
  if (std::popcount(chosen) + std::popcount(cand) <= std::popcount(best)) {
    return;
  }
  const int v = std::countr_zero(cand);
  const std::uint32_t rest = cand & ~(1u << v);
  max_independent(conflict, rest & ~conflict[v], chosen | (1u << v), best);
  max_independent(conflict, rest, chosen, best);
}

}  // namespace

std::optional<DeltaSystem> delta_system_extract(
    const std::vector<std::vector<Ord>>& family, std::size_t target) {
  const std::size_t n = family.size();
  if (n == 0) {
    if (target == 0) return DeltaSystem{};
    return std::nullopt;
  }
  const bool exact = n < kExactDeltaLimit;
  // Any root of a system with two or more members is a pairwise intersection.
  std::set<std::vector<Ord>> roots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      roots.insert(intersect(family[i], family[j]));
    }
  }
  DeltaSystem best;
  best.root = family[0];
  best.members = {0};
  best.exact = exact;
  for (const auto& root : roots) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (includes(family[i], root)) idx.push_back(i);
    }
    if (idx.size() <= best.members.size()) continue;
    auto petals_clash = [&](std::size_t a, std::size_t b) {
      return intersect(family[a], family[b]).size() != root.size();
    };
    std::vector<std::size_t> chosen;
    if (exact) {
      std::vector<std::uint32_t> conflict(idx.size(), 0);
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
          if (a != b && petals_clash(idx[a], idx[b])) conflict[a] |= 1u << b;
        }
      }
      std::uint32_t bestmask = 0;
      max_independent(conflict, (1u << idx.size()) - 1, 0, bestmask);
      for (std::size_t a = 0; a < idx.size(); ++a) {
        if (bestmask >> a & 1) chosen.push_back(idx[a]);
      }
    } else {
      for (std::size_t i : idx) {
        bool ok = true;
        for (std::size_t c : chosen) ok = ok && !petals_clash(i, c);
        if (ok) chosen.push_back(i);
      }
    }
    if (chosen.size() > best.members.size()) {
      best.root = root;
      best.members = std::move(chosen);
    }
  }
  if (best.members.size() < target) return std::nullopt;
  return best;
}

}  // namespace hdf
