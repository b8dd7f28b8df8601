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


#include "morass.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace hdf {

namespace {

std::string node_str(unsigned level, Ord index) {
  return "<" + std::to_string(level) + "," + std::to_string(index) + ">";
}

std::string values_str(const std::vector<Ord>& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

// Reinterpret g with a larger destination (the inclusion theta_b in theta_c).
OrderMap widen(const OrderMap& g, Ord dst) {
  return OrderMap(g.values(), dst);
}

// Greatest level below `limit` with the given width.
std::optional<unsigned> source_level(const MorassData& d, unsigned limit,
                                     Ord width) {
  for (unsigned b = limit; b-- > 0;) {
    if (d.thetas[b] == width) return b;
  }
  return std::nullopt;
}

std::vector<OrderMap> dedup(std::vector<OrderMap> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::string TreeNode::to_string() const { return node_str(level, index); }

Morass::Morass(MorassData data) : data_(std::move(data)) {
  const unsigned h = data_.height;
  if (data_.thetas.size() != h + 1) {
    reject("P0b: expected " + std::to_string(h + 1) + " widths, got " +
           std::to_string(data_.thetas.size()));
  }
  if (data_.steps.size() != h) {
    reject("P0b: expected " + std::to_string(h) + " steps, got " +
           std::to_string(data_.steps.size()));
  }
  splits_.resize(h);
  amalgams_.resize(h);
  for (unsigned a = 0; a < h; ++a) {
    const Ord lo = data_.thetas[a];
    const Ord hi = data_.thetas[a + 1];
    try {
      if (const auto* s = std::get_if<SuccessorStep>(&data_.steps[a])) {
        if (s->f.size() != lo) {
          reject("f_" + std::to_string(a) + " has length " +
                 std::to_string(s->f.size()) + ", expected " +
                 std::to_string(lo));
        }
        splits_[a] = OrderMap(s->f, hi);
      } else {
        const auto& am = std::get<AmalgamStep>(data_.steps[a]);
        for (const auto& vals : am.family) {
          auto src = source_level(data_, a + 1, static_cast<Ord>(vals.size()));
          if (!src) {
            reject("amalgam map " + values_str(vals) + " into level " +
                   std::to_string(a + 1) + " has no source level of width " +
                   std::to_string(vals.size()));
          }
          amalgams_[a].push_back({*src, OrderMap(vals, hi)});
        }
      }
    } catch (const Error& e) {
      std::string msg = e.what();
      if (msg.rfind("P0b", 0) != 0) msg = "P0b: step " + std::to_string(a) +
                                          ": " + msg;
      reject(msg);
    }
  }
  compute_families();
}

void Morass::compute_families() {
  const unsigned h = data_.height;
  families_.assign(h + 1, {});
  for (unsigned a = 0; a <= h; ++a) {
    families_[a].resize(h + 1 - a);
    families_[a][0] = {OrderMap::identity(data_.thetas[a])};
  }
  for (unsigned b = 0; b < h; ++b) {
    const Ord hi = data_.thetas[b + 1];
    for (unsigned a = 0; a <= b; ++a) {
      std::vector<OrderMap> next;
      if (is_successor(b)) {
        for (const auto& g : families_[a][b - a]) {
          next.push_back(widen(g, hi));
          next.push_back(compose(splits_[b], g));
        }
      } else {
        for (const auto& [src, m] : amalgams_[b]) {
          if (src < a) continue;
          for (const auto& g : families_[a][src - a]) {
            next.push_back(compose(m, g));
          }
        }
      }
      families_[a][b + 1 - a] = dedup(std::move(next));
    }
  }

  preds_.assign(h + 1, {});
  for (unsigned b = 0; b <= h; ++b) {
    preds_[b].resize(b);
    for (unsigned a = 0; a < b; ++a) {
      auto& table = preds_[b][a];
      table.assign(data_.thetas[b], {});
      for (const auto& f : families_[a][b - a]) {
        for (Ord nu = 0; nu < f.src_bound(); ++nu) table[f(nu)].push_back(nu);
      }
      for (auto& v : table) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
    }
  }
}

bool Morass::is_successor(unsigned step) const {
  return std::holds_alternative<SuccessorStep>(data_.steps.at(step));
}

Ord Morass::delta(unsigned step) const {
  if (!is_successor(step)) {
    reject("step " + std::to_string(step) + " is an amalgam step");
  }
  return std::get<SuccessorStep>(data_.steps[step]).delta;
}

const OrderMap& Morass::split(unsigned step) const {
  if (!is_successor(step)) {
    reject("step " + std::to_string(step) + " is an amalgam step");
  }
  return splits_[step];
}

const std::vector<OrderMap>& Morass::family(unsigned alpha,
                                            unsigned beta) const {
  if (alpha >= beta || beta > height()) {
    reject("family: need alpha < beta <= height, got " +
           std::to_string(alpha) + ", " + std::to_string(beta));
  }
  return families_[alpha][beta - alpha];
}

const std::vector<OrderMap>& Morass::family_weak(unsigned alpha,
                                                 unsigned beta) const {
  if (alpha > beta || beta > height()) {
    reject("family: need alpha <= beta <= height, got " +
           std::to_string(alpha) + ", " + std::to_string(beta));
  }
  return families_[alpha][beta - alpha];
}

const std::vector<Morass::SourcedMap>& Morass::amalgam(unsigned step) const {
  if (is_successor(step)) {
    reject("step " + std::to_string(step) + " is a successor step");
  }
  return amalgams_[step];
}

bool Morass::valid_node(TreeNode t) const {
  return t.level <= height() && t.index < data_.thetas[t.level];
}

std::vector<TreeNode> Morass::level_nodes(unsigned level) const {
  std::vector<TreeNode> out;
  for (Ord nu = 0; nu < theta(level); ++nu) out.push_back({level, nu});
  return out;
}

std::vector<TreeNode> Morass::nodes() const {
  std::vector<TreeNode> out;
  for (unsigned a = 0; a <= height(); ++a) {
    for (Ord nu = 0; nu < theta(a); ++nu) out.push_back({a, nu});
  }
  return out;
}

const std::vector<Ord>& Morass::predecessors(TreeNode t,
                                             unsigned alpha) const {
  if (!valid_node(t) || alpha >= t.level) {
    reject("predecessors: bad node " + t.to_string() + " or level " +
           std::to_string(alpha));
  }
  return preds_[t.level][alpha][t.index];
}

bool Morass::precedes(TreeNode s, TreeNode t) const {
  if (!valid_node(s) || !valid_node(t) || s.level >= t.level) return false;
  const auto& v = preds_[t.level][s.level][t.index];
  return std::binary_search(v.begin(), v.end(), s.index);
}

OrderMap Morass::pi(TreeNode s, TreeNode t) const {
  if (!precedes(s, t)) {
    reject("pi: " + s.to_string() + " is not below " + t.to_string());
  }
  std::optional<OrderMap> out;
  for (const auto& f : families_[s.level][t.level - s.level]) {
    if (f(s.index) != t.index) continue;
    OrderMap r = restrict(f, s.index + 1);
    if (!out) {
      out = std::move(r);
    } else if (*out != r) {
      inconsistent("pi: witnesses for " + s.to_string() + " below " +
                   t.to_string() + " disagree: " + out->to_string() + " vs " +
                   r.to_string());
    }
  }
  return *out;
}

OrderMap Morass::pi_weak(TreeNode s, TreeNode t) const {
  if (s == t && valid_node(t)) {
    return restrict(OrderMap::identity(theta(t.level)), t.index + 1);
  }
  return pi(s, t);
}

TreeNode Morass::level_predecessor(TreeNode t, unsigned alpha) const {
  if (!valid_node(t) || alpha > t.level) {
    reject("level_predecessor: bad node " + t.to_string() + " or level " +
           std::to_string(alpha));
  }
  if (alpha == t.level) return t;
  const auto& v = preds_[t.level][alpha][t.index];
  if (v.size() != 1) {
    inconsistent("level_predecessor: " + t.to_string() + " has " +
                 std::to_string(v.size()) + " predecessors at level " +
                 std::to_string(alpha));
  }
  return {alpha, v.front()};
}

std::uint64_t Morass::branch_count() const {
  std::uint64_t leaves = theta(height());
  for (unsigned a = 0; a < height(); ++a) {
    std::vector<bool> has_succ(theta(a), false);
    for (const auto& nus : preds_[a + 1][a]) {
      for (Ord nu : nus) has_succ[nu] = true;
    }
    leaves += std::count(has_succ.begin(), has_succ.end(), false);
  }
  return leaves;
}

// ---------------------------------------------------------------------------

namespace {

void check_p0a(const MorassData& d, Report& r) {
  if (d.thetas.empty() || d.thetas[0] != 1) {
    r.fail("P0a", "theta_0 = " +
                      (d.thetas.empty() ? std::string("missing")
                                        : std::to_string(d.thetas[0])),
           "theta_0 must be 1");
    return;
  }
  for (std::size_t a = 0; a < d.thetas.size(); ++a) {
    if (d.thetas[a] == 0) {
      r.fail("P0a", "theta_" + std::to_string(a) + " = 0",
             "every width must be positive");
      return;
    }
  }
  r.pass("P0a");
}

bool same_set(const std::vector<OrderMap>& a, std::vector<OrderMap> b) {
  return a == dedup(std::move(b));
}

}  // namespace

Report validate(const Morass& m) {
  Report r;
  const MorassData& d = m.data();
  const unsigned h = m.height();
  check_p0a(d, r);
  r.pass("P0b", "all maps order-preserving with correct bounds");
  r.pass("P1", "families are finite");

  // P2: closure of families under composition through every middle level.
  {
    std::string witness;
    for (unsigned a = 0; a < h && witness.empty(); ++a) {
      for (unsigned b = a + 1; b < h && witness.empty(); ++b) {
        for (unsigned c = b + 1; c <= h && witness.empty(); ++c) {
          std::vector<OrderMap> comp;
          for (const auto& f : m.family(b, c)) {
            for (const auto& g : m.family(a, b)) comp.push_back(compose(f, g));
          }
          if (!same_set(m.family(a, c), comp)) {
            witness = "F_" + std::to_string(a) + "," + std::to_string(c) +
                      " differs from F_" + std::to_string(b) + "," +
                      std::to_string(c) + " o F_" + std::to_string(a) + "," +
                      std::to_string(b);
            for (const auto& f : m.family(a, c)) {
              if (std::find(comp.begin(), comp.end(), f) == comp.end()) {
                witness += "; uncovered " + f.to_string();
                break;
              }
            }
          }
        }
      }
    }
    r.add("P2", witness.empty(), witness);
  }

  // P3: successor splits.
  {
    std::string witness;
    for (unsigned a = 0; a < h && witness.empty(); ++a) {
      if (!m.is_successor(a)) continue;
      const Ord th = m.theta(a);
      const Ord dl = m.delta(a);
      const OrderMap& f = m.split(a);
      const std::string tag = "f_" + std::to_string(a) + " = " + f.to_string();
      if (dl >= th) {
        witness = tag + ": delta " + std::to_string(dl) + " not below theta " +
                  std::to_string(th);
      } else if (critical_point(f).value_or(th) < dl) {
        witness = tag + ": not the identity below delta " + std::to_string(dl) +
                  " (moves " + std::to_string(*critical_point(f)) + ")";
      } else if (f(dl) < th) {
        witness = tag + ": f(delta) = " + std::to_string(f(dl)) +
                  " is below theta " + std::to_string(th);
      }
    }
    r.add("P3", witness.empty(), witness);
  }

  // P4 at amalgam levels: pairs of maps into the level factor through one map
  // from a level gamma with max(beta1, beta2) <= gamma below the level.
  {
    std::string witness;
    for (unsigned a = 0; a < h && witness.empty(); ++a) {
      if (m.is_successor(a)) continue;
      const unsigned lam = a + 1;
      for (unsigned b1 = 0; b1 < lam && witness.empty(); ++b1) {
        for (unsigned b2 = b1; b2 < lam && witness.empty(); ++b2) {
          for (const auto& f1 : m.family(b1, lam)) {
            for (const auto& f2 : m.family(b2, lam)) {
              bool found = false;
              for (unsigned g = b2; g < lam && !found; ++g) {
                for (const auto& gm : m.family(g, lam)) {
                  bool h1 = false, h2 = false;
                  for (const auto& x : m.family_weak(b1, g)) {
                    if (compose(gm, x) == f1) h1 = true;
                  }
                  for (const auto& x : m.family_weak(b2, g)) {
                    if (compose(gm, x) == f2) h2 = true;
                  }
                  if (h1 && h2) {
                    found = true;
                    break;
                  }
                }
              }
              if (!found) {
                witness = "level " + std::to_string(lam) + ": " +
                          f1.to_string() + " from " + std::to_string(b1) +
                          " and " + f2.to_string() + " from " +
                          std::to_string(b2) + " have no common factor";
                break;
              }
            }
            if (!witness.empty()) break;
          }
        }
      }
    }
    r.add("P4", witness.empty(), witness);
  }

  // P5: every level above 0 is covered by the ranges of maps into it.
  {
    std::string witness;
    for (unsigned b = 1; b <= h && witness.empty(); ++b) {
      std::vector<bool> hit(m.theta(b), false);
      for (unsigned g = 0; g < b; ++g) {
        for (const auto& f : m.family(g, b)) {
          for (Ord x : f.values()) hit[x] = true;
        }
      }
      for (Ord x = 0; x < m.theta(b); ++x) {
        if (!hit[x]) {
          witness = "ordinal " + std::to_string(x) + " of level " +
                    std::to_string(b) + " lies in no range";
          break;
        }
      }
    }
    r.add("P5", witness.empty(), witness);
  }

  // Coherence: f1(t1) = f2(t2) forces t1 = t2 and agreement below.
  {
    std::string witness;
    for (unsigned a = 0; a < h && witness.empty(); ++a) {
      for (unsigned b = a + 1; b <= h && witness.empty(); ++b) {
        const auto& fam = m.family(a, b);
        std::map<Ord, std::pair<Ord, std::size_t>> seen;
        for (std::size_t i = 0; i < fam.size() && witness.empty(); ++i) {
          for (Ord t = 0; t < fam[i].src_bound(); ++t) {
            auto [it, fresh] = seen.emplace(fam[i](t), std::make_pair(t, i));
            if (fresh) continue;
            const auto [t0, j] = it->second;
            const auto& g = fam[j];
            bool ok = t0 == t;
            for (Ord x = 0; ok && x < t; ++x) ok = fam[i](x) == g(x);
            if (!ok) {
              witness = "F_" + std::to_string(a) + "," + std::to_string(b) +
                        ": " + g.to_string() + " at " + std::to_string(t0) +
                        " and " + fam[i].to_string() + " at " +
                        std::to_string(t) + " both reach " +
                        std::to_string(fam[i](t));
              break;
            }
          }
        }
      }
    }
    r.add("coherence", witness.empty(), witness);
  }
  return r;
}

Report validate(const MorassData& data) {
  try {
    return validate(Morass(data));
  } catch (const Error& e) {
    Report r;
    check_p0a(data, r);
    r.fail("P0b", e.what());
    for (const char* name : {"P1", "P2", "P3", "P4", "P5", "coherence"}) {
      r.skip(name, "data is not typed");
    }
    return r;
  }
}

Report check_tree_lemmas(const Morass& m) {
  Report r;
  const unsigned h = m.height();
  const auto all = m.nodes();

  {
    std::string witness;
    for (const auto& t : all) {
      std::vector<TreeNode> chain;
      for (unsigned a = 0; a < t.level; ++a) {
        const auto& v = m.predecessors(t, a);
        if (v.size() != 1) {
          witness = t.to_string() + " has " + std::to_string(v.size()) +
                    " predecessors at level " + std::to_string(a);
          break;
        }
        chain.push_back({a, v.front()});
      }
      for (std::size_t i = 0; witness.empty() && i + 1 < chain.size(); ++i) {
        if (!m.precedes(chain[i], chain[i + 1])) {
          witness = "predecessors " + chain[i].to_string() + " and " +
                    chain[i + 1].to_string() + " of " + t.to_string() +
                    " are not comparable";
        }
      }
      if (!witness.empty()) break;
    }
    r.add("tree", witness.empty(), witness);
  }

  try {
    std::string wb, wc;
    for (const auto& t1 : all) {
      for (const auto& t2 : all) {
        if (!m.precedes(t1, t2)) continue;
        const OrderMap p12 = m.pi(t1, t2);
        // (c): restrictions of pi are pi's of the moved pairs.
        for (Ord nu = 0; nu <= t1.index && wc.empty(); ++nu) {
          TreeNode s2{t1.level, nu}, u2{t2.level, p12(nu)};
          if (!m.precedes(s2, u2) || m.pi(s2, u2) != restrict(p12, nu + 1)) {
            wc = "pi(" + t1.to_string() + "," + t2.to_string() + ") at " +
                 std::to_string(nu) + ": " + s2.to_string() + " vs " +
                 u2.to_string();
          }
        }
        for (const auto& t0 : all) {
          if (!wb.empty()) break;
          if (!m.precedes(t0, t1)) continue;
          const OrderMap p01 = m.pi(t0, t1);
          const OrderMap lhs = m.pi(t0, t2);
          const OrderMap rhs =
              compose(p12, OrderMap(p01.values(), t1.index + 1));
          if (lhs.values() != rhs.values()) {
            wb = t0.to_string() + " < " + t1.to_string() + " < " +
                 t2.to_string() + ": " + lhs.to_string() + " vs " +
                 rhs.to_string();
          }
        }
      }
    }
    r.add("pi-commutes", wb.empty(), wb);
    r.add("pi-restriction", wc.empty(), wc);
  } catch (const Error& e) {
    r.fail("pi-commutes", e.what());
    r.skip("pi-restriction", "pi is not well defined");
  }

  {
    std::string witness;
    for (unsigned a = 0; a < h && witness.empty(); ++a) {
      if (m.is_successor(a)) continue;
      for (const auto& t : m.level_nodes(a + 1)) {
        std::vector<bool> hit(t.index + 1, false);
        for (unsigned b = 0; b <= a; ++b) {
          for (Ord nu : m.predecessors(t, b)) {
            const OrderMap p = m.pi({b, nu}, t);
            for (Ord x : p.values()) hit[x] = true;
          }
        }
        auto miss = std::find(hit.begin(), hit.end(), false);
        if (miss != hit.end()) {
          witness = t.to_string() + ": " +
                    std::to_string(miss - hit.begin()) +
                    " in no range of pi";
          break;
        }
      }
    }
    r.add("limit-cover", witness.empty(), witness);
  }
  return r;
}

MorassData successor_data(const std::vector<Ord>& deltas) {
  MorassData d;
  d.height = static_cast<unsigned>(deltas.size());
  d.thetas = {1};
  for (Ord dl : deltas) {
    const Ord th = d.thetas.back();
    if (dl >= th) {
      reject("P3: delta " + std::to_string(dl) + " not below theta " +
             std::to_string(th));
    }
    SuccessorStep s;
    s.delta = dl;
    for (Ord g = 0; g < th; ++g) s.f.push_back(g < dl ? g : th + g - dl);
    d.thetas.push_back(2 * th - dl);
    d.steps.emplace_back(std::move(s));
  }
  return d;
}

Morass build_doubling(unsigned height) {
  if (height > 20) reject("doubling morass height " +
                          std::to_string(height) + " is too large");
  return Morass(successor_data(std::vector<Ord>(height, 0)));
}

Morass build_custom(MorassData data) {
  Report r = validate(data);
  if (const auto* f = r.first_failure()) {
    reject(f->name + ": " + f->witness);
  }
  return Morass(std::move(data));
}

Morass build_random(unsigned height, Ord theta_cap, std::uint64_t seed) {
  if (height > 20) reject("random morass height " + std::to_string(height) +
                          " is too large");
  std::mt19937_64 rng(seed);
  std::vector<Ord> deltas;
  Ord th = 1;
  for (unsigned a = 0; a < height; ++a) {
    // 2 theta - delta <= cap when delta >= 2 theta - cap.
    Ord lo = 2 * th > theta_cap ? std::min<Ord>(2 * th - theta_cap, th - 1) : 0;
    Ord dl = lo + static_cast<Ord>(rng() % (th - lo));
    deltas.push_back(dl);
    th = 2 * th - dl;
  }
  return Morass(successor_data(deltas));
}

}  // namespace hdf
