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


#include "fs_system.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>

#include "errors.hpp"
#include "parallel.hpp"

namespace hdf {

std::string to_string(const FsCondition& p) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [x, c] : p) {
    out << (first ? "" : ",") << x << "->" << c;
    first = false;
  }
  out << '}';
  return out.str();
}

std::optional<FsCondition> FsSystem::sigma_inverse(
    TreeNode s, TreeNode t, const FsCondition& p) const {
  for (const auto& cand : universe(s.index + 1)) {
    if (sigma(s, t, cand) == p) return cand;
  }
  return std::nullopt;
}

namespace {

FsCondition restrict_below(const FsCondition& p, Ord bound) {
  return FsCondition(p.begin(), p.lower_bound(bound));
}

FsCondition pull(const OrderMap& f, const FsCondition& p) {
  FsCondition out;
  for (const auto& [x, c] : p) {
    if (auto y = f.preimage(x)) out.emplace(*y, c);
  }
  return out;
}

// Union of two partial functions; none on a clash.
std::optional<FsCondition> merge(const FsCondition& a, const FsCondition& b) {
  FsCondition out = a;
  for (const auto& [x, c] : b) {
    auto [it, fresh] = out.emplace(x, c);
    if (!fresh && it->second != c) return std::nullopt;
  }
  return out;
}

}  // namespace

PartialFunctionSystem::PartialFunctionSystem(Morass m, Color colors,
                                             bool harmonized, std::string name)
    : FsSystem(std::move(m)),
      colors_(colors),
      harmonized_(harmonized),
      name_(std::move(name)) {
  if (colors_ == 0) reject("partial function system needs a color");
}

bool PartialFunctionSystem::in_level(unsigned level,
                                     const FsCondition& p) const {
  if (!harmonized_ || level == 0) return true;
  const unsigned a = level - 1;
  if (m_.is_successor(a)) {
    FsCondition low = restrict_below(p, m_.theta(a));
    FsCondition back = pull(m_.split(a), p);
    if (!in_level(a, low) || !in_level(a, back)) return false;
    auto u = merge(low, back);
    return u && in_level(a, *u);
  }
  for (unsigned b = 0; b < level; ++b) {
    for (const auto& g : m_.family(b, level)) {
      FsCondition back = pull(g, p);
      if (back.size() == p.size() && in_level(b, back)) return true;
    }
  }
  return false;
}

bool PartialFunctionSystem::contains(Ord eta, const FsCondition& p) const {
  if (eta > m_.top_width()) return false;
  for (const auto& [x, c] : p) {
    if (x >= eta || c >= colors_) return false;
  }
  unsigned level = 0;
  while (m_.theta(level) < eta) ++level;
  return in_level(level, p);
}

std::vector<FsCondition> PartialFunctionSystem::universe(Ord eta) const {
  double total = 1;
  for (Ord i = 0; i < eta; ++i) total *= colors_ + 1;
  if (total > double(1 << 20)) {
    throw Error(ErrorCode::kSizeLimit,
                "universe of P_" + std::to_string(eta) + " would scan about " +
                    std::to_string(static_cast<std::uint64_t>(total)) +
                    " partial functions");
  }
  std::vector<FsCondition> out;
  std::vector<Color> digit(eta, 0);  // 0 = undefined, c + 1 = color c
  while (true) {
    FsCondition p;
    for (Ord i = 0; i < eta; ++i) {
      if (digit[i]) p.emplace(i, digit[i] - 1);
    }
    if (contains(eta, p)) out.push_back(std::move(p));
    Ord i = 0;
    while (i < eta && digit[i] == colors_) digit[i++] = 0;
    if (i == eta) break;
    ++digit[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PartialFunctionSystem::leq(const FsCondition& p,
                                const FsCondition& q) const {
  for (const auto& [x, c] : q) {
    auto it = p.find(x);
    if (it == p.end() || it->second != c) return false;
  }
  return true;
}

FsCondition PartialFunctionSystem::sigma(TreeNode s, TreeNode t,
                                         const FsCondition& p) const {
  const OrderMap pi = m_.pi_weak(s, t);
  FsCondition out;
  for (const auto& [x, c] : p) {
    if (x >= pi.src_bound()) {
      reject("sigma: " + to_string(p) + " is not in P_" +
             std::to_string(pi.src_bound()));
    }
    out.emplace(pi(x), c);
  }
  return out;
}

std::optional<FsCondition> PartialFunctionSystem::sigma_inverse(
    TreeNode s, TreeNode t, const FsCondition& p) const {
  const OrderMap pi = m_.pi_weak(s, t);
  FsCondition back = pull(pi, p);
  if (back.size() != p.size() || !contains(s.index + 1, back)) {
    return std::nullopt;
  }
  return back;
}

FsCondition PartialFunctionSystem::e(unsigned alpha,
                                     const FsCondition& p) const {
  FsCondition out = restrict_below(p, m_.theta(alpha));
  if (m_.is_successor(alpha)) {
    // Values already fixed below theta_alpha win; harmonized conditions
    // never clash here.
    for (const auto& [x, c] : pull(m_.split(alpha), p)) out.emplace(x, c);
  }
  return out;
}

namespace {

class BrokenFs5 : public FsDecorator {
 public:
  using FsDecorator::FsDecorator;
  std::string name() const override { return "broken-fs5"; }
  FsCondition sigma(TreeNode s, TreeNode t,
                    const FsCondition& p) const override {
    FsCondition out = base_->sigma(s, t, p);
    if (s != t && m_.pi_weak(s, t).is_identity()) {
      for (auto& [x, c] : out) c ^= 1;
    }
    return out;
  }
  std::optional<FsCondition> sigma_inverse(
      TreeNode s, TreeNode t, const FsCondition& p) const override {
    return FsSystem::sigma_inverse(s, t, p);
  }
};

class LossyReduction : public FsDecorator {
 public:
  using FsDecorator::FsDecorator;
  std::string name() const override { return "lossy-reduction"; }
  FsCondition e(unsigned, const FsCondition&) const override { return {}; }
};

class NonMonotoneReduction : public FsDecorator {
 public:
  using FsDecorator::FsDecorator;
  std::string name() const override { return "non-monotone-reduction"; }
  FsCondition e(unsigned alpha, const FsCondition& p) const override {
    if (p.size() > 1) return {};
    return base_->e(alpha, p);
  }
};

}  // namespace

std::vector<std::string> fs_fixture_names() {
  return {"subset",     "harmonized-cohen", "plain-cohen",
          "broken-fs5", "lossy-reduction",  "non-monotone-reduction"};
}

std::unique_ptr<FsSystem> make_fs_fixture(const std::string& name,
                                          const Morass& m) {
  if (name == "subset") {
    return std::make_unique<PartialFunctionSystem>(m, 1, false, name);
  }
  if (name == "harmonized-cohen") {
    return std::make_unique<PartialFunctionSystem>(m, 2, true, name);
  }
  if (name == "plain-cohen") {
    return std::make_unique<PartialFunctionSystem>(m, 2, false, name);
  }
  if (name == "broken-fs5") {
    return std::make_unique<BrokenFs5>(make_fs_fixture("harmonized-cohen", m));
  }
  if (name == "lossy-reduction") {
    return std::make_unique<LossyReduction>(
        make_fs_fixture("harmonized-cohen", m));
  }
  if (name == "non-monotone-reduction") {
    return std::make_unique<NonMonotoneReduction>(make_fs_fixture("subset", m));
  }
  reject("unknown FS fixture '" + name + "'");
}

FsUniverse::FsUniverse(const FsSystem& s) : s_(&s) {
  const Ord top = s.morass().top_width();
  elements_.resize(top + 1);
  index_.resize(top + 1);
  for (Ord eta = 0; eta <= top; ++eta) {
    elements_[eta] = s.universe(eta);
    for (std::size_t i = 0; i < elements_[eta].size(); ++i) {
      index_[eta].emplace(elements_[eta][i], i);
    }
    const auto& el = elements_[eta];
    posets_.emplace_back(el.size(), [&](std::size_t i, std::size_t j) {
      return s.leq(el[i], el[j]);
    });
  }
}

std::optional<std::size_t> FsUniverse::index(Ord eta,
                                             const FsCondition& p) const {
  if (eta >= index_.size()) return std::nullopt;
  auto it = index_[eta].find(p);
  if (it == index_[eta].end()) return std::nullopt;
  return it->second;
}

bool FsUniverse::compatible(Ord eta, const FsCondition& p,
                            const FsCondition& q) const {
  auto i = index(eta, p), j = index(eta, q);
  if (!i || !j) {
    reject("compatible: condition outside P_" + std::to_string(eta));
  }
  return posets_[eta].compatible(*i, *j);
}

// ---------------------------------------------------------------------------

namespace {

struct Checker {
  const FsUniverse& u;
  const FsSystem& s;
  const Morass& m;

  Namer namer(Ord eta) const {
    return [this, eta](std::size_t i) { return to_string(u.elements(eta)[i]); };
  }

  // sigma as an index map P_{nu(s)+1} -> P_{nu(t)+1}; the witness names the
  // first condition whose image leaves the target.
  std::optional<std::vector<std::size_t>> index_map(TreeNode a, TreeNode b,
                                                    std::string& witness) {
    const Ord src = a.index + 1, dst = b.index + 1;
    std::vector<std::size_t> out;
    for (const auto& p : u.elements(src)) {
      auto j = u.index(dst, s.sigma(a, b, p));
      if (!j) {
        witness = "sigma_" + a.to_string() + b.to_string() + "(" +
                  to_string(p) + ") = " + to_string(s.sigma(a, b, p)) +
                  " is not in P_" + std::to_string(dst);
        return std::nullopt;
      }
      out.push_back(*j);
    }
    return out;
  }

  std::vector<std::pair<TreeNode, TreeNode>> tree_pairs() const {
    std::vector<std::pair<TreeNode, TreeNode>> out;
    const auto all = m.nodes();
    for (const auto& a : all) {
      for (const auto& b : all) {
        if (m.precedes(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }

  void fs1(Report& r) {
    const Ord top = u.top();
    std::string w;
    for (Ord eta = 0; eta <= top && w.empty(); ++eta) {
      for (Ord nu = eta + 1; nu <= top && w.empty(); ++nu) {
        std::vector<std::size_t> id;
        for (const auto& p : u.elements(eta)) {
          auto j = u.index(nu, p);
          if (!j) {
            w = to_string(p) + " is in P_" + std::to_string(eta) +
                " but not in P_" + std::to_string(nu);
            break;
          }
          id.push_back(*j);
        }
        if (!w.empty()) break;
        auto rep = check_embedding(id, u.poset(eta), u.poset(nu), nullptr,
                                   namer(eta), namer(nu));
        if (!rep.is_embedding) {
          w = "P_" + std::to_string(eta) + " in P_" + std::to_string(nu) +
              ": " + rep.clauses.first_failure()->witness;
        }
      }
    }
    r.add("FS1", w.empty(), w, "no limit ordinals below the top width");
  }

  void fs2(Report& r) {
    std::string w;
    const auto pairs = tree_pairs();
    for (const auto& [a, b] : pairs) {
      auto map = index_map(a, b, w);
      if (!map) break;
      std::vector<std::size_t> sorted = *map;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        w = "sigma_" + a.to_string() + b.to_string() + " is not injective";
        break;
      }
      auto rep = check_embedding(*map, u.poset(a.index + 1),
                                 u.poset(b.index + 1), nullptr,
                                 namer(a.index + 1), namer(b.index + 1));
      if (!rep.is_embedding) {
        w = "sigma_" + a.to_string() + b.to_string() + ": clause " +
            rep.clauses.first_failure()->name + ": " +
            rep.clauses.first_failure()->witness;
        break;
      }
      for (const auto& c : m.nodes()) {
        if (!m.precedes(b, c)) continue;
        for (const auto& p : u.elements(a.index + 1)) {
          if (s.sigma(a, c, p) != s.sigma(b, c, s.sigma(a, b, p))) {
            w = "not commutative on " + a.to_string() + " < " +
                b.to_string() + " < " + c.to_string() + " at " + to_string(p);
            break;
          }
        }
        if (!w.empty()) break;
      }
      if (!w.empty()) break;
    }
    for (unsigned a = 0; a < m.height() && w.empty(); ++a) {
      if (m.is_successor(a)) continue;
      for (const auto& t : m.level_nodes(a + 1)) {
        for (const auto& p : u.elements(t.index + 1)) {
          bool hit = false;
          for (unsigned b = 0; b <= a && !hit; ++b) {
            for (Ord nu : m.predecessors(t, b)) {
              TreeNode sn{b, nu};
              for (const auto& q : u.elements(nu + 1)) {
                if (s.sigma(sn, t, q) == p) {
                  hit = true;
                  break;
                }
              }
            }
          }
          if (!hit) {
            w = to_string(p) + " in P_" + std::to_string(t.index + 1) +
                " is no image below limit node " + t.to_string();
            break;
          }
        }
        if (!w.empty()) break;
      }
    }
    r.add("FS2", w.empty(), w);
  }

  void fs3(Report& r) {
    std::string w;
    for (unsigned a = 0; a < m.height() && w.empty(); ++a) {
      for (const auto& p : u.elements(m.theta(a + 1))) {
        FsCondition q = s.e(a, p);
        if (!u.index(m.theta(a), q)) {
          w = "e_" + std::to_string(a) + "(" + to_string(p) + ") = " +
              to_string(q) + " is not in P_" + std::to_string(m.theta(a));
          break;
        }
      }
    }
    r.add("FS3", w.empty(), w);
  }

  void fs4(Report& r) {
    std::string w;
    for (const auto& [a, b] : tree_pairs()) {
      const OrderMap pi = m.pi(a, b);
      for (Ord nu = 0; nu <= a.index && w.empty(); ++nu) {
        TreeNode a2{a.level, nu}, b2{b.level, pi(nu)};
        for (const auto& p : u.elements(nu + 1)) {
          if (s.sigma(a, b, p) != s.sigma(a2, b2, p)) {
            w = "sigma_" + a.to_string() + b.to_string() +
                " does not extend sigma_" + a2.to_string() + b2.to_string() +
                " at " + to_string(p);
            break;
          }
        }
      }
      if (!w.empty()) break;
    }
    r.add("FS4", w.empty(), w);
  }

  void fs5(Report& r) {
    std::string w;
    for (const auto& [a, b] : tree_pairs()) {
      if (!m.pi(a, b).is_identity()) continue;
      for (const auto& p : u.elements(a.index + 1)) {
        if (s.sigma(a, b, p) != p) {
          w = "pi_" + a.to_string() + b.to_string() + " is the identity but " +
              "sigma sends " + to_string(p) + " to " +
              to_string(s.sigma(a, b, p));
          break;
        }
      }
      if (!w.empty()) break;
    }
    r.add("FS5", w.empty(), w);
  }

  // Designated reductions e_a as an index map P_{theta_{a+1}} -> P_{theta_a}.
  std::optional<std::vector<std::size_t>> e_map(unsigned a) {
    std::vector<std::size_t> out;
    for (const auto& p : u.elements(m.theta(a + 1))) {
      auto j = u.index(m.theta(a), s.e(a, p));
      if (!j) return std::nullopt;
      out.push_back(*j);
    }
    return out;
  }

  TreeNode sigma_src(unsigned a) const { return {a, m.theta(a) - 1}; }
  TreeNode sigma_dst(unsigned a) const {
    return {a + 1, m.split(a)(m.theta(a) - 1)};
  }

  void fs6_7(Report& r, bool fs3_ok) {
    std::string wa, wb, w7a, w7b;
    for (unsigned a = 0; a < m.height(); ++a) {
      const Ord lo = m.theta(a), hi = m.theta(a + 1);
      auto e = fs3_ok ? e_map(a) : std::nullopt;
      if (wa.empty()) {
        std::vector<std::size_t> id;
        for (const auto& p : u.elements(lo)) {
          auto j = u.index(hi, p);
          if (!j) {
            wa = to_string(p) + " not in P_" + std::to_string(hi);
            break;
          }
          id.push_back(*j);
        }
        if (wa.empty()) {
          auto rep = check_embedding(id, u.poset(lo), u.poset(hi),
                                     e ? &*e : nullptr, namer(lo), namer(hi));
          if (const auto* f = rep.clauses.first_failure()) {
            wa = "level " + std::to_string(a) + " clause " + f->name + ": " +
                 f->witness;
          }
        }
      }
      if (w7a.empty()) {
        for (const auto& p : u.elements(lo)) {
          if (s.e(a, p) != p) {
            w7a = "e_" + std::to_string(a) + "(" + to_string(p) + ") = " +
                  to_string(s.e(a, p));
            break;
          }
        }
      }
      if (!m.is_successor(a)) continue;
      const TreeNode src = sigma_src(a), dst = sigma_dst(a);
      if (wb.empty()) {
        std::string w;
        auto map = index_map(src, dst, w);
        if (!map) {
          wb = w;
        } else {
          auto rep = check_embedding(*map, u.poset(lo), u.poset(hi),
                                     e ? &*e : nullptr, namer(lo), namer(hi));
          if (const auto* f = rep.clauses.first_failure()) {
            wb = "sigma_" + std::to_string(a) + " clause " + f->name + ": " +
                 f->witness;
          }
        }
      }
      if (w7b.empty()) {
        for (const auto& p : u.elements(lo)) {
          FsCondition img = s.sigma(src, dst, p);
          if (s.e(a, img) != p) {
            w7b = "e_" + std::to_string(a) + "(" + to_string(img) + ") = " +
                  to_string(s.e(a, img)) + ", expected " + to_string(p);
            break;
          }
        }
      }
    }
    r.add("FS6a", wa.empty(), wa);
    r.add("FS6b", wb.empty(), wb);
    r.add("FS7a", w7a.empty(), w7a);
    r.add("FS7b", w7b.empty(), w7b);
  }
};

}  // namespace

Report validate_fs(const FsUniverse& u) {
  Report r;
  Checker c{u, u.system(), u.system().morass()};
  c.fs1(r);
  c.fs2(r);
  c.fs3(r);
  c.fs4(r);
  c.fs5(r);
  c.fs6_7(r, !r.failed("FS3"));
  return r;
}

StarDecomposition star(const FsSystem& s, const FsCondition& p) {
  const Morass& m = s.morass();
  const unsigned h = m.height();
  const Ord top = m.top_width();
  if (!s.contains(top, p)) {
    reject("star: " + to_string(p) + " is not in the top poset");
  }
  StarDecomposition out;
  unsigned prev = h + 1;
  FsCondition cur = p;
  while (true) {
    StarStage st;
    st.p = cur;
    Ord nu = 0;
    while (nu < top && !s.contains(nu + 1, cur)) ++nu;
    if (nu == top) {
      inconsistent("star: " + to_string(cur) + " lies in no P_eta");
    }
    st.nu = nu;
    st.t = {h, nu};
    for (unsigned a = 0; a <= h; ++a) {
      if (a == h) {
        st.values.emplace(h, cur);
      } else if (auto inv = s.sigma_inverse(m.level_predecessor(st.t, a),
                                            st.t, cur)) {
        st.values.emplace(a, *inv);
      }
    }
    st.gamma = st.values.begin()->first;
    if (st.gamma >= prev) {
      inconsistent("star: gamma sequence does not decrease at " +
                   std::to_string(st.gamma) + " for " + to_string(p));
    }
    for (auto it = st.values.lower_bound(st.gamma);
         it != st.values.end() && it->first < prev; ++it) {
      out.pstar.insert(*it);
    }
    out.supp.push_back(st.gamma);
    prev = st.gamma;
    const unsigned g = st.gamma;
    FsCondition next = g ? s.e(g - 1, st.values.at(g)) : FsCondition{};
    out.stages.push_back(std::move(st));
    if (g == 0) break;
    cur = std::move(next);
  }
  std::sort(out.supp.begin(), out.supp.end());
  return out;
}

std::vector<unsigned> support(const FsSystem& s, const FsCondition& p) {
  return star(s, p).supp;
}

std::string to_string(Thm32Verdict v) {
  switch (v) {
    case Thm32Verdict::kHypothesisFalse:
      return "hypothesis-false";
    case Thm32Verdict::kConfirmed:
      return "confirmed";
    case Thm32Verdict::kCounterexample:
      return "COUNTEREXAMPLE";
  }
  return "?";
}

namespace {

Thm32Result thm32_from_stars(const FsUniverse& u, const StarDecomposition& a,
                             const StarDecomposition& b, const FsCondition& p,
                             const FsCondition& q) {
  const Morass& m = u.system().morass();
  std::vector<unsigned> common;
  std::set_intersection(a.supp.begin(), a.supp.end(), b.supp.begin(),
                        b.supp.end(), std::back_inserter(common));
  Thm32Result r;
  r.alpha = common.back();  // both supports contain 0
  const Ord w = m.theta(r.alpha);
  r.star_compatible =
      u.compatible(w, a.pstar.at(r.alpha), b.pstar.at(r.alpha));
  r.compatible = u.compatible(u.top(), p, q);
  if (!r.star_compatible) {
    r.verdict = Thm32Verdict::kHypothesisFalse;
  } else {
    r.verdict = r.compatible ? Thm32Verdict::kConfirmed
                             : Thm32Verdict::kCounterexample;
  }
  return r;
}

}  // namespace

Thm32Result check_thm32(const FsUniverse& u, const FsCondition& p,
                        const FsCondition& q) {
  const FsSystem& s = u.system();
  return thm32_from_stars(u, star(s, p), star(s, q), p, q);
}

Thm32Sweep thm32_sweep(const FsUniverse& u) {
  const auto& top = u.elements(u.top());
  const std::size_t n = top.size();
  std::vector<StarDecomposition> stars(n);
  parallel_for(n, [&](std::size_t i) { stars[i] = star(u.system(), top[i]); });
  std::vector<Thm32Sweep> rows(n);
  parallel_for(n, [&](std::size_t i) {
    auto& row = rows[i];
    for (std::size_t j = i; j < n; ++j) {
      auto r = thm32_from_stars(u, stars[i], stars[j], top[i], top[j]);
      ++row.pairs;
      if (r.verdict == Thm32Verdict::kHypothesisFalse) continue;
      ++row.hypothesis_true;
      if (r.verdict == Thm32Verdict::kConfirmed) {
        ++row.confirmed;
      } else if (row.counterexamples++ == 0) {
        row.first_counterexample = "p = " + to_string(top[i]) + ", q = " +
                                   to_string(top[j]) + ", alpha = " +
                                   std::to_string(r.alpha);
      }
    }
  });
  Thm32Sweep out;
  for (const auto& row : rows) {
    out.pairs += row.pairs;
    out.hypothesis_true += row.hypothesis_true;
    out.confirmed += row.confirmed;
    out.counterexamples += row.counterexamples;
    if (out.first_counterexample.empty()) {
      out.first_counterexample = row.first_counterexample;
    }
  }
  return out;
}

QResult build_Q(const FsUniverse& u) {
  const FsSystem& s = u.system();
  const Morass& m = s.morass();
  QResult out;
  std::string w;
  for (unsigned a = 0; a < m.height() && w.empty(); ++a) {
    const auto& el = u.elements(m.theta(a + 1));
    const auto& P = u.poset(m.theta(a + 1));
    for (std::size_t i = 0; i < el.size() && w.empty(); ++i) {
      for (std::size_t j = 0; j < el.size(); ++j) {
        if (P.leq(i, j) && !s.leq(s.e(a, el[i]), s.e(a, el[j]))) {
          w = "e_" + std::to_string(a) + ": " + to_string(el[i]) + " <= " +
              to_string(el[j]) + " but " + to_string(s.e(a, el[i])) +
              " is not <= " + to_string(s.e(a, el[j]));
          break;
        }
      }
    }
  }
  out.report.add("monotone", w.empty(), w);
  if (!w.empty()) return out;
  out.built = true;

  const auto& top = u.elements(u.top());
  std::map<QCondition, std::size_t> index;
  for (const auto& p : top) {
    StarDecomposition d = star(s, p);
    QCondition q;
    for (unsigned a : d.supp) q.emplace(a, d.pstar.at(a));
    auto [it, fresh] = index.emplace(q, out.elements.size());
    if (fresh) out.elements.push_back(q);
    out.embedding.push_back(it->second);
  }
  const auto& el = out.elements;
  out.order = FinitePoset(el.size(), [&](std::size_t i, std::size_t j) {
    for (const auto& [a, c] : el[j]) {
      auto it = el[i].find(a);
      if (it == el[i].end() || !s.leq(it->second, c)) return false;
    }
    return true;
  });
  out.report.pass("surjective",
                  std::to_string(el.size()) + " elements from " +
                      std::to_string(top.size()) + " conditions");
  auto rep = check_embedding(out.embedding, u.poset(u.top()), out.order);
  for (const char* c : {"1", "2"}) {
    const auto* cl = rep.clauses.find(c);
    out.report.add(c, cl->passed, cl->witness);
  }
  return out;
}

CccExperiment ccc_experiment(const FsUniverse& u, std::uint64_t seed,
                             std::size_t trials, std::size_t family_size) {
  const FsSystem& s = u.system();
  const Morass& m = s.morass();
  const auto& top = u.elements(u.top());
  CccExperiment out;
  for (unsigned a = 0; a <= m.height(); ++a) {
    out.level_antichains.push_back(max_antichain(u.poset(m.theta(a)), 64));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    CccTrial t;
    std::vector<std::size_t> pick(top.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    for (std::size_t i = 0; i < pick.size(); ++i) {
      std::swap(pick[i], pick[i + rng() % (pick.size() - i)]);
    }
    pick.resize(std::min(family_size, pick.size()));
    t.family_size = pick.size();
    std::vector<StarDecomposition> stars;
    std::vector<std::vector<Ord>> supps;
    for (std::size_t i : pick) {
      stars.push_back(star(s, top[i]));
      supps.emplace_back(stars.back().supp.begin(), stars.back().supp.end());
    }
    if (auto ds = delta_system_extract(supps, 2)) {
      t.delta_members = ds->members.size();
      const unsigned alpha = ds->root.empty() ? 0 : ds->root.back();
      t.root_max = alpha;
      const Ord w = m.theta(alpha);
      for (std::size_t x = 0; x < ds->members.size() && !t.pair_found; ++x) {
        for (std::size_t y = x + 1; y < ds->members.size(); ++y) {
          const auto i = ds->members[x], j = ds->members[y];
          if (u.compatible(w, stars[i].pstar.at(alpha),
                           stars[j].pstar.at(alpha))) {
            t.pair_found = true;
            t.pair_compatible =
                u.compatible(u.top(), top[pick[i]], top[pick[j]]);
            break;
          }
        }
      }
    }
    out.pairs_found += t.pair_found;
    out.confirmed += t.pair_compatible;
    out.trials.push_back(t);
  }
  return out;
}

}  // namespace hdf
