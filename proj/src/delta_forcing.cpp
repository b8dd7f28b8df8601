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

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace hdf {

namespace {

bool strictly_sorted(const std::vector<Ord>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<Ord>()) ==
         v.end();
}

bool has(const std::vector<Ord>& v, Ord x) {
  return std::binary_search(v.begin(), v.end(), x);
}

std::vector<Ord> set_union(const std::vector<Ord>& x,
                           const std::vector<Ord>& y) {
  std::vector<Ord> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(),
                 std::back_inserter(out));
  return out;
}

bool subset(const std::vector<Ord>& x, const std::vector<Ord>& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

Ord max_ordinal(const DeltaCondition& p) {
  Ord m = 0;
  if (!p.a.empty()) m = std::max(m, p.a.back() + 1);
  if (!p.b.empty()) m = std::max(m, p.b.back() + 1);
  return m;  // one past the largest ordinal
}

bool pairwise_distinct(std::vector<Color>& colors) {
  std::sort(colors.begin(), colors.end());
  return std::adjacent_find(colors.begin(), colors.end()) == colors.end();
}

std::string set_string(const std::vector<Ord>& v) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << '}';
  return out.str();
}

std::string cell_string(OrdPair k) {
  return "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
}

// Calls fn on every subset of {0..n-1} of size <= k, by size then lex.
// fn returns false to stop.
bool for_subsets(Ord n, std::size_t k,
                 const std::function<bool(const std::vector<Ord>&)>& fn) {
  std::vector<Ord> cur;
  std::function<bool(std::size_t, Ord)> rec = [&](std::size_t size,
                                                  Ord from) -> bool {
    if (cur.size() == size) return fn(cur);
    for (Ord x = from; x < n; ++x) {
      cur.push_back(x);
      if (!rec(size, x + 1)) return false;
      cur.pop_back();
    }
    return true;
  };
  for (std::size_t s = 0; s <= std::min<std::size_t>(k, n); ++s) {
    if (!rec(s, 0)) return false;
  }
  return true;
}

std::size_t bracket_size(const std::vector<Ord>& a, const std::vector<Ord>& b) {
  std::size_t n = 0;
  for (Ord x : a) {
    n += static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), x) -
                                  b.begin());
  }
  return n;
}

}  // namespace

std::string to_string(const DeltaCondition& p) {
  std::ostringstream out;
  out << "<a=" << set_string(p.a) << ", b=" << set_string(p.b) << ", f={";
  bool first = true;
  for (const auto& [k, c] : p.f.entries()) {
    out << (first ? "" : ",") << cell_string(k) << "->" << c;
    first = false;
  }
  out << "}>";
  return out.str();
}

std::vector<OrdPair> bracket(const std::vector<Ord>& a,
                             const std::vector<Ord>& b) {
  std::vector<OrdPair> out;
  for (Ord x : a) {
    for (Ord y : b) {
      if (y >= x) break;
      out.push_back({x, y});
    }
  }
  return out;
}

std::optional<std::string> malformed(const DeltaCondition& p) {
  if (!strictly_sorted(p.a)) return "a is not a strictly sorted set";
  if (!strictly_sorted(p.b)) return "b is not a strictly sorted set";
  const auto br = bracket(p.a, p.b);
  if (br.size() != p.f.size()) {
    return "dom(f) has " + std::to_string(p.f.size()) + " pairs, [a,b] has " +
           std::to_string(br.size());
  }
  for (OrdPair k : br) {
    if (!p.f.contains(k)) return "f is undefined at " + cell_string(k);
  }
  return std::nullopt;
}

DeltaCondition make_condition(
    std::vector<Ord> a, std::vector<Ord> b,
    const std::vector<std::pair<OrdPair, Color>>& cells) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  DeltaCondition p{std::move(a), std::move(b), {}};
  for (const auto& [k, c] : cells) p.f.insert(k, c);
  if (auto why = malformed(p)) reject("condition " + to_string(p) + ": " + *why);
  return p;
}

DeltaCondition pullback(const OrderMap& f, const DeltaCondition& p) {
  return {preimage(f, p.a), preimage(f, p.b), pullback(f, p.f)};
}

DeltaCondition transport(const OrderMap& f, const DeltaCondition& p) {
  return {image(f, p.a), image(f, p.b), transport(f, p.f)};
}

std::vector<std::string> delta_mutation_names() {
  return {"leq-no-extension",      "member-no-clause3",
          "char-rect-off-by-one",  "dp-literal-alignment",
          "amalgamate-stale-colors", "extend-stale-colors"};
}

DeltaRules delta_mutation(const std::string& name) {
  DeltaRules r;
  if (name == "leq-no-extension") {
    r.leq_extension = false;
  } else if (name == "member-no-clause3") {
    r.member_clause3 = false;
  } else if (name == "char-rect-off-by-one") {
    r.char_rect_shift = 1;
  } else if (name == "dp-literal-alignment") {
    r.literal_dp_levels = true;
  } else if (name == "amalgamate-stale-colors") {
    r.fresh_amalgamate = false;
  } else if (name == "extend-stale-colors") {
    r.fresh_extend = false;
  } else {
    reject("unknown delta mutation '" + name + "'");
  }
  return r;
}

DeltaForcing::DeltaForcing(Morass m, DeltaRules rules)
    : m_(std::move(m)), rules_(rules) {}

bool DeltaForcing::leq(const DeltaCondition& p, const DeltaCondition& q) const {
  if (!subset(q.a, p.a) || !subset(q.b, p.b)) return false;
  if (rules_.leq_extension) {
    for (const auto& [k, c] : q.f.entries()) {
      if (p.f.at(k) != c) return false;
    }
  }
  for (Ord g : p.b) {
    if (has(q.b, g)) continue;
    for (std::size_t i = 0; i < q.a.size(); ++i) {
      if (q.a[i] <= g) continue;
      const Color ci = *p.f.at({q.a[i], g});
      for (std::size_t j = i + 1; j < q.a.size(); ++j) {
        if (*p.f.at({q.a[j], g}) == ci) return false;
      }
    }
  }
  return true;
}

std::vector<std::pair<OrdPair, Color>> DeltaForcing::rectangle(
    unsigned alpha, const DeltaCondition& p) const {
  std::vector<std::pair<OrdPair, Color>> out;
  if (!m_.is_successor(alpha)) return out;
  const Ord lo = m_.theta(alpha), hi = m_.theta(alpha + 1);
  const Ord d = m_.delta(alpha);
  for (const auto& [k, c] : p.f.entries()) {
    if (k.first >= lo && k.first < hi && k.second >= d && k.second < lo) {
      out.push_back({k, c});
    }
  }
  return out;
}

bool DeltaForcing::member(Ord nu, const DeltaCondition& p) const {
  if (malformed(p) || max_ordinal(p) > nu || nu > m_.top_width()) return false;
  if (nu <= 1) return true;
  unsigned beta = 0;
  while (m_.theta(beta) < nu) ++beta;
  return member_level(beta, p);
}

bool DeltaForcing::member_level(unsigned beta, const DeltaCondition& p) const {
  if (beta == 0) return true;
  const unsigned alpha = beta - 1;
  const Ord below = m_.theta(alpha);
  if (m_.is_successor(alpha)) {
    if (!member(below, pullback(m_.split(alpha), p))) return false;
    if (!member(below, pullback(OrderMap::identity(below), p))) return false;
    if (!rules_.member_clause3) return true;
    std::vector<Color> colors;
    for (const auto& cell : rectangle(alpha, p)) colors.push_back(cell.second);
    return pairwise_distinct(colors);
  }
  // Limit clause for t = <beta, theta_beta - 1>.
  const TreeNode t{beta, m_.theta(beta) - 1};
  for (unsigned lvl = 0; lvl < beta; ++lvl) {
    for (Ord nu : m_.predecessors(t, lvl)) {
      const OrderMap pi = m_.pi({lvl, nu}, t);
      bool covered = true;
      for (Ord x : p.a) covered = covered && pi.in_range(x);
      for (Ord x : p.b) covered = covered && pi.in_range(x);
      if (covered && member(nu + 1, pullback(pi, p))) return true;
    }
  }
  return false;
}

bool DeltaForcing::member_char(const DeltaCondition& p) const {
  return member_char_at(m_.height(), p);
}

bool DeltaForcing::member_char_at(unsigned gamma,
                                  const DeltaCondition& p) const {
  if (malformed(p) || max_ordinal(p) > m_.theta(gamma)) return false;
  std::vector<Color> colors;
  for (unsigned alpha = 0; alpha < gamma; ++alpha) {
    if (!m_.is_successor(alpha)) continue;
    const Ord lo = m_.theta(alpha), hi = m_.theta(alpha + 1);
    const Ord d = m_.delta(alpha) + rules_.char_rect_shift;
    for (const auto& f : m_.family_weak(alpha + 1, gamma)) {
      colors.clear();
      for (const auto& [k, c] : p.f.entries()) {
        auto x = f.preimage(k.first);
        if (!x || *x < lo || *x >= hi) continue;
        auto y = f.preimage(k.second);
        if (!y || *y < d || *y >= lo) continue;
        colors.push_back(c);
      }
      if (!pairwise_distinct(colors)) return false;
    }
  }
  return true;
}

std::vector<unsigned> DeltaForcing::dp_definitional(
    const DeltaCondition& p) const {
  std::vector<unsigned> out;
  const unsigned h = m_.height();
  for (unsigned alpha = 0; alpha < h; ++alpha) {
    if (!m_.is_successor(alpha)) continue;
    const Ord lo = m_.theta(alpha), hi = m_.theta(alpha + 1);
    const Ord d = m_.delta(alpha);
    bool hit = false;
    for (const auto& f : m_.family_weak(alpha + 1, h)) {
      for (const auto& [k, c] : p.f.entries()) {
        auto x = f.preimage(k.first);
        auto y = f.preimage(k.second);
        if (x && y && *x >= lo && *x < hi && *y >= d && *y < lo) hit = true;
      }
      if (hit) break;
    }
    if (hit) out.push_back(alpha);
  }
  return out;
}

std::vector<unsigned> DeltaForcing::dp_tree(const DeltaCondition& p) const {
  std::set<unsigned> out;
  const unsigned h = m_.height();
  for (const auto& [k, c] : p.f.entries()) {
    const TreeNode s{h, k.first};
    unsigned lvl = 0;
    while (!m_.pi_weak(m_.level_predecessor(s, lvl), s).in_range(k.second)) {
      ++lvl;  // terminates at lvl == h, where pi is the identity
    }
    if (lvl == 0) {
      inconsistent("dp_tree: " + cell_string(k) + " already at level 0");
    }
    out.insert(rules_.literal_dp_levels ? lvl : lvl - 1);
  }
  return {out.begin(), out.end()};
}

DeltaStar DeltaForcing::star(const DeltaCondition& p,
                             const std::vector<Ord>& delta_in) const {
  std::vector<Ord> delta = delta_in;
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  if (delta.empty()) reject("star: Delta is empty");
  if (!subset(p.a, delta)) {
    reject("star: a_p = " + set_string(p.a) + " is not inside Delta = " +
           set_string(delta));
  }
  if (malformed(p) || max_ordinal(p) > m_.top_width() ||
      delta.back() >= m_.top_width()) {
    reject("star: " + to_string(p) + " or Delta leaves theta_h");
  }
  const unsigned h = m_.height();
  DeltaStar out;
  out.top = {h, delta.back()};
  std::vector<OrderMap> pis;
  for (unsigned lvl = 0; lvl <= h; ++lvl) {
    pis.push_back(m_.pi_weak(m_.level_predecessor(out.top, lvl), out.top));
  }
  unsigned a0 = 0;
  auto covers = [&](const OrderMap& pi) {
    return std::all_of(delta.begin(), delta.end(),
                       [&](Ord x) { return pi.in_range(x); });
  };
  while (!covers(pis[a0])) ++a0;
  out.alpha0 = a0;
  for (unsigned lvl = a0; lvl <= h; ++lvl) {
    out.values.push_back(pullback(pis[lvl], p));
  }
  out.supp.push_back(a0);
  for (unsigned alpha = a0; alpha < h; ++alpha) {
    const DeltaCondition& lo = out.at(alpha);
    const DeltaCondition& hi = out.at(alpha + 1);
    if (hi == lo) continue;
    if (m_.is_successor(alpha) && hi == transport(m_.split(alpha), lo)) {
      continue;
    }
    out.supp.push_back(alpha + 1);
  }
  return out;
}

std::optional<DeltaCondition> DeltaForcing::fill(
    std::vector<Ord> a, std::vector<Ord> b,
    std::initializer_list<const DeltaCondition*> parts, bool fresh) const {
  DeltaCondition r{std::move(a), std::move(b), {}};
  std::set<Color> used;
  for (const auto* x : parts) {
    for (const auto& e : x->f.entries()) used.insert(e.second);
  }
  Color next = 0;
  PairGraph::Entries cells;
  for (OrdPair k : bracket(r.a, r.b)) {
    std::optional<Color> c;
    for (const auto* x : parts) {
      auto cx = x->f.at(k);
      if (!cx) continue;
      if (c && *c != *cx) return std::nullopt;
      c = cx;
    }
    if (!c) {
      if (fresh) {
        while (used.count(next)) ++next;
        used.insert(next);
        c = next;
      } else {
        c = 0;
      }
    }
    cells.emplace(k, *c);
  }
  r.f = PairGraph(std::move(cells));
  return r;
}

std::optional<DeltaCondition> DeltaForcing::glue(const DeltaCondition& p,
                                                 const DeltaCondition& q,
                                                 bool fresh) const {
  return fill(set_union(p.a, q.a), set_union(p.b, q.b), {&p, &q}, fresh);
}

bool DeltaForcing::compatible_at(unsigned gamma, const DeltaCondition& p,
                                 const DeltaCondition& q) const {
  auto r = glue(p, q, true);
  return r && member_char_at(gamma, *r) && leq(*r, p) && leq(*r, q);
}

AmalgamResult DeltaForcing::amalgamate(const DeltaCondition& p1,
                                       const DeltaCondition& p2) const {
  AmalgamResult out;
  Report& rep = out.report;
  const unsigned h = m_.height();

  std::string clash;
  for (const auto& [k, c] : p1.f.entries()) {
    auto c2 = p2.f.at(k);
    if (c2 && *c2 != c && clash.empty()) {
      clash = cell_string(k) + ": " + std::to_string(c) + " vs " +
              std::to_string(*c2);
    }
  }
  rep.add("H1", clash.empty(), clash, "agreement on the shared bracket");

  std::vector<unsigned> shared;
  const auto d1 = dp_definitional(p1), d2 = dp_definitional(p2);
  std::set_intersection(d1.begin(), d1.end(), d2.begin(), d2.end(),
                        std::back_inserter(shared));
  std::string mismatch;
  for (unsigned alpha : shared) {
    for (const auto& f : m_.family_weak(alpha + 1, h)) {
      if (rectangle(alpha, pullback(f, p1)) !=
          rectangle(alpha, pullback(f, p2))) {
        mismatch = "level " + std::to_string(alpha) + " via " + f.to_string();
        break;
      }
    }
    if (!mismatch.empty()) break;
  }
  rep.add("H2", mismatch.empty(), mismatch,
          "equal rectangle restrictions on shared D-levels");

  // A new column of one operand must not repeat a color across the other
  // operand's a-set, or the result could not lie below the other operand.
  std::string sep;
  auto check_sep = [&](const DeltaCondition& x, const DeltaCondition& y,
                       const char* name) {
    std::vector<Ord> shared_a;
    std::set_intersection(x.a.begin(), x.a.end(), y.a.begin(), y.a.end(),
                          std::back_inserter(shared_a));
    for (Ord g : x.b) {
      if (has(y.b, g)) continue;
      for (std::size_t i = 0; i < shared_a.size() && sep.empty(); ++i) {
        if (shared_a[i] <= g) continue;
        for (std::size_t j = i + 1; j < shared_a.size(); ++j) {
          if (x.f.at({shared_a[i], g}) == x.f.at({shared_a[j], g})) {
            sep = std::string(name) + " repeats a color at " +
                  cell_string({shared_a[i], g}) + " and " +
                  cell_string({shared_a[j], g});
            break;
          }
        }
      }
    }
  };
  check_sep(p1, p2, "p1");
  check_sep(p2, p1, "p2");
  rep.add("H3", sep.empty(), sep, "separation of new columns on shared a");
  if (!rep.all_pass()) return out;

  out.p = glue(p1, p2, rules_.fresh_amalgamate);
  rep.add("member", member_char(*out.p), to_string(*out.p));
  rep.add("below-p1", leq(*out.p, p1), to_string(*out.p));
  rep.add("below-p2", leq(*out.p, p2), to_string(*out.p));
  return out;
}

DeltaCondition DeltaForcing::extend(const DeltaCondition& p, Ord alpha,
                                    Ord beta) const {
  if (alpha >= m_.top_width() || beta >= m_.top_width()) {
    reject("extend: ordinal outside theta_h");
  }
  return *fill(set_union(p.a, {alpha}), set_union(p.b, {beta}), {&p},
               rules_.fresh_extend);
}

GenericRun DeltaForcing::generic_simulate(std::uint64_t seed,
                                          std::uint64_t steps) const {
  GenericRun run;
  run.chain.emplace_back();
  const Ord top = m_.top_width();
  std::mt19937_64 rng(seed);
  std::vector<OrdPair> unmet;
  for (std::uint64_t i = 0; i < steps; ++i) {
    const DeltaCondition& cur = run.chain.back();
    unmet.clear();
    for (Ord x = 0; x < top; ++x) {
      for (Ord y = 0; y < top; ++y) {
        if (!has(cur.a, x) || !has(cur.b, y)) unmet.push_back({x, y});
      }
    }
    if (unmet.empty()) break;
    const OrdPair req = unmet[rng() % unmet.size()];
    DeltaCondition next = extend(cur, req.first, req.second);
    run.chain_descends = run.chain_descends && leq(next, cur);
    run.chain_members = run.chain_members && member_char(next);
    run.chain.push_back(std::move(next));
  }
  const DeltaCondition& last = run.chain.back();
  run.g = last.f;
  run.pairs = std::uint64_t{top} * (top > 0 ? top - 1 : 0) / 2;
  run.defined = run.g.size();
  for (std::size_t i = 0; i < last.a.size(); ++i) {
    for (std::size_t j = i + 1; j < last.a.size(); ++j) {
      std::uint64_t agree = 0;
      for (Ord xi : last.b) {
        if (xi >= last.a[i]) break;
        if (last.f.at({last.a[i], xi}) == last.f.at({last.a[j], xi})) ++agree;
      }
      run.max_agreement = std::max(run.max_agreement, agree);
    }
  }
  return run;
}

double delta_universe_estimate(const Morass& m, std::size_t max_a,
                               std::size_t max_b, Color colors) {
  const Ord top = m.top_width();
  std::vector<std::vector<Ord>> bs;
  double total = 0;
  const double cap = 1e12;
  for_subsets(top, max_b, [&](const std::vector<Ord>& b) {
    bs.push_back(b);
    return bs.size() < 1e6;
  });
  for_subsets(top, max_a, [&](const std::vector<Ord>& a) {
    for (const auto& b : bs) {
      total += std::pow(static_cast<double>(colors),
                        static_cast<double>(bracket_size(a, b)));
    }
    return total < cap;
  });
  return total;
}

DeltaUniverse enumerate_poset(const DeltaForcing& P, std::size_t max_a,
                              std::size_t max_b, Color colors, double limit) {
  const double est = delta_universe_estimate(P.morass(), max_a, max_b, colors);
  if (est > limit) {
    std::ostringstream msg;
    msg << "enumerate_poset: about " << est << " colorings to scan, limit "
        << limit;
    throw Error(ErrorCode::kSizeLimit, msg.str());
  }
  DeltaUniverse u;
  for_each_condition(P.morass().top_width(), max_a, max_b, colors,
                     [&](const DeltaCondition& p) {
                       if (P.member_char(p)) u.elements.push_back(p);
                     });
  std::sort(u.elements.begin(), u.elements.end());
  u.order = FinitePoset(u.elements.size(), [&](std::size_t i, std::size_t j) {
    return P.leq(u.elements[i], u.elements[j]);
  });
  return u;
}

void for_each_condition(Ord top, std::size_t max_a, std::size_t max_b,
                        Color colors,
                        const std::function<void(const DeltaCondition&)>& fn) {
  std::vector<std::vector<Ord>> bs;
  for_subsets(top, max_b, [&](const std::vector<Ord>& b) {
    bs.push_back(b);
    return true;
  });
  for_subsets(top, max_a, [&](const std::vector<Ord>& a) {
    for (const auto& b : bs) {
      const auto br = bracket(a, b);
      if (!br.empty() && colors == 0) continue;
      std::vector<Color> digits(br.size(), 0);
      while (true) {
        PairGraph::Entries cells;
        for (std::size_t i = 0; i < br.size(); ++i) {
          cells.emplace(br[i], digits[i]);
        }
        fn(DeltaCondition{a, b, PairGraph(std::move(cells))});
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == colors) digits[i++] = 0;
        if (i == digits.size()) break;
      }
    }
    return true;
  });
}

DeltaCondition random_condition(Ord top, std::size_t max_size, Color colors,
                                std::mt19937_64& rng) {
  auto pick = [&] {
    std::set<Ord> out;
    const std::size_t n = top ? rng() % (max_size + 1) : 0;
    for (std::size_t i = 0; i < n; ++i) out.insert(rng() % top);
    return std::vector<Ord>(out.begin(), out.end());
  };
  DeltaCondition p{pick(), pick(), {}};
  PairGraph::Entries cells;
  for (OrdPair k : bracket(p.a, p.b)) {
    cells.emplace(k, colors ? static_cast<Color>(rng() % colors) : 0);
  }
  p.f = PairGraph(std::move(cells));
  return p;
}

OracleSweep member_oracle_sweep(const DeltaForcing& P, std::size_t max_a,
                                std::size_t max_b, Color colors) {
  OracleSweep out;
  const Ord top = P.morass().top_width();
  for_each_condition(top, max_a, max_b, colors, [&](const DeltaCondition& p) {
    ++out.checked;
    const bool lit = P.member(top, p);
    const bool chr = P.member_char(p);
    if (chr) ++out.members;
    if (lit != chr && out.mismatches++ == 0) {
      out.first_mismatch = to_string(p) + ": member " +
                           (lit ? "true" : "false") + ", member_char " +
                           (chr ? "true" : "false");
    }
  });
  return out;
}

OracleSweep dp_sweep(const DeltaForcing& P, std::uint64_t seed,
                     std::uint64_t count) {
  OracleSweep out;
  std::mt19937_64 rng(seed);
  const Ord top = P.morass().top_width();
  for (std::uint64_t i = 0; i < count; ++i) {
    const DeltaCondition p = random_condition(top, 3, 4, rng);
    ++out.checked;
    if (P.member_char(p)) ++out.members;
    const auto d1 = P.dp_definitional(p), d2 = P.dp_tree(p);
    if (d1 != d2 && out.mismatches++ == 0) {
      std::vector<Ord> x(d1.begin(), d1.end()), y(d2.begin(), d2.end());
      out.first_mismatch = to_string(p) + ": definitional " + set_string(x) +
                           ", tree " + set_string(y);
    }
  }
  return out;
}

OracleSweep compatibility_oracle_sweep(const DeltaForcing& P,
                                       const DeltaUniverse& conditions,
                                       const DeltaUniverse& witnesses) {
  OracleSweep out;
  const auto& xs = conditions.elements;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      ++out.checked;
      const bool exact = P.compatible(xs[i], xs[j]);
      if (exact) ++out.members;
      const bool brute =
          std::any_of(witnesses.elements.begin(), witnesses.elements.end(),
                      [&](const DeltaCondition& r) {
                        return P.leq(r, xs[i]) && P.leq(r, xs[j]);
                      });
      if (exact != brute && out.mismatches++ == 0) {
        out.first_mismatch = to_string(xs[i]) + " and " + to_string(xs[j]) +
                             ": exact " + (exact ? "true" : "false") +
                             ", brute force " + (brute ? "true" : "false");
      }
    }
  }
  return out;
}

StarCompatSweep star_compat_sweep(const DeltaForcing& P, const DeltaUniverse& u) {
  StarCompatSweep out;
  const Ord top = P.morass().top_width();
  const std::size_t n = u.elements.size();
  for_subsets(top, top, [&](const std::vector<Ord>& delta) {
    if (delta.empty()) return true;
    ++out.deltas;
    std::vector<std::size_t> idx;
    std::vector<DeltaStar> stars;
    for (std::size_t i = 0; i < n; ++i) {
      if (!subset(u.elements[i].a, delta)) continue;
      idx.push_back(i);
      stars.push_back(P.star(u.elements[i], delta));
    }
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = x; y < idx.size(); ++y) {
        ++out.pairs;
        const DeltaStar& sp = stars[x];
        const DeltaStar& sq = stars[y];
        std::vector<unsigned> common;
        std::set_intersection(sp.supp.begin(), sp.supp.end(),
                              sq.supp.begin(), sq.supp.end(),
                              std::back_inserter(common));
        const unsigned alpha = common.back();  // both contain alpha0
        if (!P.compatible_at(alpha, sp.at(alpha), sq.at(alpha))) continue;
        ++out.hypothesis_true;
        const DeltaCondition& p = u.elements[idx[x]];
        const DeltaCondition& q = u.elements[idx[y]];
        auto witness = [&] {
          return "Delta=" + set_string(delta) + " alpha=" +
                 std::to_string(alpha) + " p=" + to_string(p) +
                 " q=" + to_string(q);
        };
        if (!P.compatible(p, q) && out.counterexamples++ == 0) {
          out.first_counterexample = witness();
        }
        if (!u.order.compatible(idx[x], idx[y]) &&
            out.enumerated_failures++ == 0) {
          out.first_enumerated_failure = witness();
        }
      }
    }
    return true;
  });
  return out;
}

AmalgamSweep amalgamate_sweep(const DeltaForcing& P, const DeltaUniverse& u) {
  AmalgamSweep out;
  const std::size_t n = u.elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      ++out.pairs;
      const auto r = P.amalgamate(u.elements[i], u.elements[j]);
      const ClauseResult* bad = r.report.first_failure();
      if (!r.p) {
        ++out.rejected_by[bad->name];
        continue;
      }
      ++out.hypotheses_hold;
      if (bad && out.failures++ == 0) {
        out.first_failure = to_string(u.elements[i]) + " + " +
                            to_string(u.elements[j]) + ": " + bad->name +
                            " fails for " + bad->witness;
      }
    }
  }
  return out;
}

DensitySweep density_sweep(const DeltaForcing& P, const DeltaUniverse& u) {
  DensitySweep out;
  const Ord top = P.morass().top_width();
  for (const auto& p : u.elements) {
    for (Ord x = 0; x < top; ++x) {
      for (Ord y = 0; y < top; ++y) {
        ++out.extensions;
        const DeltaCondition q = P.extend(p, x, y);
        const bool ok = has(q.a, x) && has(q.b, y) && P.member_char(q) &&
                        P.leq(q, p);
        if (!ok && out.failures++ == 0) {
          out.first_failure = "extend(" + to_string(p) + ", " +
                              std::to_string(x) + ", " + std::to_string(y) +
                              ") = " + to_string(q);
        }
      }
    }
  }
  return out;
}

}  // namespace hdf
