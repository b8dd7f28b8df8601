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

#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "delta_forcing.hpp"
#include "errors.hpp"
#include "fs_system.hpp"
#include "hdforce/hdforce.h"
#include "io.hpp"
#include "morass.hpp"
#include "sba_forcing.hpp"

struct hdf_morass {
  hdf::Morass m;
};

namespace {

using hdf::Json;

thread_local std::string g_last_error;

hdf_status fail(hdf_status s, std::string what) {
  g_last_error = std::move(what);
  return s;
}

// Runs body, mapping exceptions onto status codes.
hdf_status guard(const std::function<hdf_status()>& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const hdf::Error& e) {
    switch (e.code()) {
      case hdf::ErrorCode::kRejectedInput:
        return fail(HDF_REJECTED_INPUT, e.what());
      case hdf::ErrorCode::kSizeLimit:
        return fail(HDF_SIZE_LIMIT, e.what());
      case hdf::ErrorCode::kParse:
        return fail(HDF_PARSE_ERROR, e.what());
      case hdf::ErrorCode::kInternalInconsistency:
        return fail(HDF_INTERNAL, e.what());
    }
    return fail(HDF_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HDF_SIZE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(HDF_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json morass_summary(const hdf::Morass& m) {
  return {{"height", m.height()}, {"thetas", m.data().thetas}};
}

const char* verdict_name(hdf_verdict v) {
  switch (v) {
    case HDF_PASS:
      return "pass";
    case HDF_VALIDATION_FAILURE:
      return "validation-failure";
    case HDF_COUNTEREXAMPLE:
      return "counterexample";
  }
  return "?";
}

hdf_status finish(Json j, hdf_verdict v, char** report, hdf_verdict* verdict) {
  j["verdict"] = verdict_name(v);
  *report = dup(dump(j));
  if (verdict != nullptr) *verdict = v;
  return HDF_OK;
}

hdf::DeltaRules delta_rules(const hdf_experiment_config& c) {
  return c.mutation ? hdf::delta_mutation(c.mutation) : hdf::DeltaRules{};
}

hdf::SbaRules sba_rules(const hdf_experiment_config& c) {
  return c.mutation ? hdf::sba_mutation(c.mutation) : hdf::SbaRules{};
}

Json oracle_json(const hdf::OracleSweep& s) {
  return {{"checked", s.checked},
          {"members", s.members},
          {"mismatches", s.mismatches},
          {"first_mismatch", s.first_mismatch}};
}

struct Experiment {
  const char* name;
  const char* summary;
  hdf_verdict (*run)(const hdf::Morass&, const hdf_experiment_config&,
                     Json&);
};

hdf_verdict fs_validate(const hdf::Morass& m, const hdf_experiment_config& c,
                        Json& out) {
  auto sys = hdf::make_fs_fixture(c.fixture, m);
  hdf::FsUniverse u(*sys);
  const hdf::Report r = hdf::validate_fs(u);
  out["fixture"] = c.fixture;
  out["report"] = hdf::to_json(r);
  return r.all_pass() ? HDF_PASS : HDF_VALIDATION_FAILURE;
}

hdf_verdict thm32(const hdf::Morass& m, const hdf_experiment_config& c,
                  Json& out) {
  auto sys = hdf::make_fs_fixture(c.fixture, m);
  hdf::FsUniverse u(*sys);
  const auto s = hdf::thm32_sweep(u);
  out["fixture"] = c.fixture;
  out["conditions"] = u.elements(u.top()).size();
  out["pairs"] = s.pairs;
  out["hypothesis_true"] = s.hypothesis_true;
  out["confirmed"] = s.confirmed;
  out["counterexamples"] = s.counterexamples;
  out["first_counterexample"] = s.first_counterexample;
  return s.counterexamples ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict support_embedding(const hdf::Morass& m, const hdf_experiment_config& c,
                    Json& out) {
  auto sys = hdf::make_fs_fixture(c.fixture, m);
  hdf::FsUniverse u(*sys);
  const auto q = hdf::build_Q(u);
  out["fixture"] = c.fixture;
  out["built"] = q.built;
  out["q_elements"] = q.elements.size();
  out["p_elements"] = u.elements(u.top()).size();
  out["report"] = hdf::to_json(q.report);
  if (!q.built) return HDF_VALIDATION_FAILURE;
  return q.report.all_pass() ? HDF_PASS : HDF_COUNTEREXAMPLE;
}

hdf_verdict ccc(const hdf::Morass& m, const hdf_experiment_config& c,
                Json& out) {
  auto sys = hdf::make_fs_fixture(c.fixture, m);
  hdf::FsUniverse u(*sys);
  const auto e = hdf::ccc_experiment(u, c.seed, c.trials, c.family_size);
  Json levels = Json::array();
  for (const auto& a : e.level_antichains) {
    levels.push_back({{"size", a.size}, {"exact", a.exact}});
  }
  out["fixture"] = c.fixture;
  out["trials"] = e.trials.size();
  out["pairs_found"] = e.pairs_found;
  out["confirmed"] = e.confirmed;
  out["level_antichains"] = levels;
  return e.confirmed == e.pairs_found ? HDF_PASS : HDF_COUNTEREXAMPLE;
}

hdf_verdict generic(const hdf::Morass& m, const hdf_experiment_config& c,
                    Json& out) {
  hdf::DeltaForcing P(m, delta_rules(c));
  const auto g = P.generic_simulate(c.seed, c.steps);
  Json cells = Json::array();
  for (const auto& [k, col] : g.g.entries()) {
    cells.push_back({k.first, k.second, col});
  }
  out["g"] = cells;
  out["pairs"] = g.pairs;
  out["defined"] = g.defined;
  out["total"] = g.total();
  out["chain_length"] = g.chain.size();
  out["chain_descends"] = g.chain_descends;
  out["chain_members"] = g.chain_members;
  out["max_agreement"] = g.max_agreement;
  if (!g.chain_descends || !g.chain_members) return HDF_COUNTEREXAMPLE;
  return g.total() ? HDF_PASS : HDF_VALIDATION_FAILURE;
}

hdf_verdict member_oracle(const hdf::Morass& m, const hdf_experiment_config& c,
                    Json& out) {
  hdf::DeltaForcing P(m, delta_rules(c));
  const auto s = hdf::member_oracle_sweep(P, c.max_a, c.max_b, c.colors);
  out.update(oracle_json(s));
  return s.mismatches ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict dp(const hdf::Morass& m, const hdf_experiment_config& c,
               Json& out) {
  hdf::DeltaForcing P(m, delta_rules(c));
  const auto s = hdf::dp_sweep(P, c.seed, c.samples);
  out.update(oracle_json(s));
  return s.mismatches ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict compat(const hdf::Morass& m, const hdf_experiment_config& c,
                   Json& out) {
  hdf::DeltaForcing P(m, delta_rules(c));
  const auto small = hdf::enumerate_poset(P, 1, 1, 2);
  const auto wit = hdf::enumerate_poset(P, 2, 2, 6);
  const auto s = hdf::compatibility_oracle_sweep(P, small, wit);
  out.update(oracle_json(s));
  out["witness_universe"] = wit.elements.size();
  return s.mismatches ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict star_compat(const hdf::Morass& m, const hdf_experiment_config& c,
                    Json& out) {
  hdf::DeltaForcing P(m, delta_rules(c));
  const auto u = hdf::enumerate_poset(P, c.max_a, c.max_b, c.colors);
  const auto s = hdf::star_compat_sweep(P, u);
  out["universe"] = u.elements.size();
  out["deltas"] = s.deltas;
  out["pairs"] = s.pairs;
  out["hypothesis_true"] = s.hypothesis_true;
  out["counterexamples"] = s.counterexamples;
  out["first_counterexample"] = s.first_counterexample;
  out["enumerated_failures"] = s.enumerated_failures;
  return s.counterexamples ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict amalgamate(const hdf::Morass& m, const hdf_experiment_config& c,
                       Json& out) {
  hdf::DeltaForcing P(m, delta_rules(c));
  const auto u = hdf::enumerate_poset(P, c.max_a, c.max_b, c.colors);
  const auto s = hdf::amalgamate_sweep(P, u);
  out["universe"] = u.elements.size();
  out["pairs"] = s.pairs;
  out["hypotheses_hold"] = s.hypotheses_hold;
  out["rejected_by"] = s.rejected_by;
  out["failures"] = s.failures;
  out["first_failure"] = s.first_failure;
  return s.failures ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict density(const hdf::Morass& m, const hdf_experiment_config& c,
                    Json& out) {
  hdf::DeltaForcing P(m, delta_rules(c));
  const auto u = hdf::enumerate_poset(P, c.max_a, c.max_b, c.colors);
  const auto s = hdf::density_sweep(P, u);
  out["universe"] = u.elements.size();
  out["extensions"] = s.extensions;
  out["failures"] = s.failures;
  out["first_failure"] = s.first_failure;
  return s.failures ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict sba_oracle(const hdf::Morass& m, const hdf_experiment_config& c,
                       Json& out) {
  hdf::SbaForcing P(m, sba_rules(c));
  const auto s = hdf::sba_member_oracle_sweep(P, c.max_x, c.block);
  out.update(oracle_json(s));
  return s.mismatches ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict sba_amalgamate(const hdf::Morass& m,
                           const hdf_experiment_config& c, Json& out) {
  hdf::SbaForcing P(m, sba_rules(c));
  const auto u = hdf::enumerate_spo(P, c.max_x, c.block);
  const auto s = hdf::sba_amalgamate_sweep(P, u);
  out["universe"] = u.size();
  out["pairs"] = s.pairs;
  out["hypotheses_hold"] = s.hypotheses_hold;
  out["returned"] = s.returned;
  out["rejected_by"] = s.rejected_by;
  out["failures"] = s.failures;
  out["first_failure"] = s.first_failure;
  return s.failures ? HDF_COUNTEREXAMPLE : HDF_PASS;
}

hdf_verdict sba_generic(const hdf::Morass& m, const hdf_experiment_config& c,
                        Json& out) {
  hdf::SbaForcing P(m, sba_rules(c));
  const auto g = P.generic_union_check(c.seed, c.steps, c.block);
  out["order"] = hdf::to_json(g.order);
  out["requirements"] = g.requirements;
  out["met"] = g.met;
  out["report"] = hdf::to_json(g.report);
  return g.report.all_pass() ? HDF_PASS : HDF_COUNTEREXAMPLE;
}

const Experiment kExperiments[] = {
    {"fs", "FS1-FS7 for --fixture", fs_validate},
    {"thm32", "star-level compatibility implies compatibility (FS fixture)",
     thm32},
    {"support-embedding", "the support poset Q and the dense embedding (FS fixture)",
     support_embedding},
    {"ccc", "Delta-system pairs and level antichains (FS fixture)", ccc},
    {"generic", "greedy generic filter for the colored-pair forcing",
     generic},
    {"member-oracle", "literal recursion against the closed form, exhaustive",
     member_oracle},
    {"dp", "definitional against tree-form D_p on seeded conditions", dp},
    {"compat-oracle", "exact compatibility against brute force", compat},
    {"star-compat", "compatibility propagation over shared Delta", star_compat},
    {"amalgamate", "amalgamation soundness on the enumerated universe",
     amalgamate},
    {"density", "extension density on the enumerated universe", density},
    {"sba-oracle", "partial-order forcing: recursion against closed form",
     sba_oracle},
    {"sba-amalgamate", "partial-order forcing: amalgamation soundness",
     sba_amalgamate},
    {"sba-generic", "partial-order forcing: generic union clauses",
     sba_generic},
};

hdf_experiment_config with_defaults(const hdf_experiment_config* cfg) {
  hdf_experiment_config c;
  hdf_experiment_config_init(&c);
  if (cfg != nullptr) c = *cfg;
  if (c.fixture == nullptr) c.fixture = "harmonized-cohen";
  return c;
}

}  // namespace

extern "C" {

const char* hdf_version(void) { return "1.0.0"; }

const char* hdf_last_error(void) { return g_last_error.c_str(); }

void hdf_string_free(char* s) { std::free(s); }

hdf_status hdf_morass_doubling(unsigned height, hdf_morass** out) {
  if (out == nullptr) return fail(HDF_INVALID_ARGUMENT, "out is null");
  return guard([&] {
    *out = new hdf_morass{hdf::build_doubling(height)};
    return HDF_OK;
  });
}

hdf_status hdf_morass_random(unsigned height, uint32_t theta_cap,
                             uint64_t seed, hdf_morass** out) {
  if (out == nullptr) return fail(HDF_INVALID_ARGUMENT, "out is null");
  return guard([&] {
    *out = new hdf_morass{hdf::build_random(height, theta_cap, seed)};
    return HDF_OK;
  });
}

hdf_status hdf_morass_from_json(const char* json, hdf_morass** out) {
  if (json == nullptr || out == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    auto data = hdf::morass_data_from_json(hdf::parse_json(json));
    *out = new hdf_morass{hdf::Morass(std::move(data))};
    return HDF_OK;
  });
}

void hdf_morass_free(hdf_morass* m) { delete m; }

hdf_status hdf_morass_to_json(const hdf_morass* m, char** out) {
  if (m == nullptr || out == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    *out = dup(dump(hdf::to_json(m->m.data())));
    return HDF_OK;
  });
}

hdf_status hdf_morass_tree_dot(const hdf_morass* m, char** out) {
  if (m == nullptr || out == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    *out = dup(hdf::tree_dot(m->m));
    return HDF_OK;
  });
}

unsigned hdf_morass_height(const hdf_morass* m) {
  return m ? m->m.height() : 0;
}

uint32_t hdf_morass_theta(const hdf_morass* m, unsigned level) {
  if (m == nullptr || level > m->m.height()) return 0;
  return m->m.theta(level);
}

uint64_t hdf_morass_branch_count(const hdf_morass* m) {
  return m ? m->m.branch_count() : 0;
}

hdf_status hdf_morass_precedes(const hdf_morass* m, unsigned s_level,
                               uint32_t s_index, unsigned t_level,
                               uint32_t t_index, int* result) {
  if (m == nullptr || result == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    const hdf::TreeNode s{s_level, s_index}, t{t_level, t_index};
    if (!m->m.valid_node(s) || !m->m.valid_node(t)) {
      return fail(HDF_INVALID_ARGUMENT, "node outside the tree");
    }
    *result = m->m.precedes(s, t) ? 1 : 0;
    return HDF_OK;
  });
}

hdf_status hdf_morass_pi(const hdf_morass* m, unsigned s_level,
                         uint32_t s_index, unsigned t_level, uint32_t t_index,
                         uint32_t* values, size_t cap, size_t* len) {
  if (m == nullptr || len == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    const hdf::TreeNode s{s_level, s_index}, t{t_level, t_index};
    if (!m->m.valid_node(s) || !m->m.valid_node(t)) {
      return fail(HDF_INVALID_ARGUMENT, "node outside the tree");
    }
    const hdf::OrderMap pi = m->m.pi(s, t);
    *len = pi.src_bound();
    if (values == nullptr || cap < *len) {
      return fail(HDF_INVALID_ARGUMENT, "output buffer too small");
    }
    std::copy(pi.values().begin(), pi.values().end(), values);
    return HDF_OK;
  });
}

hdf_status hdf_check_morass(const char* json, char** report,
                            hdf_verdict* verdict) {
  if (json == nullptr || report == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    const auto data = hdf::morass_data_from_json(hdf::parse_json(json));
    hdf::Report r = hdf::validate(data);
    if (r.all_pass()) {
      const hdf::Report lemmas = hdf::check_tree_lemmas(hdf::Morass(data));
      r.clauses.insert(r.clauses.end(), lemmas.clauses.begin(),
                       lemmas.clauses.end());
    }
    Json out = {{"height", data.height},
                {"thetas", data.thetas},
                {"report", hdf::to_json(r)}};
    return finish(out, r.all_pass() ? HDF_PASS : HDF_VALIDATION_FAILURE,
                  report, verdict);
  });
}

hdf_status hdf_check_fs(const hdf_morass* m, const char* fixture,
                        char** report, hdf_verdict* verdict) {
  if (m == nullptr || fixture == nullptr || report == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    hdf_experiment_config c = with_defaults(nullptr);
    c.fixture = fixture;
    Json out = {{"morass", morass_summary(m->m)}};
    const hdf_verdict v = fs_validate(m->m, c, out);
    return finish(out, v, report, verdict);
  });
}

hdf_status hdf_check_delta(const hdf_morass* m, const char* json,
                           char** report, hdf_verdict* verdict) {
  if (m == nullptr || json == nullptr || report == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    const auto p = hdf::delta_from_json(hdf::parse_json(json));
    hdf::DeltaForcing P(m->m);
    hdf::Report r;
    const hdf::Ord top = m->m.top_width();
    const bool inside =
        (p.a.empty() || p.a.back() < top) && (p.b.empty() || p.b.back() < top);
    r.add("ordinals", inside, hdf::to_string(p), "all ordinals below theta_h");
    if (inside) {
      r.add("member_char", P.member_char(p), hdf::to_string(p));
      r.add("member", P.member(top, p), hdf::to_string(p));
    }
    Json out = {{"condition", hdf::to_json(p)},
                {"morass", morass_summary(m->m)},
                {"report", hdf::to_json(r)}};
    if (inside) {
      out["dp"] = P.dp_definitional(p);
    }
    return finish(out, r.all_pass() ? HDF_PASS : HDF_VALIDATION_FAILURE,
                  report, verdict);
  });
}

hdf_status hdf_check_sba(const hdf_morass* m, const char* json, char** report,
                         hdf_verdict* verdict) {
  if (m == nullptr || json == nullptr || report == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    const auto p = hdf::spo_from_json(hdf::parse_json(json));
    hdf::SbaForcing P(m->m);
    hdf::Report r = hdf::validate_cond(p);
    const hdf::Ord top = m->m.top_width();
    const bool inside = p.x.empty() || p.x.back() < top;
    r.add("ordinals", inside, hdf::to_string(p), "all ordinals below theta_h");
    if (inside) {
      r.add("member_char", P.member_char(p), hdf::to_string(p));
      r.add("member", P.member(top, p), hdf::to_string(p));
    }
    Json out = {{"condition", hdf::to_json(p)},
                {"encoding", hdf::to_json(hdf::encode(p))},
                {"morass", morass_summary(m->m)},
                {"report", hdf::to_json(r)}};
    return finish(out, r.all_pass() ? HDF_PASS : HDF_VALIDATION_FAILURE,
                  report, verdict);
  });
}

void hdf_experiment_config_init(hdf_experiment_config* cfg) {
  if (cfg == nullptr) return;
  cfg->fixture = "harmonized-cohen";
  cfg->mutation = nullptr;
  cfg->seed = 1;
  cfg->steps = 100;
  cfg->trials = 20;
  cfg->samples = 10000;
  cfg->family_size = 8;
  cfg->max_a = 2;
  cfg->max_b = 2;
  cfg->colors = 3;
  cfg->max_x = 3;
  cfg->block = 2;
}

hdf_status hdf_experiment_list(char** out) {
  if (out == nullptr) return fail(HDF_INVALID_ARGUMENT, "out is null");
  return guard([&] {
    std::string s;
    for (const auto& e : kExperiments) {
      s += std::string(e.name) + "\t" + e.summary + "\n";
    }
    *out = dup(s);
    return HDF_OK;
  });
}

hdf_status hdf_experiment(const hdf_morass* m, const char* name,
                          const hdf_experiment_config* cfg, char** report,
                          hdf_verdict* verdict) {
  if (m == nullptr || name == nullptr || report == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  for (const auto& e : kExperiments) {
    if (std::strcmp(e.name, name) != 0) continue;
    return guard([&] {
      const hdf_experiment_config c = with_defaults(cfg);
      Json out = {{"experiment", e.name}, {"morass", morass_summary(m->m)}};
      if (c.mutation != nullptr) out["mutation"] = c.mutation;
      const hdf_verdict v = e.run(m->m, c, out);
      return finish(out, v, report, verdict);
    });
  }
  return fail(HDF_INVALID_ARGUMENT,
              std::string("unknown experiment '") + name + "'");
}

hdf_status hdf_enumerate(const hdf_morass* m, const char* kind,
                         const hdf_experiment_config* cfg, char** out) {
  if (m == nullptr || kind == nullptr || out == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    const hdf_experiment_config c = with_defaults(cfg);
    Json arr = Json::array();
    if (std::strcmp(kind, "delta") == 0) {
      hdf::DeltaForcing P(m->m);
      for (const auto& p :
           hdf::enumerate_poset(P, c.max_a, c.max_b, c.colors).elements) {
        arr.push_back(hdf::to_json(p));
      }
    } else if (std::strcmp(kind, "sba") == 0) {
      hdf::SbaForcing P(m->m);
      for (const auto& p : hdf::enumerate_spo(P, c.max_x, c.block)) {
        arr.push_back(hdf::to_json(p));
      }
    } else {
      return fail(HDF_INVALID_ARGUMENT,
                  std::string("unknown universe kind '") + kind + "'");
    }
    *out = dup(arr.dump() + "\n");
    return HDF_OK;
  });
}

hdf_status hdf_sba_generic_dot(const hdf_morass* m,
                               const hdf_experiment_config* cfg, char** out) {
  if (m == nullptr || out == nullptr) {
    return fail(HDF_INVALID_ARGUMENT, "null argument");
  }
  return guard([&] {
    const hdf_experiment_config c = with_defaults(cfg);
    hdf::SbaForcing P(m->m, sba_rules(c));
    *out = dup(hdf::order_dot(P.generic_union_check(c.seed, c.steps, c.block).order));
    return HDF_OK;
  });
}

}  // extern "C"
