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

#include "io.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "errors.hpp"

namespace hdf {

namespace {

[[noreturn]] void bad_shape(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad_shape("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad_shape(std::string("missing field \"") + key + "\"");
  return *it;
}

Ord ord(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    bad_shape("expected a natural number, got " + j.dump());
  }
  const auto v = j.get<unsigned long long>();
  if (v > 0xffffffffull) bad_shape("number out of range: " + j.dump());
  return static_cast<Ord>(v);
}

std::vector<Ord> ords(const Json& j) {
  if (!j.is_array()) bad_shape("expected an array, got " + j.dump());
  std::vector<Ord> out;
  for (const auto& x : j) out.push_back(ord(x));
  return out;
}

// Run a conversion, turning nlohmann type errors into parse errors.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    bad_shape(e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad_shape(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const MorassData& d) {
  Json steps = Json::array();
  for (const auto& s : d.steps) {
    if (const auto* succ = std::get_if<SuccessorStep>(&s)) {
      steps.push_back({{"kind", "successor"},
                       {"delta", succ->delta},
                       {"f", succ->f}});
    } else {
      const auto& am = std::get<AmalgamStep>(s);
      steps.push_back({{"kind", "amalgam"}, {"family", am.family}});
    }
  }
  return {{"height", d.height}, {"thetas", d.thetas}, {"steps", steps}};
}

MorassData morass_data_from_json(const Json& j) {
  return guarded([&] {
    MorassData d;
    d.height = ord(field(j, "height"));
    d.thetas = ords(field(j, "thetas"));
    const Json& steps = field(j, "steps");
    if (!steps.is_array()) bad_shape("\"steps\" must be an array");
    for (const auto& s : steps) {
      const std::string kind = field(s, "kind").get<std::string>();
      if (kind == "successor") {
        d.steps.emplace_back(
            SuccessorStep{ord(field(s, "delta")), ords(field(s, "f"))});
      } else if (kind == "amalgam") {
        AmalgamStep a;
        const Json& fam = field(s, "family");
        if (!fam.is_array()) bad_shape("\"family\" must be an array");
        for (const auto& f : fam) a.family.push_back(ords(f));
        d.steps.emplace_back(std::move(a));
      } else {
        bad_shape("unknown step kind \"" + kind + "\"");
      }
    }
    return d;
  });
}

Json to_json(const DeltaCondition& p) {
  Json f = Json::array();
  for (const auto& [k, c] : p.f.entries()) {
    f.push_back({k.first, k.second, c});
  }
  return {{"a", p.a}, {"b", p.b}, {"f", f}};
}

DeltaCondition delta_from_json(const Json& j) {
  return guarded([&] {
    std::vector<std::pair<OrdPair, Color>> cells;
    const Json& f = field(j, "f");
    if (!f.is_array()) bad_shape("\"f\" must be an array");
    for (const auto& e : f) {
      const auto v = ords(e);
      if (v.size() != 3) bad_shape("cells are [alpha, gamma, color]");
      cells.push_back({{v[0], v[1]}, v[2]});
    }
    try {
      return make_condition(ords(field(j, "a")), ords(field(j, "b")), cells);
    } catch (const Error& e) {
      bad_shape(e.what());
    }
  });
}

Json to_json(const SpoCondition& p) {
  Json lt = Json::array();
  for (const auto& [a, b] : p.lt) lt.push_back({a, b});
  return {{"x", p.x}, {"lt", lt}, {"B", p.block}};
}

SpoCondition spo_from_json(const Json& j) {
  return guarded([&] {
    std::vector<std::pair<Ord, Ord>> lt;
    const Json& rel = field(j, "lt");
    if (!rel.is_array()) bad_shape("\"lt\" must be an array");
    for (const auto& e : rel) {
      const auto v = ords(e);
      if (v.size() != 2) bad_shape("relations are [alpha, beta]");
      lt.push_back({v[0], v[1]});
    }
    const Ord block = j.contains("B") ? ord(j.at("B")) : 2;
    try {
      return make_spo(ords(field(j, "x")), std::move(lt), block);
    } catch (const Error& e) {
      bad_shape(e.what());
    }
  });
}

Json to_json(const Report& r) {
  Json clauses = Json::array();
  for (const auto& c : r.clauses) {
    clauses.push_back({{"name", c.name},
                       {"evaluated", c.evaluated},
                       {"passed", c.passed},
                       {"witness", c.witness},
                       {"detail", c.detail}});
  }
  Json first = nullptr;
  if (const auto* f = r.first_failure()) {
    first = {{"name", f->name}, {"witness", f->witness}};
  }
  return {{"pass", r.all_pass()}, {"first_failure", first},
          {"clauses", clauses}};
}

std::string tree_dot(const Morass& m) {
  std::ostringstream out;
  out << "digraph morass {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (unsigned a = 0; a <= m.height(); ++a) {
    out << "  { rank=same;";
    for (Ord nu = 0; nu < m.theta(a); ++nu) out << " \"" << a << "," << nu << "\";";
    out << " }\n";
  }
  for (unsigned a = 0; a < m.height(); ++a) {
    std::vector<Morass::SourcedMap> maps;
    if (m.is_successor(a)) {
      maps = {{a, OrderMap::identity(m.theta(a))}, {a, m.split(a)}};
    } else {
      maps = m.amalgam(a);
    }
    std::map<std::tuple<unsigned, Ord, Ord>, std::string> edges;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const OrderMap& f = maps[i].map;
      for (Ord nu = 0; nu < f.src_bound(); ++nu) {
        std::string& label = edges[{maps[i].source_level, nu, f(nu)}];
        label += (label.empty() ? "" : ",") + std::to_string(i);
      }
    }
    for (const auto& [e, label] : edges) {
      const auto& [src, from, to] = e;
      out << "  \"" << src << "," << from << "\" -> \"" << a + 1 << ","
          << to << "\" [label=\"" << label << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace hdf
