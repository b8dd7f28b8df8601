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

// JSON documents for morasses, conditions and reports, and DOT drawings.
// Objects use nlohmann's default std::map storage, so keys come out sorted
// and every dump is canonical.

#include <string>

#include "delta_forcing.hpp"
#include "json.hpp"
#include "morass.hpp"
#include "report.hpp"
#include "sba_forcing.hpp"

namespace hdf {

using Json = nlohmann::json;

// Parse failures and shape errors throw Error(kParse).
Json parse_json(const std::string& text);

Json to_json(const MorassData& d);
MorassData morass_data_from_json(const Json& j);

Json to_json(const DeltaCondition& p);
DeltaCondition delta_from_json(const Json& j);  // also checks the bracket

Json to_json(const SpoCondition& p);
SpoCondition spo_from_json(const Json& j);

// {"pass", "first_failure": {"name","witness"} or null, "clauses": [...]}
Json to_json(const Report& r);

// Levels as ranks; an edge per immediate successor, labeled with the indices
// of the level maps that produce it (0 = identity, 1 = the split map at
// successor steps; listed order at amalgam steps).
std::string tree_dot(const Morass& m);

}  // namespace hdf
