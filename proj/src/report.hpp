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

#include <string>
#include <vector>

namespace hdf {

// One checked clause (axiom, lemma, hypothesis) with a concrete witness when
// it fails. `evaluated` is false when an earlier failure made the clause
// meaningless to check.
struct ClauseResult {
  std::string name;
  bool evaluated = true;
  bool passed = true;
  std::string witness;
  std::string detail;
};

struct Report {
  std::vector<ClauseResult> clauses;

  void pass(std::string name, std::string detail = {}) {
    clauses.push_back({std::move(name), true, true, {}, std::move(detail)});
  }
  void fail(std::string name, std::string witness, std::string detail = {}) {
    clauses.push_back(
        {std::move(name), true, false, std::move(witness), std::move(detail)});
  }
  void skip(std::string name, std::string why) {
    clauses.push_back({std::move(name), false, false, {}, std::move(why)});
  }
  void add(std::string name, bool ok, std::string witness,
           std::string detail = {}) {
    if (ok) {
      pass(std::move(name), std::move(detail));
    } else {
      fail(std::move(name), std::move(witness), std::move(detail));
    }
  }

  bool all_pass() const {
    for (const auto& c : clauses) {
      if (!c.passed) return false;
    }
    return true;
  }

  const ClauseResult* first_failure() const {
    for (const auto& c : clauses) {
      if (c.evaluated && !c.passed) return &c;
    }
    return nullptr;
  }

  const ClauseResult* find(const std::string& name) const {
    for (const auto& c : clauses) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  bool failed(const std::string& name) const {
    const auto* c = find(name);
    return c != nullptr && c->evaluated && !c->passed;
  }
};

}  // namespace hdf
