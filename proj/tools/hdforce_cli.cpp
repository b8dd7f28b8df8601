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

// hdforce: command-line front end over the C API.
//
// Exit codes: 0 pass, 1 validation failure, 2 counterexample, 64 bad usage
// or unreadable input, 70 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hdforce/hdforce.h"

namespace {

constexpr int kUsage = 64;
constexpr int kSoftware = 70;

// A copy level on top of M2: widths 1,2,4,4 with the identity family.
constexpr const char* kM2Copy = R"({"height":3,"thetas":[1,2,4,4],"steps":[
  {"kind":"successor","delta":0,"f":[1]},
  {"kind":"successor","delta":0,"f":[2,3]},
  {"kind":"amalgam","family":[[0,1,2,3]]}]})";

struct Failure {
  int code;
  std::string message;
};

int status_exit(hdf_status s) {
  return s == HDF_INTERNAL ? kSoftware : kUsage;
}

void check(hdf_status s) {
  if (s != HDF_OK) throw Failure{status_exit(s), hdf_last_error()};
}

struct MorassDeleter {
  void operator()(hdf_morass* m) const { hdf_morass_free(m); }
};
using MorassPtr = std::unique_ptr<hdf_morass, MorassDeleter>;

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { hdf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Builtin names: M<h> is the doubling morass of height h, M2copy adds a
// copy level above M2. Anything else is a file path.
std::optional<unsigned> doubling_height(const std::string& src) {
  if (src.size() < 2 || src[0] != 'M') return std::nullopt;
  for (std::size_t i = 1; i < src.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(src[i]))) return std::nullopt;
  }
  return static_cast<unsigned>(std::stoul(src.substr(1)));
}

std::string morass_json(const std::string& src) {
  if (src == "M2copy") return kM2Copy;
  if (auto h = doubling_height(src)) {
    hdf_morass* raw = nullptr;
    check(hdf_morass_doubling(*h, &raw));
    MorassPtr m(raw);
    Text t;
    check(hdf_morass_to_json(m.get(), &t.p));
    return t.str();
  }
  return read_file(src);
}

MorassPtr load_morass(const std::string& src) {
  hdf_morass* raw = nullptr;
  if (auto h = doubling_height(src)) {
    check(hdf_morass_doubling(*h, &raw));
  } else {
    check(hdf_morass_from_json(morass_json(src).c_str(), &raw));
  }
  return MorassPtr(raw);
}

struct Output {
  std::string path;
  void write(const std::string& s) const {
    if (path.empty()) {
      std::cout << s;
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kUsage, "cannot write '" + path + "'"};
    out << s;
  }
};

struct Bounds {
  uint64_t seed = 0;
  uint64_t steps = 100, trials = 20, samples = 10000;
  uint32_t family_size = 8, max_a = 2, max_b = 2, colors = 3, max_x = 3,
           block = 2;
  std::string fixture = "harmonized-cohen", mutation;

  void add_universe(CLI::App* c) {
    c->add_option("--max-a", max_a, "bound on |a| (colored-pair forcing)")
        ->capture_default_str();
    c->add_option("--max-b", max_b, "bound on |b|")->capture_default_str();
    c->add_option("--colors", colors, "colors are drawn from [0, colors)")
        ->capture_default_str();
    c->add_option("--max-x", max_x, "bound on |x| (partial-order forcing)")
        ->capture_default_str();
    c->add_option("--block", block, "block size B")->capture_default_str();
  }

  hdf_experiment_config config() const {
    hdf_experiment_config c;
    hdf_experiment_config_init(&c);
    c.fixture = fixture.c_str();
    c.mutation = mutation.empty() ? nullptr : mutation.c_str();
    c.seed = seed;
    c.steps = steps;
    c.trials = trials;
    c.samples = samples;
    c.family_size = family_size;
    c.max_a = max_a;
    c.max_b = max_b;
    c.colors = colors;
    c.max_x = max_x;
    c.block = block;
    return c;
  }
};

bool randomized(const std::string& experiment) {
  return experiment == "generic" || experiment == "dp" ||
         experiment == "ccc" || experiment == "sba-generic";
}

int run(int argc, char** argv) {
  CLI::App app{"Finite morass analogues and the forcings built along them"};
  app.set_version_flag("--version", hdf_version());
  app.require_subcommand(1);
  app.fallthrough();  // --output may follow the subcommand
  Output out;
  app.add_option("-o,--output", out.path, "write the result to a file");

  // morass gen
  auto* morass = app.add_subcommand("morass", "morass documents");
  morass->require_subcommand(1);
  auto* gen = morass->add_subcommand("gen", "generate a morass document");
  unsigned height = 0;
  std::string strategy = "doubling";
  std::optional<uint64_t> gen_seed;
  uint32_t theta_cap = 8;
  gen->add_option("--height", height, "number of levels above 0")->required();
  gen->add_option("--strategy", strategy, "doubling or random")
      ->check(CLI::IsMember({"doubling", "random"}))
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "seed (required for random)");
  gen->add_option("--theta-cap", theta_cap, "largest width (random)")
      ->capture_default_str();

  // check
  auto* chk = app.add_subcommand("check", "validate a document");
  std::string kind, file, chk_morass = "M2", chk_fixture = "harmonized-cohen";
  chk->add_option("kind", kind, "morass, fs, delta or sba")
      ->required()
      ->check(CLI::IsMember({"morass", "fs", "delta", "sba"}));
  chk->add_option("file", file,
                  "document (for morass and fs: a morass name or file)")
      ->required();
  chk->add_option("--morass", chk_morass, "morass name or file")
      ->capture_default_str();
  chk->add_option("--fixture", chk_fixture, "forcing system fixture (fs)")
      ->capture_default_str();

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  std::string exp_name, exp_morass = "M2", format = "json";
  std::optional<uint64_t> exp_seed;
  Bounds b;
  exp->add_option("name", exp_name, "experiment name, or 'list'")->required();
  exp->add_option("--morass", exp_morass, "morass name or file")
      ->capture_default_str();
  exp->add_option("--seed", exp_seed, "seed (required for seeded runs)");
  exp->add_option("--steps", b.steps, "generic filter steps")
      ->capture_default_str();
  exp->add_option("--trials", b.trials, "ccc trials")->capture_default_str();
  exp->add_option("--samples", b.samples, "sampled conditions")
      ->capture_default_str();
  exp->add_option("--family-size", b.family_size, "ccc family size")
      ->capture_default_str();
  exp->add_option("--fixture", b.fixture, "forcing system fixture")
      ->capture_default_str();
  exp->add_option("--mutation", b.mutation, "seeded rule mutation");
  exp->add_option("--format", format, "json or dot (sba-generic only)")
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  b.add_universe(exp);

  // enumerate
  auto* en = app.add_subcommand("enumerate", "list a truncated universe");
  std::string en_kind, en_morass = "M2";
  Bounds eb;
  en->add_option("kind", en_kind, "delta or sba")
      ->required()
      ->check(CLI::IsMember({"delta", "sba"}));
  en->add_option("--morass", en_morass, "morass name or file")
      ->capture_default_str();
  eb.add_universe(en);

  // export
  auto* ex = app.add_subcommand("export", "draw the morass tree as DOT");
  std::string ex_morass;
  ex->add_option("morass", ex_morass, "morass name or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  hdf_verdict verdict = HDF_PASS;
  Text text;

  if (gen->parsed()) {
    hdf_morass* raw = nullptr;
    if (strategy == "random") {
      if (!gen_seed) throw Failure{kUsage, "--seed is required for random"};
      check(hdf_morass_random(height, theta_cap, *gen_seed, &raw));
    } else {
      check(hdf_morass_doubling(height, &raw));
    }
    MorassPtr m(raw);
    check(hdf_morass_to_json(m.get(), &text.p));
  } else if (chk->parsed()) {
    if (kind == "morass") {
      check(hdf_check_morass(morass_json(file).c_str(), &text.p, &verdict));
    } else if (kind == "fs") {
      MorassPtr m = load_morass(file);
      check(hdf_check_fs(m.get(), chk_fixture.c_str(), &text.p, &verdict));
    } else {
      MorassPtr m = load_morass(chk_morass);
      const std::string doc = read_file(file);
      check(kind == "delta"
                ? hdf_check_delta(m.get(), doc.c_str(), &text.p, &verdict)
                : hdf_check_sba(m.get(), doc.c_str(), &text.p, &verdict));
    }
  } else if (exp->parsed()) {
    if (exp_name == "list") {
      check(hdf_experiment_list(&text.p));
    } else {
      if (randomized(exp_name) && !exp_seed) {
        throw Failure{kUsage, "--seed is required for " + exp_name};
      }
      b.seed = exp_seed.value_or(0);
      MorassPtr m = load_morass(exp_morass);
      const hdf_experiment_config cfg = b.config();
      if (format == "dot") {
        if (exp_name != "sba-generic") {
          throw Failure{kUsage, "--format dot is only for sba-generic"};
        }
        check(hdf_sba_generic_dot(m.get(), &cfg, &text.p));
      } else {
        check(hdf_experiment(m.get(), exp_name.c_str(), &cfg, &text.p,
                             &verdict));
      }
    }
  } else if (en->parsed()) {
    MorassPtr m = load_morass(en_morass);
    const hdf_experiment_config cfg = eb.config();
    check(hdf_enumerate(m.get(), en_kind.c_str(), &cfg, &text.p));
  } else if (ex->parsed()) {
    MorassPtr m = load_morass(ex_morass);
    check(hdf_morass_tree_dot(m.get(), &text.p));
  }

  out.write(text.str());
  return static_cast<int>(verdict);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::cerr << "hdforce: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "hdforce: " << e.what() << "\n";
    return kSoftware;
  }
}
