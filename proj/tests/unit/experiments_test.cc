// Copyright 2026 The WCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wcn/experiments.h"

namespace wcn {
namespace {

using nlohmann::json;

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST_CASE("registry lists the built-ins") {
  std::vector<std::string> names;
  for (const auto& e : ListExperiments()) names.push_back(e.name);
  for (const char* n : {"fig5", "fig6", "fig7", "fig10", "appendixI"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK_THROWS(DefaultConfig("nope"));
}

TEST_CASE("fig5 defaults") {
  const json c = DefaultConfig("fig5");
  CHECK(c["scenario"]["delta"] == 0.5);
  CHECK(c["price"] == 1.0);
  CHECK(c["rho_axis"]["steps"] == 21);
}

TEST_CASE("config resolution and validation") {
  const json r = ResolveConfig({{"experiment", "fig5"}, {"eta_axis", {{"steps", 3}}}});
  CHECK(r["eta_axis"]["steps"] == 3);
  CHECK(r["eta_axis"]["max"] == 1.0);
  CHECK(ValidateConfig(r).empty());
  CHECK_THROWS(ResolveConfig({{"experiment", "fig5"}, {"typo", 1}}));
  CHECK_THROWS(ResolveConfig({{"no_experiment", 1}}));

  json empty = r;
  empty["rho_axis"]["steps"] = 0;
  CHECK_FALSE(ValidateConfig(empty).empty());
  json missing = ResolveConfig({{"experiment", "appendixI"}, {"fixture", "/no/such/file.json"}});
  CHECK_FALSE(ValidateConfig(missing).empty());
  CHECK_THROWS(RunExperiment(missing));
}

TEST_CASE("small fig5 sweep is reproducible byte for byte") {
  const json cfg = ResolveConfig({{"experiment", "fig5"},
                                  {"rho_axis", {{"steps", 3}}},
                                  {"eta_axis", {{"steps", 4}}}});
  namespace fs = std::filesystem;
  const fs::path a = fs::temp_directory_path() / "wcn_exp_a";
  const fs::path b = fs::temp_directory_path() / "wcn_exp_b";
  fs::remove_all(a);
  fs::remove_all(b);
  RunAndWrite(cfg, {a.string(), std::nullopt, 1});
  RunAndWrite(cfg, {b.string(), std::nullopt, 3});
  CHECK(Slurp(a / "fig5.csv") == Slurp(b / "fig5.csv"));
  CHECK(Slurp(a / "manifest.json") == Slurp(b / "manifest.json"));
  const json m = json::parse(Slurp(a / "manifest.json"));
  CHECK(m["config"] == cfg);
  CHECK(m["version"] == Version());
  const std::string csv = Slurp(a / "fig5.csv");
  CHECK(csv.rfind("rho1,eta11,alpha1,alpha2,iterations,residual,converged,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 12);
}

TEST_CASE("failed points are recorded, not fatal") {
  // One iteration cannot converge; the sweep still finishes.
  const json cfg = ResolveConfig({{"experiment", "fig5"},
                                  {"rho_axis", {{"steps", 2}}},
                                  {"eta_axis", {{"steps", 2}}},
                                  {"max_iter", 1},
                                  {"approx", false}});
  const auto out = RunExperiment(cfg);
  CHECK(out.failed_points == 4);
  const Table& t = out.tables.at("fig5.csv");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    CHECK(std::isnan(t.at(r, "alpha1")));
    CHECK(t.at(r, "converged") == 0);
  }
}

TEST_CASE("cycle experiment reports no pure equilibrium") {
  const auto out = RunExperiment(ResolveConfig({{"experiment", "appendixI"}}));
  CHECK(out.summary["pure_equilibria"] == 0);
  CHECK(out.summary["converged"] == true);
  CHECK(out.tables.at("appendixI_mixed.csv").at(2, "alpha") > 0.99);
}

TEST_CASE("parallel-for covers every index once and rethrows") {
  std::vector<int> hits(100, 0);
  ParallelFor(100, 4, [&](int i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(ParallelFor(10, 3, [](int i) {
    if (i == 5) throw std::runtime_error("boom");
  }));
}

TEST_CASE("spearman") {
  CHECK(SpearmanCorrelation({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(SpearmanCorrelation({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  // Ties get average ranks: ranks (0.5, 0.5, 2, 3) vs (0, 1, 2, 3).
  CHECK(SpearmanCorrelation({1, 1, 2, 3}, {1, 2, 3, 4}) ==
        doctest::Approx(4.5 / std::sqrt(4.5 * 5.0)));
  CHECK(std::isnan(SpearmanCorrelation({1, 1}, {1, 2})));
}

}  // namespace
}  // namespace wcn
