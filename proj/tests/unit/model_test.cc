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

#include <numeric>
#include <vector>

#include "doctest.h"
#include "wcn/errors.h"
#include "wcn/model.h"

namespace wcn {
namespace {

User Sub(double rho, std::vector<double> row) {
  return {UserKind::kSubscriber, rho, std::move(row), std::nullopt};
}

TEST_CASE("valid model has an empty report") {
  NetworkModel m({Sub(1, {0.2, 0.5, 0.3}), Sub(1, {0.1, 0.1, 0.8})}, {}, 0.5, 1);
  CHECK(ValidateModel(m).ok());
  CHECK_NOTHROW(RequireValid(m));
}

TEST_CASE("probability out of range") {
  NetworkModel m({Sub(1, {-0.2, 1.2})}, {}, 0.5, 1);
  const auto r = ValidateModel(m);
  CHECK(r.Has("mobility.out_of_range"));
  CHECK_THROWS_AS(RequireValid(m), InvalidModelError);
}

TEST_CASE("row sum off by 0.1") {
  NetworkModel m({Sub(1, {0.0, 0.9})}, {}, 0.5, 1);
  CHECK(ValidateModel(m).Has("mobility.row_sum"));
}

TEST_CASE("other structural violations") {
  CHECK(ValidateModel(NetworkModel({Sub(-1, {0, 1})}, {}, 0.5, 1)).Has("user.evaluation"));
  CHECK(ValidateModel(NetworkModel({Sub(1, {0, 1})}, {}, 1.5, 1)).Has("model.delta"));
  CHECK(ValidateModel(NetworkModel({Sub(1, {0, 1})}, {}, 0.5, 0)).Has("model.horizon"));
  CHECK(ValidateModel(NetworkModel({Sub(1, {1})}, {}, 0.5, 1)).Has("mobility.size"));
  CHECK(ValidateModel(NetworkModel({}, {}, 0.5, 1)).Has("model.no_aps"));
}

TEST_CASE("single AP degenerate model") {
  NetworkModel m({Sub(1, {0, 1})}, {}, 0.5, 1);
  CHECK(ValidateModel(m).ok());
  CHECK(m.num_aps() == 1);
  CHECK(m.eta(0, 0) == 1.0);
}

TEST_CASE("two APs, one Alien, uniform mobility") {
  ScenarioSpec s;
  s.num_aps = 2;
  s.num_aliens = 1;
  s.delta = 0.5;
  const NetworkModel m = SynthScenario(s, 1);
  CHECK(ValidateModel(m).ok());
  CHECK(m.num_users() == 3);
  CHECK(m.delta() == 0.5);
  for (int u = 1; u < 3; ++u) {
    for (double v : m.user(u).mobility) CHECK(v == doctest::Approx(1.0 / 3));
  }
}

TEST_CASE("gaussian evaluations are reproducible per seed") {
  ScenarioSpec s;
  s.num_aps = 20;
  s.num_aliens = 10;
  s.subscriber_evaluation.kind = EvaluationGenerator::Kind::kGaussian;
  s.alien_evaluation = s.subscriber_evaluation;
  const NetworkModel a = SynthScenario(s, 42), b = SynthScenario(s, 42),
                     c = SynthScenario(s, 43);
  bool differs = false;
  for (int u = 0; u < a.num_users(); ++u) {
    CHECK(a.evaluation(u) == b.evaluation(u));
    CHECK(a.evaluation(u) >= 0);
    differs |= a.evaluation(u) != c.evaluation(u);
  }
  CHECK(differs);
}

TEST_CASE("generators produce valid rows") {
  for (auto kind : {MobilityGenerator::Kind::kUniform, MobilityGenerator::Kind::kHotnessRamp,
                    MobilityGenerator::Kind::kLocality}) {
    ScenarioSpec s;
    s.num_aps = 30;
    s.num_aliens = 12;
    s.mobility.kind = kind;
    s.mobility.sort_evaluations = true;
    s.subscriber_evaluation.kind = EvaluationGenerator::Kind::kGaussian;
    const NetworkModel m = SynthScenario(s, 3);
    CHECK(ValidateModel(m).ok());
  }
}

TEST_CASE("hotness ramp gives later APs more visitors") {
  ScenarioSpec s;
  s.num_aps = 10;
  s.num_aliens = 5;
  s.mobility.kind = MobilityGenerator::Kind::kHotnessRamp;
  const NetworkModel m = SynthScenario(s, 1);
  const int alien = m.num_aps();
  for (int a = 1; a < m.num_aps(); ++a) CHECK(m.eta(alien, a) > m.eta(alien, a - 1));
}

TEST_CASE("sorted locality keeps the evaluation multiset") {
  ScenarioSpec s;
  s.num_aps = 25;
  s.num_aliens = 0;
  s.mobility.kind = MobilityGenerator::Kind::kLocality;
  s.subscriber_evaluation.kind = EvaluationGenerator::Kind::kGaussian;
  auto values = [](const NetworkModel& m) {
    std::vector<double> v;
    for (int u = 0; u < m.num_users(); ++u) v.push_back(m.evaluation(u));
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto plain = values(SynthScenario(s, 9));
  s.mobility.sort_evaluations = true;
  CHECK(values(SynthScenario(s, 9)) == plain);
}

TEST_CASE("bad specs are rejected") {
  ScenarioSpec s;
  s.num_aps = 0;
  CHECK_FALSE(CheckScenarioSpec(s).empty());
  CHECK_THROWS(SynthScenario(s, 1));
}

TEST_CASE("price schemes") {
  const auto u = PriceScheme::Uniform(3, 2.0);
  CHECK(u.prices == std::vector<double>{2, 2, 2});
  CHECK_FALSE(u.group_backed());
  const auto g = PriceScheme::FromGroups({1.0, 3.0}, {0, 1, 1});
  CHECK(g.prices == std::vector<double>{1, 3, 3});
  CHECK(g.Clamped(2.0).prices == std::vector<double>{1, 2, 2});
}

}  // namespace
}  // namespace wcn
