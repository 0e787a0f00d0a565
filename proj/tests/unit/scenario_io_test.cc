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

#include "doctest.h"
#include "json.hpp"
#include "wcn/scenario_io.h"

namespace wcn {
namespace {

TEST_CASE("scenario JSON round trip") {
  ScenarioSpec s;
  s.num_aps = 4;
  s.num_aliens = 2;
  s.delta = 0.3;
  s.horizon = 7;
  s.mobility.kind = MobilityGenerator::Kind::kLocality;
  s.mobility.spread = 1.5;
  s.mobility.sort_evaluations = true;
  s.subscriber_evaluation.kind = EvaluationGenerator::Kind::kRamp;
  s.subscriber_evaluation.low = 0.1;
  s.subscriber_evaluation.high = 0.9;
  s.mobility_overrides.push_back({0, {0.2, 0.2, 0.2, 0.2, 0.2}});
  s.evaluation_overrides.push_back({1, 3.0});
  s.home_rate = 12.0;
  const auto j = ScenarioSpecToJson(s);
  CHECK(ScenarioSpecToJson(ScenarioSpecFromJson(j)) == j);
  const NetworkModel a = SynthScenario(s, 2), b = SynthScenario(ScenarioSpecFromJson(j), 2);
  for (int u = 0; u < a.num_users(); ++u) {
    CHECK(a.user(u).mobility == b.user(u).mobility);
    CHECK(a.evaluation(u) == b.evaluation(u));
  }
  CHECK(a.evaluation(1) == 3.0);
  CHECK(a.home_rate(0) == 12.0);
}

TEST_CASE("unknown scenario keys are rejected") {
  auto j = ScenarioSpecToJson(ScenarioSpec{});
  j["detla"] = 0.4;
  CHECK_THROWS(ScenarioSpecFromJson(j));
  auto k = ScenarioSpecToJson(ScenarioSpec{});
  k["mobility"]["kind"] = "teleport";
  CHECK_THROWS(ScenarioSpecFromJson(k));
}

}  // namespace
}  // namespace wcn
