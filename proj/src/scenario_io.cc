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

#include "wcn/scenario_io.h"

#include <set>
#include <stdexcept>
#include <string>

namespace wcn {
namespace {

using nlohmann::json;

void RejectUnknown(const json& j, const std::set<std::string>& allowed,
                   const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

EvaluationGenerator EvaluationFromJson(const json& j, const std::string& where) {
  RejectUnknown(j, {"kind", "value", "low", "high", "mean", "variance"}, where);
  EvaluationGenerator g;
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant") {
    g.kind = EvaluationGenerator::Kind::kConstant;
  } else if (kind == "ramp") {
    g.kind = EvaluationGenerator::Kind::kRamp;
  } else if (kind == "gaussian") {
    g.kind = EvaluationGenerator::Kind::kGaussian;
  } else {
    throw std::invalid_argument(where + ": unknown kind '" + kind + "'");
  }
  Read(j, "value", g.value);
  Read(j, "low", g.low);
  Read(j, "high", g.high);
  Read(j, "mean", g.mean);
  Read(j, "variance", g.variance);
  return g;
}

json EvaluationToJson(const EvaluationGenerator& g) {
  switch (g.kind) {
    case EvaluationGenerator::Kind::kConstant:
      return {{"kind", "constant"}, {"value", g.value}};
    case EvaluationGenerator::Kind::kRamp:
      return {{"kind", "ramp"}, {"low", g.low}, {"high", g.high}};
    case EvaluationGenerator::Kind::kGaussian:
      return {{"kind", "gaussian"}, {"mean", g.mean}, {"variance", g.variance}};
  }
  return {};
}

MobilityGenerator MobilityFromJson(const json& j) {
  RejectUnknown(j,
                {"kind", "uncovered", "ramp_exponent", "home", "spread",
                 "hotness_ratio", "sort_evaluations", "rows"},
                "mobility");
  MobilityGenerator g;
  const std::string kind = j.value("kind", "uniform");
  if (kind == "uniform") {
    g.kind = MobilityGenerator::Kind::kUniform;
  } else if (kind == "hotness_ramp") {
    g.kind = MobilityGenerator::Kind::kHotnessRamp;
  } else if (kind == "locality") {
    g.kind = MobilityGenerator::Kind::kLocality;
  } else if (kind == "custom") {
    g.kind = MobilityGenerator::Kind::kCustom;
  } else {
    throw std::invalid_argument("mobility: unknown kind '" + kind + "'");
  }
  Read(j, "uncovered", g.uncovered);
  Read(j, "ramp_exponent", g.ramp_exponent);
  Read(j, "home", g.home);
  Read(j, "spread", g.spread);
  Read(j, "hotness_ratio", g.hotness_ratio);
  Read(j, "sort_evaluations", g.sort_evaluations);
  Read(j, "rows", g.rows);
  return g;
}

json MobilityToJson(const MobilityGenerator& g) {
  switch (g.kind) {
    case MobilityGenerator::Kind::kUniform:
      return {{"kind", "uniform"}};
    case MobilityGenerator::Kind::kHotnessRamp:
      return {{"kind", "hotness_ramp"},
              {"uncovered", g.uncovered},
              {"ramp_exponent", g.ramp_exponent}};
    case MobilityGenerator::Kind::kLocality:
      return {{"kind", "locality"},         {"uncovered", g.uncovered},
              {"home", g.home},             {"spread", g.spread},
              {"hotness_ratio", g.hotness_ratio},
              {"sort_evaluations", g.sort_evaluations}};
    case MobilityGenerator::Kind::kCustom:
      return {{"kind", "custom"}, {"rows", g.rows}};
  }
  return {};
}

}  // namespace

ScenarioSpec ScenarioSpecFromJson(const json& j) {
  RejectUnknown(j,
                {"num_aps", "num_aliens", "delta", "horizon", "throughput",
                 "mobility", "subscriber_evaluation", "alien_evaluation",
                 "mobility_overrides", "evaluation_overrides", "home_rate"},
                "scenario");
  ScenarioSpec s;
  try {
    Read(j, "num_aps", s.num_aps);
    Read(j, "num_aliens", s.num_aliens);
    Read(j, "delta", s.delta);
    Read(j, "horizon", s.horizon);
    if (j.contains("throughput")) {
      const auto& t = j.at("throughput");
      RejectUnknown(t, {"tau", "payload", "t_backoff", "t_collision", "t_success"},
                    "throughput");
      Read(t, "tau", s.throughput.tau);
      Read(t, "payload", s.throughput.payload);
      Read(t, "t_backoff", s.throughput.t_backoff);
      Read(t, "t_collision", s.throughput.t_collision);
      Read(t, "t_success", s.throughput.t_success);
    }
    if (j.contains("mobility")) s.mobility = MobilityFromJson(j.at("mobility"));
    if (j.contains("subscriber_evaluation")) {
      s.subscriber_evaluation = EvaluationFromJson(
          j.at("subscriber_evaluation"), "subscriber_evaluation");
    }
    if (j.contains("alien_evaluation")) {
      s.alien_evaluation =
          EvaluationFromJson(j.at("alien_evaluation"), "alien_evaluation");
    }
    if (j.contains("mobility_overrides")) {
      for (const auto& o : j.at("mobility_overrides")) {
        RejectUnknown(o, {"user", "row"}, "mobility_overrides");
        s.mobility_overrides.emplace_back(
            o.at("user").get<int>(), o.at("row").get<std::vector<double>>());
      }
    }
    if (j.contains("evaluation_overrides")) {
      for (const auto& o : j.at("evaluation_overrides")) {
        RejectUnknown(o, {"user", "value"}, "evaluation_overrides");
        s.evaluation_overrides.emplace_back(o.at("user").get<int>(),
                                            o.at("value").get<double>());
      }
    }
    if (j.contains("home_rate") && !j.at("home_rate").is_null()) {
      s.home_rate = j.at("home_rate").get<double>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario: ") + e.what());
  }
  return s;
}

json ScenarioSpecToJson(const ScenarioSpec& s) {
  json j;
  j["num_aps"] = s.num_aps;
  j["num_aliens"] = s.num_aliens;
  j["delta"] = s.delta;
  j["horizon"] = s.horizon;
  j["throughput"] = {{"tau", s.throughput.tau},
                     {"payload", s.throughput.payload},
                     {"t_backoff", s.throughput.t_backoff},
                     {"t_collision", s.throughput.t_collision},
                     {"t_success", s.throughput.t_success}};
  j["mobility"] = MobilityToJson(s.mobility);
  j["subscriber_evaluation"] = EvaluationToJson(s.subscriber_evaluation);
  j["alien_evaluation"] = EvaluationToJson(s.alien_evaluation);
  j["mobility_overrides"] = json::array();
  for (const auto& [u, row] : s.mobility_overrides) {
    j["mobility_overrides"].push_back({{"user", u}, {"row", row}});
  }
  j["evaluation_overrides"] = json::array();
  for (const auto& [u, v] : s.evaluation_overrides) {
    j["evaluation_overrides"].push_back({{"user", u}, {"value", v}});
  }
  j["home_rate"] = s.home_rate ? json(*s.home_rate) : json(nullptr);
  return j;
}

}  // namespace wcn
