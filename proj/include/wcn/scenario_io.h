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

// JSON form of ScenarioSpec. Field names are listed in docs/config.md.
// Unknown keys are rejected so that typos do not silently fall back to
// defaults.

#ifndef WCN_SCENARIO_IO_H_
#define WCN_SCENARIO_IO_H_

#include "json.hpp"
#include "wcn/model.h"

namespace wcn {

ScenarioSpec ScenarioSpecFromJson(const nlohmann::json& j);
nlohmann::json ScenarioSpecToJson(const ScenarioSpec& spec);

}  // namespace wcn

#endif  // WCN_SCENARIO_IO_H_
