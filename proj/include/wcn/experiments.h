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

// Built-in experiments: the small-network phase diagram, the large-network
// membership trends, revenue versus number of price groups, and the
// three-subscriber example without a pure equilibrium.
//
// An experiment is described by a JSON config. Built-ins ship defaults; a
// user config names one of them under "experiment" and overrides fields
// (JSON merge patch).

#ifndef WCN_EXPERIMENTS_H_
#define WCN_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace wcn {

struct ExperimentInfo {
  std::string name;
  std::string summary;
};

std::vector<ExperimentInfo> ListExperiments();

// Defaults of a built-in. Throws std::invalid_argument for unknown names.
nlohmann::json DefaultConfig(const std::string& name);

// Merges a user config over the defaults of user["experiment"].
nlohmann::json ResolveConfig(const nlohmann::json& user);

// Empty when the resolved config is runnable.
std::vector<std::string> ValidateConfig(const nlohmann::json& resolved);

// Numeric table; NaN marks a failed point.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  double at(std::size_t row, const std::string& column) const;
  std::string ToCsv() const;
};

struct ExperimentOutput {
  std::map<std::string, Table> tables;  // file name -> table
  nlohmann::json summary;
  int failed_points = 0;
};

// Runs a resolved config in memory. `workers` bounds the thread pool.
ExperimentOutput RunExperiment(const nlohmann::json& resolved, int workers = 1);

struct RunOptions {
  std::string out_dir;
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int workers = 1;
};

// Runs and writes manifest.json plus one CSV per table into out_dir.
// Returns the written file names.
std::vector<std::string> RunAndWrite(nlohmann::json resolved,
                                     const RunOptions& options);

// Runs fn(i) for i in [0, n) on at most `workers` threads.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

double SpearmanCorrelation(const std::vector<double>& a,
                           const std::vector<double>& b);

std::string Version();

}  // namespace wcn

#endif  // WCN_EXPERIMENTS_H_
