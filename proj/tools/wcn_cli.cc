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

// Command-line front end for the experiment registry.
//
//   wcn list [--configs DIR]
//   wcn describe NAME | --config FILE
//   wcn validate NAME | --config FILE
//   wcn run NAME | --config FILE [--out DIR] [--seed N] [--workers N]
//
// Exit status: 0 on success, 1 on runtime failure, 2 on a bad invocation or
// an invalid config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "wcn/experiments.h"

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json LoadUserConfig(const std::string& name, const std::string& path) {
  if (!name.empty() && !path.empty()) {
    throw ConfigError("give either an experiment name or --config, not both");
  }
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config " + path);
    try {
      return json::parse(f);
    } catch (const json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  if (name.empty()) throw ConfigError("missing experiment name or --config");
  return json{{"experiment", name}};
}

json Resolve(const std::string& name, const std::string& path) {
  try {
    return wcn::ResolveConfig(LoadUserConfig(name, path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wi-Fi community network pricing experiments"};
  app.set_version_flag("--version", wcn::Version());
  app.require_subcommand(1);

  std::string name, config_path, out_dir = "out", configs_dir;
  std::optional<std::uint64_t> seed;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* list = app.add_subcommand("list", "List built-in experiments");
  list->add_option("--configs", configs_dir, "Also list *.json configs in DIR")
      ->check(CLI::ExistingDirectory);

  auto* describe = app.add_subcommand("describe", "Print the resolved config");
  auto* validate = app.add_subcommand("validate", "Check a config without running");
  auto* run = app.add_subcommand("run", "Run an experiment and write CSVs");
  for (auto* sub : {describe, validate, run}) {
    sub->add_option("name", name, "Built-in experiment name");
    sub->add_option("-c,--config", config_path, "JSON config file");
  }
  run->add_option("-o,--out", out_dir, "Output directory");
  run->add_option("-s,--seed", seed, "Override the config seed");
  run->add_option("-j,--workers", workers, "Worker threads")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& e : wcn::ListExperiments()) {
        std::cout << e.name << "\t" << e.summary << "\n";
      }
      if (!configs_dir.empty()) {
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(configs_dir)) {
          if (entry.path().extension() == ".json") files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
          std::string exp = "?";
          try {
            std::ifstream in(f);
            exp = json::parse(in).at("experiment").get<std::string>();
          } catch (const std::exception&) {
          }
          std::cout << f << "\t(config for " << exp << ")\n";
        }
      }
      return 0;
    }
    const json resolved = Resolve(name, config_path);
    if (*describe) {
      std::cout << resolved.dump(2) << "\n";
      return 0;
    }
    const auto errors = wcn::ValidateConfig(resolved);
    if (!errors.empty()) {
      for (const auto& e : errors) std::cerr << "invalid config: " << e << "\n";
      return 2;
    }
    if (*validate) {
      std::cout << "ok\n";
      return 0;
    }
    wcn::RunOptions opts;
    opts.out_dir = out_dir;
    opts.seed = seed;
    opts.workers = workers;
    for (const auto& f : wcn::RunAndWrite(resolved, opts)) {
      std::cout << (std::filesystem::path(out_dir) / f).string() << "\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
