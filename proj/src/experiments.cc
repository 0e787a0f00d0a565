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

#include "wcn/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "wcn/approx.h"
#include "wcn/errors.h"
#include "wcn/membership_game.h"
#include "wcn/pricing.h"
#include "wcn/scenario_io.h"
#include "wcn/segmentation.h"

#ifndef WCN_VERSION
#define WCN_VERSION "unknown"
#endif

namespace wcn {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Format(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<double> Axis(const json& axis) {
  const double lo = axis.at("min").get<double>();
  const double hi = axis.at("max").get<double>();
  const int steps = axis.at("steps").get<int>();
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) {
    v[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Defaults

json Fig5Defaults() {
  ScenarioSpec s;
  s.num_aps = 2;
  s.num_aliens = 1;
  s.delta = 0.5;
  s.horizon = 100;
  s.mobility.kind = MobilityGenerator::Kind::kUniform;
  s.subscriber_evaluation.value = 0.7;
  s.alien_evaluation.value = 0.7;
  return {{"experiment", "fig5"},
          {"seed", 1},
          {"scenario", ScenarioSpecToJson(s)},
          {"price", 1.0},
          {"rho_axis", {{"min", 0.0}, {"max", 1.0}, {"steps", 21}}},
          {"eta_axis", {{"min", 0.0}, {"max", 1.0}, {"steps", 21}}},
          {"gamma", 0.01},
          {"eps", 1e-9},
          {"max_iter", 10000},
          {"approx", true}};
}

json LargeDefaults(const std::string& name) {
  ScenarioSpec s;
  s.num_aps = 100;
  s.num_aliens = 100;
  s.delta = 0.5;
  s.horizon = 1;
  s.alien_evaluation.value = 5.0;
  double gamma = 0.1;
  if (name == "fig6") {
    s.mobility.kind = MobilityGenerator::Kind::kHotnessRamp;
    s.mobility.uncovered = 0.5;
    s.subscriber_evaluation.value = 1.0;
  } else {
    s.mobility.kind = MobilityGenerator::Kind::kUniform;
    s.subscriber_evaluation.kind = EvaluationGenerator::Kind::kRamp;
    s.subscriber_evaluation.low = 0.05;
    s.subscriber_evaluation.high = 0.6;
    gamma = 0.05;
  }
  return {{"experiment", name},  {"seed", 1},     {"scenario", ScenarioSpecToJson(s)},
          {"price", 1.0},        {"gamma", gamma}, {"eps", 1e-8},
          {"max_iter", 10000},   {"damping", 1.0}};
}

json Fig10Defaults() {
  ScenarioSpec s;
  s.num_aps = 100;
  s.num_aliens = 100;
  s.delta = 0.8;
  s.horizon = 1;
  s.mobility.kind = MobilityGenerator::Kind::kLocality;
  s.mobility.uncovered = 0.3;
  s.mobility.home = 0.3;
  s.mobility.spread = 1.0;
  s.mobility.hotness_ratio = 4.0;
  s.mobility.sort_evaluations = true;
  s.subscriber_evaluation.kind = EvaluationGenerator::Kind::kGaussian;
  s.subscriber_evaluation.mean = 4.0;
  s.subscriber_evaluation.variance = 2.0;
  s.alien_evaluation = s.subscriber_evaluation;
  return {{"experiment", "fig10"},
          {"seed", 7},
          {"scenario", ScenarioSpecToJson(s)},
          {"betas", {0.0, 0.3, 0.5, 0.7, 1.0}},
          {"groups", {{"min", 1}, {"max", 7}}},
          {"gamma", 0.05},
          {"eps", 1e-6},
          {"max_iter", 2000},
          {"damping", 1.0},
          {"optimizer", {{"nf_max", 200}, {"seed", 3}}},
          {"kmeans", {{"restarts", 10}, {"seed", 1}}},
          {"warm_start", true}};
}

json CycleDefaults() {
  return {{"experiment", "appendixI"},
          {"fixture", "builtin"},
          {"gamma", 0.05},
          {"eps", 1e-6},
          {"max_iter", 10000}};
}

// ---------------------------------------------------------------------------
// Runners

ExperimentOutput RunFig5(const json& cfg, int workers) {
  const ScenarioSpec base = ScenarioSpecFromJson(cfg.at("scenario"));
  const auto rhos = Axis(cfg.at("rho_axis"));
  const auto etas = Axis(cfg.at("eta_axis"));
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  const double price = cfg.at("price").get<double>();
  const bool approx = cfg.at("approx").get<bool>();
  MixedSolverOptions mixed;
  mixed.gamma = cfg.at("gamma").get<double>();
  mixed.eps = cfg.at("eps").get<double>();
  mixed.max_iter = cfg.at("max_iter").get<int>();
  ApproxMembershipOptions amixed;
  amixed.gamma = mixed.gamma;
  amixed.eps = mixed.eps;
  amixed.max_iter = mixed.max_iter;

  Table t;
  t.columns = {"rho1",      "eta11",    "alpha1",        "alpha2",
               "iterations", "residual", "converged",     "approx_alpha1",
               "approx_converged"};
  const int n = static_cast<int>(rhos.size() * etas.size());
  t.rows.assign(n, {});
  std::atomic<int> failed{0};
  ParallelFor(n, workers, [&](int idx) {
    const double rho = rhos[idx / etas.size()];
    const double eta = etas[idx % etas.size()];
    ScenarioSpec spec = base;
    // Subscriber 1 stays home with prob eta; the rest is split evenly over
    // "uncovered" and the other APs.
    std::vector<double> row(spec.num_aps + 1, (1.0 - eta) / spec.num_aps);
    row[1] = eta;
    spec.mobility_overrides.emplace_back(0, row);
    spec.evaluation_overrides.emplace_back(0, rho);
    std::vector<double> r = {rho, eta, kNaN, kNaN, kNaN, kNaN, 0, kNaN, 0};
    try {
      const NetworkModel model = SynthScenario(spec, seed);
      ModelBackedOracle oracle(model,
                               PriceScheme::Uniform(model.num_aps(), price));
      const auto eq = SolveMixed(oracle, mixed);
      r[2] = eq.alpha[0];
      r[3] = eq.alpha.size() > 1 ? eq.alpha[1] : kNaN;
      r[4] = eq.iterations;
      r[5] = eq.residual;
      r[6] = 1;
      if (approx) {
        const auto aeq = SolveApproxMembership(
            model, std::vector<double>(model.num_aps(), price), amixed);
        r[7] = aeq.state.alpha[0];
        r[8] = 1;
      }
    } catch (const std::exception&) {
      ++failed;
    }
    t.rows[idx] = std::move(r);
  });

  // Boundary per rho column: smallest eta from which alpha1 stays >= 1-1e-3.
  json boundaries = json::array();
  double worst = kNaN;
  for (std::size_t a = 0; a < rhos.size(); ++a) {
    double b = kNaN;
    for (std::size_t e = etas.size(); e-- > 0;) {
      const double alpha = t.rows[a * etas.size() + e][2];
      if (!(alpha >= 1.0 - 1e-3)) break;
      b = etas[e];
    }
    boundaries.push_back(std::isnan(b) ? json(nullptr) : json(b));
    if (!std::isnan(b) && (std::isnan(worst) || b > worst)) worst = b;
  }
  ExperimentOutput out;
  out.tables["fig5.csv"] = std::move(t);
  out.summary = {{"bill_boundary_per_rho", boundaries},
                 {"bill_boundary_max", std::isnan(worst) ? json(nullptr) : json(worst)}};
  out.failed_points = failed;
  return out;
}

ExperimentOutput RunLarge(const json& cfg, int workers) {
  const std::string name = cfg.at("experiment");
  const ScenarioSpec spec = ScenarioSpecFromJson(cfg.at("scenario"));
  const NetworkModel model = SynthScenario(spec, cfg.at("seed").get<std::uint64_t>());
  ApproxMembershipOptions opt;
  opt.gamma = cfg.at("gamma").get<double>();
  opt.eps = cfg.at("eps").get<double>();
  opt.max_iter = cfg.at("max_iter").get<int>();
  opt.damping = cfg.at("damping").get<double>();
  opt.access.workers = workers;
  const std::vector<double> prices(model.num_aps(), cfg.at("price").get<double>());

  ExperimentOutput out;
  Table t;
  t.columns = {"ap", "popularity", "rho", "alpha", "converged"};
  std::vector<double> alpha(model.num_aps(), kNaN);
  bool converged = true;
  try {
    alpha = SolveApproxMembership(model, prices, opt).state.alpha;
  } catch (const NonConvergenceError& e) {
    alpha = e.last_iterate();
    converged = false;
    out.failed_points = 1;
  }
  std::vector<double> pop(model.num_aps()), rho(model.num_aps());
  for (int i = 0; i < model.num_aps(); ++i) {
    pop[i] = LocationPopularity(model, i);
    rho[i] = model.evaluation(i);
    t.rows.push_back({double(i), pop[i], rho[i], alpha[i], converged ? 1.0 : 0.0});
  }
  out.tables[name + ".csv"] = std::move(t);
  out.summary = {{"spearman_alpha_popularity", SpearmanCorrelation(alpha, pop)},
                 {"spearman_alpha_rho", SpearmanCorrelation(alpha, rho)},
                 {"converged", converged}};
  return out;
}

ExperimentOutput RunFig10(const json& cfg, int workers) {
  const ScenarioSpec spec = ScenarioSpecFromJson(cfg.at("scenario"));
  const NetworkModel model = SynthScenario(spec, cfg.at("seed").get<std::uint64_t>());
  const auto betas = cfg.at("betas").get<std::vector<double>>();
  const int gmin = cfg.at("groups").at("min").get<int>();
  const int gmax = cfg.at("groups").at("max").get<int>();
  const bool warm = cfg.at("warm_start").get<bool>();
  ApproxMembershipOptions opt;
  opt.gamma = cfg.at("gamma").get<double>();
  opt.eps = cfg.at("eps").get<double>();
  opt.max_iter = cfg.at("max_iter").get<int>();
  opt.damping = cfg.at("damping").get<double>();
  OptimizerConfig oc;
  oc.nf_max = cfg.at("optimizer").at("nf_max").get<int>();
  oc.seed = cfg.at("optimizer").at("seed").get<std::uint64_t>();
  KMeansOptions ko;
  ko.restarts = cfg.at("kmeans").at("restarts").get<int>();
  ko.seed = cfg.at("kmeans").at("seed").get<std::uint64_t>();

  Table t;
  t.columns = {"beta", "groups", "revenue", "ratio_to_single", "evaluations",
               "nonconverged_evaluations", "converged"};
  for (int g = 1; g <= gmax; ++g) t.columns.push_back("price_g" + std::to_string(g));
  const int per_beta = gmax - gmin + 1;
  t.rows.assign(betas.size() * per_beta, {});
  std::map<std::string, Table> traces;
  std::mutex mu;
  std::atomic<int> failed{0};

  ParallelFor(static_cast<int>(betas.size()), workers, [&](int b) {
    const double beta = betas[b];
    std::vector<double> prev_prices, single_prices;
    double single = kNaN;
    for (int g = gmin; g <= gmax; ++g) {
      std::vector<double> row(t.columns.size(), kNaN);
      row[0] = beta;
      row[1] = g;
      row[6] = 0;
      try {
        const Segmentation seg = WeightedKMeans(DefaultAttributes(model, beta), g, ko);
        OptimizerConfig c = oc;
        if (warm && !single_prices.empty()) {
          c.initial_points.push_back(CollapseToGroups(single_prices, seg.group_of_ap, g));
          c.initial_points.push_back(CollapseToGroups(prev_prices, seg.group_of_ap, g));
        }
        const auto res = OptimizePartialApprox(model, seg, c, opt);
        if (std::isnan(single)) {
          single = res.report.total;
          single_prices = res.prices;
        }
        prev_prices = res.prices;
        row[2] = res.report.total;
        row[3] = res.report.total / single;
        row[4] = res.search.evaluations;
        row[5] = res.nonconverged_evaluations;
        row[6] = res.report.converged ? 1 : 0;
        for (int k = 0; k < g; ++k) row[7 + k] = res.group_prices[k];
        Table tr;
        tr.columns = {"evaluation", "value", "best_value"};
        for (int k = 0; k < g; ++k) tr.columns.push_back("x" + std::to_string(k + 1));
        for (const auto& p : res.search.trace) {
          std::vector<double> r = {double(p.evaluation), p.value, p.best_value};
          r.insert(r.end(), p.x.begin(), p.x.end());
          tr.rows.push_back(std::move(r));
        }
        std::lock_guard lock(mu);
        traces["traces/fig10_beta" + Format(beta) + "_G" + std::to_string(g) +
               ".csv"] = std::move(tr);
      } catch (const std::exception&) {
        ++failed;
      }
      t.rows[b * per_beta + (g - gmin)] = std::move(row);
    }
  });
  ExperimentOutput out;
  out.tables["fig10.csv"] = std::move(t);
  for (auto& [k, v] : traces) out.tables[k] = std::move(v);
  out.failed_points = failed;
  out.summary = json::object();
  return out;
}

ExperimentOutput RunCycle(const json& cfg) {
  const std::string fixture = cfg.at("fixture");
  const TableBackedOracle oracle =
      fixture == "builtin" ? CycleFixture() : LoadTableOracle(fixture);
  const int k = oracle.num_subscribers();
  Table profiles;
  for (int i = 0; i < k; ++i) profiles.columns.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < k; ++i) profiles.columns.push_back("gap" + std::to_string(i + 1));
  profiles.columns.push_back("pure_ne");
  int pure = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    const PureProfile x = ProfileFromMask(k, m);
    std::vector<double> row;
    for (auto v : x) row.push_back(v == Membership::kBill ? 1 : 0);
    for (int i = 0; i < k; ++i) row.push_back(Gap(oracle, i, x));
    const bool ne = VerifyPureNe(oracle, x);
    pure += ne;
    row.push_back(ne ? 1 : 0);
    profiles.rows.push_back(std::move(row));
  }
  MixedSolverOptions opt;
  opt.gamma = cfg.at("gamma").get<double>();
  opt.eps = cfg.at("eps").get<double>();
  opt.max_iter = cfg.at("max_iter").get<int>();
  Table mixed;
  mixed.columns = {"subscriber", "alpha", "v_bill", "v_linus", "converged"};
  ExperimentOutput out;
  json summary = {{"pure_equilibria", pure}};
  try {
    const auto eq = SolveMixed(oracle, opt);
    for (int i = 0; i < k; ++i) {
      mixed.rows.push_back({double(i + 1), eq.alpha[i],
                            MixedPayoff(oracle, i, Membership::kBill, eq.alpha),
                            MixedPayoff(oracle, i, Membership::kLinus, eq.alpha), 1});
    }
    summary["mixed_iterations"] = eq.iterations;
    summary["logit_residual"] = LogitResidual(oracle, eq.alpha, opt.gamma);
    summary["converged"] = true;
  } catch (const NonConvergenceError&) {
    for (int i = 0; i < k; ++i) mixed.rows.push_back({double(i + 1), kNaN, kNaN, kNaN, 0});
    out.failed_points = 1;
    summary["converged"] = false;
  }
  out.tables["appendixI_profiles.csv"] = std::move(profiles);
  out.tables["appendixI_mixed.csv"] = std::move(mixed);
  out.summary = summary;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<ExperimentInfo> ListExperiments() {
  return {
      {"fig5", "2 APs + 1 Alien: Bill probability over (rho_1, eta_11)"},
      {"fig6", "100 APs, approximate model: Bill probability vs AP popularity"},
      {"fig7", "100 APs, approximate model: Bill probability vs evaluation"},
      {"fig10", "100 APs, approximate model: revenue vs number of price groups"},
      {"appendixI", "3-subscriber table without a pure equilibrium"},
  };
}

json DefaultConfig(const std::string& name) {
  if (name == "fig5") return Fig5Defaults();
  if (name == "fig6" || name == "fig7") return LargeDefaults(name);
  if (name == "fig10") return Fig10Defaults();
  if (name == "appendixI") return CycleDefaults();
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

json ResolveConfig(const json& user) {
  if (!user.is_object() || !user.contains("experiment") ||
      !user.at("experiment").is_string()) {
    throw std::invalid_argument("config needs a string field 'experiment'");
  }
  json resolved = DefaultConfig(user.at("experiment").get<std::string>());
  for (const auto& [key, value] : user.items()) {
    if (!resolved.contains(key)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  resolved.merge_patch(user);
  return resolved;
}

std::vector<std::string> ValidateConfig(const json& cfg) {
  std::vector<std::string> errs;
  try {
    const std::string name = cfg.at("experiment");
    DefaultConfig(name);
    if (cfg.contains("scenario")) {
      for (auto& e : CheckScenarioSpec(ScenarioSpecFromJson(cfg.at("scenario")))) {
        errs.push_back("scenario: " + e);
      }
    }
    for (const char* axis : {"rho_axis", "eta_axis"}) {
      if (cfg.contains(axis) && cfg.at(axis).at("steps").get<int>() < 1) {
        errs.push_back(std::string(axis) + ": sweep range is empty");
      }
    }
    for (const char* key : {"gamma", "eps"}) {
      if (cfg.contains(key) && !(cfg.at(key).get<double>() > 0)) {
        errs.push_back(std::string(key) + " must be positive");
      }
    }
    if (name == "fig5" && cfg.at("scenario").at("num_aps").get<int>() < 2) {
      errs.push_back("fig5 needs at least 2 APs");
    }
    if (name == "fig10") {
      const int gmin = cfg.at("groups").at("min").get<int>();
      const int gmax = cfg.at("groups").at("max").get<int>();
      const int k = cfg.at("scenario").at("num_aps").get<int>();
      if (gmin < 1 || gmax < gmin || gmax > k) {
        errs.push_back("groups: need 1 <= min <= max <= num_aps");
      }
      if (cfg.at("betas").empty()) errs.push_back("betas: sweep is empty");
      for (double b : cfg.at("betas").get<std::vector<double>>()) {
        if (!(b >= 0 && b <= 1)) errs.push_back("betas must lie in [0,1]");
      }
    }
    if (name == "appendixI") {
      const std::string f = cfg.at("fixture");
      if (f != "builtin" && !std::filesystem::exists(f)) {
        errs.push_back("fixture file does not exist: " + f);
      }
    }
  } catch (const std::exception& e) {
    errs.push_back(e.what());
  }
  return errs;
}

double Table::at(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw std::out_of_range("no column " + column);
  return rows.at(row).at(it - columns.begin());
}

std::string Table::ToCsv() const {
  std::string s;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) s += ',';
    s += columns[c];
  }
  s += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) s += ',';
      s += Format(row[c]);
    }
    s += '\n';
  }
  return s;
}

ExperimentOutput RunExperiment(const json& resolved, int workers) {
  const auto errs = ValidateConfig(resolved);
  if (!errs.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& e : errs) msg += " " + e + ";";
    throw std::invalid_argument(msg);
  }
  const std::string name = resolved.at("experiment");
  if (name == "fig5") return RunFig5(resolved, workers);
  if (name == "fig6" || name == "fig7") return RunLarge(resolved, workers);
  if (name == "fig10") return RunFig10(resolved, workers);
  return RunCycle(resolved);
}

std::vector<std::string> RunAndWrite(json resolved, const RunOptions& options) {
  if (options.seed && resolved.contains("seed")) resolved["seed"] = *options.seed;
  const ExperimentOutput out = RunExperiment(resolved, options.workers);
  namespace fs = std::filesystem;
  const fs::path dir(options.out_dir);
  fs::create_directories(dir);
  std::vector<std::string> files;
  for (const auto& [name, table] : out.tables) {
    const fs::path path = dir / name;
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    f << table.ToCsv();
    if (!f) throw std::runtime_error("cannot write " + path.string());
    files.push_back(name);
  }
  json manifest = {{"experiment", resolved.at("experiment")},
                   {"version", Version()},
                   {"config", resolved},
                   {"files", files},
                   {"failed_points", out.failed_points},
                   {"summary", out.summary}};
  std::ofstream m(dir / "manifest.json", std::ios::binary);
  m << manifest.dump(2) << '\n';
  files.push_back("manifest.json");
  return files;
}

void ParallelFor(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = next++; i < n; i = next++) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double SpearmanCorrelation(const std::vector<double>& a,
                           const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("Spearman: need two equal-length samples");
  }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * (i + j);
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return kNaN;
  return sab / std::sqrt(saa * sbb);
}

std::string Version() { return WCN_VERSION; }

}  // namespace wcn
