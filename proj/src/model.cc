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

#include "wcn/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "wcn/errors.h"
#include "wcn/throughput.h"

namespace wcn {

NetworkModel::NetworkModel(std::vector<User> subscribers,
                           std::vector<User> aliens, double delta, int horizon,
                           ThroughputParams throughput)
    : subscribers_(std::move(subscribers)),
      aliens_(std::move(aliens)),
      delta_(delta),
      horizon_(horizon),
      throughput_(throughput) {
  for (auto& s : subscribers_) s.kind = UserKind::kSubscriber;
  for (auto& a : aliens_) {
    a.kind = UserKind::kAlien;
  }
}

const User& NetworkModel::user(int u) const {
  if (u < 0 || u >= num_users()) throw std::out_of_range("user index");
  return u < num_aps() ? subscribers_[u] : aliens_[u - num_aps()];
}

double NetworkModel::home_rate(int s) const {
  const User& u = subscribers_.at(s);
  return u.home_rate ? *u.home_rate : AverageRate(1.0, throughput_);
}

bool ValidationReport::Has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::ToString() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.code << ": " << v.message << "\n";
  return os.str();
}

ValidationReport ValidateModel(const NetworkModel& model) {
  ValidationReport report;
  auto add = [&](std::string code, std::string msg) {
    report.violations.push_back({std::move(code), std::move(msg)});
  };
  const int k = model.num_aps();
  if (k < 1) add("model.no_aps", "at least one subscriber (AP) is required");
  if (!(model.delta() >= 0.0 && model.delta() <= 1.0)) {
    add("model.delta", "revenue share must lie in [0,1]");
  }
  if (model.horizon() < 1) add("model.horizon", "horizon must be positive");

  const auto& tp = model.throughput();
  if (!(tp.tau > 0.0 && tp.tau < 1.0)) {
    add("throughput.tau", "tau must lie in (0,1)");
  }
  if (!(tp.payload > 0 && tp.t_backoff > 0 && tp.t_collision > 0 &&
        tp.t_success > 0)) {
    add("throughput.lengths", "payload and slot lengths must be positive");
  }

  for (int u = 0; u < model.num_users(); ++u) {
    const User& user = model.user(u);
    const std::string who = "user " + std::to_string(u);
    if (!(user.evaluation >= 0.0)) {
      add("user.evaluation", who + ": evaluation must be nonnegative");
    }
    if (user.kind == UserKind::kAlien && user.home_rate) {
      add("user.alien_home_rate", who + ": Aliens have no home rate");
    }
    if (user.home_rate && !(*user.home_rate >= 0.0)) {
      add("user.home_rate", who + ": home rate must be nonnegative");
    }
    if (static_cast<int>(user.mobility.size()) != k + 1) {
      add("mobility.size", who + ": mobility row needs K+1 entries");
      continue;
    }
    double sum = 0.0;
    for (double p : user.mobility) {
      if (!(p >= 0.0 && p <= 1.0)) {
        add("mobility.out_of_range",
            who + ": probability out of range (" + std::to_string(p) + ")");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kMobilityTolerance) {
      add("mobility.row_sum",
          who + ": row sum != 1 (" + std::to_string(sum) + ")");
    }
  }
  return report;
}

void RequireValid(const NetworkModel& model) {
  auto report = ValidateModel(model);
  if (!report.ok()) throw InvalidModelError(report.ToString());
}

PriceScheme PriceScheme::Uniform(int num_aps, double price) {
  PriceScheme s;
  s.prices.assign(num_aps, price);
  return s;
}

PriceScheme PriceScheme::FromGroups(std::vector<double> group_prices,
                                    std::vector<int> group_of_ap) {
  PriceScheme s;
  s.prices.resize(group_of_ap.size());
  for (std::size_t i = 0; i < group_of_ap.size(); ++i) {
    s.prices[i] = group_prices.at(group_of_ap[i]);
  }
  s.group_prices = std::move(group_prices);
  s.group_of_ap = std::move(group_of_ap);
  return s;
}

PriceScheme PriceScheme::Clamped(double upper) const {
  PriceScheme s = *this;
  for (double& p : s.prices) p = std::clamp(p, 0.0, upper);
  for (double& p : s.group_prices) p = std::clamp(p, 0.0, upper);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

double Draw(const EvaluationGenerator& gen, int index, int count,
            std::mt19937_64& rng) {
  switch (gen.kind) {
    case EvaluationGenerator::Kind::kConstant:
      return gen.value;
    case EvaluationGenerator::Kind::kRamp:
      if (count <= 1) return gen.low;
      return gen.low + (gen.high - gen.low) * index / (count - 1.0);
    case EvaluationGenerator::Kind::kGaussian: {
      std::normal_distribution<double> normal(gen.mean,
                                              std::sqrt(gen.variance));
      // Negative evaluations break the best-response structure; resample.
      for (int attempt = 0; attempt < 10000; ++attempt) {
        double v = normal(rng);
        if (v >= 0.0) return v;
      }
      return 0.0;
    }
  }
  return gen.value;
}

std::vector<std::string> CheckEvaluation(const EvaluationGenerator& gen,
                                         const std::string& name) {
  std::vector<std::string> errs;
  using K = EvaluationGenerator::Kind;
  if (gen.kind == K::kConstant && gen.value < 0) {
    errs.push_back(name + ": constant evaluation must be nonnegative");
  }
  if (gen.kind == K::kRamp && (gen.low < 0 || gen.high < 0)) {
    errs.push_back(name + ": ramp endpoints must be nonnegative");
  }
  if (gen.kind == K::kGaussian && gen.variance < 0) {
    errs.push_back(name + ": variance must be nonnegative");
  }
  return errs;
}

double RingDistance(double a, double b, int period) {
  double d = std::fmod(std::abs(a - b), static_cast<double>(period));
  return std::min(d, period - d);
}

// Fills `positions` with each user's ring position (kLocality only).
std::vector<std::vector<double>> MobilityRows(const ScenarioSpec& spec,
                                              std::mt19937_64& rng,
                                              std::vector<double>& positions) {
  const int k = spec.num_aps;
  const int users = k + spec.num_aliens;
  const auto& gen = spec.mobility;
  std::vector<std::vector<double>> rows(users, std::vector<double>(k + 1, 0.0));
  positions.assign(users, 0.0);
  switch (gen.kind) {
    case MobilityGenerator::Kind::kUniform:
      for (auto& row : rows) std::fill(row.begin(), row.end(), 1.0 / (k + 1));
      break;
    case MobilityGenerator::Kind::kHotnessRamp: {
      std::vector<double> row(k + 1);
      row[0] = gen.uncovered;
      double total = 0.0;
      for (int ap = 0; ap < k; ++ap) total += std::pow(ap + 1.0, gen.ramp_exponent);
      for (int ap = 0; ap < k; ++ap) {
        row[ap + 1] =
            (1.0 - gen.uncovered) * std::pow(ap + 1.0, gen.ramp_exponent) / total;
      }
      std::fill(rows.begin(), rows.end(), row);
      break;
    }
    case MobilityGenerator::Kind::kLocality: {
      std::vector<double> hot(k, 1.0);
      for (int ap = 0; ap < k && k > 1; ++ap) {
        hot[ap] = 1.0 + (gen.hotness_ratio - 1.0) * ap / (k - 1.0);
      }
      std::uniform_real_distribution<double> where(0.0, k);
      for (int u = 0; u < users; ++u) {
        const bool subscriber = u < k;
        const double pos = subscriber ? u : where(rng);
        positions[u] = pos;
        auto& row = rows[u];
        row[0] = gen.uncovered;
        double roam = 1.0 - gen.uncovered;
        if (subscriber) {
          row[u + 1] = gen.home;
          roam -= gen.home;
        }
        std::vector<double> w(k, 0.0);
        double wsum = 0.0;
        for (int ap = 0; ap < k; ++ap) {
          if (subscriber && ap == u) continue;
          const double d = RingDistance(pos, ap, k);
          w[ap] = hot[ap] * std::exp(-d * d / (2 * gen.spread * gen.spread));
          wsum += w[ap];
        }
        if (wsum <= 0.0) {
          // Nowhere else to go (K = 1): the roaming mass stays home.
          if (subscriber) row[u + 1] += roam; else row[0] += roam;
          continue;
        }
        for (int ap = 0; ap < k; ++ap) row[ap + 1] += roam * w[ap] / wsum;
      }
      break;
    }
    case MobilityGenerator::Kind::kCustom:
      rows = gen.rows;
      break;
  }
  return rows;
}

}  // namespace

std::vector<std::string> CheckScenarioSpec(const ScenarioSpec& spec) {
  std::vector<std::string> errs;
  if (spec.num_aps < 1) errs.push_back("num_aps must be at least 1");
  if (spec.num_aliens < 0) errs.push_back("num_aliens must be nonnegative");
  if (!(spec.delta >= 0 && spec.delta <= 1)) {
    errs.push_back("delta must lie in [0,1]");
  }
  if (spec.horizon < 1) errs.push_back("horizon must be positive");
  for (auto& e : CheckEvaluation(spec.subscriber_evaluation,
                                 "subscriber_evaluation")) {
    errs.push_back(e);
  }
  for (auto& e : CheckEvaluation(spec.alien_evaluation, "alien_evaluation")) {
    errs.push_back(e);
  }
  const auto& mob = spec.mobility;
  const int users = spec.num_aps + spec.num_aliens;
  using MK = MobilityGenerator::Kind;
  if ((mob.kind == MK::kHotnessRamp || mob.kind == MK::kLocality) &&
      !(mob.uncovered >= 0 && mob.uncovered <= 1)) {
    errs.push_back("mobility.uncovered must lie in [0,1]");
  }
  if (mob.kind == MK::kHotnessRamp && !std::isfinite(mob.ramp_exponent)) {
    errs.push_back("mobility.ramp_exponent must be finite");
  }
  if (mob.kind == MK::kLocality) {
    if (!(mob.home >= 0 && mob.home + mob.uncovered <= 1.0 + 1e-12)) {
      errs.push_back("mobility.home + mobility.uncovered must not exceed 1");
    }
    if (!(mob.spread > 0)) errs.push_back("mobility.spread must be positive");
    if (!(mob.hotness_ratio > 0)) {
      errs.push_back("mobility.hotness_ratio must be positive");
    }
  }
  if (mob.kind == MK::kCustom) {
    if (static_cast<int>(mob.rows.size()) != users) {
      errs.push_back("custom mobility needs one row per user");
    }
    for (const auto& r : mob.rows) {
      if (static_cast<int>(r.size()) != spec.num_aps + 1) {
        errs.push_back("custom mobility rows need num_aps+1 entries");
        break;
      }
    }
  }
  for (const auto& [u, row] : spec.mobility_overrides) {
    if (u < 0 || u >= users) errs.push_back("mobility override: bad user");
    if (static_cast<int>(row.size()) != spec.num_aps + 1) {
      errs.push_back("mobility override rows need num_aps+1 entries");
    }
  }
  for (const auto& [u, v] : spec.evaluation_overrides) {
    if (u < 0 || u >= users) errs.push_back("evaluation override: bad user");
    if (v < 0) errs.push_back("evaluation override must be nonnegative");
  }
  if (spec.home_rate && *spec.home_rate < 0) {
    errs.push_back("home_rate must be nonnegative");
  }
  return errs;
}

NetworkModel SynthScenario(const ScenarioSpec& spec, std::uint64_t seed) {
  auto errs = CheckScenarioSpec(spec);
  if (!errs.empty()) {
    std::string msg = "invalid scenario spec:";
    for (const auto& e : errs) msg += " " + e + ";";
    throw std::invalid_argument(msg);
  }
  std::mt19937_64 rng(seed);
  const int k = spec.num_aps;
  std::vector<double> positions;
  auto rows = MobilityRows(spec, rng, positions);
  for (const auto& [u, row] : spec.mobility_overrides) rows[u] = row;

  std::vector<User> subs(k), aliens(spec.num_aliens);
  for (int s = 0; s < k; ++s) {
    subs[s].kind = UserKind::kSubscriber;
    subs[s].evaluation = Draw(spec.subscriber_evaluation, s, k, rng);
    subs[s].mobility = rows[s];
    subs[s].home_rate = spec.home_rate;
  }
  for (int a = 0; a < spec.num_aliens; ++a) {
    aliens[a].kind = UserKind::kAlien;
    aliens[a].evaluation =
        Draw(spec.alien_evaluation, a, spec.num_aliens, rng);
    aliens[a].mobility = rows[k + a];
  }
  if (spec.mobility.kind == MobilityGenerator::Kind::kLocality &&
      spec.mobility.sort_evaluations) {
    auto arrange = [&](std::vector<User>& group, int offset) {
      std::vector<double> values;
      std::vector<int> order(group.size());
      for (auto& u : group) values.push_back(u.evaluation);
      std::sort(values.begin(), values.end());
      std::iota(order.begin(), order.end(), 0);
      auto key = [&](int i) { return RingDistance(positions[offset + i], 0, k); };
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return key(a) < key(b); });
      for (std::size_t r = 0; r < order.size(); ++r) {
        group[order[r]].evaluation = values[r];
      }
    };
    arrange(subs, 0);
    arrange(aliens, k);
  }
  for (const auto& [u, v] : spec.evaluation_overrides) {
    (u < k ? subs[u] : aliens[u - k]).evaluation = v;
  }
  return NetworkModel(std::move(subs), std::move(aliens), spec.delta,
                      spec.horizon, spec.throughput);
}

}  // namespace wcn
