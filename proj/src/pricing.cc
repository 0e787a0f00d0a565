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

#include "wcn/pricing.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "wcn/errors.h"
#include "wcn/throughput.h"

namespace wcn {

double PriceUpperBound(const NetworkModel& model) {
  const double r1 = AverageRate(1, model.throughput());
  double rho = 0.0;
  for (int u = 0; u < model.num_users(); ++u) {
    rho = std::max(rho, model.evaluation(u));
  }
  return rho * r1;
}

RevenueReport RevenueForAlpha(const ModelBackedOracle& oracle,
                              const MixedProfile& alpha) {
  const int k = oracle.num_subscribers();
  const double t = oracle.horizon();
  const double delta = oracle.delta();
  RevenueReport r;
  r.charged_usage.assign(k, 0.0);
  r.per_ap_revenue.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    // Usage on AP i does not depend on the owner's own label.
    double usage = 0.0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (k - 1)); ++m) {
      PureProfile x = ProfileFromMask(k - 1, m);
      x.insert(x.begin() + i, Membership::kLinus);
      const double psi = ProfileProbability(alpha, i, x);
      if (psi == 0.0) continue;
      usage += psi * oracle.Breakdown(i, x).charged_usage;
    }
    r.charged_usage[i] = t * usage;
    const double share = 1.0 - delta * alpha[i];
    r.per_ap_revenue[i] = share * oracle.prices().prices[i] * r.charged_usage[i];
    r.total += r.per_ap_revenue[i];
  }
  r.equilibrium.alpha = alpha;
  return r;
}

RevenueReport EvaluateRevenue(const NetworkModel& model,
                              const std::vector<double>& prices,
                              const PricingOptions& options) {
  ModelBackedOracle oracle(model, PriceScheme{prices, {}, {}}, options.oracle);
  const MixedEquilibrium eq = SolveMixed(oracle, options.mixed);
  RevenueReport r = RevenueForAlpha(oracle, eq.alpha);
  r.equilibrium = eq;
  return r;
}

std::vector<double> ExpandGroupPrices(const std::vector<double>& group_prices,
                                      const std::vector<int>& group_of_ap) {
  std::vector<double> p(group_of_ap.size());
  for (std::size_t i = 0; i < group_of_ap.size(); ++i) {
    p[i] = group_prices.at(group_of_ap[i]);
  }
  return p;
}

std::vector<double> CollapseToGroups(const std::vector<double>& ap_prices,
                                     const std::vector<int>& group_of_ap,
                                     int groups) {
  if (ap_prices.size() != group_of_ap.size()) {
    throw std::invalid_argument("CollapseToGroups: size mismatch");
  }
  std::vector<double> sum(groups, 0.0), count(groups, 0.0);
  for (std::size_t i = 0; i < ap_prices.size(); ++i) {
    sum.at(group_of_ap[i]) += ap_prices[i];
    count[group_of_ap[i]] += 1.0;
  }
  for (int g = 0; g < groups; ++g) {
    if (count[g] > 0) sum[g] /= count[g];
  }
  return sum;
}

namespace {

// Revenue as an objective. Membership non-convergence falls back to the last
// iterate so one bad point cannot abort a search; the count is reported.
RevenueReport RobustRevenue(const NetworkModel& model,
                            const std::vector<double>& prices,
                            const PricingOptions& options,
                            std::atomic<int>& failures) {
  ModelBackedOracle oracle(model, PriceScheme{prices, {}, {}}, options.oracle);
  try {
    const MixedEquilibrium eq = SolveMixed(oracle, options.mixed);
    RevenueReport r = RevenueForAlpha(oracle, eq.alpha);
    r.equilibrium = eq;
    return r;
  } catch (const NonConvergenceError& e) {
    ++failures;
    RevenueReport r = RevenueForAlpha(oracle, e.last_iterate());
    r.converged = false;
    r.equilibrium.iterations = e.iterations();
    r.equilibrium.residual = e.residual();
    return r;
  }
}

PricingResult OptimizeGroups(const NetworkModel& model,
                             const std::vector<int>& group_of_ap, int groups,
                             const OptimizerConfig& config,
                             const PricingOptions& options) {
  const double upper = PriceUpperBound(model);
  std::atomic<int> failures{0};
  auto objective = [&](const std::vector<double>& gp) {
    return RobustRevenue(model, ExpandGroupPrices(gp, group_of_ap), options,
                         failures)
        .total;
  };
  PricingResult out;
  out.search = Dycors(objective, std::vector<double>(groups, 0.0),
                      std::vector<double>(groups, upper), config);
  out.group_prices = out.search.best_x;
  out.prices = ExpandGroupPrices(out.group_prices, group_of_ap);
  out.report = RobustRevenue(model, out.prices, options, failures);
  out.nonconverged_evaluations = failures.load();
  return out;
}

}  // namespace

PricingResult OptimizeComplete(const NetworkModel& model,
                               const OptimizerConfig& config,
                               const PricingOptions& options) {
  std::vector<int> identity(model.num_aps());
  for (int i = 0; i < model.num_aps(); ++i) identity[i] = i;
  return OptimizeGroups(model, identity, model.num_aps(), config, options);
}

PricingResult OptimizePartial(const NetworkModel& model,
                              const Segmentation& segmentation,
                              const OptimizerConfig& config,
                              const PricingOptions& options) {
  if (static_cast<int>(segmentation.group_of_ap.size()) != model.num_aps()) {
    throw std::invalid_argument("segmentation does not cover every AP");
  }
  return OptimizeGroups(model, segmentation.group_of_ap,
                        segmentation.num_groups, config, options);
}

}  // namespace wcn
