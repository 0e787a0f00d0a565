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

// Operator revenue under the exact model and price optimization on top of it.

#ifndef WCN_PRICING_H_
#define WCN_PRICING_H_

#include <vector>

#include "wcn/dycors.h"
#include "wcn/membership_game.h"
#include "wcn/model.h"
#include "wcn/segmentation.h"

namespace wcn {

struct RevenueReport {
  std::vector<double> charged_usage;   // per AP, over the whole horizon
  std::vector<double> per_ap_revenue;
  double total = 0.0;
  MixedEquilibrium equilibrium;
  // False when the membership solver hit max_iter; the report then uses its
  // last iterate.
  bool converged = true;
};

struct PricingOptions {
  MixedSolverOptions mixed;
  ModelOracleOptions oracle;
};

// max_u rho_u * R(1). Above this price nobody pays for access.
double PriceUpperBound(const NetworkModel& model);

// Revenue for a given membership mix. Exposed so callers can reuse an
// equilibrium they already have.
RevenueReport RevenueForAlpha(const ModelBackedOracle& oracle,
                              const MixedProfile& alpha);

// Solves the membership game at `prices`, then prices the charged usage.
// Throws NonConvergenceError if the membership solver fails.
RevenueReport EvaluateRevenue(const NetworkModel& model,
                              const std::vector<double>& prices,
                              const PricingOptions& options = {});

struct PricingResult {
  std::vector<double> prices;        // per AP
  std::vector<double> group_prices;  // per group (complete: same as prices)
  RevenueReport report;
  OptimizeResult search;
  int nonconverged_evaluations = 0;
};

PricingResult OptimizeComplete(const NetworkModel& model,
                               const OptimizerConfig& config,
                               const PricingOptions& options = {});

PricingResult OptimizePartial(const NetworkModel& model,
                              const Segmentation& segmentation,
                              const OptimizerConfig& config,
                              const PricingOptions& options = {});

// Mean per-AP price inside each group; used to warm-start a finer search
// from a coarser solution.
std::vector<double> CollapseToGroups(const std::vector<double>& ap_prices,
                                     const std::vector<int>& group_of_ap,
                                     int groups);

std::vector<double> ExpandGroupPrices(const std::vector<double>& group_prices,
                                      const std::vector<int>& group_of_ap);

}  // namespace wcn

#endif  // WCN_PRICING_H_
