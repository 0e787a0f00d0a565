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

// Mean-field model for large networks. Users react to the expected load on
// each AP instead of enumerating who else is present, so every step is
// polynomial in the number of APs and users.

#ifndef WCN_APPROX_H_
#define WCN_APPROX_H_

#include <vector>

#include "wcn/dycors.h"
#include "wcn/model.h"
#include "wcn/segmentation.h"

namespace wcn {

struct ApproxAccessOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  int workers = 1;
};

struct ApproxState {
  MixedProfile alpha;                     // membership mix used for the loads
  std::vector<double> loads;              // expected users per AP
  std::vector<double> rates;              // r~_k
  // Paying access time, sigma_b[u][k]. Linus rows are 1 by construction and
  // are not stored separately.
  std::vector<std::vector<double>> sigma_b;
  int iterations = 0;                     // worst AP
  double residual = 0.0;                  // worst AP, in load units
  bool used_bisection = false;
};

// R(max(1, sum_{j != k} eta_jk * sigma_eff_j)). sigma_eff has one entry per
// user and is already blended over membership.
double ApproxRate(const NetworkModel& model, int ap,
                  const std::vector<double>& sigma_eff);

// sigma_eff for every user at `ap` given paying access times there.
std::vector<double> EffectiveSigma(const NetworkModel& model,
                                   const MixedProfile& alpha,
                                   const std::vector<double>& paying_sigma);

// Per-AP fixed point of rate and payer responses. Each AP is independent.
ApproxState SolveApproxAccess(const NetworkModel& model,
                              const std::vector<double>& prices,
                              const MixedProfile& alpha,
                              const ApproxAccessOptions& options = {});

struct PerceivedPayoffs {
  std::vector<double> linus;
  std::vector<double> bill;
  std::vector<double> revenue;  // the Bill's own-AP share, part of `bill`
};

PerceivedPayoffs ComputePerceivedPayoffs(const NetworkModel& model,
                                         const std::vector<double>& prices,
                                         const ApproxState& state);

struct ApproxMembershipOptions {
  double gamma = 0.05;
  double eps = 1e-6;
  int max_iter = 10000;
  bool decreasing_gamma = false;
  double damping = 1.0;
  MixedProfile alpha0;  // empty: all 0.5
  ApproxAccessOptions access;
};

struct ApproxEquilibrium {
  ApproxState state;  // state.alpha is the equilibrium
  int iterations = 0;
  double residual = 0.0;
  double gamma = 0.0;
  std::vector<double> trace;
};

ApproxEquilibrium SolveApproxMembership(
    const NetworkModel& model, const std::vector<double>& prices,
    const ApproxMembershipOptions& options = {});

struct ApproxRevenueReport {
  std::vector<double> charged_usage;  // over the horizon
  std::vector<double> per_ap_revenue;
  double total = 0.0;
  ApproxEquilibrium equilibrium;
  bool converged = true;
};

ApproxRevenueReport ApproxRevenueForState(const NetworkModel& model,
                                          const std::vector<double>& prices,
                                          const ApproxState& state);

ApproxRevenueReport EvaluateApproxRevenue(
    const NetworkModel& model, const std::vector<double>& prices,
    const ApproxMembershipOptions& options = {});

struct ApproxPricingResult {
  std::vector<double> prices;
  std::vector<double> group_prices;
  ApproxRevenueReport report;
  OptimizeResult search;
  int nonconverged_evaluations = 0;
};

ApproxPricingResult OptimizePartialApprox(
    const NetworkModel& model, const Segmentation& segmentation,
    const OptimizerConfig& config, const ApproxMembershipOptions& options = {});

}  // namespace wcn

#endif  // WCN_APPROX_H_
