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

// Shared-channel rate model: the per-user 802.11 rate R(n) when n users
// contend, and the rate a user expects when the other users' presence on the
// channel is random (Poisson-binomial in their access times).

#ifndef WCN_THROUGHPUT_H_
#define WCN_THROUGHPUT_H_

#include <span>
#include <vector>

#include "wcn/model.h"

namespace wcn {

// Average per-user rate (payload bits per us) with n >= 1 contending users.
// Real n is allowed; the formula is evaluated directly. Throws
// std::domain_error for n < 1.
double AverageRate(double n, const ThroughputParams& params);

// P(n other users are on the channel), n = 0..others.size(). Each entry of
// `others_sigma` must lie in [0,1] (std::domain_error otherwise).
std::vector<double> CongestionDistribution(std::span<const double> others_sigma);

// sum_n P(n) * R(n+1).
double ExpectedRate(std::span<const double> others_sigma,
                    const ThroughputParams& params);

// R(1..n_max) cached for the inner loops of the game solvers.
class RateTable {
 public:
  RateTable(const ThroughputParams& params, int n_max);
  double operator()(int n) const { return rates_[n - 1]; }
  int size() const { return static_cast<int>(rates_.size()); }
  const ThroughputParams& params() const { return params_; }

  // Same contract as ExpectedRate, using the cached curve.
  double Expected(std::span<const double> others_sigma) const;

 private:
  ThroughputParams params_;
  std::vector<double> rates_;
};

}  // namespace wcn

#endif  // WCN_THROUGHPUT_H_
