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

#include "wcn/throughput.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wcn {

double AverageRate(double n, const ThroughputParams& p) {
  if (!(n >= 1.0)) {
    throw std::domain_error("AverageRate: need n >= 1, got " +
                            std::to_string(n));
  }
  const double idle = 1.0 - p.tau;
  const double idle_n = std::pow(idle, n);
  const double one_success = n * p.tau * std::pow(idle, n - 1.0);
  const double denom = idle_n * p.t_backoff +
                       ((1.0 - idle_n) - one_success) * p.t_collision +
                       one_success * p.t_success;
  return p.tau * std::pow(idle, n - 1.0) * p.payload / denom;
}

std::vector<double> CongestionDistribution(std::span<const double> others) {
  // Add one Bernoulli(sigma_j) at a time; dist[n] = P(n present so far).
  std::vector<double> dist(others.size() + 1, 0.0);
  dist[0] = 1.0;
  std::size_t filled = 0;
  for (double s : others) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::domain_error("CongestionDistribution: access time " +
                              std::to_string(s) + " outside [0,1]");
    }
    ++filled;
    for (std::size_t n = filled; n > 0; --n) {
      dist[n] = dist[n] * (1.0 - s) + dist[n - 1] * s;
    }
    dist[0] *= (1.0 - s);
  }
  return dist;
}

double ExpectedRate(std::span<const double> others_sigma,
                    const ThroughputParams& params) {
  const auto dist = CongestionDistribution(others_sigma);
  double rate = 0.0;
  for (std::size_t n = 0; n < dist.size(); ++n) {
    if (dist[n] != 0.0) {
      rate += dist[n] * AverageRate(static_cast<double>(n + 1), params);
    }
  }
  return rate;
}

RateTable::RateTable(const ThroughputParams& params, int n_max)
    : params_(params) {
  rates_.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) rates_.push_back(AverageRate(n, params));
}

double RateTable::Expected(std::span<const double> others_sigma) const {
  const auto dist = CongestionDistribution(others_sigma);
  if (static_cast<int>(dist.size()) > size()) {
    throw std::out_of_range("RateTable: too many contending users");
  }
  double rate = 0.0;
  for (std::size_t n = 0; n < dist.size(); ++n) rate += dist[n] * rates_[n];
  return rate;
}

}  // namespace wcn
