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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "wcn/throughput.h"

namespace wcn {
namespace {

// R(n) written out from the 802.11 saturation formula, kept separate from the
// library so a transcription slip in either shows up.
double ReferenceRate(double n, const ThroughputParams& p) {
  const double idle = std::pow(1 - p.tau, n);
  const double succ = n * p.tau * std::pow(1 - p.tau, n - 1);
  const double coll = 1 - idle - succ;
  return succ * p.payload /
         (n * (idle * p.t_backoff + succ * p.t_success + coll * p.t_collision));
}

TEST_CASE("single user rate under 802.11g parameters") {
  const ThroughputParams p;
  CHECK(AverageRate(1, p) == doctest::Approx(ReferenceRate(1, p)).epsilon(1e-12));
  CHECK(AverageRate(1, p) == doctest::Approx(14.237).epsilon(1e-3));
  CHECK(AverageRate(1, p) == AverageRate(1.0, p));
}

TEST_CASE("rate curve matches the reference formula and decreases") {
  const ThroughputParams p;
  for (int n = 1; n <= 50; ++n) {
    CHECK(AverageRate(n, p) == doctest::Approx(ReferenceRate(n, p)).epsilon(1e-12));
    if (n > 1) CHECK(AverageRate(n, p) < AverageRate(n - 1, p));
  }
  CHECK(AverageRate(20, p) / AverageRate(1, p) < 0.5);
  CHECK_THROWS_AS(AverageRate(0.5, p), std::domain_error);
}

TEST_CASE("congestion distribution edge cases") {
  CHECK(CongestionDistribution({}) == std::vector<double>{1.0});
  const std::vector<double> two_sure = {1.0, 1.0};
  const auto p = CongestionDistribution(two_sure);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 1.0);
  const std::vector<double> coins = {0.5, 0.5};
  const auto q = CongestionDistribution(coins);
  CHECK(q[0] == doctest::Approx(0.25));
  CHECK(q[1] == doctest::Approx(0.5));
  CHECK(q[2] == doctest::Approx(0.25));
  const std::vector<double> bad = {1.5};
  CHECK_THROWS_AS(CongestionDistribution(bad), std::domain_error);
}

TEST_CASE("congestion distribution agrees with subset enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(1 + trial % 12);
    for (auto& v : s) v = u(rng);
    const auto fast = CongestionDistribution(s);
    const auto slow = testing::BrutePoissonBinomial(s);
    REQUIRE(fast.size() == slow.size());
    double total = 0;
    for (std::size_t n = 0; n < fast.size(); ++n) {
      CHECK(fast[n] == doctest::Approx(slow[n]).epsilon(1e-12));
      total += fast[n];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("expected rate mixtures") {
  const ThroughputParams p;
  const double r1 = AverageRate(1, p), r2 = AverageRate(2, p);
  CHECK(ExpectedRate({}, p) == doctest::Approx(r1));
  const std::vector<double> one = {1.0};
  CHECK(ExpectedRate(one, p) == doctest::Approx(r2));
  const std::vector<double> half = {0.5};
  CHECK(ExpectedRate(half, p) == doctest::Approx(0.5 * r1 + 0.5 * r2));
  RateTable table(p, 10);
  const std::vector<double> mix = {0.2, 0.7, 0.9};
  CHECK(table.Expected(mix) == doctest::Approx(ExpectedRate(mix, p)).epsilon(1e-12));
}

}  // namespace
}  // namespace wcn
