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
#include <sstream>
#include <vector>

#include "doctest.h"
#include "wcn/dycors.h"

namespace wcn {
namespace {

TEST_CASE("concave objective reaches its argmax") {
  // Peak at (2, 7, 4.5).
  auto f = [](const std::vector<double>& x) {
    return -(x[0] - 2) * (x[0] - 2) - 0.5 * (x[1] - 7) * (x[1] - 7) -
           2 * (x[2] - 4.5) * (x[2] - 4.5);
  };
  OptimizerConfig c;
  c.nf_max = 200;
  const auto r = Dycors(f, {0, 0, 0}, {10, 10, 10}, c);
  CHECK(r.best_x[0] == doctest::Approx(2).epsilon(1e-2).scale(1));
  CHECK(std::abs(r.best_x[0] - 2) < 1e-2);
  CHECK(std::abs(r.best_x[1] - 7) < 1e-2);
  CHECK(std::abs(r.best_x[2] - 4.5) < 1e-2);
  CHECK(r.evaluations <= 200);
}

TEST_CASE("fixed seed gives the same trajectory") {
  auto f = [](const std::vector<double>& x) { return std::sin(x[0]) * std::cos(x[1]); };
  OptimizerConfig c;
  c.nf_max = 60;
  c.seed = 9;
  const auto a = Dycors(f, {0, 0}, {5, 5}, c);
  const auto b = Dycors(f, {0, 0}, {5, 5}, c);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].x == b.trace[i].x);
    CHECK(a.trace[i].value == b.trace[i].value);
  }
  std::ostringstream sa, sb;
  WriteTraceCsv(sa, a);
  WriteTraceCsv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("evaluation,value,best_value,x1,x2,best1,best2\n", 0) == 0);
}

TEST_CASE("trace incumbent never gets worse") {
  auto f = [](const std::vector<double>& x) { return -std::abs(x[0] - 0.3); };
  OptimizerConfig c;
  c.nf_max = 40;
  const auto r = Dycors(f, {0}, {1}, c);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].best_value >= r.trace[i - 1].best_value);
  }
  CHECK(r.best_value == r.trace.back().best_value);
}

TEST_CASE("warm start points are evaluated first") {
  auto f = [](const std::vector<double>& x) { return -(x[0] - 0.42) * (x[0] - 0.42); };
  OptimizerConfig c;
  c.nf_max = 10;
  c.initial_points = {{0.42}, {5.0}};
  const auto r = Dycors(f, {0}, {1}, c);
  CHECK(r.best_x[0] == doctest::Approx(0.42));
  bool clamped = false;
  for (const auto& t : r.trace) clamped |= t.x[0] == 1.0;
  CHECK(clamped);
}

TEST_CASE("bad boxes are rejected") {
  auto f = [](const std::vector<double>&) { return 0.0; };
  CHECK_THROWS(Dycors(f, {1}, {0}, OptimizerConfig{}));
  CHECK_THROWS(Dycors(f, {0, 0}, {1}, OptimizerConfig{}));
}

TEST_CASE("cubic RBF interpolates its nodes") {
  const std::vector<std::vector<double>> pts = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.3}};
  std::vector<double> vals;
  for (const auto& p : pts) vals.push_back(std::exp(p[0]) + p[1] * p[1]);
  CubicRbf s(pts, vals);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(s(pts[i]) == doctest::Approx(vals[i]).epsilon(1e-6));
  }
  // A linear function is reproduced exactly by the tail.
  std::vector<double> lin;
  for (const auto& p : pts) lin.push_back(3 + 2 * p[0] - p[1]);
  CubicRbf t(pts, lin);
  CHECK(t({0.25, 0.75}) == doctest::Approx(3 + 0.5 - 0.75).epsilon(1e-6));
}

}  // namespace
}  // namespace wcn
