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

// Dynamic coordinate search with a cubic RBF surrogate, for box-constrained
// maximization of expensive black-box functions (the operator's revenue).

#ifndef WCN_DYCORS_H_
#define WCN_DYCORS_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

namespace wcn {

struct OptimizerConfig {
  int nf_max = 200;  // evaluation budget
  int n0 = 0;        // initial Latin hypercube size; 0 means 2(d+1)
  int m = 0;         // candidates per iteration; 0 means 100 d
  // Perturbation radius as a fraction of each coordinate's range.
  double initial_radius = 0.2;
  double min_radius = 1e-3;
  int fail_tol = 3;
  int succ_tol = 3;
  std::uint64_t seed = 1;
  int workers = 1;  // parallel evaluation of the initial design
  // Extra points (in box coordinates) evaluated with the initial design,
  // e.g. the best coarser price vector. Clamped into the box.
  std::vector<std::vector<double>> initial_points;
};

struct TracePoint {
  int evaluation = 0;
  std::vector<double> x;
  double value = 0.0;
  std::vector<double> best_x;
  double best_value = 0.0;
};

struct OptimizeResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  int evaluations = 0;
  std::vector<TracePoint> trace;
};

using Objective = std::function<double(const std::vector<double>&)>;

// Maximizes f over [lower, upper]. Deterministic for a fixed seed. The
// objective must be safe to call concurrently when workers > 1.
OptimizeResult Dycors(const Objective& f, const std::vector<double>& lower,
                      const std::vector<double>& upper,
                      const OptimizerConfig& config);

// Columns: evaluation, value, best_value, x_1..x_d, best_1..best_d.
void WriteTraceCsv(std::ostream& out, const OptimizeResult& result);

// Cubic RBF interpolant with a linear tail. Exposed for tests.
class CubicRbf {
 public:
  CubicRbf(const std::vector<std::vector<double>>& points,
           const std::vector<double>& values);
  double operator()(const std::vector<double>& x) const;

 private:
  std::vector<std::vector<double>> points_;
  std::vector<double> lambda_;
  std::vector<double> tail_;  // constant then linear coefficients
};

}  // namespace wcn

#endif  // WCN_DYCORS_H_
