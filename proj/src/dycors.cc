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

#include "wcn/dycors.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace wcn {
namespace {

double Distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<std::int64_t> Quantize(const std::vector<double>& x) {
  std::vector<std::int64_t> key(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    key[i] = std::llround(x[i] * 1e9);
  }
  return key;
}

// Latin hypercube in the unit box.
std::vector<std::vector<double>> LatinHypercube(int n, int d,
                                                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(d));
  std::vector<int> perm(n);
  for (int j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) pts[i][j] = (perm[i] + unif(rng)) / n;
  }
  return pts;
}

}  // namespace

CubicRbf::CubicRbf(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& values)
    : points_(points) {
  const int n = static_cast<int>(points.size());
  if (n == 0 || values.size() != points.size()) {
    throw std::invalid_argument("CubicRbf: need matching points and values");
  }
  const int d = static_cast<int>(points[0].size());
  const int size = n + d + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = Distance(points[i], points[j]);
      a(i, j) = r * r * r;
    }
    a(i, n) = a(n, i) = 1.0;
    for (int k = 0; k < d; ++k) a(i, n + 1 + k) = a(n + 1 + k, i) = points[i][k];
    rhs(i) = values[i];
  }
  // Tiny ridge keeps the solve well posed when points nearly coincide.
  for (int i = 0; i < n; ++i) a(i, i) += 1e-10;
  const Eigen::VectorXd sol = a.fullPivLu().solve(rhs);
  lambda_.assign(sol.data(), sol.data() + n);
  tail_.assign(sol.data() + n, sol.data() + size);
}

double CubicRbf::operator()(const std::vector<double>& x) const {
  double s = tail_[0];
  for (std::size_t k = 0; k < x.size(); ++k) s += tail_[k + 1] * x[k];
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double r = Distance(points_[i], x);
    s += lambda_[i] * r * r * r;
  }
  return s;
}

OptimizeResult Dycors(const Objective& f, const std::vector<double>& lower,
                      const std::vector<double>& upper,
                      const OptimizerConfig& config) {
  const int d = static_cast<int>(lower.size());
  if (d == 0 || upper.size() != lower.size()) {
    throw std::invalid_argument("Dycors: bad box");
  }
  for (int j = 0; j < d; ++j) {
    if (!(upper[j] >= lower[j])) throw std::invalid_argument("Dycors: upper < lower");
  }
  const int n0 = config.n0 > 0 ? config.n0 : 2 * (d + 1);
  const int m = config.m > 0 ? config.m : 100 * d;
  const int n_init = n0 + static_cast<int>(config.initial_points.size());
  if (config.nf_max < n_init + 1) {
    throw std::invalid_argument("Dycors: budget must exceed the initial design");
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Everything below works in the unit box; `to_box` maps back.
  auto to_box = [&](const std::vector<double>& u) {
    std::vector<double> x(d);
    for (int j = 0; j < d; ++j) {
      x[j] = std::clamp(lower[j] + u[j] * (upper[j] - lower[j]), lower[j],
                        upper[j]);
    }
    return x;
  };

  std::map<std::vector<std::int64_t>, double> cache;
  std::vector<std::vector<double>> pts;  // unit box
  std::vector<double> vals;              // minimized: -f
  OptimizeResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> best_u;
  double best = std::numeric_limits<double>::infinity();

  auto record = [&](const std::vector<double>& u, double g) {
    pts.push_back(u);
    vals.push_back(g);
    if (g < best) {
      best = g;
      best_u = u;
    }
    TracePoint t;
    t.evaluation = static_cast<int>(pts.size());
    t.x = to_box(u);
    t.value = -g;
    t.best_x = to_box(best_u);
    t.best_value = -best;
    result.trace.push_back(std::move(t));
  };

  // Initial design, optionally evaluated in parallel.
  auto design = LatinHypercube(n0, d, rng);
  for (const auto& x : config.initial_points) {
    if (static_cast<int>(x.size()) != d) {
      throw std::invalid_argument("Dycors: initial point has wrong dimension");
    }
    std::vector<double> u(d);
    for (int j = 0; j < d; ++j) {
      const double range = upper[j] - lower[j];
      u[j] = range > 0 ? std::clamp((x[j] - lower[j]) / range, 0.0, 1.0) : 0.0;
    }
    design.push_back(std::move(u));
  }
  std::vector<double> design_vals(n_init);
  {
    const int workers = std::clamp(config.workers, 1, n_init);
    auto work = [&](int w) {
      for (int i = w; i < n_init; i += workers) {
        design_vals[i] = -f(to_box(design[i]));
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
  }
  for (int i = 0; i < n_init; ++i) {
    cache.emplace(Quantize(to_box(design[i])), design_vals[i]);
    record(design[i], design_vals[i]);
  }

  double radius = config.initial_radius;
  int fails = 0, succs = 0;
  const double p_scale = std::min(20.0 / d, 1.0);
  const double log_span = std::log(std::max(2, config.nf_max - n_init));
  const int max_rounds = 20 * config.nf_max;

  for (int round = 0;
       static_cast<int>(pts.size()) < config.nf_max && round < max_rounds;
       ++round) {
    const int n = static_cast<int>(pts.size());
    const double upsilon =
        p_scale * std::max(0.0, 1.0 - std::log(n - n_init + 1.0) / log_span);

    // Normalize values before fitting; the surrogate only ranks candidates.
    const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
    const double span = std::max(*hi_it - *lo_it, 1e-300);
    std::vector<double> scaled(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      scaled[i] = (vals[i] - *lo_it) / span;
    }
    const CubicRbf surrogate(pts, scaled);

    const double min_sep = 1e-3 * config.min_radius;
    std::vector<double> chosen;
    double chosen_score = std::numeric_limits<double>::infinity();
    for (int c = 0; c < m; ++c) {
      std::vector<double> u = best_u;
      bool any = false;
      for (int j = 0; j < d; ++j) {
        if (unif(rng) < upsilon) {
          u[j] = std::clamp(u[j] + radius * normal(rng), 0.0, 1.0);
          any = true;
        }
      }
      if (!any) {
        const int j = std::uniform_int_distribution<int>(0, d - 1)(rng);
        u[j] = std::clamp(u[j] + radius * normal(rng), 0.0, 1.0);
      }
      bool duplicate = false;
      for (const auto& p : pts) {
        if (Distance(p, u) < min_sep) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      const double score = surrogate(u);
      if (score < chosen_score) {
        chosen_score = score;
        chosen = std::move(u);
      }
    }
    if (chosen.empty()) {
      // Every candidate collapsed onto known points; widen and retry.
      radius = std::min(1.0, 2.0 * radius);
      continue;
    }

    const auto x = to_box(chosen);
    const auto key = Quantize(x);
    double g;
    if (auto it = cache.find(key); it != cache.end()) {
      g = it->second;
    } else {
      g = -f(x);
      cache.emplace(key, g);
    }
    const bool success = g < best - 1e-6 * std::max(1.0, std::abs(best));
    record(chosen, g);

    if (success) {
      ++succs;
      fails = 0;
    } else {
      ++fails;
      succs = 0;
    }
    if (succs >= config.succ_tol) {
      radius = std::min(1.0, 2.0 * radius);
      succs = 0;
    }
    if (fails >= config.fail_tol) {
      radius = std::max(config.min_radius, radius / 2.0);
      fails = 0;
    }
  }

  result.best_x = to_box(best_u);
  result.best_value = -best;
  result.evaluations = static_cast<int>(pts.size());
  return result;
}

void WriteTraceCsv(std::ostream& out, const OptimizeResult& result) {
  const std::size_t d = result.best_x.size();
  out << "evaluation,value,best_value";
  for (std::size_t j = 0; j < d; ++j) out << ",x" << j + 1;
  for (std::size_t j = 0; j < d; ++j) out << ",best" << j + 1;
  out << '\n' << std::setprecision(10);
  for (const auto& t : result.trace) {
    out << t.evaluation << ',' << t.value << ',' << t.best_value;
    for (double v : t.x) out << ',' << v;
    for (double v : t.best_x) out << ',' << v;
    out << '\n';
  }
}

}  // namespace wcn
