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

#include "wcn/segmentation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wcn {
namespace {

double WeightedDistance(const std::vector<double>& a,
                        const std::vector<double>& b,
                        const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    s += w[m] * (a[m] - b[m]) * (a[m] - b[m]);
  }
  return s;
}

std::vector<std::vector<double>> Centroids(
    const std::vector<std::vector<double>>& y, const std::vector<int>& label,
    int g) {
  const std::size_t dims = y.empty() ? 0 : y[0].size();
  std::vector<std::vector<double>> z(g, std::vector<double>(dims, 0.0));
  std::vector<int> count(g, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    ++count[label[i]];
    for (std::size_t m = 0; m < dims; ++m) z[label[i]][m] += y[i][m];
  }
  for (int c = 0; c < g; ++c) {
    if (count[c] == 0) continue;
    for (auto& v : z[c]) v /= count[c];
  }
  return z;
}

struct Run {
  std::vector<int> label;
  std::vector<double> history;
  double objective = std::numeric_limits<double>::infinity();
};

Run Lloyd(const std::vector<std::vector<double>>& y,
          const std::vector<double>& w, int g, int max_iter,
          std::mt19937_64& rng) {
  const int n = static_cast<int>(y.size());
  // k-means++ seeding.
  std::vector<std::vector<double>> z;
  z.push_back(y[std::uniform_int_distribution<int>(0, n - 1)(rng)]);
  std::vector<double> d2(n);
  while (static_cast<int>(z.size()) < g) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      d2[i] = std::numeric_limits<double>::infinity();
      for (const auto& c : z) d2[i] = std::min(d2[i], WeightedDistance(y[i], c, w));
      total += d2[i];
    }
    int pick = 0;
    if (total > 0) {
      double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      for (pick = 0; pick < n - 1; ++pick) {
        r -= d2[pick];
        if (r <= 0 && d2[pick] > 0) break;
      }
    } else {
      pick = std::uniform_int_distribution<int>(0, n - 1)(rng);
    }
    z.push_back(y[pick]);
  }

  Run run;
  run.label.assign(n, -1);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = run.label[i];
      double best_d = best >= 0 ? WeightedDistance(y[i], z[best], w)
                                : std::numeric_limits<double>::infinity();
      for (int c = 0; c < g; ++c) {
        const double dc = WeightedDistance(y[i], z[c], w);
        if (dc < best_d) {
          best_d = dc;
          best = c;
        }
      }
      if (best != run.label[i]) {
        run.label[i] = best;
        changed = true;
      }
    }
    // Repair empty clusters with the point farthest from its centroid.
    std::vector<int> count(g, 0);
    for (int l : run.label) ++count[l];
    for (int c = 0; c < g; ++c) {
      if (count[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (count[run.label[i]] <= 1) continue;
        const double di = WeightedDistance(y[i], z[run.label[i]], w);
        if (di > far_d) {
          far_d = di;
          far = i;
        }
      }
      if (far < 0) break;
      --count[run.label[far]];
      run.label[far] = c;
      ++count[c];
      changed = true;
    }
    z = Centroids(y, run.label, g);
    double obj = 0.0;
    for (int i = 0; i < n; ++i) obj += WeightedDistance(y[i], z[run.label[i]], w);
    run.history.push_back(obj);
    run.objective = obj;
    if (!changed) break;
  }
  return run;
}

}  // namespace

double LocationPopularity(const NetworkModel& model, int ap) {
  if (ap < 0 || ap >= model.num_aps()) {
    throw std::out_of_range("LocationPopularity: AP out of range");
  }
  double s = 0.0;
  for (int u = 0; u < model.num_users(); ++u) {
    if (u != ap) s += model.eta(u, ap);
  }
  return s;
}

ApAttributes DefaultAttributes(const NetworkModel& model, double beta) {
  if (!(beta >= 0 && beta <= 1)) {
    throw std::invalid_argument("beta must lie in [0, 1]");
  }
  ApAttributes a;
  a.weights = {beta, 1.0 - beta};
  for (int k = 0; k < model.num_aps(); ++k) {
    a.values.push_back({model.evaluation(k), LocationPopularity(model, k)});
  }
  return a;
}

std::vector<std::vector<double>> Standardize(
    const std::vector<std::vector<double>>& values) {
  auto out = values;
  if (values.empty()) return out;
  const std::size_t n = values.size(), dims = values[0].size();
  for (std::size_t m = 0; m < dims; ++m) {
    double mean = 0.0;
    for (const auto& row : values) mean += row[m];
    mean /= n;
    double var = 0.0;
    for (const auto& row : values) var += (row[m] - mean) * (row[m] - mean);
    const double sd = std::sqrt(var / n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i][m] = sd > 1e-12 ? (values[i][m] - mean) / sd : 0.0;
    }
  }
  return out;
}

double WeightedObjective(const ApAttributes& standardized,
                         const std::vector<int>& group_of_ap, int num_groups) {
  const auto z = Centroids(standardized.values, group_of_ap, num_groups);
  double obj = 0.0;
  for (std::size_t i = 0; i < group_of_ap.size(); ++i) {
    obj += WeightedDistance(standardized.values[i], z[group_of_ap[i]],
                            standardized.weights);
  }
  return obj;
}

Segmentation WeightedKMeans(const ApAttributes& attrs, int num_groups,
                            const KMeansOptions& options) {
  const int n = static_cast<int>(attrs.values.size());
  if (num_groups < 1 || num_groups > n) {
    throw std::invalid_argument("need 1 <= G <= number of APs");
  }
  double wsum = 0.0;
  for (double w : attrs.weights) {
    if (!(w >= 0 && w <= 1)) throw std::invalid_argument("weights must be in [0,1]");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) {
    throw std::invalid_argument("weights must sum to 1");
  }
  for (const auto& row : attrs.values) {
    if (row.size() != attrs.weights.size()) {
      throw std::invalid_argument("attribute row size != weight count");
    }
  }
  const auto y = Standardize(attrs.values);
  const int restarts = std::max(1, options.restarts);
  std::vector<Run> runs(restarts);
  auto work = [&](int r) {
    std::seed_seq seq{options.seed, static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    runs[r] = Lloyd(y, attrs.weights, num_groups, options.max_iter, rng);
  };
  const int workers = std::clamp(options.workers, 1, restarts);
  if (workers == 1) {
    for (int r = 0; r < restarts; ++r) work(r);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int r = w; r < restarts; r += workers) work(r);
      });
    }
  }
  int winner = 0;
  for (int r = 1; r < restarts; ++r) {
    // Strict comparison: ties go to the earlier seed.
    if (runs[r].objective < runs[winner].objective) winner = r;
  }
  Segmentation s = SegmentationFromMap(runs[winner].label);
  s.num_groups = num_groups;
  s.centroids = Centroids(y, s.group_of_ap, num_groups);
  s.objective = runs[winner].objective;
  s.history = runs[winner].history;
  for (auto& r : runs) s.run_histories.push_back(std::move(r.history));
  return s;
}

Segmentation SegmentationFromMap(std::vector<int> group_of_ap) {
  Segmentation s;
  int g = 0;
  for (int l : group_of_ap) {
    if (l < 0) throw std::invalid_argument("negative group id");
    g = std::max(g, l + 1);
  }
  s.num_groups = g;
  s.groups.assign(g, {});
  for (int i = 0; i < static_cast<int>(group_of_ap.size()); ++i) {
    s.groups[group_of_ap[i]].push_back(i);
  }
  for (const auto& members : s.groups) {
    if (members.empty()) throw std::invalid_argument("empty group in segmentation");
  }
  s.group_of_ap = std::move(group_of_ap);
  return s;
}

std::string FormatSegmentation(const Segmentation& s) {
  std::ostringstream out;
  out << "# ap group\n";
  for (std::size_t i = 0; i < s.group_of_ap.size(); ++i) {
    out << i << ' ' << s.group_of_ap[i] << '\n';
  }
  return out.str();
}

Segmentation ParseSegmentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, int>> pairs;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int ap, group;
    if (!(ls >> ap)) continue;
    if (!(ls >> group)) throw std::invalid_argument("segmentation: bad line '" + line + "'");
    pairs.emplace_back(ap, group);
  }
  std::vector<int> map(pairs.size(), -1);
  for (auto [ap, group] : pairs) {
    if (ap < 0 || ap >= static_cast<int>(map.size()) || map[ap] != -1) {
      throw std::invalid_argument("segmentation: AP ids must be 0..K-1, once each");
    }
    map[ap] = group;
  }
  return SegmentationFromMap(std::move(map));
}

}  // namespace wcn
