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

// Weighted k-means grouping of APs for partial price differentiation.

#ifndef WCN_SEGMENTATION_H_
#define WCN_SEGMENTATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "wcn/model.h"

namespace wcn {

struct ApAttributes {
  std::vector<std::vector<double>> values;  // one row per AP, M columns
  std::vector<double> weights;              // M entries, summing to 1
};

struct Segmentation {
  int num_groups = 0;
  std::vector<int> group_of_ap;
  std::vector<std::vector<int>> groups;
  std::vector<std::vector<double>> centroids;  // standardized units
  double objective = 0.0;
  // Objective after every Lloyd iteration of the winning run.
  std::vector<double> history;
  // Same, for every restart (including the winner).
  std::vector<std::vector<double>> run_histories;
};

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  std::uint64_t seed = 1;
  int workers = 1;
};

// sum_{j != i} eta_{j,i}: how often other users show up at AP i.
double LocationPopularity(const NetworkModel& model, int ap);

// (owner evaluation, popularity) with weights (beta, 1 - beta).
ApAttributes DefaultAttributes(const NetworkModel& model, double beta);

// Columns scaled to zero mean and unit variance; constant columns become 0.
std::vector<std::vector<double>> Standardize(
    const std::vector<std::vector<double>>& values);

double WeightedObjective(const ApAttributes& standardized,
                         const std::vector<int>& group_of_ap, int num_groups);

Segmentation WeightedKMeans(const ApAttributes& attrs, int num_groups,
                            const KMeansOptions& options = {});

// Builds a segmentation from an explicit AP -> group map (groups 0..G-1).
Segmentation SegmentationFromMap(std::vector<int> group_of_ap);

// Text form: one "ap group" pair per line, '#' starts a comment.
std::string FormatSegmentation(const Segmentation& s);
Segmentation ParseSegmentation(const std::string& text);

}  // namespace wcn

#endif  // WCN_SEGMENTATION_H_
