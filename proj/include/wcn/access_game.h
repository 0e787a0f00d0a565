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

// Per-AP, per-slot network access game. Players are the non-owner users
// present at the AP; each picks an access time in [0,1]. Linus players use
// the channel for free, Bills and Aliens pay `price` per unit of access time.

#ifndef WCN_ACCESS_GAME_H_
#define WCN_ACCESS_GAME_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wcn/model.h"

namespace wcn {

struct AccessPlayer {
  int user = -1;          // global user index, informational
  double evaluation = 0;  // rho
  bool pays = true;       // Bill or Alien
};

struct AccessGameInstance {
  int ap = 0;
  double price = 0.0;
  std::vector<AccessPlayer> players;
  ThroughputParams params;
};

struct AccessSolverOptions {
  double tol = 1e-8;
  int max_iter = 10000;
};

struct AccessEquilibrium {
  std::vector<double> sigma;
  int iterations = 0;
  double residual = 0.0;
  bool unique_certified = false;
};

struct UniquenessCertificate {
  bool certified = false;
  std::optional<double> constant;
  std::string reason;
};

// Payoff of player i under the full profile `sigma` (one entry per player).
double SlotPayoff(const AccessGameInstance& game, int i,
                  std::span<const double> sigma);

// Best access time of player i against the other players' access times, given
// in player order with i removed.
double BestResponse(const AccessGameInstance& game, int i,
                    std::span<const double> others_sigma);

// The joint best-response map T(sigma).
std::vector<double> BestResponseMap(const AccessGameInstance& game,
                                    std::span<const double> sigma);

// Synchronous best-response iteration from (payers 0, Linus 1). Throws
// NonConvergenceError when max_iter is exhausted.
AccessEquilibrium SolveAccessGame(const AccessGameInstance& game,
                                  const AccessSolverOptions& options = {});

// Sufficient condition for a unique equilibrium. Linus players are folded
// into the rate curve (they always sit on the channel).
UniquenessCertificate CertifyUniqueness(const AccessGameInstance& game);

}  // namespace wcn

#endif  // WCN_ACCESS_GAME_H_
