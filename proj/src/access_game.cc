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

#include "wcn/access_game.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wcn/errors.h"
#include "wcn/throughput.h"

namespace wcn {
namespace {

void CheckIndex(const AccessGameInstance& game, int i) {
  if (i < 0 || i >= static_cast<int>(game.players.size())) {
    throw std::out_of_range("access game: player index out of range");
  }
}

std::vector<double> Others(std::span<const double> sigma, int i) {
  std::vector<double> out;
  out.reserve(sigma.size() - 1);
  for (int j = 0; j < static_cast<int>(sigma.size()); ++j) {
    if (j != i) out.push_back(sigma[j]);
  }
  return out;
}

double ClampedResponse(double evaluation, double price, double rate) {
  if (price <= 0.0) return 1.0;
  return std::clamp(evaluation / price - 1.0 / rate, 0.0, 1.0);
}

}  // namespace

double SlotPayoff(const AccessGameInstance& game, int i,
                  std::span<const double> sigma) {
  CheckIndex(game, i);
  if (sigma.size() != game.players.size()) {
    throw std::invalid_argument("SlotPayoff: profile size mismatch");
  }
  const auto& player = game.players[i];
  const auto others = Others(sigma, i);
  const double rate = ExpectedRate(others, game.params);
  const double utility = player.evaluation * std::log1p(rate * sigma[i]);
  return player.pays ? utility - game.price * sigma[i] : utility;
}

double BestResponse(const AccessGameInstance& game, int i,
                    std::span<const double> others_sigma) {
  CheckIndex(game, i);
  if (others_sigma.size() + 1 != game.players.size()) {
    throw std::invalid_argument("BestResponse: wrong number of opponents");
  }
  const auto& player = game.players[i];
  if (!player.pays) return 1.0;
  if (game.price <= 0.0) return 1.0;
  return ClampedResponse(player.evaluation, game.price,
                         ExpectedRate(others_sigma, game.params));
}

std::vector<double> BestResponseMap(const AccessGameInstance& game,
                                    std::span<const double> sigma) {
  const int m = static_cast<int>(game.players.size());
  if (static_cast<int>(sigma.size()) != m) {
    throw std::invalid_argument("BestResponseMap: profile size mismatch");
  }
  std::vector<double> next(m);
  for (int i = 0; i < m; ++i) {
    next[i] = BestResponse(game, i, Others(sigma, i));
  }
  return next;
}

AccessEquilibrium SolveAccessGame(const AccessGameInstance& game,
                                  const AccessSolverOptions& options) {
  if (!(options.tol > 0)) throw std::invalid_argument("tol must be positive");
  const int m = static_cast<int>(game.players.size());
  const RateTable rates(game.params, std::max(m, 1));

  AccessEquilibrium eq;
  eq.unique_certified = CertifyUniqueness(game).certified;
  eq.sigma.resize(m);
  for (int i = 0; i < m; ++i) eq.sigma[i] = game.players[i].pays ? 0.0 : 1.0;

  std::vector<double> next(m), others;
  others.reserve(m);
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    for (int i = 0; i < m; ++i) {
      const auto& p = game.players[i];
      if (!p.pays || game.price <= 0.0) {
        next[i] = 1.0;
        continue;
      }
      others.clear();
      for (int j = 0; j < m; ++j) {
        if (j != i) others.push_back(eq.sigma[j]);
      }
      next[i] = ClampedResponse(p.evaluation, game.price,
                                rates.Expected(others));
    }
    double residual = 0.0;
    for (int i = 0; i < m; ++i) {
      residual = std::max(residual, std::abs(next[i] - eq.sigma[i]));
    }
    eq.sigma.swap(next);
    eq.iterations = iter;
    eq.residual = residual;
    if (residual <= options.tol) return eq;
  }
  throw NonConvergenceError("access game did not converge", eq.sigma,
                            eq.residual, eq.iterations);
}

UniquenessCertificate CertifyUniqueness(const AccessGameInstance& game) {
  int payers = 0, free_riders = 0;
  for (const auto& p : game.players) {
    if (p.pays && game.price > 0.0) {
      ++payers;
    } else {
      ++free_riders;
    }
  }
  UniquenessCertificate cert;
  if (payers <= 1) {
    // Everyone else is pinned at 1; the lone payer faces a fixed rate.
    cert.certified = true;
    cert.constant = 0.0;
    cert.reason = "at most one strategic player";
    return cert;
  }
  if (payers > 3) {
    cert.reason = "no known condition for more than three paying players";
    return cert;
  }
  auto rate = [&](int n) { return AverageRate(n + free_riders, game.params); };
  const double r1 = rate(1), r2 = rate(2);
  if (payers == 2) {
    const double c = (r1 - r2) / (r2 * r2);
    cert.constant = c;
    cert.certified = c < 1.0;
    cert.reason = "two-player contraction bound";
    return cert;
  }
  const double r3 = rate(3);
  const double spread = 2.0 * std::max(r1 - r2, r2 - r3);
  const double floor =
      std::min({r1, r2, 2.0 * r2 - r1, r1 + r3 - 2.0 * r2});
  cert.reason = "three-player contraction bound";
  if (!(floor > 0.0)) {
    cert.reason += " (nonpositive denominator)";
    return cert;
  }
  cert.constant = spread / floor;
  cert.certified = *cert.constant < 1.0;
  return cert;
}

}  // namespace wcn
