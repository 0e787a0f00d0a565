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

#include "wcn/membership_game.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "wcn/errors.h"
#include "wcn/throughput.h"

namespace wcn {
namespace {

constexpr int kMaxExactUsers = 24;

std::string OpponentKey(const PureProfile& x, int i) {
  std::string key;
  key.reserve(x.size());
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (j != i) key.push_back(x[j] == Membership::kBill ? 'B' : 'L');
  }
  return key;
}

void CheckProfile(const PayoffOracle& oracle, int i, const PureProfile& x) {
  if (static_cast<int>(x.size()) != oracle.num_subscribers()) {
    throw std::invalid_argument("profile size does not match subscriber count");
  }
  if (i < 0 || i >= oracle.num_subscribers()) {
    throw std::out_of_range("subscriber index out of range");
  }
}

bool IsPayer(const NetworkModel& model, const PureProfile& x, int u) {
  return model.is_alien(u) || x[u] == Membership::kBill;
}

}  // namespace

// ---------------------------------------------------------------------------
// TableBackedOracle

TableBackedOracle::TableBackedOracle(
    int num_subscribers, double delta, double horizon,
    std::vector<std::vector<double>> mobility,
    std::vector<std::map<std::string, Entry>> tables)
    : k_(num_subscribers),
      delta_(delta),
      horizon_(horizon),
      mobility_(std::move(mobility)),
      tables_(std::move(tables)) {
  if (k_ < 1) throw std::invalid_argument("table oracle: no subscribers");
  if (static_cast<int>(mobility_.size()) != k_ ||
      static_cast<int>(tables_.size()) != k_) {
    throw std::invalid_argument("table oracle: one row/table per subscriber");
  }
  const std::size_t locations = k_ + 1;
  for (int i = 0; i < k_; ++i) {
    if (mobility_[i].size() != locations) {
      throw std::invalid_argument("table oracle: mobility row size");
    }
    double sum = 0;
    for (double p : mobility_[i]) sum += p;
    if (std::abs(sum - 1.0) > kMobilityTolerance) {
      throw std::invalid_argument("table oracle: mobility row sum != 1");
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (k_ - 1)); ++m) {
      PureProfile x = ProfileFromMask(k_ - 1, m);
      x.insert(x.begin() + i, Membership::kLinus);
      const auto key = OpponentKey(x, i);
      auto it = tables_[i].find(key);
      if (it == tables_[i].end()) {
        throw std::invalid_argument("table oracle: subscriber " +
                                    std::to_string(i) + " missing profile " +
                                    key);
      }
      if (it->second.linus.size() != locations ||
          it->second.bill.size() != locations) {
        throw std::invalid_argument("table oracle: payoff row size");
      }
    }
  }
}

PayoffBreakdown TableBackedOracle::Breakdown(int i,
                                             const PureProfile& x) const {
  CheckProfile(*this, i, x);
  const Entry& e = tables_[i].at(OpponentKey(x, i));
  PayoffBreakdown b;
  b.revenue_base = e.revenue_base;
  b.charged_usage = e.revenue_base;
  b.location = x[i] == Membership::kBill ? e.bill : e.linus;
  return b;
}

TableBackedOracle ParseTableOracle(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("table fixture: ") + e.what());
  }
  try {
    const auto& subs = doc.at("subscribers");
    std::vector<std::vector<double>> mobility;
    std::vector<std::map<std::string, TableBackedOracle::Entry>> tables;
    for (const auto& s : subs) {
      mobility.push_back(s.at("mobility").get<std::vector<double>>());
      auto& table = tables.emplace_back();
      for (const auto& [key, entry] : s.at("table").items()) {
        TableBackedOracle::Entry e;
        e.revenue_base = entry.value("revenue_base", 0.0);
        e.linus = entry.at("linus").get<std::vector<double>>();
        e.bill = entry.at("bill").get<std::vector<double>>();
        table.emplace(key, std::move(e));
      }
    }
    return TableBackedOracle(static_cast<int>(subs.size()),
                             doc.at("delta").get<double>(),
                             doc.value("horizon", 1.0), std::move(mobility),
                             std::move(tables));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("table fixture: ") + e.what());
  }
}

TableBackedOracle LoadTableOracle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseTableOracle(ss.str());
}

TableBackedOracle CycleFixture(bool literal_tie) {
  using Entry = TableBackedOracle::Entry;
  // Locations: 0 uncovered, then APs 1..3 of subscribers 1..3.
  std::vector<std::vector<double>> mobility = {
      {0, 0.4, 0.3, 0.3},
      {0, 0.0, 0.7, 0.3},
      {0, 0.0, 0.0, 1.0},
  };
  std::vector<std::map<std::string, Entry>> tables(3);
  const double tie_breaker = literal_tie ? 0.6 : 0.65;
  for (char a : {'L', 'B'}) {
    for (char b : {'L', 'B'}) {
      const std::string key{a, b};
      // Subscriber 1; opponents (2, 3). AP 3 depends on subscriber 2.
      tables[0][key] = Entry{1.0,
                             {0, 0, 1.5, a == 'B' ? 1.0 : 0.7},
                             {0, 0, 1.2, a == 'B' ? 0.8 : tie_breaker}};
      // Subscriber 2; opponents (1, 3). Everything depends on subscriber 1.
      tables[1][key] = Entry{a == 'B' ? 1.0 : 0.2,
                             {0, 0, 0, a == 'B' ? 1.0 : 0.7},
                             {0, 0, 0, a == 'B' ? 0.8 : 0.6}};
      // Subscriber 3 never leaves home.
      tables[2][key] = Entry{5.0, {0, 0, 0, 0}, {0, 0, 0, 0}};
    }
  }
  return TableBackedOracle(3, 0.12, 1.0, std::move(mobility),
                           std::move(tables));
}

// ---------------------------------------------------------------------------
// ModelBackedOracle

ModelBackedOracle::ModelBackedOracle(NetworkModel model, PriceScheme prices,
                                     ModelOracleOptions options)
    : model_(std::move(model)),
      prices_(std::move(prices)),
      options_(options) {
  RequireValid(model_);
  const int cap = std::min(options_.exact_cap, kMaxExactUsers);
  if (model_.num_users() > cap) {
    throw ExactCapExceeded(
        "exact model limited to " + std::to_string(cap) + " users (got " +
        std::to_string(model_.num_users()) +
        "); use the approximate model for large networks");
  }
  if (static_cast<int>(prices_.prices.size()) != model_.num_aps()) {
    throw std::invalid_argument("price vector size does not match AP count");
  }
  for (double p : prices_.prices) {
    if (!(p >= 0)) throw std::invalid_argument("prices must be nonnegative");
  }
}

std::vector<double> ModelBackedOracle::AccessTimes(
    int ap, const std::vector<int>& present, const PureProfile& x) const {
  std::uint64_t present_mask = 0, payer_mask = 0;
  for (int u : present) {
    present_mask |= std::uint64_t{1} << u;
    if (IsPayer(model_, x, u)) payer_mask |= std::uint64_t{1} << u;
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(ap) << 48) |
                            (present_mask << 24) | payer_mask;
  {
    std::lock_guard lock(mu_);
    if (auto it = access_memo_.find(key); it != access_memo_.end()) {
      return it->second;
    }
  }
  AccessGameInstance game;
  game.ap = ap;
  game.price = prices_.prices[ap];
  game.params = model_.throughput();
  for (int u : present) {
    game.players.push_back({u, model_.evaluation(u), IsPayer(model_, x, u)});
  }
  auto sigma = SolveAccessGame(game, options_.access).sigma;
  std::lock_guard lock(mu_);
  access_memo_.emplace(key, sigma);
  return sigma;
}

ModelBackedOracle::Slot ModelBackedOracle::ExpectAtAp(
    int ap, int focal, const PureProfile& x) const {
  std::vector<int> sure, uncertain;
  for (int u = 0; u < model_.num_users(); ++u) {
    if (u == ap || u == focal) continue;
    const double eta = model_.eta(u, ap);
    if (eta >= 1.0) {
      sure.push_back(u);
    } else if (eta > 0.0) {
      uncertain.push_back(u);
    }
  }
  const double price = prices_.prices[ap];
  const ThroughputParams& params = model_.throughput();
  Slot out;
  std::vector<int> present;
  std::vector<double> others;
  const std::uint64_t subsets = std::uint64_t{1} << uncertain.size();
  for (std::uint64_t m = 0; m < subsets; ++m) {
    double phi = 1.0;
    present = sure;
    for (std::size_t b = 0; b < uncertain.size(); ++b) {
      const double eta = model_.eta(uncertain[b], ap);
      if (m >> b & 1) {
        phi *= eta;
        present.push_back(uncertain[b]);
      } else {
        phi *= 1.0 - eta;
      }
    }
    if (phi == 0.0) continue;
    if (focal >= 0) present.push_back(focal);
    std::sort(present.begin(), present.end());
    const auto sigma = AccessTimes(ap, present, x);

    double charged = 0.0;
    for (std::size_t j = 0; j < present.size(); ++j) {
      if (IsPayer(model_, x, present[j])) charged += sigma[j];
    }
    out.charged += phi * charged;

    if (focal >= 0) {
      others.clear();
      double own = 0.0;
      for (std::size_t j = 0; j < present.size(); ++j) {
        if (present[j] == focal) {
          own = sigma[j];
        } else {
          others.push_back(sigma[j]);
        }
      }
      const double rate = ExpectedRate(others, params);
      double payoff = model_.evaluation(focal) * std::log1p(rate * own);
      if (IsPayer(model_, x, focal)) payoff -= price * own;
      out.payoff += phi * payoff;
    }
  }
  return out;
}

PayoffBreakdown ModelBackedOracle::Breakdown(int i,
                                             const PureProfile& x) const {
  CheckProfile(*this, i, x);
  std::uint64_t xmask = 0;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (x[j] == Membership::kBill) xmask |= std::uint64_t{1} << j;
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | xmask;
  {
    std::lock_guard lock(mu_);
    if (auto it = breakdown_memo_.find(key); it != breakdown_memo_.end()) {
      return it->second;
    }
  }
  const int k = model_.num_aps();
  PayoffBreakdown b;
  b.location.assign(k + 1, 0.0);
  for (int ap = 0; ap < k; ++ap) {
    if (ap == i) {
      b.location[ap + 1] =
          model_.evaluation(i) * std::log1p(model_.home_rate(i));
    } else {
      b.location[ap + 1] = ExpectAtAp(ap, i, x).payoff;
    }
  }
  b.charged_usage = ExpectAtAp(i, -1, x).charged;
  b.revenue_base = prices_.prices[i] * b.charged_usage;
  std::lock_guard lock(mu_);
  breakdown_memo_.emplace(key, b);
  return b;
}

// ---------------------------------------------------------------------------
// Game-level functions

double PurePayoff(const PayoffOracle& oracle, int i, const PureProfile& x) {
  CheckProfile(oracle, i, x);
  const PayoffBreakdown b = oracle.Breakdown(i, x);
  const auto& eta = oracle.mobility(i);
  double v = x[i] == Membership::kBill ? oracle.delta() * b.revenue_base : 0.0;
  for (std::size_t loc = 0; loc < eta.size(); ++loc) {
    v += eta[loc] * b.location[loc];
  }
  return oracle.horizon() * v;
}

double Gap(const PayoffOracle& oracle, int i, const PureProfile& x) {
  CheckProfile(oracle, i, x);
  PureProfile y = x;
  y[i] = Membership::kBill;
  const double bill = PurePayoff(oracle, i, y);
  y[i] = Membership::kLinus;
  return bill - PurePayoff(oracle, i, y);
}

bool VerifyPureNe(const PayoffOracle& oracle, const PureProfile& x,
                  double tol) {
  for (int i = 0; i < oracle.num_subscribers(); ++i) {
    const double sign = x[i] == Membership::kBill ? 1.0 : -1.0;
    if (sign * Gap(oracle, i, x) < -tol) return false;
  }
  return true;
}

BillThreshold ComputeBillThreshold(const PayoffOracle& oracle, int i,
                                   const PureProfile& x) {
  CheckProfile(oracle, i, x);
  PureProfile y = x;
  y[i] = Membership::kLinus;
  const PayoffBreakdown linus = oracle.Breakdown(i, y);
  y[i] = Membership::kBill;
  const PayoffBreakdown bill = oracle.Breakdown(i, y);
  BillThreshold t;
  for (int ap = 0; ap < oracle.num_subscribers(); ++ap) {
    if (ap == i) continue;
    t.denominator += linus.location[ap + 1] - bill.location[ap + 1];
  }
  if (t.denominator > 0.0) {
    t.value = 1.0 - oracle.delta() * linus.revenue_base / t.denominator;
  }
  return t;
}

double ProfileProbability(const MixedProfile& alpha, int i,
                          const PureProfile& x) {
  double p = 1.0;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (j == i) continue;
    p *= x[j] == Membership::kBill ? alpha[j] : 1.0 - alpha[j];
  }
  return p;
}

double MixedPayoff(const PayoffOracle& oracle, int i, Membership xi,
                   const MixedProfile& alpha) {
  const int k = oracle.num_subscribers();
  if (static_cast<int>(alpha.size()) != k) {
    throw std::invalid_argument("mixed profile size mismatch");
  }
  double total = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (k - 1)); ++m) {
    PureProfile x = ProfileFromMask(k - 1, m);
    x.insert(x.begin() + i, xi);
    const double psi = ProfileProbability(alpha, i, x);
    if (psi == 0.0) continue;
    total += psi * PurePayoff(oracle, i, x);
  }
  return total;
}

double Logit(double v_bill, double v_linus, double gamma) {
  const double z = (v_bill - v_linus) / gamma;
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// Logit responses of every subscriber to alpha.
std::vector<double> LogitMap(const PayoffOracle& oracle,
                             const MixedProfile& alpha, double gamma,
                             int workers) {
  const int k = oracle.num_subscribers();
  std::vector<double> out(k);
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      out[i] = Logit(MixedPayoff(oracle, i, Membership::kBill, alpha),
                     MixedPayoff(oracle, i, Membership::kLinus, alpha), gamma);
    }
  };
  workers = std::clamp(workers, 1, k);
  if (workers == 1) {
    work(0, k);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const int chunk = (k + workers - 1) / workers;
    for (int begin = 0; begin < k; begin += chunk) {
      pool.emplace_back(work, begin, std::min(k, begin + chunk));
    }
  }
  return out;
}

}  // namespace

MixedEquilibrium SolveMixed(const PayoffOracle& oracle,
                            const MixedSolverOptions& options) {
  if (!(options.gamma > 0) || !(options.eps > 0)) {
    throw std::invalid_argument("gamma and eps must be positive");
  }
  if (!(options.damping > 0 && options.damping <= 1)) {
    throw std::invalid_argument("damping must lie in (0, 1]");
  }
  const int k = oracle.num_subscribers();
  MixedEquilibrium eq;
  eq.alpha = options.alpha0.empty() ? MixedProfile(k, 0.5) : options.alpha0;
  if (static_cast<int>(eq.alpha.size()) != k) {
    throw std::invalid_argument("alpha0 size mismatch");
  }
  for (int n = 0; n < options.max_iter; ++n) {
    const double gamma = options.decreasing_gamma
                             ? options.gamma / std::log(n + 2.0)
                             : options.gamma;
    const auto target = LogitMap(oracle, eq.alpha, gamma, options.workers);
    double residual = 0.0;
    for (int i = 0; i < k; ++i) {
      const double next =
          (1 - options.damping) * eq.alpha[i] + options.damping * target[i];
      residual = std::max(residual, std::abs(next - eq.alpha[i]));
      eq.alpha[i] = next;
    }
    eq.iterations = n + 1;
    eq.residual = residual;
    eq.gamma = gamma;
    eq.trace.push_back(residual);
    if (residual <= options.eps) return eq;
  }
  throw NonConvergenceError("smoothed best response did not converge",
                            eq.alpha, eq.residual, eq.iterations, eq.trace);
}

double LogitResidual(const PayoffOracle& oracle, const MixedProfile& alpha,
                     double gamma) {
  const auto target = LogitMap(oracle, alpha, gamma, 1);
  double r = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    r = std::max(r, std::abs(alpha[i] - target[i]));
  }
  return r;
}

std::string ProfileToString(const PureProfile& x) {
  std::string s;
  for (auto m : x) s.push_back(m == Membership::kBill ? 'B' : 'L');
  return s;
}

PureProfile ProfileFromMask(int k, std::uint64_t mask) {
  PureProfile x(k);
  for (int j = 0; j < k; ++j) {
    x[j] = (mask >> j & 1) ? Membership::kBill : Membership::kLinus;
  }
  return x;
}

}  // namespace wcn
