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

// Subscriber membership selection (Linus or Bill). Payoffs come from a
// PayoffOracle: either the full model, solved by enumerating who is present
// at each AP, or an explicit table used for hand-built fixtures.

#ifndef WCN_MEMBERSHIP_GAME_H_
#define WCN_MEMBERSHIP_GAME_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wcn/access_game.h"
#include "wcn/model.h"

namespace wcn {

// Per-slot ingredients of one subscriber's payoff under a pure profile.
struct PayoffBreakdown {
  // Expected payment collected on the subscriber's own AP per slot.
  double revenue_base = 0.0;
  // Expected paying access time on the own AP per slot. Tables have no
  // prices, so they report revenue_base here.
  double charged_usage = 0.0;
  // Expected slot payoff at each location, index 0 = outside coverage.
  std::vector<double> location;
};

class PayoffOracle {
 public:
  virtual ~PayoffOracle() = default;
  virtual int num_subscribers() const = 0;
  virtual double delta() const = 0;
  virtual double horizon() const = 0;
  // Raw mobility row of subscriber i: index 0 = uncovered, a+1 = AP a.
  virtual const std::vector<double>& mobility(int i) const = 0;
  virtual PayoffBreakdown Breakdown(int i, const PureProfile& x) const = 0;
};

// Explicit payoff tables. Entries are keyed by the opponents' labels, listed
// in subscriber order with i removed ("B" / "L" characters).
class TableBackedOracle : public PayoffOracle {
 public:
  struct Entry {
    double revenue_base = 0.0;
    std::vector<double> linus;  // per location, size K+1
    std::vector<double> bill;
  };

  TableBackedOracle(int num_subscribers, double delta, double horizon,
                    std::vector<std::vector<double>> mobility,
                    std::vector<std::map<std::string, Entry>> tables);

  int num_subscribers() const override { return k_; }
  double delta() const override { return delta_; }
  double horizon() const override { return horizon_; }
  const std::vector<double>& mobility(int i) const override {
    return mobility_.at(i);
  }
  PayoffBreakdown Breakdown(int i, const PureProfile& x) const override;

 private:
  int k_;
  double delta_;
  double horizon_;
  std::vector<std::vector<double>> mobility_;
  std::vector<std::map<std::string, Entry>> tables_;
};

// Parses the JSON fixture format documented in docs/config.md.
TableBackedOracle ParseTableOracle(const std::string& json_text);
TableBackedOracle LoadTableOracle(const std::string& path);

// Three-subscriber example without a pure equilibrium. `literal_tie` keeps
// the hand-written 0.6 Bill payoff for subscriber 1 on AP 3, which creates an
// exact tie and therefore a weak pure equilibrium; the default uses 0.65.
TableBackedOracle CycleFixture(bool literal_tie = false);

struct ModelOracleOptions {
  int exact_cap = 10;
  AccessSolverOptions access;
};

// Exact payoffs from the network model. Access-game equilibria are memoized
// per (AP, present users, paying users); breakdowns per (i, x).
class ModelBackedOracle : public PayoffOracle {
 public:
  ModelBackedOracle(NetworkModel model, PriceScheme prices,
                    ModelOracleOptions options = {});

  int num_subscribers() const override { return model_.num_aps(); }
  double delta() const override { return model_.delta(); }
  double horizon() const override { return model_.horizon(); }
  const std::vector<double>& mobility(int i) const override {
    return model_.user(i).mobility;
  }
  PayoffBreakdown Breakdown(int i, const PureProfile& x) const override;

  const NetworkModel& model() const { return model_; }
  const PriceScheme& prices() const { return prices_; }

  // Equilibrium access times at `ap` for the users in `present` (sorted),
  // with subscriber labels from x. Exposed for tests and revenue code.
  std::vector<double> AccessTimes(int ap, const std::vector<int>& present,
                                  const PureProfile& x) const;

 private:
  struct Slot {
    double payoff = 0.0;  // of the focal user
    double charged = 0.0;
  };
  // Expectation over co-presence sets at `ap` of the focal user's payoff
  // (focal >= 0) or of charged usage (focal < 0, owner view).
  Slot ExpectAtAp(int ap, int focal, const PureProfile& x) const;

  NetworkModel model_;
  PriceScheme prices_;
  ModelOracleOptions options_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::vector<double>> access_memo_;
  mutable std::unordered_map<std::uint64_t, PayoffBreakdown> breakdown_memo_;
};

// T * (x_i * delta * revenue_base + sum_k eta_ik V_ik).
double PurePayoff(const PayoffOracle& oracle, int i, const PureProfile& x);

// V_i(Bill, x_-i) - V_i(Linus, x_-i). The entry x[i] is ignored.
double Gap(const PayoffOracle& oracle, int i, const PureProfile& x);

// Every subscriber's label agrees with the sign of its gap. `tol` absorbs
// rounding so that exact ties count as weak best responses.
bool VerifyPureNe(const PayoffOracle& oracle, const PureProfile& x,
                  double tol = 1e-12);

struct BillThreshold {
  // Unset when the denominator is not positive: Bill is then at least as good
  // whatever the home probability.
  std::optional<double> value;
  double denominator = 0.0;
  bool always_bill() const { return !value.has_value(); }
};

BillThreshold ComputeBillThreshold(const PayoffOracle& oracle, int i,
                                   const PureProfile& x);

// Probability of the opponents' profile x_-i under independent mixing.
double ProfileProbability(const MixedProfile& alpha, int i,
                          const PureProfile& x);

// Expected payoff of label xi against mixed opponents.
double MixedPayoff(const PayoffOracle& oracle, int i, Membership xi,
                   const MixedProfile& alpha);

struct MixedSolverOptions {
  double gamma = 0.05;
  double eps = 1e-6;
  int max_iter = 10000;
  // Use gamma_n = gamma / ln(n + 2) instead of a fixed gamma.
  bool decreasing_gamma = false;
  MixedProfile alpha0;  // empty: all 0.5
  // alpha <- (1 - damping) * alpha + damping * logit. 1 is the plain update.
  double damping = 1.0;
  int workers = 1;
};

struct MixedEquilibrium {
  MixedProfile alpha;
  int iterations = 0;
  double residual = 0.0;
  double gamma = 0.0;  // gamma of the final update
  std::vector<double> trace;
};

double Logit(double v_bill, double v_linus, double gamma);

MixedEquilibrium SolveMixed(const PayoffOracle& oracle,
                            const MixedSolverOptions& options = {});

// max_i |alpha_i - logit(V_i(B, alpha), V_i(L, alpha))|.
double LogitResidual(const PayoffOracle& oracle, const MixedProfile& alpha,
                     double gamma);

std::string ProfileToString(const PureProfile& x);
PureProfile ProfileFromMask(int k, std::uint64_t mask);

}  // namespace wcn

#endif  // WCN_MEMBERSHIP_GAME_H_
