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

// Scenario description shared by the exact and approximate solvers: who the
// users are, where they roam, and the 802.11 parameters of the shared channel.
//
// Indexing convention used throughout the library:
//   * users are numbered 0..K-1 for subscribers and K..K+K_A-1 for Aliens;
//   * subscriber s owns AP s (0-based);
//   * a mobility row has K+1 entries, entry 0 is "outside all coverage" and
//     entry k+1 is AP k.

#ifndef WCN_MODEL_H_
#define WCN_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wcn {

struct ThroughputParams {
  double tau = 0.0765;        // contention success probability
  double payload = 8192.0;    // bits
  double t_backoff = 28.0;    // us
  double t_collision = 85.7 + 8192.0 / 54.0;  // us
  double t_success = 85.7 + 8192.0 / 54.0;    // us

  // 802.11g values used for the per-user rate curve.
  static ThroughputParams Ieee80211g() { return {}; }
};

enum class UserKind { kSubscriber, kAlien };

struct User {
  UserKind kind = UserKind::kSubscriber;
  double evaluation = 1.0;            // rho, utility units per log-data
  std::vector<double> mobility;       // K+1 entries, see file comment
  std::optional<double> home_rate;    // private channel rate, subscribers only
};

enum class Membership : std::uint8_t { kLinus = 0, kBill = 1 };

using PureProfile = std::vector<Membership>;
using MixedProfile = std::vector<double>;

class NetworkModel {
 public:
  NetworkModel() = default;
  NetworkModel(std::vector<User> subscribers, std::vector<User> aliens,
               double delta, int horizon, ThroughputParams throughput = {});

  int num_aps() const { return static_cast<int>(subscribers_.size()); }
  int num_subscribers() const { return num_aps(); }
  int num_aliens() const { return static_cast<int>(aliens_.size()); }
  int num_users() const { return num_aps() + num_aliens(); }

  const std::vector<User>& subscribers() const { return subscribers_; }
  const std::vector<User>& aliens() const { return aliens_; }
  const User& user(int u) const;
  bool is_alien(int u) const { return u >= num_aps(); }

  double delta() const { return delta_; }
  int horizon() const { return horizon_; }
  const ThroughputParams& throughput() const { return throughput_; }

  double evaluation(int u) const { return user(u).evaluation; }
  // Probability that user u is at AP `ap` in a slot.
  double eta(int u, int ap) const { return user(u).mobility[ap + 1]; }
  double eta_uncovered(int u) const { return user(u).mobility[0]; }
  // Private-channel rate of subscriber s; R(1) of the throughput model unless
  // the user overrides it.
  double home_rate(int s) const;

 private:
  std::vector<User> subscribers_;
  std::vector<User> aliens_;
  double delta_ = 0.5;
  int horizon_ = 1;
  ThroughputParams throughput_;
};

struct Violation {
  std::string code;     // stable identifier, e.g. "mobility.out_of_range"
  std::string message;  // human readable
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool Has(const std::string& code) const;
  std::string ToString() const;
};

inline constexpr double kMobilityTolerance = 1e-9;

ValidationReport ValidateModel(const NetworkModel& model);

// Throws InvalidModelError carrying the report text when the model is invalid.
void RequireValid(const NetworkModel& model);

// Per-AP prices, optionally backed by a group segmentation.
struct PriceScheme {
  std::vector<double> prices;
  std::vector<double> group_prices;   // empty unless group backed
  std::vector<int> group_of_ap;       // empty unless group backed

  static PriceScheme Uniform(int num_aps, double price);
  static PriceScheme FromGroups(std::vector<double> group_prices,
                                std::vector<int> group_of_ap);
  bool group_backed() const { return !group_of_ap.empty(); }
  PriceScheme Clamped(double upper) const;
};

// ---------------------------------------------------------------------------
// Synthetic scenarios.

struct EvaluationGenerator {
  enum class Kind { kConstant, kRamp, kGaussian };
  Kind kind = Kind::kConstant;
  double value = 1.0;     // kConstant
  double low = 0.0;       // kRamp: first user gets `low`, last gets `high`
  double high = 1.0;
  double mean = 4.0;      // kGaussian, truncated at zero by resampling
  double variance = 2.0;
};

struct MobilityGenerator {
  enum class Kind { kUniform, kHotnessRamp, kLocality, kCustom };
  Kind kind = Kind::kUniform;
  // kHotnessRamp / kLocality: probability of being outside coverage.
  double uncovered = 0.5;
  // kHotnessRamp: AP a gets covered mass proportional to (a+1)^exponent.
  double ramp_exponent = 1.0;
  // kLocality: subscribers stay home with this probability; the rest of the
  // covered mass goes to APs near the user's position on a ring, weighted by
  // a Gaussian kernel of width `spread` (in AP index units) and by an AP
  // hotness that ramps linearly from 1 to `hotness_ratio`.
  double home = 0.3;
  double spread = 3.0;
  double hotness_ratio = 4.0;
  // kLocality: hand out the drawn evaluations by ring position (lowest near
  // AP 0, highest opposite it), so neighbours value access alike. The
  // marginal distribution of evaluations is unchanged.
  bool sort_evaluations = false;
  // kCustom: one row per user (subscribers first, then Aliens).
  std::vector<std::vector<double>> rows;
};

struct ScenarioSpec {
  int num_aps = 2;
  int num_aliens = 1;
  double delta = 0.5;
  int horizon = 1;
  ThroughputParams throughput;
  MobilityGenerator mobility;
  EvaluationGenerator subscriber_evaluation;
  EvaluationGenerator alien_evaluation;
  // Per-user overrides applied after the generators (user index as above).
  std::vector<std::pair<int, std::vector<double>>> mobility_overrides;
  std::vector<std::pair<int, double>> evaluation_overrides;
  std::optional<double> home_rate;
};

// Empty when the spec is usable.
std::vector<std::string> CheckScenarioSpec(const ScenarioSpec& spec);

// Deterministic in (spec, seed). Throws std::invalid_argument on a bad spec.
NetworkModel SynthScenario(const ScenarioSpec& spec, std::uint64_t seed);

}  // namespace wcn

#endif  // WCN_MODEL_H_
