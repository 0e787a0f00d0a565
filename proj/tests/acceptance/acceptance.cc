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

// Acceptance checks. Each criterion prints one line:
//   AC<n> PASS|FAIL <measurements>
// Run all with no arguments, or one with --criterion N. Exit status is 0 only
// if every requested criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "oracles.h"
#include "wcn/access_game.h"
#include "wcn/dycors.h"
#include "wcn/errors.h"
#include "wcn/experiments.h"
#include "wcn/membership_game.h"
#include "wcn/segmentation.h"
#include "wcn/throughput.h"

namespace wcn {
namespace {

using nlohmann::json;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int Workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// ---------------------------------------------------------------------------

Verdict Ac1() {
  const ThroughputParams p;
  int bad = 0;
  for (int n = 2; n <= 50; ++n) bad += !(AverageRate(n, p) < AverageRate(n - 1, p));
  const double ratio = AverageRate(20, p) / AverageRate(1, p);
  return {bad == 0 && ratio < 0.5,
          Fmt("non-decreasing steps=%d R(20)/R(1)=%.4f", bad, ratio)};
}

std::vector<AccessGameInstance> CertifiedTwoPayerGames() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rho(0.05, 1.0), price(0.5, 1.5);
  std::vector<AccessGameInstance> games;
  while (games.size() < 200) {
    AccessGameInstance g{0, price(rng), {{0, rho(rng), true}, {1, rho(rng), true}}, {}};
    if (CertifyUniqueness(g).certified) games.push_back(g);
  }
  return games;
}

Verdict Ac2() {
  const auto games = CertifiedTwoPayerGames();
  std::vector<double> err(games.size(), 0.0);
  std::vector<int> iters(games.size(), 0);
  ParallelFor(static_cast<int>(games.size()), Workers(), [&](int k) {
    const auto eq = SolveAccessGame(games[k]);
    const auto ref = testing::GridEquilibrium2(games[k]);
    err[k] = std::max(std::abs(eq.sigma[0] - ref[0]), std::abs(eq.sigma[1] - ref[1]));
    iters[k] = eq.iterations;
  });
  const double worst = *std::max_element(err.begin(), err.end());
  const int max_it = *std::max_element(iters.begin(), iters.end());
  int interior = 0;
  for (const auto& g : games) {
    const auto eq = SolveAccessGame(g);
    interior += eq.sigma[0] > 0 && eq.sigma[0] < 1;
  }
  return {worst <= 1e-3 && max_it < 200,
          Fmt("instances=%zu max_err=%.2e max_iterations=%d interior=%d", games.size(),
              worst, max_it, interior)};
}

Verdict Ac3() {
  const auto games = CertifiedTwoPayerGames();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  int violations = 0, pairs = 0;
  double worst_ratio = 0;
  for (const auto& g : games) {
    const double c = *CertifyUniqueness(g).constant;
    for (int t = 0; t < 1000; ++t) {
      const std::vector<double> a = {u(rng), u(rng)}, b = {u(rng), u(rng)};
      const auto ta = BestResponseMap(g, a), tb = BestResponseMap(g, b);
      const double num = std::max(std::abs(ta[0] - tb[0]), std::abs(ta[1] - tb[1]));
      const double den = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
      ++pairs;
      if (num > c * den + 1e-12) ++violations;
      if (den > 0) worst_ratio = std::max(worst_ratio, num / den / c);
    }
  }
  return {violations == 0,
          Fmt("pairs=%d violations=%d max(ratio/c)=%.4f", pairs, violations, worst_ratio)};
}

Verdict Ac4() {
  const auto f = CycleFixture();
  int pure = 0;
  for (std::uint64_t m = 0; m < 8; ++m) pure += VerifyPureNe(f, ProfileFromMask(3, m));
  MixedSolverOptions opt;
  opt.gamma = 0.05;
  opt.eps = 1e-6;
  try {
    const auto eq = SolveMixed(f, opt);
    const double res = LogitResidual(f, eq.alpha, opt.gamma);
    return {pure == 0 && res <= 1e-6 && eq.alpha[2] > 0.99,
            Fmt("pure_NE=%d alpha=(%.4f,%.4f,%.6f) residual=%.2e iterations=%d", pure,
                eq.alpha[0], eq.alpha[1], eq.alpha[2], res, eq.iterations)};
  } catch (const NonConvergenceError& e) {
    return {false, Fmt("pure_NE=%d mixed solver did not converge", pure)};
  }
}

Verdict Ac5() {
  const auto out = RunExperiment(ResolveConfig({{"experiment", "fig5"}}), Workers());
  const Table& t = out.tables.at("fig5.csv");
  const json cfg = DefaultConfig("fig5");
  const int nr = cfg["rho_axis"]["steps"], ne = cfg["eta_axis"]["steps"];
  int monotone_breaks = 0, band_breaks = 0;
  for (int a = 0; a < nr; ++a) {
    bool in_band = false;
    for (int e = 0; e < ne; ++e) {
      const double alpha = t.rows[a * ne + e][2];
      if (e > 0 && alpha < t.rows[a * ne + e - 1][2] - 1e-3) ++monotone_breaks;
      const bool full = alpha >= 1 - 1e-3;
      if (in_band && !full) ++band_breaks;  // band must run up to eta = 1
      in_band = in_band || full;
    }
  }
  const auto& b = out.summary["bill_boundary_max"];
  const double boundary = b.is_null() ? NAN : b.get<double>();
  const bool ok = out.failed_points == 0 && monotone_breaks == 0 && band_breaks == 0 &&
                  boundary >= 0.7 && boundary <= 0.95;
  return {ok, Fmt("boundary=%.3f monotone_breaks=%d band_breaks=%d failed_points=%d",
                  boundary, monotone_breaks, band_breaks, out.failed_points)};
}

Verdict Ac6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  std::gamma_distribution<double> g(1.0);
  int triggered = 0, violations = 0, checks = 0;
  for (int model_id = 0; model_id < 100; ++model_id) {
    const int k = 2 + model_id % 2, ka = model_id % 3;
    std::vector<User> subs, aliens;
    auto row = [&](int home) {
      std::vector<double> r(k + 1);
      double s = 0;
      for (auto& v : r) s += (v = g(rng));
      for (auto& v : r) v /= s;
      if (home >= 0) {
        // Push mass toward home so that the threshold is crossed often.
        const double stay = 0.4 + 0.6 * u(rng);
        for (auto& v : r) v *= 1 - stay;
        r[home + 1] += stay;
      }
      return r;
    };
    for (int i = 0; i < k; ++i) subs.push_back({UserKind::kSubscriber, 0.2 + 2 * u(rng), row(i), std::nullopt});
    for (int a = 0; a < ka; ++a) aliens.push_back({UserKind::kAlien, 0.2 + 2 * u(rng), row(-1), std::nullopt});
    const NetworkModel m(subs, aliens, u(rng), 1 + model_id % 5);
    ModelBackedOracle o(m, PriceScheme::Uniform(k, 0.2 + u(rng)));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      const PureProfile x = ProfileFromMask(k, mask);
      for (int i = 0; i < k; ++i) {
        ++checks;
        const auto th = ComputeBillThreshold(o, i, x);
        const double eta_home = m.eta(i, i);
        if (th.always_bill() || eta_home > *th.value) {
          ++triggered;
          if (!(Gap(o, i, x) > 0)) ++violations;
        }
      }
    }
  }
  return {violations == 0 && triggered > 0,
          Fmt("models=100 checks=%d triggered=%d violations=%d", checks, triggered, violations)};
}

Verdict Ac7() {
  const auto f6 = RunExperiment(ResolveConfig({{"experiment", "fig6"}}), Workers());
  const auto f7 = RunExperiment(ResolveConfig({{"experiment", "fig7"}}), Workers());
  const double s6 = f6.summary["spearman_alpha_popularity"].get<double>();
  const double s7 = f7.summary["spearman_alpha_rho"].get<double>();
  const bool conv = f6.failed_points == 0 && f7.failed_points == 0;
  return {conv && s6 >= 0.8 && s7 <= -0.8,
          Fmt("spearman(alpha,popularity)=%.4f spearman(alpha,rho)=%.4f converged=%d", s6, s7,
              conv)};
}

Verdict Ac8() {
  json cfg = ResolveConfig({{"experiment", "fig10"}, {"betas", {0.5}}, {"groups", {{"min", 1}, {"max", 6}}}});
  const auto out = RunExperiment(cfg, Workers());
  const Table& t = out.tables.at("fig10.csv");
  std::vector<double> rev;
  for (std::size_t r = 0; r < t.rows.size(); ++r) rev.push_back(t.at(r, "revenue"));
  std::string series;
  for (double v : rev) series += Fmt("%.2f ", v);
  bool ok = out.failed_points == 0 && rev.size() == 6;
  if (ok) {
    ok = rev[1] >= 1.05 * rev[0];
    for (int g = 1; g < 5; ++g) ok = ok && rev[g] >= 0.98 * rev[g - 1];
    ok = ok && (rev[5] - rev[4]) < (rev[1] - rev[0]);
  }
  return {ok, Fmt("revenue(G=1..6)= %sG2/G1=%.4f", series.c_str(),
                  rev.size() > 1 ? rev[1] / rev[0] : NAN)};
}

Verdict Ac9() {
  auto f = [](const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return -s;
  };
  int hits = 0;
  std::string dist;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    OptimizerConfig c;
    c.nf_max = 300;
    c.seed = seed;
    const auto r = Dycors(f, std::vector<double>(5, 0.0), std::vector<double>(5, 10.0), c);
    const double d = std::sqrt(-r.best_value);
    hits += d <= 0.5;
    dist += Fmt("%.3f ", d);
  }
  return {hits >= 9, Fmt("seeds_within_0.5=%d/10 distances= %s", hits, dist.c_str())};
}

Verdict Ac10() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 1);
  int mismatches = 0, increases = 0, runs = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ScenarioSpec s;
    s.num_aps = 40;
    s.num_aliens = 20;
    s.mobility.kind = MobilityGenerator::Kind::kLocality;
    NetworkModel base = SynthScenario(s, 100 + trial);
    // Two well-separated evaluation bands, shuffled over the APs.
    std::vector<User> subs = base.subscribers();
    std::vector<double> rho;
    for (auto& sub : subs) {
      sub.evaluation = u(rng) < 0.5 ? 0.5 + u(rng) : 4.0 + u(rng);
      rho.push_back(sub.evaluation);
    }
    const NetworkModel m(subs, base.aliens(), base.delta(), base.horizon());
    KMeansOptions o;
    o.seed = trial + 1;
    const auto seg = WeightedKMeans(DefaultAttributes(m, 1.0), 2, o);
    const auto split = testing::BestThresholdSplit(rho);
    for (int i = 0; i < m.num_aps(); ++i) {
      for (int j = 0; j < m.num_aps(); ++j) {
        const bool same = (rho[i] <= split.threshold) == (rho[j] <= split.threshold);
        mismatches += (seg.group_of_ap[i] == seg.group_of_ap[j]) != same;
      }
    }
    // Also track Lloyd monotonicity for larger G, where it can actually fail.
    for (int g : {2, 3, 5}) {
      const auto sg = WeightedKMeans(DefaultAttributes(m, u(rng)), g, o);
      for (const auto& h : sg.run_histories) {
        ++runs;
        for (std::size_t k = 1; k < h.size(); ++k) increases += h[k] > h[k - 1] + 1e-12;
      }
    }
  }
  return {mismatches == 0 && increases == 0,
          Fmt("trials=20 pair_mismatches=%d lloyd_runs=%d objective_increases=%d", mismatches,
              runs, increases)};
}

Verdict Ac11() {
  const auto out = RunExperiment(ResolveConfig({{"experiment", "fig5"}}), Workers());
  const Table& t = out.tables.at("fig5.csv");
  double sum = 0;
  int n = 0, missing = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double rho = t.at(r, "rho1"), eta = t.at(r, "eta11");
    if (rho <= 0 || rho >= 1 || eta <= 0 || eta >= 1) continue;
    const double d = std::abs(t.at(r, "approx_alpha1") - t.at(r, "alpha1"));
    if (std::isnan(d)) {
      ++missing;
      continue;
    }
    sum += d;
    ++n;
  }
  const double mean = n ? sum / n : NAN;
  return {missing == 0 && mean <= 0.15,
          Fmt("interior_points=%d mean|approx-exact|=%.4f missing=%d", n, mean, missing)};
}

struct Criterion {
  std::function<Verdict()> run;
  double limit_seconds;  // 0: no runtime bound
};

const std::vector<Criterion>& Criteria() {
  static const std::vector<Criterion> c = {
      {Ac1, 1},    {Ac2, 60},   {Ac3, 0},    {Ac4, 1},  {Ac5, 600}, {Ac6, 0},
      {Ac7, 300},  {Ac8, 1800}, {Ac9, 60},   {Ac10, 0}, {Ac11, 0},
  };
  return c;
}

bool RunOne(int n) {
  const auto& c = Criteria().at(n - 1);
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = c.run();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
  const bool pass = v.pass && in_time;
  std::printf("AC%d %s %s runtime=%.2fs%s\n", n, pass ? "PASS" : "FAIL", v.detail.c_str(), secs,
              in_time ? "" : Fmt(" (limit %.0fs)", c.limit_seconds).c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace
}  // namespace wcn

int main(int argc, char** argv) {
  const int total = static_cast<int>(wcn::Criteria().size());
  std::vector<int> which;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc) {
      which.push_back(std::atoi(argv[++a]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (which.empty()) {
    for (int n = 1; n <= total; ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    if (n < 1 || n > total) {
      std::fprintf(stderr, "no criterion %d\n", n);
      return 2;
    }
    all = wcn::RunOne(n) && all;
  }
  return all ? 0 : 1;
}
