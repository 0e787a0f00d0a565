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

#include "wcn/approx.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "wcn/errors.h"
#include "wcn/membership_game.h"
#include "wcn/pricing.h"
#include "wcn/throughput.h"

namespace wcn {
namespace {

// Jacobi sweeps tried before falling back to bisection on the scalar load.
constexpr int kJacobiSweeps = 200;

double PayerResponse(double rho, double price, double rate) {
  if (price <= 0.0) return 1.0;
  return std::clamp(rho / price - 1.0 / rate, 0.0, 1.0);
}

struct ApSolution {
  double load = 0.0;
  double rate = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool bisection = false;
};

// Expected load produced by everyone answering `rate` at `ap`.
double LoadFor(const NetworkModel& model, int ap, double price,
               const MixedProfile& alpha, double rate) {
  double n = 0.0;
  for (int u = 0; u < model.num_users(); ++u) {
    if (u == ap) continue;
    const double eta = model.eta(u, ap);
    if (eta == 0.0) continue;
    const double s = PayerResponse(model.evaluation(u), price, rate);
    n += eta * (model.is_alien(u) ? s : (1.0 - alpha[u]) + alpha[u] * s);
  }
  return n;
}

ApSolution SolveAp(const NetworkModel& model, int ap, double price,
                   const MixedProfile& alpha,
                   const ApproxAccessOptions& options) {
  const ThroughputParams& params = model.throughput();
  auto rate_of = [&](double n) { return AverageRate(std::max(1.0, n), params); };
  ApSolution out;

  // Start from payers off, Linus on.
  double n = 0.0;
  for (int u = 0; u < model.num_aps(); ++u) {
    if (u != ap) n += model.eta(u, ap) * (1.0 - alpha[u]);
  }
  const int sweeps = std::min(options.max_iter, kJacobiSweeps);
  // Residual is tracked on payer access times, as in the exact solver.
  std::vector<double> sigma(model.num_users(), 0.0), next(model.num_users());
  for (int it = 1; it <= sweeps; ++it) {
    const double r = rate_of(n);
    double residual = 0.0, load = 0.0;
    for (int u = 0; u < model.num_users(); ++u) {
      if (u == ap || model.eta(u, ap) == 0.0) continue;
      next[u] = PayerResponse(model.evaluation(u), price, r);
      residual = std::max(residual, std::abs(next[u] - sigma[u]));
      sigma[u] = next[u];
      const double eff = model.is_alien(u)
                             ? sigma[u]
                             : (1.0 - alpha[u]) + alpha[u] * sigma[u];
      load += model.eta(u, ap) * eff;
    }
    n = load;
    out.iterations = it;
    out.residual = residual;
    if (residual <= options.tol) {
      out.load = n;
      out.rate = rate_of(n);
      return out;
    }
  }

  // The load map is nonincreasing in n, so L(n) - n has a single root.
  double lo = 0.0, hi = 0.0;
  for (int u = 0; u < model.num_users(); ++u) {
    if (u != ap) hi += model.eta(u, ap);
  }
  for (int it = 0; it < 200 && hi - lo > options.tol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (LoadFor(model, ap, price, alpha, rate_of(mid)) > mid) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.load = 0.5 * (lo + hi);
  out.rate = rate_of(out.load);
  out.residual = hi - lo;
  out.bisection = true;
  if (out.residual > options.tol * std::max(1.0, hi)) {
    throw NonConvergenceError("approximate access game did not converge",
                              {out.load}, out.residual, out.iterations);
  }
  return out;
}

void CheckInputs(const NetworkModel& model, const std::vector<double>& prices,
                 const MixedProfile& alpha) {
  if (static_cast<int>(prices.size()) != model.num_aps()) {
    throw std::invalid_argument("price vector size does not match AP count");
  }
  if (static_cast<int>(alpha.size()) != model.num_aps()) {
    throw std::invalid_argument("alpha size does not match subscriber count");
  }
  for (double p : prices) {
    if (!(p >= 0)) throw std::invalid_argument("prices must be nonnegative");
  }
  for (double a : alpha) {
    if (!(a >= 0 && a <= 1)) throw std::invalid_argument("alpha outside [0,1]");
  }
}

}  // namespace

double ApproxRate(const NetworkModel& model, int ap,
                  const std::vector<double>& sigma_eff) {
  double n = 0.0;
  for (int u = 0; u < model.num_users(); ++u) {
    if (u != ap) n += model.eta(u, ap) * sigma_eff[u];
  }
  return AverageRate(std::max(1.0, n), model.throughput());
}

std::vector<double> EffectiveSigma(const NetworkModel& model,
                                   const MixedProfile& alpha,
                                   const std::vector<double>& paying_sigma) {
  std::vector<double> eff(model.num_users());
  for (int u = 0; u < model.num_users(); ++u) {
    eff[u] = model.is_alien(u)
                 ? paying_sigma[u]
                 : (1.0 - alpha[u]) + alpha[u] * paying_sigma[u];
  }
  return eff;
}

ApproxState SolveApproxAccess(const NetworkModel& model,
                              const std::vector<double>& prices,
                              const MixedProfile& alpha,
                              const ApproxAccessOptions& options) {
  if (!(options.tol > 0)) throw std::invalid_argument("tol must be positive");
  CheckInputs(model, prices, alpha);
  const int k = model.num_aps();
  std::vector<ApSolution> sol(k);
  auto work = [&](int begin, int end) {
    for (int ap = begin; ap < end; ++ap) {
      sol[ap] = SolveAp(model, ap, prices[ap], alpha, options);
    }
  };
  const int workers = std::clamp(options.workers, 1, k);
  if (workers == 1) {
    work(0, k);
  } else {
    // Exceptions inside threads are captured and rethrown on the caller.
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      const int chunk = (k + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            work(w * chunk, std::min(k, (w + 1) * chunk));
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ApproxState s;
  s.alpha = alpha;
  s.loads.resize(k);
  s.rates.resize(k);
  s.sigma_b.assign(model.num_users(), std::vector<double>(k, 0.0));
  for (int ap = 0; ap < k; ++ap) {
    s.loads[ap] = sol[ap].load;
    s.rates[ap] = sol[ap].rate;
    s.iterations = std::max(s.iterations, sol[ap].iterations);
    s.residual = std::max(s.residual, sol[ap].residual);
    s.used_bisection = s.used_bisection || sol[ap].bisection;
    for (int u = 0; u < model.num_users(); ++u) {
      if (u == ap) continue;
      s.sigma_b[u][ap] =
          PayerResponse(model.evaluation(u), prices[ap], sol[ap].rate);
    }
  }
  return s;
}

PerceivedPayoffs ComputePerceivedPayoffs(const NetworkModel& model,
                                         const std::vector<double>& prices,
                                         const ApproxState& state) {
  const int k = model.num_aps();
  const double t = model.horizon();
  PerceivedPayoffs out;
  out.linus.assign(k, 0.0);
  out.bill.assign(k, 0.0);
  out.revenue.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    const double rho = model.evaluation(i);
    const double home = model.eta(i, i) * rho * std::log1p(model.home_rate(i));
    double linus = home, bill = home;
    for (int ap = 0; ap < k; ++ap) {
      if (ap == i) continue;
      const double eta = model.eta(i, ap);
      if (eta == 0.0) continue;
      const double r = state.rates[ap];
      const double s = state.sigma_b[i][ap];
      linus += eta * rho * std::log1p(r);
      bill += eta * (rho * std::log1p(r * s) - prices[ap] * s);
    }
    double paid = 0.0;
    for (int u = 0; u < model.num_users(); ++u) {
      if (u == i) continue;
      const double eta = model.eta(u, i);
      if (eta == 0.0) continue;
      const double weight = model.is_alien(u) ? 1.0 : state.alpha[u];
      paid += eta * weight * state.sigma_b[u][i];
    }
    out.revenue[i] = t * model.delta() * prices[i] * paid;
    out.linus[i] = t * linus;
    out.bill[i] = out.revenue[i] + t * bill;
  }
  return out;
}

ApproxEquilibrium SolveApproxMembership(const NetworkModel& model,
                                        const std::vector<double>& prices,
                                        const ApproxMembershipOptions& options) {
  if (!(options.gamma > 0) || !(options.eps > 0)) {
    throw std::invalid_argument("gamma and eps must be positive");
  }
  if (!(options.damping > 0 && options.damping <= 1)) {
    throw std::invalid_argument("damping must lie in (0, 1]");
  }
  const int k = model.num_aps();
  ApproxEquilibrium eq;
  MixedProfile alpha =
      options.alpha0.empty() ? MixedProfile(k, 0.5) : options.alpha0;
  for (int n = 0; n < options.max_iter; ++n) {
    const double gamma = options.decreasing_gamma
                             ? options.gamma / std::log(n + 2.0)
                             : options.gamma;
    const ApproxState state =
        SolveApproxAccess(model, prices, alpha, options.access);
    const PerceivedPayoffs v = ComputePerceivedPayoffs(model, prices, state);
    double residual = 0.0;
    for (int i = 0; i < k; ++i) {
      const double target = Logit(v.bill[i], v.linus[i], gamma);
      const double next =
          (1 - options.damping) * alpha[i] + options.damping * target;
      residual = std::max(residual, std::abs(next - alpha[i]));
      alpha[i] = next;
    }
    eq.iterations = n + 1;
    eq.residual = residual;
    eq.gamma = gamma;
    eq.trace.push_back(residual);
    if (residual <= options.eps) {
      eq.state = SolveApproxAccess(model, prices, alpha, options.access);
      return eq;
    }
  }
  throw NonConvergenceError("approximate membership game did not converge",
                            alpha, eq.residual, eq.iterations, eq.trace);
}

ApproxRevenueReport ApproxRevenueForState(const NetworkModel& model,
                                          const std::vector<double>& prices,
                                          const ApproxState& state) {
  const int k = model.num_aps();
  const double t = model.horizon();
  ApproxRevenueReport r;
  r.charged_usage.assign(k, 0.0);
  r.per_ap_revenue.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    double usage = 0.0;
    for (int u = 0; u < model.num_users(); ++u) {
      if (u == i) continue;
      const double eta = model.eta(u, i);
      if (eta == 0.0) continue;
      const double weight = model.is_alien(u) ? 1.0 : state.alpha[u];
      usage += eta * weight * state.sigma_b[u][i];
    }
    // Price enters once, in the revenue line below.
    r.charged_usage[i] = t * usage;
    r.per_ap_revenue[i] =
        (1.0 - model.delta() * state.alpha[i]) * prices[i] * r.charged_usage[i];
    r.total += r.per_ap_revenue[i];
  }
  return r;
}

ApproxRevenueReport EvaluateApproxRevenue(
    const NetworkModel& model, const std::vector<double>& prices,
    const ApproxMembershipOptions& options) {
  ApproxEquilibrium eq = SolveApproxMembership(model, prices, options);
  ApproxRevenueReport r = ApproxRevenueForState(model, prices, eq.state);
  r.equilibrium = std::move(eq);
  return r;
}

namespace {

ApproxRevenueReport RobustApproxRevenue(const NetworkModel& model,
                                        const std::vector<double>& prices,
                                        const ApproxMembershipOptions& options,
                                        std::atomic<int>& failures) {
  try {
    return EvaluateApproxRevenue(model, prices, options);
  } catch (const NonConvergenceError& e) {
    ++failures;
    const ApproxState state =
        SolveApproxAccess(model, prices, e.last_iterate(), options.access);
    ApproxRevenueReport r = ApproxRevenueForState(model, prices, state);
    r.equilibrium.state = state;
    r.equilibrium.iterations = e.iterations();
    r.equilibrium.residual = e.residual();
    r.converged = false;
    return r;
  }
}

}  // namespace

ApproxPricingResult OptimizePartialApprox(
    const NetworkModel& model, const Segmentation& segmentation,
    const OptimizerConfig& config, const ApproxMembershipOptions& options) {
  if (static_cast<int>(segmentation.group_of_ap.size()) != model.num_aps()) {
    throw std::invalid_argument("segmentation does not cover every AP");
  }
  const double upper = PriceUpperBound(model);
  const int groups = segmentation.num_groups;
  std::atomic<int> failures{0};
  auto objective = [&](const std::vector<double>& gp) {
    return RobustApproxRevenue(
               model, ExpandGroupPrices(gp, segmentation.group_of_ap), options,
               failures)
        .total;
  };
  ApproxPricingResult out;
  out.search = Dycors(objective, std::vector<double>(groups, 0.0),
                      std::vector<double>(groups, upper), config);
  out.group_prices = out.search.best_x;
  out.prices = ExpandGroupPrices(out.group_prices, segmentation.group_of_ap);
  out.report = RobustApproxRevenue(model, out.prices, options, failures);
  out.nonconverged_evaluations = failures.load();
  return out;
}

}  // namespace wcn
