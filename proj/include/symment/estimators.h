// Copyright 2026 The Symment Authors
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

#ifndef SYMMENT_ESTIMATORS_H
#define SYMMENT_ESTIMATORS_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "symment/measures.h"
#include "symment/rng.h"
#include "symment/state.h"

namespace symment {

/// Circuit families used to estimate an acceptance probability.
///   Swap:       one generalized SWAP test per moment order j (j copies each).
///   GBose:      direct symmetry test, outcome 0 with probability C (k copies).
///   Cyclic:     parallelized cyclic permutation test, one subcircuit per order.
///   SimMoments: k-copy circuit returning one sample of every tau_2..tau_k.
enum class Method { Swap, GBose, Cyclic, SimMoments };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);
constexpr Method kAllMethods[] = {Method::Swap, Method::GBose, Method::Cyclic, Method::SimMoments};

enum class AllocMode { Table, Equal };

/// Executions per subcircuit order j under a copy budget.
struct AllocationPlan {
    Method method = Method::GBose;
    GroupKind group = GroupKind::Symmetric;
    int k = 2;
    int64_t budget = 0;
    std::map<int, int64_t> counts;

    int64_t total_copies() const;
    int64_t executions(int order) const;
};

/// Sensitivity of C_k to tau_l: sup |dC/dtau_l| over the moment box.
double alpha_coefficient(GroupKind group, int l, int k);

/// Error-propagation weight of the order-q cyclic test when moments are
/// recovered by divisor-chain inversion: sum_{2<=l<=k, q|l} c_{l,q}/phi(l).
/// With `simplified`, returns 1/q instead.
double beta_coefficient(int q, int k, bool simplified = false);

/// Proportional allocation for the given circuit family. Weights are
/// normalized by sum_j j w_j, floored, and leftover copies go to the smallest
/// order that still fits. GBose and SimMoments use a single row N_k.
/// Throws InputError when the budget cannot pay for one execution of the
/// largest order.
AllocationPlan allocate(GroupKind group, Method method, int k, int64_t n_tot, AllocMode mode = AllocMode::Table);

/// Worst-case copy requirement for absolute error eps with confidence 1-delta.
struct BudgetReport {
    Method method = Method::GBose;
    GroupKind group = GroupKind::Symmetric;
    int k = 2;
    double eps = 0;
    double delta = 0;
    /// Per-order error targets from the Lagrange split.
    std::map<int, double> order_eps;
    /// Per-order execution counts (ceilings of the per-order bounds).
    std::map<int, int64_t> order_executions;
    /// Continuous closed-form lower bound on the total copies.
    double copies_bound = 0;
    /// sum_j j * order_executions[j].
    int64_t copies = 0;
};

BudgetReport hoeffding_budget(GroupKind group, Method method, int k, double eps, double delta);

/// Copy cost k ln(k) / eps^2 of simultaneous moment estimation (constant 1).
double simultaneous_moments_cost(int k, double eps);

/// Binomial(n, p). Inversion by Bernoulli summation for n < 50; a normal
/// approximation with continuity correction when n > 1e5 and n p (1-p) >= 25;
/// the exact std::binomial_distribution otherwise.
int64_t sample_binomial(int64_t n, double p, Rng &rng);

/// 2 * Binomial(shots, (1+tau)/2)/shots - 1. Never clipped.
double sample_swap_moment(double tau, int64_t shots, Rng &rng);

/// Binomial(shots, c)/shots.
double sample_gbose(double c, int64_t shots, Rng &rng);

/// Recovers e_1..e_r from tau_1..tau_r with Newton's identities and extends
/// the power sums to k_max via tau_m = sum_{i=1}^r (-1)^{i-1} e_i tau_{m-i}.
MomentVector newton_girard_extrapolate(const MomentVector &tau, int r, int k_max);

struct EstimateReport {
    double c_hat = 0;
    double c_exact = 0;
    double abs_err = 0;
    std::optional<double> log_err;
    int64_t copies_used = 0;
    uint64_t seed = 0;

    static EstimateReport make(double c_hat, double c_exact, int64_t copies, uint64_t seed);
    bool operator==(const EstimateReport &other) const = default;
};

/// Draws tau-hat for every order the plan measures (Swap or SimMoments).
/// Entry l-1 holds tau_l; tau_1 = 1; unmeasured orders are NaN.
MomentVector sample_moments(const MomentVector &exact, const AllocationPlan &plan, Rng &rng, bool clip = false);

/// Estimates C_k from sampled moments. `exact` must cover order k. When
/// `extrapolate_from` is r, only tau_2..tau_r are taken from the samples and
/// the rest are extended by Newton-Girard.
EstimateReport estimate_via_moments(
    const MomentVector &exact,
    GroupKind group,
    int k,
    const AllocationPlan &plan,
    Rng &rng,
    std::optional<int> extrapolate_from = std::nullopt,
    bool clip = false,
    uint64_t seed = 0);

/// Estimates C directly with the symmetry test (plan from allocate(..., GBose, ...)).
EstimateReport estimate_gbose(double c_exact, const AllocationPlan &plan, Rng &rng, uint64_t seed = 0);

struct BudgetErrors {
    int64_t n_tot = 0;
    int trials = 0;
    double mean_abs_err = 0;
    double mean_log_err = 0;
    int log_excluded = 0;
};

struct ErrorStatistics {
    std::vector<BudgetErrors> rows;
    /// ln(mean abs err) vs ln(N_tot); absent with fewer than two budgets.
    std::optional<ExponentFit> abs_fit;
    std::optional<ExponentFit> log_fit;
    /// Standard error of each fitted slope.
    double abs_slope_stderr = 0;
    double log_slope_stderr = 0;
};

/// Aggregates reports by budget. Reports with c_hat <= 0 are left out of the
/// log-error mean and counted in log_excluded.
ErrorStatistics error_statistics(std::span<const std::pair<int64_t, EstimateReport>> reports);

}  // namespace symment

#endif
