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

#include "symment/estimators.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "symment/combinatorics.h"
#include "symment/errors.h"

namespace symment {

std::string_view method_name(Method method) {
    switch (method) {
        case Method::Swap:
            return "swap";
        case Method::GBose:
            return "gbose";
        case Method::Cyclic:
            return "cyclic";
        case Method::SimMoments:
            return "simmoments";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    for (Method m : kAllMethods) {
        if (method_name(m) == name) {
            return m;
        }
    }
    throw InputError("unknown method '" + std::string(name) + "'");
}

int64_t AllocationPlan::total_copies() const {
    int64_t total = 0;
    for (const auto &[order, n] : counts) {
        total += order * n;
    }
    return total;
}

int64_t AllocationPlan::executions(int order) const {
    auto it = counts.find(order);
    return it == counts.end() ? 0 : it->second;
}

namespace {

bool divides(int q, int k) {
    return k % q == 0;
}

void require_order(int l, int k) {
    if (k < 2 || l < 2 || l > k) {
        throw InputError("order l must satisfy 2 <= l <= k (got l=" + std::to_string(l) + ", k=" + std::to_string(k) + ")");
    }
}

/// Relative weights w_j before normalization, keyed by order.
std::map<int, long double> allocation_weights(GroupKind group, Method method, int k, AllocMode mode) {
    std::map<int, long double> w;
    switch (method) {
        case Method::GBose:
        case Method::SimMoments:
            w[k] = 1;
            return w;
        case Method::Swap:
            for (int l = 2; l <= k; l++) {
                double a = alpha_coefficient(group, l, k);
                if (a > 0) {
                    w[l] = std::pow(static_cast<long double>(a) / l, 2.0L / 3.0L);
                }
            }
            break;
        case Method::Cyclic:
            switch (group) {
                case GroupKind::Symmetric:
                    for (int l = 2; l <= k; l++) {
                        w[l] = std::pow(static_cast<long double>(l), -4.0L / 3.0L);
                    }
                    break;
                case GroupKind::Cyclic:
                    w[k] = 1;
                    break;
                case GroupKind::Dihedral:
                    if (k == 2) {
                        w[2] = 1;
                    } else {
                        w[2] = std::pow(static_cast<long double>(k) * (k - 1) / 2.0L, 2.0L / 3.0L);
                        w[k] = 1;
                    }
                    break;
            }
            break;
    }
    if (mode == AllocMode::Equal) {
        for (auto &[order, weight] : w) {
            weight = 1;
        }
    }
    return w;
}

}  // namespace

double alpha_coefficient(GroupKind group, int l, int k) {
    require_order(l, k);
    switch (group) {
        case GroupKind::Symmetric:
            return 1.0 / l;
        case GroupKind::Cyclic:
            return divides(l, k) ? static_cast<double>(totient(l)) / l : 0.0;
        case GroupKind::Dihedral:
            return (divides(l, k) ? static_cast<double>(totient(l)) / (2.0 * l) : 0.0) + (l == 2 ? (k - 1) / 4.0 : 0.0);
    }
    throw InputError("unknown group");
}

double beta_coefficient(int q, int k, bool simplified) {
    require_order(q, k);
    if (simplified) {
        return 1.0 / q;
    }
    double beta = 0;
    for (int l = q; l <= k; l += q) {
        beta += static_cast<double>(divisor_chain_count(l, q)) / static_cast<double>(totient(l));
    }
    return beta;
}

AllocationPlan allocate(GroupKind group, Method method, int k, int64_t n_tot, AllocMode mode) {
    if (k < 2) {
        throw InputError("allocation needs k >= 2");
    }
    auto weights = allocation_weights(group, method, k, mode);
    int largest = weights.rbegin()->first;
    int smallest = weights.begin()->first;
    if (n_tot < largest) {
        throw InputError(
            "budget of " + std::to_string(n_tot) + " copies cannot pay for one " + std::to_string(largest) +
            "-copy execution");
    }
    long double norm = 0;
    for (const auto &[order, w] : weights) {
        norm += order * w;
    }
    AllocationPlan plan;
    plan.method = method;
    plan.group = group;
    plan.k = k;
    plan.budget = n_tot;
    for (const auto &[order, w] : weights) {
        plan.counts[order] = static_cast<int64_t>(std::floor(static_cast<long double>(n_tot) * w / norm));
    }
    int64_t leftover = n_tot - plan.total_copies();
    if (leftover >= smallest) {
        int64_t extra = leftover / smallest;
        plan.counts[smallest] += extra;
    }
    return plan;
}

BudgetReport hoeffding_budget(GroupKind group, Method method, int k, double eps, double delta) {
    if (k < 2) {
        throw InputError("budget planning needs k >= 2");
    }
    if (!(eps > 0 && eps < 1)) {
        throw InputError("eps must lie in (0, 1)");
    }
    if (!(delta > 0 && delta < 1)) {
        throw InputError("delta must lie in (0, 1)");
    }
    BudgetReport r;
    r.method = method;
    r.group = group;
    r.k = k;
    r.eps = eps;
    r.delta = delta;

    // One Bernoulli estimate of a probability to +-e: N >= log(2/delta') / (2 e^2).
    auto single_test = [&](int order, double order_eps, double log_term) {
        r.order_eps[order] = order_eps;
        r.order_executions[order] = static_cast<int64_t>(std::ceil(log_term / (2 * order_eps * order_eps)));
    };

    // Lagrange split of sum_l w_l e_l = eps minimizing sum_l l / e_l^2:
    // e_l = (2 l / (lambda w_l))^{1/3}, lambda = 2 (sum_l w_l^{2/3} l^{1/3} / eps)^3.
    auto lagrange = [&](const std::map<int, double> &w, double per_order_factor) {
        double sum = 0;
        for (const auto &[l, wl] : w) {
            sum += std::cbrt(l) * std::pow(wl, 2.0 / 3.0);
        }
        double lambda = 2 * std::pow(sum / eps, 3);
        double log_term = std::log(2.0 * (k - 1) / delta);
        for (const auto &[l, wl] : w) {
            double el = std::cbrt(2.0 * l / (lambda * wl));
            r.order_eps[l] = el;
            r.order_executions[l] = static_cast<int64_t>(std::ceil(per_order_factor * log_term / (el * el)));
        }
        r.copies_bound = per_order_factor / (eps * eps) * log_term * std::pow(sum, 3);
    };

    switch (method) {
        case Method::GBose:
            single_test(k, eps, std::log(2 / delta));
            r.copies_bound = k * std::log(2 / delta) / (2 * eps * eps);
            break;
        case Method::SimMoments: {
            double cost = simultaneous_moments_cost(k, eps);
            r.copies_bound = cost;
            r.order_eps[k] = eps;
            r.order_executions[k] = static_cast<int64_t>(std::ceil(cost / k));
            break;
        }
        case Method::Swap: {
            // tau-hat = 2 p-hat - 1 doubles the error: N_l >= (2 / e_l^2) log(2(k-1)/delta).
            std::map<int, double> w;
            for (int l = 2; l <= k; l++) {
                double a = alpha_coefficient(group, l, k);
                if (a > 0) {
                    w[l] = a;
                }
            }
            lagrange(w, 2.0);
            break;
        }
        case Method::Cyclic:
            switch (group) {
                case GroupKind::Symmetric: {
                    std::map<int, double> w;
                    for (int l = 2; l <= k; l++) {
                        w[l] = beta_coefficient(l, k);
                    }
                    lagrange(w, 0.5);
                    break;
                }
                case GroupKind::Cyclic:
                    single_test(k, eps, std::log(2 / delta));
                    r.copies_bound = k * std::log(2 / delta) / (2 * eps * eps);
                    break;
                case GroupKind::Dihedral: {
                    // eps = eps_k / 2 + (k-1) eps_2 / 2 with the optimal split.
                    double denom = std::cbrt(k) + std::cbrt(2.0) * std::pow(k - 1.0, 2.0 / 3.0);
                    double eps_k = 2 * std::cbrt(k) * eps / denom;
                    double eps_2 = std::pow(k - 1.0, -1.0 / 3.0) * std::pow(2.0, 4.0 / 3.0) * eps / denom;
                    double log_term = std::log(4 / delta);
                    if (k == 2) {
                        // Both terms come from the same 2-copy test.
                        single_test(2, eps, std::log(2 / delta));
                        r.copies_bound = 2 * std::log(2 / delta) / (2 * eps * eps);
                    } else {
                        single_test(k, eps_k, log_term);
                        single_test(2, eps_2, log_term);
                        r.copies_bound = log_term * denom * denom / (4 * eps * eps) *
                                         (std::cbrt(k) / 2 + std::pow(k - 1.0, 2.0 / 3.0) / std::pow(2.0, 2.0 / 3.0));
                    }
                    break;
                }
            }
            break;
    }
    for (const auto &[order, n] : r.order_executions) {
        r.copies += order * n;
    }
    return r;
}

double simultaneous_moments_cost(int k, double eps) {
    if (k < 1) {
        throw InputError("k must be at least 1");
    }
    if (!(eps > 0)) {
        throw InputError("eps must be positive");
    }
    return k * std::log(static_cast<double>(k)) / (eps * eps);
}

int64_t sample_binomial(int64_t n, double p, Rng &rng) {
    if (n < 0) {
        throw InputError("binomial trial count must be nonnegative");
    }
    if (!(p >= -1e-12 && p <= 1 + 1e-12)) {
        throw InputError("binomial probability " + std::to_string(p) + " outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    if (n == 0 || p == 0) {
        return 0;
    }
    if (p == 1) {
        return n;
    }
    if (n < 50) {
        int64_t hits = 0;
        for (int64_t i = 0; i < n; i++) {
            hits += uniform01(rng) < p;
        }
        return hits;
    }
    double var = static_cast<double>(n) * p * (1 - p);
    if (n > 100000 && var >= 25) {
        std::normal_distribution<double> normal(0.0, 1.0);
        double x = std::floor(static_cast<double>(n) * p + std::sqrt(var) * normal(rng) + 0.5);
        return static_cast<int64_t>(std::clamp(x, 0.0, static_cast<double>(n)));
    }
    std::binomial_distribution<int64_t> binom(n, p);
    return binom(rng);
}

double sample_swap_moment(double tau, int64_t shots, Rng &rng) {
    if (shots < 1) {
        throw InputError("SWAP test needs at least one shot");
    }
    if (!(tau >= -1e-12 && tau <= 1 + 1e-12)) {
        throw InputError("moment " + std::to_string(tau) + " outside [0, 1]");
    }
    int64_t zeros = sample_binomial(shots, (1 + tau) / 2, rng);
    return 2.0 * static_cast<double>(zeros) / static_cast<double>(shots) - 1.0;
}

double sample_gbose(double c, int64_t shots, Rng &rng) {
    if (shots < 1) {
        throw InputError("symmetry test needs at least one shot");
    }
    return static_cast<double>(sample_binomial(shots, c, rng)) / static_cast<double>(shots);
}

MomentVector newton_girard_extrapolate(const MomentVector &tau, int r, int k_max) {
    if (r < 1) {
        throw InputError("extrapolation rank must be at least 1");
    }
    if (r > tau.k_max()) {
        throw InputError(
            "extrapolation from rank " + std::to_string(r) + " needs moments up to order " + std::to_string(r));
    }
    if (k_max < 1) {
        throw InputError("k_max must be at least 1");
    }
    std::vector<double> e(r + 1, 0.0);
    e[0] = 1;
    for (int m = 1; m <= r; m++) {
        double acc = 0;
        for (int i = 1; i <= m; i++) {
            double term = e[m - i] * tau.at(i);
            acc += (i % 2 == 1) ? term : -term;
        }
        e[m] = acc / m;
    }
    MomentVector out;
    out.estimated = tau.estimated;
    out.tau.assign(tau.tau.begin(), tau.tau.begin() + std::min(r, k_max));
    for (int m = r + 1; m <= k_max; m++) {
        double acc = 0;
        for (int i = 1; i <= r; i++) {
            double term = e[i] * out.tau[m - i - 1];
            acc += (i % 2 == 1) ? term : -term;
        }
        out.tau.push_back(acc);
    }
    return out;
}

EstimateReport EstimateReport::make(double c_hat, double c_exact, int64_t copies, uint64_t seed) {
    EstimateReport r;
    r.c_hat = c_hat;
    r.c_exact = c_exact;
    r.abs_err = std::abs(c_hat - c_exact);
    if (c_hat > 0 && c_exact > 0) {
        r.log_err = std::abs(std::log(c_hat) - std::log(c_exact));
    }
    r.copies_used = copies;
    r.seed = seed;
    return r;
}

MomentVector sample_moments(const MomentVector &exact, const AllocationPlan &plan, Rng &rng, bool clip) {
    if (plan.method != Method::Swap && plan.method != Method::SimMoments) {
        throw InputError("moment sampling needs a swap or simmoments plan");
    }
    if (plan.counts.empty() || plan.total_copies() == 0) {
        throw InputError("allocation plan has no executions");
    }
    int top = plan.counts.rbegin()->first;
    MomentVector out;
    out.estimated = true;
    out.tau.assign(top, std::numeric_limits<double>::quiet_NaN());
    out.tau[0] = 1;
    auto draw = [&](int order, int64_t shots) {
        if (shots < 1) {
            throw InputError("plan allocates no executions to moment order " + std::to_string(order));
        }
        double v = sample_swap_moment(exact.at(order), shots, rng);
        out.tau[order - 1] = clip ? std::clamp(v, 0.0, 1.0) : v;
    };
    if (plan.method == Method::SimMoments) {
        int64_t shots = plan.executions(top);
        for (int l = 2; l <= top; l++) {
            draw(l, shots);
        }
    } else {
        for (const auto &[order, shots] : plan.counts) {
            draw(order, shots);
        }
    }
    return out;
}

namespace {

std::vector<int> required_orders(GroupKind group, int k) {
    std::vector<int> out;
    switch (group) {
        case GroupKind::Symmetric:
            for (int l = 2; l <= k; l++) {
                out.push_back(l);
            }
            break;
        case GroupKind::Cyclic:
        case GroupKind::Dihedral:
            for (uint64_t q : divisors(k)) {
                if (q >= 2) {
                    out.push_back(static_cast<int>(q));
                }
            }
            if (group == GroupKind::Dihedral && k % 2 == 1) {
                out.insert(out.begin(), 2);
            }
            break;
    }
    return out;
}

}  // namespace

EstimateReport estimate_via_moments(
    const MomentVector &exact,
    GroupKind group,
    int k,
    const AllocationPlan &plan,
    Rng &rng,
    std::optional<int> extrapolate_from,
    bool clip,
    uint64_t seed) {
    if (exact.k_max() < k) {
        throw InputError("exact moments must cover order k");
    }
    double c_exact = accept(exact, group, k);
    MomentVector sampled = sample_moments(exact, plan, rng, clip);
    MomentVector est;
    if (extrapolate_from.has_value()) {
        int r = *extrapolate_from;
        if (r < 1 || r > sampled.k_max()) {
            throw InputError("plan does not measure every moment up to the extrapolation rank");
        }
        MomentVector head;
        head.estimated = true;
        head.tau.assign(sampled.tau.begin(), sampled.tau.begin() + r);
        for (double v : head.tau) {
            if (std::isnan(v)) {
                throw InputError("plan does not measure every moment up to the extrapolation rank");
            }
        }
        est = newton_girard_extrapolate(head, r, std::max(k, r));
    } else {
        if (sampled.k_max() < k) {
            throw InputError("plan does not reach order k; pass an extrapolation rank");
        }
        for (int l : required_orders(group, k)) {
            if (std::isnan(sampled.at(l))) {
                throw InputError("plan does not measure moment order " + std::to_string(l));
            }
        }
        est = sampled;
    }
    est.estimated = true;
    return EstimateReport::make(accept(est, group, k), c_exact, plan.total_copies(), seed);
}

EstimateReport estimate_gbose(double c_exact, const AllocationPlan &plan, Rng &rng, uint64_t seed) {
    if (plan.method != Method::GBose) {
        throw InputError("estimate_gbose needs a gbose plan");
    }
    int64_t shots = plan.executions(plan.k);
    if (shots < 1) {
        throw InputError("allocation plan has no executions");
    }
    return EstimateReport::make(sample_gbose(c_exact, shots, rng), c_exact, plan.total_copies(), seed);
}

ErrorStatistics error_statistics(std::span<const std::pair<int64_t, EstimateReport>> reports) {
    std::map<int64_t, BudgetErrors> by_budget;
    std::map<int64_t, int> log_counts;
    for (const auto &[n_tot, r] : reports) {
        auto &row = by_budget[n_tot];
        row.n_tot = n_tot;
        row.trials++;
        row.mean_abs_err += r.abs_err;
        if (r.log_err.has_value()) {
            row.mean_log_err += *r.log_err;
            log_counts[n_tot]++;
        } else {
            row.log_excluded++;
        }
    }
    ErrorStatistics stats;
    std::vector<double> x;
    std::vector<double> y_abs;
    std::vector<double> x_log;
    std::vector<double> y_log;
    for (auto &[n_tot, row] : by_budget) {
        row.mean_abs_err /= row.trials;
        int lc = log_counts[n_tot];
        row.mean_log_err = lc > 0 ? row.mean_log_err / lc : std::numeric_limits<double>::quiet_NaN();
        stats.rows.push_back(row);
        if (row.mean_abs_err > 0) {
            x.push_back(std::log(static_cast<double>(n_tot)));
            y_abs.push_back(std::log(row.mean_abs_err));
        }
        if (lc > 0 && row.mean_log_err > 0) {
            x_log.push_back(std::log(static_cast<double>(n_tot)));
            y_log.push_back(std::log(row.mean_log_err));
        }
    }
    auto stderr_of = [](const ExponentFit &fit, std::span<const double> xs) {
        if (xs.size() < 3) {
            return 0.0;
        }
        double mean = 0;
        for (double v : xs) {
            mean += v;
        }
        mean /= static_cast<double>(xs.size());
        double sxx = 0;
        for (double v : xs) {
            sxx += (v - mean) * (v - mean);
        }
        return std::sqrt(fit.residual / static_cast<double>(xs.size() - 2) / sxx);
    };
    if (x.size() >= 2) {
        stats.abs_fit = least_squares(x, y_abs);
        stats.abs_slope_stderr = stderr_of(*stats.abs_fit, x);
    }
    if (x_log.size() >= 2) {
        stats.log_fit = least_squares(x_log, y_log);
        stats.log_slope_stderr = stderr_of(*stats.log_fit, x_log);
    }
    return stats;
}

}  // namespace symment
