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

#include "symment/campaign.h"

#include <algorithm>

#include "symment/errors.h"

namespace symment {

namespace {

std::vector<Spectrum> spectra_of(const PureState &state, const std::vector<std::vector<int>> &subsets) {
    if (subsets.empty()) {
        throw InputError("estimation needs at least one subset");
    }
    std::vector<Spectrum> out;
    out.reserve(subsets.size());
    for (const auto &subset : subsets) {
        out.push_back(reduced_spectrum(state, subset));
    }
    return out;
}

}  // namespace

EstimationContext::EstimationContext(PureState state, std::vector<std::vector<int>> subsets)
    : subsets_(std::move(subsets)), spectra_(spectra_of(state, subsets_)), sim_(std::move(state)) {
}

MomentVector EstimationContext::exact_moments(size_t i, int k_max) const {
    return moments(spectra_.at(i), k_max);
}

double EstimationContext::exact(GroupKind group, int k) const {
    double total = 0;
    for (const auto &spectrum : spectra_) {
        total += accept(spectrum, group, k);
    }
    return total / static_cast<double>(spectra_.size());
}

EstimateReport EstimationContext::run(const EstimationTask &task, uint64_t seed) {
    if (task.n_tot <= 0) {
        throw InputError("copy budget must be positive");
    }
    if (task.measure_k < 2) {
        throw InputError("circuits need at least two copies");
    }
    if (task.measure_k < task.k && !task.extrapolate_from.has_value()) {
        throw InputError("targets beyond the measured order need an extrapolation rank");
    }
    Rng rng(seed);
    double c_exact = exact(task.group, task.k);
    auto m = static_cast<int64_t>(subsets_.size());
    // Extrapolation consumes every moment up to the rank, so the circuits
    // follow the symmetric-group plan.
    GroupKind plan_group = task.extrapolate_from.has_value() ? GroupKind::Symmetric : task.group;

    switch (task.method) {
        case Method::GBose: {
            if (task.extrapolate_from.has_value() || task.measure_k != task.k) {
                throw InputError("the symmetry test measures C_k directly and cannot extrapolate");
            }
            AllocationPlan plan = allocate(task.group, Method::GBose, task.k, task.n_tot / m, task.alloc);
            double total = 0;
            for (size_t i = 0; i < subsets_.size(); i++) {
                total += estimate_gbose(accept(spectra_[i], task.group, task.k), plan, rng).c_hat;
            }
            return EstimateReport::make(total / static_cast<double>(m), c_exact, plan.total_copies() * m, seed);
        }
        case Method::Swap:
        case Method::SimMoments: {
            AllocationPlan plan = allocate(plan_group, task.method, task.measure_k, task.n_tot / m, task.alloc);
            int order = std::max(task.k, task.measure_k);
            double total = 0;
            for (size_t i = 0; i < subsets_.size(); i++) {
                total += estimate_via_moments(
                             exact_moments(i, order), task.group, task.k, plan, rng, task.extrapolate_from, task.clip)
                             .c_hat;
            }
            return EstimateReport::make(total / static_cast<double>(m), c_exact, plan.total_copies() * m, seed);
        }
        case Method::Cyclic: {
            AllocationPlan plan = allocate(plan_group, Method::Cyclic, task.measure_k, task.n_tot, task.alloc);
            return estimate_with_cyclic_test(
                sim_, subsets_, task.group, task.k, plan, rng, c_exact, task.extrapolate_from, seed);
        }
    }
    throw InputError("unknown method");
}

uint64_t trial_seed(uint64_t base, int trial, int method_index, int budget_index) {
    return derive_seed(
        derive_seed(base, static_cast<uint64_t>(trial)),
        (static_cast<uint64_t>(method_index) << 16) | static_cast<uint64_t>(budget_index));
}

std::vector<MethodScaling> run_scaling(
    const ScalingConfig &config,
    const std::function<PureState(int trial)> &make_state,
    const std::vector<std::vector<int>> &subsets) {
    if (config.trials < 1) {
        throw InputError("scaling needs at least one trial");
    }
    if (config.methods.empty() || config.budgets.empty()) {
        throw InputError("scaling needs at least one method and one budget");
    }
    std::vector<std::vector<std::pair<int64_t, EstimateReport>>> reports(config.methods.size());
    for (int t = 0; t < config.trials; t++) {
        EstimationContext ctx(make_state(t), subsets);
        for (size_t mi = 0; mi < config.methods.size(); mi++) {
            for (size_t bi = 0; bi < config.budgets.size(); bi++) {
                EstimationTask task;
                task.method = config.methods[mi];
                task.group = config.group;
                task.k = config.k;
                task.measure_k = config.k;
                task.n_tot = config.budgets[bi];
                task.alloc = config.alloc;
                auto seed = trial_seed(config.seed, t, static_cast<int>(config.methods[mi]), static_cast<int>(bi));
                reports[mi].emplace_back(config.budgets[bi], ctx.run(task, seed));
            }
        }
    }
    std::vector<MethodScaling> out;
    for (size_t mi = 0; mi < config.methods.size(); mi++) {
        out.push_back({config.methods[mi], error_statistics(reports[mi])});
    }
    return out;
}

}  // namespace symment
