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

#ifndef SYMMENT_CAMPAIGN_H
#define SYMMENT_CAMPAIGN_H

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "symment/cyclic_test.h"
#include "symment/estimators.h"

namespace symment {

/// One Monte Carlo estimate of the subset-averaged C_k.
struct EstimationTask {
    Method method = Method::GBose;
    GroupKind group = GroupKind::Symmetric;
    /// Target number of copies.
    int k = 2;
    /// Highest order the circuits measure; below k only with extrapolation.
    int measure_k = 2;
    int64_t n_tot = 0;
    AllocMode alloc = AllocMode::Table;
    std::optional<int> extrapolate_from;
    bool clip = false;
};

/// A state plus the subsets whose acceptance probabilities are averaged
/// (one subset for a bipartite target, all size-s subsets for an averaged one).
///
/// Copy budgets: the cyclic test serves every subset from the same samples,
/// so it spends n_tot once. The other circuits address one subset at a time
/// and split n_tot evenly, floor(n_tot / #subsets) each.
class EstimationContext {
   public:
    EstimationContext(PureState state, std::vector<std::vector<int>> subsets);

    const PureState &state() const {
        return sim_.state();
    }
    const std::vector<std::vector<int>> &subsets() const {
        return subsets_;
    }
    /// Exact moments of rho_S for subset i up to order k_max.
    MomentVector exact_moments(size_t i, int k_max) const;
    /// Mean exact C_k over the subsets.
    double exact(GroupKind group, int k) const;

    EstimateReport run(const EstimationTask &task, uint64_t seed);

   private:
    std::vector<std::vector<int>> subsets_;
    std::vector<Spectrum> spectra_;
    CyclicTestSimulator sim_;
};

struct ScalingConfig {
    std::vector<Method> methods;
    std::vector<int64_t> budgets;
    GroupKind group = GroupKind::Symmetric;
    int k = 4;
    AllocMode alloc = AllocMode::Table;
    int trials = 100;
    uint64_t seed = 0;
};

struct MethodScaling {
    Method method = Method::GBose;
    ErrorStatistics stats;
};

/// Runs trials x methods x budgets. Trial t builds its state with
/// `make_state(t)` and its subsets with `make_subsets`; the sampling seed of
/// (t, method, budget) is derive_seed(derive_seed(seed, t), method << 16 | budget).
std::vector<MethodScaling> run_scaling(
    const ScalingConfig &config,
    const std::function<PureState(int trial)> &make_state,
    const std::vector<std::vector<int>> &subsets);

/// Seed for trial t, method index m, budget index b.
uint64_t trial_seed(uint64_t base, int trial, int method_index, int budget_index);

}  // namespace symment

#endif
