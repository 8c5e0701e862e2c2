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

#ifndef SYMMENT_MEASURES_H
#define SYMMENT_MEASURES_H

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symment/state.h"

namespace symment {

/// The permutation groups acting on the k copies of the subsystem.
enum class GroupKind { Symmetric, Cyclic, Dihedral };

std::string_view group_name(GroupKind group);
GroupKind parse_group(std::string_view name);
constexpr GroupKind kAllGroups[] = {GroupKind::Symmetric, GroupKind::Cyclic, GroupKind::Dihedral};

// Acceptance probabilities. Each takes the reduced-state moments tau_1..tau_k
// (or the spectrum) and returns the probability that k copies of the state
// pass the symmetry test of the group on the chosen subsystem.
//
// All moment-based functions require tau.k_max() >= k and k >= 1. When the
// moments are exact, results slightly below zero (> -1e-12) are clamped and
// anything further out of [0, 1] raises NumericalError. Estimated moments
// pass through unchecked.

/// Sum over cycle types of prod_l tau_l^{m_l} / (l^{m_l} m_l!). Exponential in
/// k; kept as an independent reference for k <= ~25.
double accept_symmetric_partition(const MomentVector &tau, int k);

/// C_k = (1/k) sum_{q=0}^{k-1} C_q tau_{k-q}, C_0 = 1. O(k^2).
double accept_symmetric_recurrence(const MomentVector &tau, int k);

/// Complete homogeneous symmetric polynomial h_k of the eigenvalues, by the
/// prefix dynamic program h^{(i)}_j = h^{(i-1)}_j + lambda_i h^{(i)}_{j-1}.
double accept_symmetric_spectral(const Spectrum &spectrum, int k);

/// (1/k) sum_{q | k} phi(q) tau_q^{k/q}.
double accept_cyclic(const MomentVector &tau, int k);

/// Half the cyclic value plus the two reflection-class terms.
double accept_dihedral(const MomentVector &tau, int k);

/// Dispatch on group. The symmetric group uses the recurrence.
double accept(const MomentVector &tau, GroupKind group, int k);

/// Dispatch on group, symmetric path cross-checked against the spectral form
/// (NumericalError on disagreement beyond 1e-9 relative).
double accept(const Spectrum &spectrum, GroupKind group, int k);

/// ln C computed with the largest eigenvalue factored out, so that values far
/// below the double range (C < 1e-280) stay representable.
double log_accept(const Spectrum &spectrum, GroupKind group, int k);

enum class ScopeKind { Bipartite, Averaged, Gme };

struct MeasureReport {
    GroupKind group = GroupKind::Symmetric;
    int k = 2;
    ScopeKind scope = ScopeKind::Bipartite;
    /// Bipartite: the subset. Gme: the lexicographically smallest maximizing subset.
    std::vector<int> subset;
    /// Averaged: the subset size.
    int subset_size = 0;
    double acceptance = 1;
    double entanglement = 0;
    double bound_max_entanglement = 0;

    std::string scope_label() const;
};

/// E = 1 - C across subset|complement. The bound uses s = min(|S|, n - |S|).
MeasureReport entanglement_bipartite(const PureState &state, GroupKind group, int k, std::span<const int> subset);

/// Same from a precomputed spectrum of a subsystem of `s` sites, dimension d.
MeasureReport entanglement_bipartite(const Spectrum &spectrum, GroupKind group, int k, int d, int s);

/// C averaged over every size-s subset, E = 1 - average.
MeasureReport entanglement_averaged(const PureState &state, GroupKind group, int k, int s);

/// Averaged measure for a permutation-invariant family: one analytic subset.
MeasureReport entanglement_averaged(const FamilyParams &family, GroupKind group, int k, int s);

constexpr int kGmeSiteCap = 12;

/// E = 1 - max over bipartitions of C.
MeasureReport entanglement_gme(const PureState &state, GroupKind group, int k);

/// Largest value E can take for a subsystem of s sites of dimension d: the
/// value at the maximally mixed reduced state.
double max_entanglement_bound(GroupKind group, int k, int d, int s);

/// tr(rho^l) >= r^{1-l} for a rank-r state.
double moment_lower_bound(int rank, int order);

/// lim_{k->inf} C_{k+1}/C_k under the symmetric group: the largest eigenvalue.
double decay_ratio_limit(const FamilyParams &family, int s);

struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;
    int points = 0;
};

/// OLS of ln C_k against k over k_lo <= k <= k_hi, i.e. C_k ~ exp(a k + b).
ExponentFit fit_exponent(std::span<const std::pair<int, double>> series, int k_lo, int k_hi);

/// Plain OLS of y on x, returning slope, intercept and residual sum of squares.
ExponentFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace symment

#endif
