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

#include "symment/measures.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "symment/combinatorics.h"
#include "symment/errors.h"

namespace symment {

std::string_view group_name(GroupKind group) {
    switch (group) {
        case GroupKind::Symmetric:
            return "symmetric";
        case GroupKind::Cyclic:
            return "cyclic";
        case GroupKind::Dihedral:
            return "dihedral";
    }
    return "?";
}

GroupKind parse_group(std::string_view name) {
    if (name == "symmetric" || name == "S") {
        return GroupKind::Symmetric;
    }
    if (name == "cyclic" || name == "C") {
        return GroupKind::Cyclic;
    }
    if (name == "dihedral" || name == "D") {
        return GroupKind::Dihedral;
    }
    throw InputError("unknown group '" + std::string(name) + "'");
}

namespace {

constexpr double kClampTolerance = 1e-12;

void require_moments(const MomentVector &tau, int k) {
    if (k < 1) {
        throw InputError("number of copies k must be at least 1");
    }
    if (tau.k_max() < k) {
        throw InputError(
            "need moments up to order " + std::to_string(k) + ", have " + std::to_string(tau.k_max()));
    }
}

double checked(double c, bool estimated) {
    if (estimated) {
        return c;
    }
    if (!std::isfinite(c) || c < -kClampTolerance || c > 1 + kClampTolerance) {
        std::stringstream ss;
        ss << "acceptance probability " << c << " outside [0, 1]";
        throw NumericalError(ss.str());
    }
    return std::max(c, 0.0);
}

double log_sum_exp(std::span<const double> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (double t : terms) {
        top = std::max(top, t);
    }
    if (!std::isfinite(top)) {
        return top;
    }
    double acc = 0;
    for (double t : terms) {
        acc += std::exp(t - top);
    }
    return top + std::log(acc);
}

int reflection_exponent_low(int k) {
    return (k - 2 + k % 2) / 2;
}

int reflection_exponent_high(int k) {
    return (k - k % 2) / 2;
}

}  // namespace

double accept_symmetric_partition(const MomentVector &tau, int k) {
    require_moments(tau, k);
    double total = 0;
    for_each_partition(k, [&](const Partition &p) {
        double term = symmetric_class_weight(p);
        for (const auto &[length, count] : p.multiplicities) {
            term *= std::pow(tau.at(length), count);
        }
        total += term;
    });
    return checked(total, tau.estimated);
}

double accept_symmetric_recurrence(const MomentVector &tau, int k) {
    if (k == 0) {
        return 1;
    }
    require_moments(tau, k);
    std::vector<double> c(k + 1);
    c[0] = 1;
    for (int m = 1; m <= k; m++) {
        double acc = 0;
        for (int q = 0; q < m; q++) {
            acc += c[q] * tau.at(m - q);
        }
        c[m] = acc / m;
    }
    return checked(c[k], tau.estimated);
}

double accept_symmetric_spectral(const Spectrum &spectrum, int k) {
    if (k < 0) {
        throw InputError("number of copies k must be nonnegative");
    }
    std::vector<double> h(k + 1, 0.0);
    h[0] = 1;
    for (double lambda : spectrum.values()) {
        for (int j = 1; j <= k; j++) {
            h[j] += lambda * h[j - 1];
        }
    }
    return checked(h[k], false);
}

double accept_cyclic(const MomentVector &tau, int k) {
    require_moments(tau, k);
    double total = 0;
    for (uint64_t q : divisors(k)) {
        total += static_cast<double>(totient(q)) * std::pow(tau.at(static_cast<int>(q)), static_cast<double>(k / q));
    }
    return checked(total / k, tau.estimated);
}

double accept_dihedral(const MomentVector &tau, int k) {
    if (k < 2) {
        throw InputError("the dihedral test needs k >= 2");
    }
    require_moments(tau, k);
    MomentVector raw = tau;
    raw.estimated = true;
    double cyclic = accept_cyclic(raw, k);
    double tau2 = tau.at(2);
    double c = 0.5 * cyclic +
               0.25 * (std::pow(tau2, reflection_exponent_low(k)) + std::pow(tau2, reflection_exponent_high(k)));
    return checked(c, tau.estimated);
}

double accept(const MomentVector &tau, GroupKind group, int k) {
    switch (group) {
        case GroupKind::Symmetric:
            return accept_symmetric_recurrence(tau, k);
        case GroupKind::Cyclic:
            return accept_cyclic(tau, k);
        case GroupKind::Dihedral:
            return accept_dihedral(tau, k);
    }
    throw InputError("unknown group");
}

double accept(const Spectrum &spectrum, GroupKind group, int k) {
    if (k < 1) {
        throw InputError("number of copies k must be at least 1");
    }
    MomentVector tau = moments(spectrum, k);
    double c = accept(tau, group, k);
    if (group == GroupKind::Symmetric) {
        double spectral = accept_symmetric_spectral(spectrum, k);
        if (std::abs(c - spectral) > 1e-9 * std::max(c, spectral) + 1e-300) {
            std::stringstream ss;
            ss << "symmetric recurrence " << c << " disagrees with spectral form " << spectral;
            throw NumericalError(ss.str());
        }
    }
    return c;
}

double log_accept(const Spectrum &spectrum, GroupKind group, int k) {
    if (k < 1) {
        throw InputError("number of copies k must be at least 1");
    }
    double top = spectrum.max();
    double log_top = std::log(top);
    // ln tau_q with the largest eigenvalue factored out.
    auto log_tau = [&](int q) {
        double acc = 0;
        for (double lambda : spectrum.values()) {
            acc += std::pow(lambda / top, q);
        }
        return q * log_top + std::log(acc);
    };

    if (group == GroupKind::Symmetric) {
        std::vector<double> h(k + 1, 0.0);
        h[0] = 1;
        double log_scale = 0;
        for (double lambda : spectrum.values()) {
            double mu = lambda / top;
            double peak = 0;
            for (int j = 1; j <= k; j++) {
                h[j] += mu * h[j - 1];
                peak = std::max(peak, h[j]);
            }
            if (peak > 1e200) {
                for (double &v : h) {
                    v /= peak;
                }
                log_scale += std::log(peak);
            }
        }
        return k * log_top + log_scale + std::log(h[k]);
    }

    std::vector<double> cyclic_terms;
    for (uint64_t q : divisors(k)) {
        cyclic_terms.push_back(
            std::log(static_cast<double>(totient(q))) + static_cast<double>(k / q) * log_tau(static_cast<int>(q)) -
            std::log(static_cast<double>(k)));
    }
    double log_cyclic = log_sum_exp(cyclic_terms);
    if (group == GroupKind::Cyclic) {
        return log_cyclic;
    }
    if (k < 2) {
        throw InputError("the dihedral test needs k >= 2");
    }
    double lt2 = log_tau(2);
    std::vector<double> terms = {
        std::log(0.5) + log_cyclic,
        std::log(0.25) + reflection_exponent_low(k) * lt2,
        std::log(0.25) + reflection_exponent_high(k) * lt2,
    };
    return log_sum_exp(terms);
}

std::string MeasureReport::scope_label() const {
    std::stringstream ss;
    switch (scope) {
        case ScopeKind::Bipartite:
        case ScopeKind::Gme: {
            ss << (scope == ScopeKind::Gme ? "gme:S=" : "S=");
            for (size_t i = 0; i < subset.size(); i++) {
                ss << (i ? ";" : "") << subset[i];
            }
            break;
        }
        case ScopeKind::Averaged:
            ss << "s=" << subset_size;
            break;
    }
    return ss.str();
}

namespace {

std::vector<int> complement_of(int n, std::span<const int> subset) {
    std::vector<bool> in(n, false);
    for (int x : subset) {
        in[x] = true;
    }
    std::vector<int> out;
    for (int x = 0; x < n; x++) {
        if (!in[x]) {
            out.push_back(x);
        }
    }
    return out;
}

/// Spectrum of rho_S computed on whichever side of the cut is smaller.
Spectrum cut_spectrum(const PureState &state, std::span<const int> subset) {
    int n = state.num_sites();
    if (subset.empty() || static_cast<int>(subset.size()) >= n) {
        throw InputError("subset must be nonempty and proper");
    }
    if (2 * subset.size() > static_cast<size_t>(n)) {
        auto comp = complement_of(n, subset);
        return reduced_spectrum(state, comp);
    }
    return reduced_spectrum(state, subset);
}

MeasureReport finish(MeasureReport r, int d, int s) {
    r.entanglement = 1 - r.acceptance;
    r.bound_max_entanglement = max_entanglement_bound(r.group, r.k, d, s);
    if (r.entanglement > r.bound_max_entanglement + 1e-9) {
        throw NumericalError("entanglement exceeds its maximum attainable value");
    }
    return r;
}

void require_k(int k) {
    if (k < 2) {
        throw InputError("entanglement measures need k >= 2 copies");
    }
}

}  // namespace

MeasureReport entanglement_bipartite(const PureState &state, GroupKind group, int k, std::span<const int> subset) {
    require_k(k);
    Spectrum spectrum = cut_spectrum(state, subset);
    int n = state.num_sites();
    int s = static_cast<int>(subset.size());
    MeasureReport r = entanglement_bipartite(spectrum, group, k, state.local_dim(), std::min(s, n - s));
    r.subset.assign(subset.begin(), subset.end());
    return r;
}

MeasureReport entanglement_bipartite(const Spectrum &spectrum, GroupKind group, int k, int d, int s) {
    require_k(k);
    MeasureReport r;
    r.group = group;
    r.k = k;
    r.scope = ScopeKind::Bipartite;
    r.subset_size = s;
    r.acceptance = accept(spectrum, group, k);
    return finish(r, d, s);
}

MeasureReport entanglement_averaged(const PureState &state, GroupKind group, int k, int s) {
    require_k(k);
    int n = state.num_sites();
    if (s < 1 || s > n - 1) {
        throw InputError("subset size must satisfy 1 <= s <= n-1");
    }
    auto subsets = subsets_of_size(n, s);
    std::vector<double> values;
    values.reserve(subsets.size());
    for (const auto &subset : subsets) {
        values.push_back(accept(cut_spectrum(state, subset), group, k));
    }
    // Pairwise summation for an order-independent, reproducible mean.
    while (values.size() > 1) {
        std::vector<double> next;
        for (size_t i = 0; i + 1 < values.size(); i += 2) {
            next.push_back(values[i] + values[i + 1]);
        }
        if (values.size() % 2) {
            next.push_back(values.back());
        }
        values = std::move(next);
    }
    MeasureReport r;
    r.group = group;
    r.k = k;
    r.scope = ScopeKind::Averaged;
    r.subset_size = s;
    r.acceptance = values.front() / static_cast<double>(subsets.size());
    return finish(r, state.local_dim(), std::min(s, n - s));
}

MeasureReport entanglement_averaged(const FamilyParams &family, GroupKind group, int k, int s) {
    require_k(k);
    MeasureReport r;
    r.group = group;
    r.k = k;
    r.scope = ScopeKind::Averaged;
    r.subset_size = s;
    r.acceptance = accept(analytic_spectrum(family, s), group, k);
    return finish(r, 2, std::min(s, family.n - s));
}

MeasureReport entanglement_gme(const PureState &state, GroupKind group, int k) {
    require_k(k);
    int n = state.num_sites();
    if (n < 2) {
        throw InputError("genuine multipartite entanglement needs n >= 2");
    }
    if (n > kGmeSiteCap) {
        throw InputError("GME enumeration is capped at n = " + std::to_string(kGmeSiteCap));
    }
    // Each bipartition is visited once through the side containing site 0,
    // which is also its lexicographically smaller side.
    double best = -1;
    std::vector<int> best_subset;
    uint64_t masks = uint64_t{1} << (n - 1);
    for (uint64_t mask = 0; mask + 1 < masks; mask++) {
        std::vector<int> subset = {0};
        for (int x = 1; x < n; x++) {
            if (mask >> (x - 1) & 1) {
                subset.push_back(x);
            }
        }
        double c = accept(cut_spectrum(state, subset), group, k);
        if (c > best + 1e-12) {
            best = c;
            best_subset = subset;
        } else if (std::abs(c - best) <= 1e-12) {
            best = std::max(best, c);
            if (subset < best_subset) {
                best_subset = subset;
            }
        }
    }
    MeasureReport r;
    r.group = group;
    r.k = k;
    r.scope = ScopeKind::Gme;
    r.subset = best_subset;
    r.subset_size = static_cast<int>(best_subset.size());
    r.acceptance = best;
    return finish(r, state.local_dim(), 1);
}

double max_entanglement_bound(GroupKind group, int k, int d, int s) {
    if (d < 2 || s < 1 || k < 2) {
        throw InputError("bound needs d >= 2, s >= 1, k >= 2");
    }
    double log_dim = s * std::log(static_cast<double>(d));
    double cyclic = 0;
    for (uint64_t q : divisors(k)) {
        double exponent = static_cast<double>(k) * (1.0 - static_cast<double>(q)) / static_cast<double>(q);
        cyclic += static_cast<double>(totient(q)) * std::exp(exponent * log_dim);
    }
    cyclic /= k;
    switch (group) {
        case GroupKind::Symmetric: {
            // C(D + k - 1, k) / D^k with D = d^s.
            double dim = std::exp(log_dim);
            if (dim < 1e15) {
                double c = 1;
                for (int i = 0; i < k; i++) {
                    c *= (dim + i) / ((i + 1) * dim);
                }
                return 1 - c;
            }
            double log_c =
                std::lgamma(dim + k) - std::lgamma(static_cast<double>(k) + 1) - std::lgamma(dim) - k * log_dim;
            return 1 - std::exp(log_c);
        }
        case GroupKind::Cyclic:
            return 1 - cyclic;
        case GroupKind::Dihedral: {
            double low = std::exp(-log_dim * reflection_exponent_low(k));
            double high = std::exp(-log_dim * reflection_exponent_high(k));
            return 1 - 0.5 * cyclic - 0.25 * (low + high);
        }
    }
    throw InputError("unknown group");
}

double moment_lower_bound(int rank, int order) {
    if (rank < 1 || order < 1) {
        throw InputError("rank and order must be positive");
    }
    return std::pow(static_cast<double>(rank), 1.0 - order);
}

double decay_ratio_limit(const FamilyParams &family, int s) {
    return analytic_spectrum(family, s).max();
}

ExponentFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InputError("least squares needs at least two paired points");
    }
    double n = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    for (size_t i = 0; i < x.size(); i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) {
        throw InputError("least squares needs at least two distinct x values");
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = static_cast<int>(x.size());
    for (size_t i = 0; i < x.size(); i++) {
        double r = y[i] - (fit.slope * x[i] + fit.intercept);
        fit.residual += r * r;
    }
    return fit;
}

ExponentFit fit_exponent(std::span<const std::pair<int, double>> series, int k_lo, int k_hi) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &[k, c] : series) {
        if (k < k_lo || k > k_hi) {
            continue;
        }
        if (!(c > 0)) {
            throw InputError("exponent fit needs positive values, got C_" + std::to_string(k) + " <= 0");
        }
        x.push_back(k);
        y.push_back(std::log(c));
    }
    return least_squares(x, y);
}

}  // namespace symment
